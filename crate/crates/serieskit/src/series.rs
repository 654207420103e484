//! Truncated series in `u` (Laurent), `w` and power sums `p_mu`.

use std::fmt;
use std::sync::Arc;

use exactla::Field;
use rayon::prelude::*;
use symkit::{Partition, SymFunc};

use crate::basis::PartitionBasis;
use crate::SeriesError;

/// Upper truncation bounds. Terms `u^a w^b p_mu` are kept iff
/// `a <= u_max`, `b <= w_max` and `|mu| <= p_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeriesCaps {
    pub u_max: i64,
    pub w_max: usize,
    pub p_max: usize,
}

impl SeriesCaps {
    /// Caps with the `w` truncation at 14.
    pub fn new(u_max: i64, p_max: usize) -> Self {
        SeriesCaps {
            u_max,
            w_max: 14,
            p_max,
        }
    }

    fn contains(&self, other: &SeriesCaps) -> bool {
        other.u_max <= self.u_max && other.w_max <= self.w_max && other.p_max <= self.p_max
    }
}

/// Caps plus the shared power-sum basis. Cheap to clone.
#[derive(Clone, Debug)]
pub struct SeriesContext {
    caps: SeriesCaps,
    basis: Arc<PartitionBasis>,
}

impl SeriesContext {
    pub fn new(caps: SeriesCaps) -> Self {
        SeriesContext {
            caps,
            basis: Arc::new(PartitionBasis::new(caps.p_max)),
        }
    }

    pub fn caps(&self) -> SeriesCaps {
        self.caps
    }

    pub fn basis(&self) -> &PartitionBasis {
        &self.basis
    }

    fn slice_len(&self) -> usize {
        (self.caps.w_max + 1) * self.basis.len()
    }
}

impl PartialEq for SeriesContext {
    fn eq(&self, other: &Self) -> bool {
        self.caps == other.caps
    }
}

/// A truncated series stored densely from its lowest `u`-exponent up to
/// `u_max`, laid out as `[u - u_min][w][partition index]`.
#[derive(Clone)]
pub struct TruncSeries<C> {
    ctx: SeriesContext,
    u_min: i64,
    data: Vec<C>,
}

impl<C: Field> TruncSeries<C> {
    pub fn zero(ctx: &SeriesContext) -> Self {
        TruncSeries {
            ctx: ctx.clone(),
            u_min: ctx.caps.u_max + 1,
            data: Vec::new(),
        }
    }

    pub fn one(ctx: &SeriesContext) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn constant(ctx: &SeriesContext, c: C) -> Self {
        Self::monomial(ctx, 0, 0, &Partition::empty(), c)
    }

    /// `c u^u w^w p_mu`, or zero if the monomial lies beyond the caps.
    pub fn monomial(ctx: &SeriesContext, u: i64, w: usize, mu: &Partition, c: C) -> Self {
        let mut s = Self::zero(ctx);
        if let Some(i) = ctx.basis.index_of(mu) {
            s.add_at(u, w, i, &c);
        }
        s.normalize();
        s
    }

    /// `u^k`.
    pub fn u_power(ctx: &SeriesContext, k: i64) -> Self {
        Self::monomial(ctx, k, 0, &Partition::empty(), C::one())
    }

    /// `w^k`.
    pub fn w_power(ctx: &SeriesContext, k: usize) -> Self {
        Self::monomial(ctx, 0, k, &Partition::empty(), C::one())
    }

    /// The power sum `p_d`.
    pub fn p(ctx: &SeriesContext, d: usize) -> Self {
        Self::monomial(ctx, 0, 0, &Partition::new(vec![d]), C::one())
    }

    /// `u^u w^w f` for a symmetric function `f`, truncated to the caps.
    pub fn from_symfunc(
        ctx: &SeriesContext,
        u: i64,
        w: usize,
        f: &SymFunc,
    ) -> Result<Self, SeriesError> {
        let mut s = Self::zero(ctx);
        for (mu, q) in f.terms() {
            if let Some(i) = ctx.basis.index_of(mu) {
                let c = C::from_rational(q).ok_or_else(|| SeriesError::Denominator(q.to_string()))?;
                s.add_at(u, w, i, &c);
            }
        }
        s.normalize();
        Ok(s)
    }

    pub fn context(&self) -> &SeriesContext {
        &self.ctx
    }

    pub fn caps(&self) -> SeriesCaps {
        self.ctx.caps
    }

    fn offset(&self, u: i64, w: usize, i: usize) -> usize {
        ((u - self.u_min) as usize * (self.ctx.caps.w_max + 1) + w) * self.ctx.basis.len() + i
    }

    /// Lowers the stored range so that exponent `u` is addressable.
    fn extend_down(&mut self, u: i64) {
        if u >= self.u_min {
            return;
        }
        let extra = (self.u_min - u) as usize * self.ctx.slice_len();
        let mut data = vec![C::zero(); extra];
        data.append(&mut self.data);
        self.data = data;
        self.u_min = u;
    }

    fn add_at(&mut self, u: i64, w: usize, i: usize, c: &C) {
        if u > self.ctx.caps.u_max || w > self.ctx.caps.w_max || c.is_zero() {
            return;
        }
        self.extend_down(u);
        let k = self.offset(u, w, i);
        self.data[k] = self.data[k].add(c);
    }

    /// Drops leading all-zero `u`-slices.
    fn normalize(&mut self) {
        let sl = self.ctx.slice_len();
        let lead = self
            .data
            .chunks(sl)
            .take_while(|s| s.iter().all(Field::is_zero))
            .count();
        if lead > 0 {
            self.data.drain(..lead * sl);
            self.u_min += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    /// Smallest `u`-exponent carrying a nonzero term.
    pub fn valuation(&self) -> Option<i64> {
        let sl = self.ctx.slice_len();
        self.data
            .chunks(sl)
            .position(|s| s.iter().any(|c| !c.is_zero()))
            .map(|k| self.u_min + k as i64)
    }

    pub fn coeff(&self, u: i64, w: usize, mu: &Partition) -> C {
        match self.ctx.basis.index_of(mu) {
            Some(i) if u >= self.u_min && u <= self.ctx.caps.u_max && w <= self.ctx.caps.w_max => {
                self.data[self.offset(u, w, i)].clone()
            }
            _ => C::zero(),
        }
    }

    /// Nonzero terms `(u, w, mu, c)` in canonical order: by `u`, then `w`,
    /// then degree of `mu`, then `mu` lexicographically.
    pub fn terms(&self) -> impl Iterator<Item = (i64, usize, &Partition, &C)> + '_ {
        self.raw_terms()
            .map(move |(u, w, i, c)| (u, w, self.ctx.basis.partition(i), c))
    }

    fn raw_terms(&self) -> impl Iterator<Item = (i64, usize, usize, &C)> + '_ {
        let nb = self.ctx.basis.len();
        let wl = self.ctx.caps.w_max + 1;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.u_min + (k / (nb * wl)) as i64, (k / nb) % wl, k % nb, c))
    }

    fn nonzero_slices(&self) -> Vec<Vec<(usize, usize, C)>> {
        let nb = self.ctx.basis.len();
        self.data
            .chunks(self.ctx.slice_len())
            .map(|s| {
                s.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k / nb, k % nb, c.clone()))
                    .collect()
            })
            .collect()
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ctx != other.ctx {
            return Err(SeriesError::CapMismatch {
                left: self.ctx.caps,
                right: other.ctx.caps,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let mut out = self.clone();
        out.extend_down(other.u_min);
        let shift = (other.u_min - out.u_min) as usize * self.ctx.slice_len();
        for (k, c) in other.data.iter().enumerate() {
            if !c.is_zero() {
                out.data[shift + k] = out.data[shift + k].add(c);
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(C::neg)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = self.map_coeffs(|x| x.mul(c));
        out.normalize();
        out
    }

    fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        TruncSeries {
            ctx: self.ctx.clone(),
            u_min: self.u_min,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Multiplication by `u^k`.
    pub fn shift_u(&self, k: i64) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (u, w, i, c) in self.raw_terms() {
            out.add_at(u + k, w, i, c);
        }
        out.normalize();
        out
    }

    /// Adds `a * b` into the dense slice `out`, where `a` and `b` are sparse
    /// `(w, partition index, coefficient)` lists of single `u`-slices.
    fn accumulate(&self, out: &mut [C], a: &[(usize, usize, C)], b: &[(usize, usize, C)]) {
        let basis = &self.ctx.basis;
        let nb = basis.len();
        let w_max = self.ctx.caps.w_max;
        for (wa, ia, ca) in a {
            for (wb, ib, cb) in b {
                let w = wa + wb;
                if w > w_max {
                    continue;
                }
                if let Some(ic) = basis.product(*ia, *ib) {
                    let k = w * nb + ic;
                    out[k] = out[k].add(&ca.mul(cb));
                }
            }
        }
    }

    fn sparse_slice(&self, dense: &[C]) -> Vec<(usize, usize, C)> {
        let nb = self.ctx.basis.len();
        dense
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k / nb, k % nb, c.clone()))
            .collect()
    }

    /// Sparse slices for exponents `0..=u_max`; requires `u_min >= 0`.
    fn slices_from_zero(&self) -> Vec<Vec<(usize, usize, C)>> {
        let top = self.ctx.caps.u_max.max(-1);
        let nz = self.nonzero_slices();
        (0..=top)
            .map(|u| {
                if u < self.u_min {
                    Vec::new()
                } else {
                    nz[(u - self.u_min) as usize].clone()
                }
            })
            .collect()
    }

    fn from_slices(&self, slices: Vec<Vec<C>>) -> Self {
        let mut out = TruncSeries {
            ctx: self.ctx.clone(),
            u_min: 0,
            data: slices.into_iter().flatten().collect(),
        };
        if out.data.is_empty() {
            out.u_min = self.ctx.caps.u_max + 1;
        }
        out.normalize();
        out
    }

    /// The `u^0` part of the series.
    fn constant_slice(&self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (u, w, i, c) in self.raw_terms() {
            if u == 0 {
                out.add_at(0, w, i, c);
            }
        }
        out.normalize();
        out
    }

    /// Truncated product. Output `u`-slices are computed independently in
    /// parallel, each summed in a fixed order, so the result does not depend
    /// on the number of worker threads.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let caps = self.ctx.caps;
        let u_lo = self.u_min + other.u_min;
        if self.is_zero() || other.is_zero() || u_lo > caps.u_max {
            return Ok(Self::zero(&self.ctx));
        }
        let sl = self.ctx.slice_len();
        let a_nz = self.nonzero_slices();
        let b_nz = other.nonzero_slices();
        let slices = (caps.u_max - u_lo + 1) as usize;
        let mut data = vec![C::zero(); slices * sl];
        data.par_chunks_mut(sl).enumerate().for_each(|(s, out)| {
            let u = u_lo + s as i64;
            for (sa, a_terms) in a_nz.iter().enumerate() {
                let ub = u - self.u_min - sa as i64;
                if ub < other.u_min {
                    break;
                }
                let sb = (ub - other.u_min) as usize;
                if sb < b_nz.len() && !a_terms.is_empty() {
                    self.accumulate(out, a_terms, &b_nz[sb]);
                }
            }
        });
        let mut out = TruncSeries {
            ctx: self.ctx.clone(),
            u_min: u_lo,
            data,
        };
        out.normalize();
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<Self, SeriesError> {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Splits `f = c + g` with `c` the constant term; fails if `f` has a
    /// term with negative `u`-exponent.
    fn split_constant(&self) -> Result<(C, Self), SeriesError> {
        if self.valuation().is_some_and(|v| v < 0) {
            return Err(SeriesError::NegativeExponent);
        }
        let c = self.coeff(0, 0, &Partition::empty());
        let g = self.sub(&Self::constant(&self.ctx, c.clone()))?;
        Ok((c, g))
    }

    /// Upper bound on the nilpotency index of a series without constant term:
    /// every product raises `u + w + |mu|` by at least one.
    fn nilpotency_bound(&self) -> usize {
        let caps = self.ctx.caps;
        (caps.u_max.max(0) as usize) + caps.w_max + caps.p_max + 1
    }

    /// Sums `sum_{k >= 1} coeff(k) g^k` until the powers vanish.
    fn power_series(&self, coeff: impl Fn(usize) -> C) -> Result<Self, SeriesError> {
        let mut acc = Self::zero(&self.ctx);
        let mut power = self.clone();
        for k in 1..=self.nilpotency_bound() {
            if power.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&power.scale(&coeff(k)))?;
            power = power.mul(self)?;
        }
        if power.is_zero() {
            Ok(acc)
        } else {
            Err(SeriesError::NotNilpotent)
        }
    }

    fn small_inverse(k: usize) -> C {
        C::from_i64(k as i64)
            .inv()
            .expect("small integers are units")
    }

    /// `u`-slices `0..=u_max` of `sum_{k=1}^{m} k a_k b_{m-k}` where `b` is
    /// given up to slice `m - 1`; the terms are summed in order of `k`.
    fn weighted_convolution(
        &self,
        a: &[Vec<(usize, usize, C)>],
        b: &[Vec<(usize, usize, C)>],
        m: usize,
        skip_last: bool,
    ) -> Vec<C> {
        let sl = self.ctx.slice_len();
        let last = if skip_last { m - 1 } else { m };
        let parts: Vec<Option<Vec<C>>> = (1..=last)
            .into_par_iter()
            .map(|k| {
                if a[k].is_empty() || b[m - k].is_empty() {
                    return None;
                }
                let mut out = vec![C::zero(); sl];
                self.accumulate(&mut out, &a[k], &b[m - k]);
                let kk = C::from_i64(k as i64);
                Some(out.iter().map(|x| x.mul(&kk)).collect())
            })
            .collect();
        let mut acc = vec![C::zero(); sl];
        for part in parts.into_iter().flatten() {
            for (x, y) in acc.iter_mut().zip(part) {
                *x = x.add(&y);
            }
        }
        acc
    }

    /// Logarithm of a series with constant term one. The `u^0` part is
    /// handled as a nilpotent power series; higher `u`-slices follow from
    /// `m F_m = sum_k k L_k F_{m-k}` with `F = exp(L)`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        let (c, _) = self.split_constant()?;
        if self.ctx.caps.u_max < 0 {
            return Ok(Self::zero(&self.ctx));
        }
        if !c.is_one() {
            return Err(SeriesError::NonUnit(format!("{c:?}")));
        }
        let f0 = self.constant_slice();
        let g0 = f0.sub(&Self::one(&self.ctx))?;
        let l0 = g0.power_series(|k| {
            let inv = Self::small_inverse(k);
            if k % 2 == 1 {
                inv
            } else {
                inv.neg()
            }
        })?;
        let f0_inv = f0.inverse()?;
        let f0_inv = f0_inv.slices_from_zero().swap_remove(0);
        let f = self.slices_from_zero();
        let top = f.len();
        let sl = self.ctx.slice_len();
        let mut l: Vec<Vec<(usize, usize, C)>> = Vec::with_capacity(top);
        let mut dense: Vec<Vec<C>> = Vec::with_capacity(top);
        if top > 0 {
            let l0_dense = l0.slices_from_zero().swap_remove(0);
            let mut d = vec![C::zero(); sl];
            for (w, i, c) in &l0_dense {
                d[w * self.ctx.basis.len() + i] = c.clone();
            }
            l.push(l0_dense);
            dense.push(d);
        }
        for m in 1..top {
            let conv = self.weighted_convolution(&l, &f, m, true);
            let mm = C::from_i64(m as i64);
            let mut rhs = vec![C::zero(); sl];
            for (w, i, c) in &f[m] {
                rhs[w * self.ctx.basis.len() + i] = c.mul(&mm);
            }
            for (x, y) in rhs.iter_mut().zip(conv) {
                *x = x.sub(&y);
            }
            let rhs = self.sparse_slice(&rhs);
            let mut out = vec![C::zero(); sl];
            self.accumulate(&mut out, &rhs, &f0_inv);
            let inv = Self::small_inverse(m);
            let out: Vec<C> = out.iter().map(|x| x.mul(&inv)).collect();
            l.push(self.sparse_slice(&out));
            dense.push(out);
        }
        Ok(self.from_slices(dense))
    }

    /// Exponential of a series without constant term, by the recurrence
    /// `m F_m = sum_k k S_k F_{m-k}` after exponentiating the `u^0` part.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let (c, _) = self.split_constant()?;
        if self.ctx.caps.u_max < 0 {
            return Ok(Self::zero(&self.ctx));
        }
        if !c.is_zero() {
            return Err(SeriesError::NotNilpotent);
        }
        let s0 = self.constant_slice();
        let mut f0 = Self::one(&self.ctx);
        let mut term = Self::one(&self.ctx);
        for k in 1..=self.nilpotency_bound() {
            term = term.mul(&s0)?.scale(&Self::small_inverse(k));
            if term.is_zero() {
                break;
            }
            f0 = f0.add(&term)?;
        }
        let s = self.slices_from_zero();
        let top = s.len();
        let nb = self.ctx.basis.len();
        let sl = self.ctx.slice_len();
        let mut f: Vec<Vec<(usize, usize, C)>> = Vec::with_capacity(top);
        let mut dense: Vec<Vec<C>> = Vec::with_capacity(top);
        if top > 0 {
            let f0 = f0.slices_from_zero().swap_remove(0);
            let mut d = vec![C::zero(); sl];
            for (w, i, c) in &f0 {
                d[w * nb + i] = c.clone();
            }
            f.push(f0);
            dense.push(d);
        }
        for m in 1..top {
            let conv = self.weighted_convolution(&s, &f, m, false);
            let inv = Self::small_inverse(m);
            let out: Vec<C> = conv.iter().map(|x| x.mul(&inv)).collect();
            f.push(self.sparse_slice(&out));
            dense.push(out);
        }
        Ok(self.from_slices(dense))
    }

    /// Multiplicative inverse of a series with invertible constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let (c, g) = self.split_constant()?;
        let cinv = c.inv().ok_or_else(|| SeriesError::NonUnit(format!("{c:?}")))?;
        let h = g.scale(&cinv);
        let tail = h.power_series(|k| if k % 2 == 1 { C::one().neg() } else { C::one() })?;
        Ok(Self::one(&self.ctx).add(&tail)?.scale(&cinv))
    }

    /// Keeps `w`-degrees up to the cap and substitutes `w = 1`.
    pub fn truncate_t(&self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (u, _, i, c) in self.raw_terms() {
            out.add_at(u, 0, i, c);
        }
        out.normalize();
        out
    }

    /// Re-truncates to smaller caps.
    pub fn restrict(&self, ctx: &SeriesContext) -> Result<Self, SeriesError> {
        if !self.ctx.caps.contains(&ctx.caps) {
            return Err(SeriesError::CapMismatch {
                left: self.ctx.caps,
                right: ctx.caps,
            });
        }
        let mut out = Self::zero(ctx);
        for (u, w, mu, c) in self.terms() {
            if let Some(i) = ctx.basis.index_of(mu) {
                out.add_at(u, w, i, c);
            }
        }
        out.normalize();
        Ok(out)
    }

    /// Coefficientwise conversion into another field.
    pub fn map_field<D: Field>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        let mut out = TruncSeries {
            ctx: self.ctx.clone(),
            u_min: self.u_min,
            data: self.data.iter().map(f).collect(),
        };
        out.normalize();
        out
    }

    /// The coefficient of `u^u w^w` as a symmetric function, with
    /// coefficients supplied by `lift`.
    pub fn symfunc_at<F>(&self, u: i64, w: usize, lift: F) -> SymFunc
    where
        F: Fn(&C) -> num_rational::BigRational,
    {
        let mut f = SymFunc::zero();
        for (tu, tw, mu, c) in self.terms() {
            if tu == u && tw == w {
                f.add_term(mu.clone(), lift(c));
            }
        }
        f
    }
}

impl<C: Field + fmt::Display> TruncSeries<C> {
    /// One line per term, `u^a w^b p_{mu} : c`, in canonical order.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (u, w, mu, c) in self.terms() {
            s.push_str(&format!("u^{u} w^{w} p_{{{mu}}} : {c}\n"));
        }
        s
    }
}

impl<C: Field> PartialEq for TruncSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms().eq(other.terms())
    }
}

impl<C: Field> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for (u, w, mu, c) in self.terms() {
            list.entry(&format_args!("u^{u} w^{w} p_{{{mu}}} : {c:?}"));
        }
        list.finish()
    }
}
