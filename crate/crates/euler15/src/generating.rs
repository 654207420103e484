//! The per-index building blocks of the generating function.

use exactla::Field;
use num_bigint::BigInt;
use num_rational::BigRational;
use serieskit::{bernoulli_table, divisors, moebius, SeriesContext, TruncSeries};
use symkit::Partition;

use crate::EulerError;

fn ratio<C: Field>(n: i64, d: i64) -> C {
    let q = BigRational::new(BigInt::from(n), BigInt::from(d));
    C::from_rational(&q).expect("small denominators are invertible")
}

fn binomial(n: u64, k: u64) -> i64 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    i64::try_from(acc).expect("binomial fits in i64")
}

/// `E_l = (1/l) sum_{d | l} mu(l/d) u^{-d}`.
pub fn e_ell<C: Field>(ctx: &SeriesContext, ell: u64) -> TruncSeries<C> {
    let mut s = TruncSeries::zero(ctx);
    for d in divisors(ell) {
        let m = moebius(ell / d);
        if m != 0 {
            let t = TruncSeries::u_power(ctx, -(d as i64)).scale(&ratio(m, ell as i64));
            s = s.add(&t).expect("same context");
        }
    }
    s
}

/// `lambda_l = l u^l (1 - u^l)`.
pub fn lambda_ell<C: Field>(ctx: &SeriesContext, ell: u64) -> TruncSeries<C> {
    let l = ell as i64;
    let a = TruncSeries::u_power(ctx, l);
    let b = TruncSeries::u_power(ctx, 2 * l);
    a.sub(&b).expect("same context").scale(&C::from_i64(l))
}

/// `(1/l) sum_{d | l} mu(l/d) (-p_d + 1 - w^d)`, or with only the `-p_d`
/// part when `with_w` is false.
pub fn x_ell<C: Field>(ctx: &SeriesContext, ell: u64, with_w: bool) -> TruncSeries<C> {
    let mut s = TruncSeries::zero(ctx);
    for d in divisors(ell) {
        let m = moebius(ell / d);
        if m == 0 {
            continue;
        }
        let mut t = TruncSeries::p(ctx, d as usize).neg();
        if with_w {
            t = t
                .add(&TruncSeries::one(ctx))
                .and_then(|t| t.sub(&TruncSeries::w_power(ctx, d as usize)))
                .expect("same context");
        }
        s = s.add(&t.scale(&ratio(m, ell as i64))).expect("same context");
    }
    s
}

/// `sum_{d | l} mu(l/d) u^{l-d}`, a polynomial with constant term one.
fn e_unit<C: Field>(ctx: &SeriesContext, ell: u64) -> TruncSeries<C> {
    let mut s = TruncSeries::zero(ctx);
    for d in divisors(ell) {
        let m = moebius(ell / d);
        if m != 0 {
            let t = TruncSeries::u_power(ctx, (ell - d) as i64).scale(&C::from_i64(m));
            s = s.add(&t).expect("same context");
        }
    }
    s
}

/// `1 / E_l = l u^l / (sum_{d | l} mu(l/d) u^{l-d})`, of `u`-valuation `l`.
pub fn e_ell_inverse<C: Field>(ctx: &SeriesContext, ell: u64) -> Result<TruncSeries<C>, EulerError> {
    let unit = e_unit::<C>(ctx, ell).inverse()?;
    Ok(unit.shift_u(ell as i64).scale(&C::from_i64(ell as i64)))
}

/// `lambda_l E_l = (1 - u^l) sum_{d | l} mu(l/d) u^{l-d}`.
pub fn lambda_e<C: Field>(ctx: &SeriesContext, ell: u64) -> TruncSeries<C> {
    let one_minus = TruncSeries::one(ctx)
        .sub(&TruncSeries::u_power(ctx, ell as i64))
        .expect("same context");
    one_minus.mul(&e_unit(ctx, ell)).expect("same context")
}

/// `log U_l(X, u)` expanded with `Y = X / E_l`:
///
/// `X log(lambda_l E_l) + X sum_{k>=2} Y^{k-1}/k + (X - 1/2) log(1 - Y)
///  + sum_{r>=2} B_r/(r(r-1)) (-1/E_l)^{r-1} ((1 - Y)^{1-r} - 1)`.
///
/// `Y` has `u`-valuation at least `l`, so every sum is finite under the caps
/// and the truncation is exact.
pub fn log_u<C: Field>(
    ctx: &SeriesContext,
    x: &TruncSeries<C>,
    ell: u64,
) -> Result<TruncSeries<C>, EulerError> {
    if x.valuation().is_some_and(|v| v < 0) {
        return Err(EulerError::NegativeExponent);
    }
    let u_max = ctx.caps().u_max;
    let l = ell as i64;
    if x.is_zero() || u_max < 0 {
        return Ok(TruncSeries::zero(ctx));
    }
    let einv = e_ell_inverse::<C>(ctx, ell)?;
    let log_le = lambda_e::<C>(ctx, ell).log()?;
    let mut out = x.mul(&log_le)?;
    if u_max < l {
        return Ok(out);
    }
    let kmax = (u_max / l) as usize;
    let y = x.mul(&einv)?;
    let mut ypow = vec![TruncSeries::one(ctx), y.clone()];
    for k in 2..=kmax {
        let next = ypow[k - 1].mul(&y)?;
        ypow.push(next);
    }

    // X sum_{k>=2} Y^{k-1} / k
    let mut geometric = TruncSeries::zero(ctx);
    for k in 2..=kmax + 1 {
        geometric = geometric.add(&ypow[k - 1].scale(&ratio(1, k as i64)))?;
    }
    out = out.add(&x.mul(&geometric)?)?;

    // (X - 1/2) log(1 - Y)
    let mut log_one_minus = TruncSeries::zero(ctx);
    for (k, yk) in ypow.iter().enumerate().skip(1) {
        log_one_minus = log_one_minus.sub(&yk.scale(&ratio(1, k as i64)))?;
    }
    let shifted = x.sub(&TruncSeries::constant(ctx, ratio(1, 2)))?;
    out = out.add(&shifted.mul(&log_one_minus)?)?;

    // Bernoulli part: the r-th term has valuation at least l r.
    let bern = bernoulli_table(kmax);
    let neg_einv = einv.neg();
    let mut neg_einv_pow = neg_einv.clone();
    for r in 2..=kmax {
        let br = &bern[r];
        if !num_traits::Zero::is_zero(br) {
            let c = C::from_rational(&(br / BigRational::from_integer(BigInt::from(r * (r - 1)))))
                .ok_or(EulerError::Denominator)?;
            let mut binom_series = TruncSeries::zero(ctx);
            for (k, yk) in ypow.iter().enumerate().take(kmax - r + 2).skip(1) {
                let b = binomial((r + k - 2) as u64, k as u64);
                binom_series = binom_series.add(&yk.scale(&C::from_i64(b)))?;
            }
            out = out.add(&neg_einv_pow.mul(&binom_series)?.scale(&c))?;
        }
        neg_einv_pow = neg_einv_pow.mul(&neg_einv)?;
    }
    Ok(out)
}

/// `log U_l(X_l^num, u) - log U_l(X_l^den, u)`.
pub fn log_ratio<C: Field>(ctx: &SeriesContext, ell: u64) -> Result<TruncSeries<C>, EulerError> {
    let num = log_u(ctx, &x_ell::<C>(ctx, ell, true), ell)?;
    let den = log_u(ctx, &x_ell::<C>(ctx, ell, false), ell)?;
    Ok(num.sub(&den)?)
}

/// Coefficient of `u^a w^b p_mu` as a convenience for tests and reports.
pub fn coefficient<C: Field>(s: &TruncSeries<C>, a: i64, b: usize, mu: &[usize]) -> C {
    s.coeff(a, b, &Partition::new(mu.to_vec()))
}
