//! Leading asymptotics of the scalar Euler characteristic as `g` grows.

use std::f64::consts::PI;

use crate::EulerError;

/// Sums `sum_{j >= j0} term(j)` where `|term(j+1) / term(j)|` is eventually
/// decreasing to zero. Stops once that ratio is below `1/2` and the next term
/// is below `tolerance / 2`, which bounds the tail by `tolerance`.
fn factorial_series(j0: u32, tolerance: f64, term: impl Fn(u32) -> f64) -> f64 {
    let mut sum = 0.0;
    let mut j = j0;
    loop {
        let t = term(j);
        let next = term(j + 1);
        sum += t;
        let ratio = if t == 0.0 { 0.0 } else { (next / t).abs() };
        if ratio < 0.5 && next.abs() < tolerance / 2.0 && j > j0 + 10 {
            return sum;
        }
        j += 1;
    }
}

fn ln_factorial(n: u32) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// `D_ev = -sum_{j>=8} (-4 pi^2)^j / (j (2j-15)! 14!)` and
/// `D_odd = -sum_{j>=7} 4 pi (-4 pi^2)^j / ((2j+1) (2j-14)! 14!)`.
pub fn asymptotic_constants(tolerance: f64) -> (f64, f64) {
    assert!(tolerance > 0.0, "tolerance must be positive");
    let a = (4.0 * PI * PI).ln();
    let f14 = ln_factorial(14);
    let sign = |j: u32| if j % 2 == 0 { 1.0 } else { -1.0 };
    let ev = factorial_series(8, tolerance, |j| {
        let mag = j as f64 * a - ln_factorial(2 * j - 15) - f14 - (j as f64).ln();
        sign(j) * mag.exp()
    });
    let odd = factorial_series(7, tolerance, |j| {
        let mag = j as f64 * a - ln_factorial(2 * j - 14) - f14 - ((2 * j + 1) as f64).ln();
        sign(j) * 4.0 * PI * mag.exp()
    });
    (-ev, -odd)
}

/// `D (-1)^{floor(g/2)} (g-2)! / (2 pi)^g` with `D` chosen by the parity of `g`.
pub fn asymptotic_main_term(g: u32) -> f64 {
    assert!(g >= 2, "the main term needs g >= 2");
    let (d_ev, d_odd) = asymptotic_constants(1e-12);
    let d = if g % 2 == 0 { d_ev } else { d_odd };
    let sign = if (g / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let mag = ln_factorial(g - 2) - g as f64 * (2.0 * PI).ln();
    sign * d * mag.exp()
}

/// The asymptotic estimate, meaningful for large genus.
pub fn asymptotic_estimate(g: u32) -> Result<f64, EulerError> {
    if g < 20 {
        return Err(EulerError::GenusTooSmall(g));
    }
    Ok(asymptotic_main_term(g))
}
