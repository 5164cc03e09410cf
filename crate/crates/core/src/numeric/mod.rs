//! Double-precision evaluation with certified truncation bounds.

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub mod erf;
pub mod eta;
pub mod lerch_num;
pub mod mock_num;
pub mod theta;
pub mod zwegers;

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

/// Default truncation target, relative to `1 + |value|`.
pub const DEFAULT_TOL: f64 = 1e-16;

/// Hard cap on summed terms per side.
pub const TERM_BUDGET: usize = 200_000;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e(x) = exp(2 pi i x)`.
pub fn e(x: C64) -> C64 {
    (2.0 * PI * I * x).exp()
}

thread_local! {
    static TRUNCATION_SCALE: Cell<f64> = const { Cell::new(1.0) };
}

/// Runs `f` with every truncation loop on this thread extended to `scale` times the number
/// of steps at which its stopping rule is first met. The reported bounds are computed at the
/// extended stopping point, so comparing `scale = 1` and `scale = 2` tests them.
pub fn with_truncation_scale<T>(scale: f64, f: impl FnOnce() -> T) -> T {
    assert!(scale >= 1.0, "truncation scale must be at least 1");
    let old = TRUNCATION_SCALE.with(|s| s.replace(scale));
    let out = f();
    TRUNCATION_SCALE.with(|s| s.set(old));
    out
}

pub fn truncation_scale() -> f64 {
    TRUNCATION_SCALE.with(|s| s.get())
}

/// Stopping rule shared by the truncation loops; see [`with_truncation_scale`].
#[derive(Clone, Copy, Debug)]
pub(crate) struct Stop {
    first: Option<usize>,
    scale: f64,
}

impl Stop {
    pub(crate) fn new() -> Self {
        Stop { first: None, scale: truncation_scale() }
    }

    /// `met`: the loop's own criterion holds at step `n` (steps counted from 0).
    pub(crate) fn done(&mut self, n: usize, met: bool) -> bool {
        if !met {
            return false;
        }
        let f = *self.first.get_or_insert(n);
        n as f64 + 1.0 >= ((f as f64 + 1.0) * self.scale).ceil()
    }
}

/// A value with a bound on `|value - exact|` covering truncation and rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Certified {
    pub value: C64,
    pub bound: f64,
    pub terms: usize,
}

impl Certified {
    pub fn new(value: C64, bound: f64, terms: usize) -> Self {
        Certified { value, bound, terms }
    }
}

/// Rounding allowance for a sum of `n` terms of total magnitude `abs_sum`.
pub fn rounding(n: usize, abs_sum: f64) -> f64 {
    4.0 * (n as f64 + 1.0) * f64::EPSILON * abs_sum
}

/// A point in the upper half plane; the nome is always recomputed from `z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlanePoint {
    z: C64,
}

impl HalfPlanePoint {
    pub fn new(z: C64) -> Result<Self> {
        if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::ConstraintViolation(format!("Im z must be positive, got z = {}", z)));
        }
        Ok(HalfPlanePoint { z })
    }

    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn q(&self) -> C64 {
        e(self.z)
    }

    /// `log q = 2 pi i z`, exact branch.
    pub fn log_q(&self) -> C64 {
        2.0 * PI * I * self.z
    }
}

/// Checks `|q| < 1`, distinguishing the unit circle.
pub fn check_nome(q: C64) -> Result<()> {
    let r = q.norm();
    if !r.is_finite() {
        return Err(Error::NomeOutsideDisk(r));
    }
    if (r - 1.0).abs() < 1e-12 {
        return Err(Error::NomeOnUnitCircle(r));
    }
    if r > 1.0 {
        return Err(Error::NomeOutsideDisk(r));
    }
    Ok(())
}

/// Sums `term(n)` over all integers `n`.
///
/// `env(n)` is an upper bound on `ln |term(n)|`, valid and log-concave for large `|n|`.
/// Summation on each side stops once the envelope is decreasing and the geometric tail
/// bound `exp(env(N+1)) / (1 - exp(env(N+2) - env(N+1)))` is below `tol * (1 + |sum|)`.
pub fn sum_bilateral(
    term: impl Fn(i64) -> Result<C64>,
    env: impl Fn(i64) -> f64,
    tol: f64,
) -> Result<Certified> {
    let mut sum = term(0)?;
    let mut abs_sum = sum.norm();
    let mut count = 1usize;
    let mut tail = [f64::INFINITY, f64::INFINITY];
    let mut done = [false, false];
    let mut stops = [Stop::new(), Stop::new()];
    let mut n = 0i64;
    while !(done[0] && done[1]) {
        n += 1;
        if n as usize > TERM_BUDGET {
            return Err(Error::TruncationFailure(TERM_BUDGET));
        }
        for (side, s) in [(0usize, 1i64), (1usize, -1i64)] {
            if done[side] {
                continue;
            }
            let k = s * n;
            let t = term(k)?;
            sum += t;
            abs_sum += t.norm();
            count += 1;
            let e1 = env(k + s);
            let e2 = env(k + 2 * s);
            if e2 < e1 {
                let ratio = (e2 - e1).exp();
                let bound = e1.exp() / (1.0 - ratio);
                if stops[side].done(n as usize, bound <= tol * (1.0 + sum.norm())) {
                    tail[side] = bound;
                    done[side] = true;
                }
            }
        }
    }
    Ok(Certified::new(sum, tail[0] + tail[1] + rounding(count, abs_sum), count))
}

/// Sums `term(n)` for `n >= start` with the same stopping rule as [`sum_bilateral`].
pub fn sum_unilateral(
    start: i64,
    term: impl Fn(i64) -> Result<C64>,
    env: impl Fn(i64) -> f64,
    tol: f64,
) -> Result<Certified> {
    let mut sum = C64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut stop = Stop::new();
    let mut n = start;
    loop {
        if (n - start) as usize > TERM_BUDGET {
            return Err(Error::TruncationFailure(TERM_BUDGET));
        }
        let t = term(n)?;
        sum += t;
        abs_sum += t.norm();
        let e1 = env(n + 1);
        let e2 = env(n + 2);
        if e2 < e1 {
            let bound = e1.exp() / (1.0 - (e2 - e1).exp());
            if stop.done((n - start) as usize, bound <= tol * (1.0 + sum.norm())) {
                let count = (n - start + 1) as usize;
                return Ok(Certified::new(sum, bound + rounding(count, abs_sum), count));
            }
        }
        n += 1;
    }
}

/// Principal square root.
pub fn sqrt_principal(x: C64) -> C64 {
    x.sqrt()
}

/// `1 / cosh(x)` without overflow.
pub fn sech(x: C64) -> C64 {
    if x.re >= 0.0 {
        let t = (-x).exp();
        2.0 * t / (1.0 + t * t)
    } else {
        let t = x.exp();
        2.0 * t / (1.0 + t * t)
    }
}

/// `ln |1 / cosh(x)|` upper bound: `ln 2 - |Re x| - ln(1 - exp(-2|Re x|))`.
pub fn ln_sech_bound(re_x: f64) -> f64 {
    let a = re_x.abs();
    if a < 1e-3 {
        // near the imaginary axis cosh may vanish; callers avoid this region in tails
        return f64::INFINITY;
    }
    std::f64::consts::LN_2 - a - (-(-2.0 * a).exp()).ln_1p()
}

/// `1 / cos(x)` without overflow for large `|Im x|`.
pub fn sec(x: C64) -> C64 {
    // cos x = cosh(i x)
    sech(I * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nome_checks() {
        assert!(check_nome(c(0.5, 0.0)).is_ok());
        assert!(matches!(check_nome(c(1.0, 0.0)), Err(Error::NomeOnUnitCircle(_))));
        assert!(matches!(check_nome(c(1.5, 0.0)), Err(Error::NomeOutsideDisk(_))));
    }

    #[test]
    fn sech_matches_direct() {
        for x in [c(0.3, 0.2), c(-2.0, 1.0), c(5.0, -3.0)] {
            assert!((sech(x) - 1.0 / x.cosh()).norm() < 1e-14);
        }
        assert!(sech(c(800.0, 0.0)).norm() < 1e-300);
    }

    #[test]
    fn half_plane_rejects_real_axis() {
        assert!(HalfPlanePoint::new(c(1.0, 0.0)).is_err());
        let p = HalfPlanePoint::new(c(0.0, 1.0)).unwrap();
        assert!((p.q() - c((-2.0 * PI).exp(), 0.0)).norm() < 1e-18);
    }
}
