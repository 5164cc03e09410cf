//! Complex error function, `E(z) = erf(sqrt(pi) z)` and `beta(x) = int_x^inf t^(-1/2) e^(-pi t) dt`.

use std::f64::consts::PI;

use super::{Certified, Stop, C64};
use crate::error::{Error, Result};

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const CF_MAX: usize = 20_000;

/// Taylor series of `erf`, with an absolute error bound.
fn erf_taylor(z: C64) -> (C64, f64) {
    let z2 = z * z;
    let r2 = z2.norm();
    let mut t = z;
    let mut sum = z;
    let mut peak = z.norm();
    let mut n = 0usize;
    let mut stop = Stop::new();
    loop {
        n += 1;
        t *= -z2 / n as f64;
        let add = t / (2 * n + 1) as f64;
        sum += add;
        peak = peak.max(add.norm());
        if (n as f64) > r2 + 1.0 {
            let next = t.norm() * r2 / (n + 1) as f64 / (2 * n + 3) as f64;
            let ratio = r2 / (n + 2) as f64;
            let tail = next / (1.0 - ratio);
            if stop.done(n, tail <= 1e-17 * sum.norm().max(1e-300) || tail < 1e-300) {
                let bound = FRAC_2_SQRT_PI * (tail + 4.0 * (n as f64 + 1.0) * f64::EPSILON * peak);
                return (FRAC_2_SQRT_PI * sum, bound);
            }
        }
    }
}

/// `erfcx(z) = e^(z^2) erfc(z)` by the Laplace continued fraction, `Re z > 0`.
fn erfcx_cf(z: C64) -> Result<(C64, f64)> {
    // erfcx z = (1/sqrt(pi)) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    let tiny = 1e-300;
    let mut f = z;
    let mut cc = f;
    let mut d = C64::new(0.0, 0.0);
    let mut stop = Stop::new();
    for k in 1..CF_MAX {
        let a = k as f64 / 2.0;
        d = z + a * d;
        if d.norm() < tiny {
            d = C64::new(tiny, 0.0);
        }
        cc = z + a / cc;
        if cc.norm() < tiny {
            cc = C64::new(tiny, 0.0);
        }
        d = d.inv();
        let delta = cc * d;
        f *= delta;
        if stop.done(k - 1, (delta - 1.0).norm() < 1e-16) {
            let v = 1.0 / (f * PI.sqrt());
            // each step multiplies f by a rounded delta
            return Ok((v, v.norm() * (1e-16 + 4.0 * (k as f64 + 2.0) * f64::EPSILON)));
        }
    }
    Err(Error::TruncationFailure(CF_MAX))
}

/// Relative error of `e^w` when `w` itself carries absolute rounding `|w| eps`.
fn exp_rounding(w: C64) -> f64 {
    2.0 * (w.norm() + 2.0) * f64::EPSILON
}

/// `erfc(z)` with an absolute error bound.
pub fn erfc_bound(z: C64) -> Result<(C64, f64)> {
    if z.re < 0.0 {
        let (v, b) = erfc_bound(-z)?;
        return Ok((2.0 - v, b));
    }
    if z.re >= 1.0 {
        let (x, b) = erfcx_cf(z)?;
        let s = (-z * z).exp();
        return Ok((x * s, b * s.norm() + (x * s).norm() * exp_rounding(z * z)));
    }
    let (v, b) = erf_taylor(z);
    Ok((1.0 - v, b))
}

/// `erfcx(z) = e^(z^2) erfc(z)`, scaled to avoid underflow for `Re z >= 0`.
pub fn erfcx(z: C64) -> Result<(C64, f64)> {
    if z.re >= 1.0 {
        return erfcx_cf(z);
    }
    let (v, b) = erfc_bound(z)?;
    let s = (z * z).exp();
    Ok((v * s, b * s.norm() + (v * s).norm() * exp_rounding(z * z)))
}

pub fn erf(z: C64) -> Result<C64> {
    if z.re >= 1.0 || z.re <= -1.0 {
        let (v, _) = erfc_bound(z)?;
        return Ok(1.0 - v);
    }
    Ok(erf_taylor(z).0)
}

/// `E(z) = erf(sqrt(pi) z)`.
pub fn erf_e_num(x: C64) -> Result<Certified> {
    let z = PI.sqrt() * x;
    if z.re.abs() >= 1.0 {
        let (v, b) = erfc_bound(z)?;
        return Ok(Certified::new(1.0 - v, b + f64::EPSILON, 0));
    }
    let (v, b) = erf_taylor(z);
    Ok(Certified::new(v, b, 0))
}

/// `beta(x) = 1 - E(sqrt x) = erfc(sqrt(pi x))` for `x >= 0`.
pub fn beta_num(x: f64) -> Result<Certified> {
    if !(x >= 0.0) {
        return Err(Error::ConstraintViolation(format!("beta needs x >= 0, got {}", x)));
    }
    let (v, b) = erfc_bound(C64::new((PI * x).sqrt(), 0.0))?;
    Ok(Certified::new(C64::new(v.re, 0.0), b, 0))
}

/// `beta(x)` by quadrature of `2 int_{sqrt x}^inf e^(-pi s^2) ds`, independent of `erf`.
pub fn beta_quadrature(x: f64, tol: f64) -> Result<Certified> {
    if !(x >= 0.0) {
        return Err(Error::ConstraintViolation(format!("beta needs x >= 0, got {}", x)));
    }
    let s0 = x.sqrt();
    // e^(-pi s^2) < tol * 1e-3 beyond s0 + L
    let l = ((-(tol * 1e-3).ln()) / PI).sqrt() + 1.0;
    let f = |s: f64| C64::new(2.0 * (-PI * s * s).exp(), 0.0);
    // the Gaussian tail takes at most tol * 1e-3; the rest goes to the quadrature
    let r = crate::quad::integrate_interval(&f, s0, s0 + l, tol * 0.5, 200_000)?;
    // Gaussian tail beyond s1: 2 int_{s1}^inf e^{-pi s^2} <= e^{-pi s1^2} / (pi s1)
    let s1 = s0 + l;
    let tail = (-PI * s1 * s1).exp() / (PI * s1);
    Ok(Certified::new(r.value, r.error + tail, r.nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;

    #[test]
    fn erf_reference_values() {
        // erf(0.5), erf(1), erf(2), erf(3)
        let cases = [
            (0.5, 0.520_499_877_813_046_5),
            (1.0, 0.842_700_792_949_714_9),
            (2.0, 0.995_322_265_018_952_7),
            (3.0, 0.999_977_909_503_001_4),
        ];
        for (x, v) in cases {
            assert!((erf(c(x, 0.0)).unwrap().re - v).abs() < 1e-15, "x = {}", x);
        }
        let (v, _) = erfc_bound(c(5.0, 0.0)).unwrap();
        assert!((v.re / 1.537_459_794_428_034_8e-12 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn erf_is_odd_and_conjugate_symmetric() {
        for z in [c(0.3, 0.4), c(1.7, -0.2), c(-2.5, 1.1)] {
            let a = erf(z).unwrap();
            assert!((erf(-z).unwrap() + a).norm() < 1e-14);
            assert!((erf(z.conj()).unwrap() - a.conj()).norm() < 1e-14);
        }
    }

    #[test]
    fn beta_values() {
        assert!((beta_num(0.0).unwrap().value.re - 1.0).abs() < 1e-16);
        assert!((beta_num(1.0).unwrap().value.re - 0.012_188_882_184_802_887).abs() < 1e-13);
    }

    #[test]
    fn e_of_zero() {
        assert_eq!(erf_e_num(c(0.0, 0.0)).unwrap().value, c(0.0, 0.0));
    }
}
