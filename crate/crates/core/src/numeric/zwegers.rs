//! The normalized Lerch sum `mu(u, v; tau)`, the odd theta function `theta(v; tau)`, the
//! non-holomorphic correction `R(z; tau)`, the completion `M = mu - R(u - v)/2`, and the
//! unary theta series `R_f(z)` completing `q^(-1/24) f(q)`.

use std::f64::consts::PI;

use super::erf::{erf, erfcx};
use super::{e, sum_bilateral, sum_unilateral, Certified, C64, DEFAULT_TOL, I};
use crate::error::{Error, Result};

/// `u, v` and `tau` with `Im tau > 0`; `a = e(u)`, `b = e(v)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZwegersParams {
    pub u: C64,
    pub v: C64,
    pub tau: C64,
}

fn check_tau(tau: C64) -> Result<()> {
    if !(tau.im > 0.0) {
        return Err(Error::ConstraintViolation(format!("Im tau must be positive, got {}", tau)));
    }
    Ok(())
}

/// `theta(v; tau) = sum_{nu in Z + 1/2} (-1)^(nu - 1/2) q^(nu^2/2) b^nu`.
pub fn theta_zw_num_tol(v: C64, tau: C64, tol: f64) -> Result<Certified> {
    check_tau(tau)?;
    let term = |k: i64| {
        let nu = k as f64 + 0.5;
        let t = (2.0 * PI * I * (tau * nu * nu / 2.0 + v * nu)).exp();
        Ok(if k % 2 == 0 { t } else { -t })
    };
    let env = |k: i64| {
        let nu = k as f64 + 0.5;
        -2.0 * PI * (tau.im * nu * nu / 2.0 + v.im * nu)
    };
    sum_bilateral(term, env, tol)
}

pub fn theta_zw_num(v: C64, tau: C64) -> Result<Certified> {
    theta_zw_num_tol(v, tau, DEFAULT_TOL)
}

/// `mu(u, v; tau) = a^(1/2) / theta(v; tau) * sum_n (-b)^n q^(n(n+1)/2) / (1 - a q^n)`.
pub fn mu_num_tol(p: ZwegersParams, tol: f64) -> Result<Certified> {
    let ZwegersParams { u, v, tau } = p;
    check_tau(tau)?;
    let th = theta_zw_num_tol(v, tau, tol)?;
    // theta vanishes on Z + tau Z; the bound carries the rounding scale of the sum
    if th.value.norm() <= (10.0 * th.bound).max(1e-14) {
        return Err(Error::ThetaZero);
    }
    let y = tau.im;
    let term = |n: i64| -> Result<C64> {
        let nf = n as f64;
        let num = (2.0 * PI * I * (nf * (v + 0.5) + tau * nf * (nf + 1.0) / 2.0)).exp();
        if n >= 0 {
            let den = C64::new(1.0, 0.0) - e(u + tau * nf);
            if den.norm() < 1e-12 {
                return Err(Error::PoleHit(n));
            }
            Ok(num / den)
        } else {
            let t = e(-u - tau * nf);
            let den = C64::new(1.0, 0.0) - t;
            if den.norm() < 1e-12 {
                return Err(Error::PoleHit(n));
            }
            Ok(-num * t / den)
        }
    };
    let env = |n: i64| {
        let nf = n as f64;
        if n >= 0 {
            let r = (-2.0 * PI * (u.im + y * nf)).exp();
            if r >= 0.5 {
                return f64::INFINITY;
            }
            -2.0 * PI * (y * nf * (nf + 1.0) / 2.0 + nf * v.im) - (-r).ln_1p()
        } else {
            let r = (2.0 * PI * (u.im + y * nf)).exp();
            if r >= 0.5 {
                return f64::INFINITY;
            }
            -2.0 * PI * (y * nf * (nf - 1.0) / 2.0 + nf * v.im - u.im) - (-r).ln_1p()
        }
    };
    let s = sum_bilateral(term, env, tol)?;
    let pre = e(u / 2.0) / th.value;
    // first-order propagation of the theta error
    let bound = pre.norm() * s.bound + (pre * s.value).norm() * th.bound / th.value.norm();
    Ok(Certified::new(pre * s.value, bound, s.terms + th.terms))
}

pub fn mu_num(p: ZwegersParams) -> Result<Certified> {
    mu_num_tol(p, DEFAULT_TOL)
}

/// `R(z; tau) = sum_nu (-1)^(nu - 1/2) [sign(nu) - E((nu + Im z / y) sqrt(2y))] e(-nu z) q^(-nu^2/2)`.
pub fn r_zw_num_tol(z: C64, tau: C64, tol: f64) -> Result<Certified> {
    check_tau(tau)?;
    let y = tau.im;
    let alpha = z.im / y;
    let sq = (2.0 * y).sqrt() * PI.sqrt();
    let term = |k: i64| -> Result<C64> {
        let nu = k as f64 + 0.5;
        let sgn = if k % 2 == 0 { 1.0 } else { -1.0 };
        let x = (nu + alpha) * sq;
        let log_f = 2.0 * PI * I * (-nu * z - tau * nu * nu / 2.0);
        let s_nu = nu.signum();
        let val = if x != 0.0 && x.signum() == s_nu {
            // sign(nu) - erf(x) = sign(nu) erfc(|x|) = sign(nu) e^(-x^2) erfcx(|x|)
            let (cx, _) = erfcx(C64::new(x.abs(), 0.0))?;
            s_nu * cx * (log_f - x * x).exp()
        } else {
            (s_nu - erf(C64::new(x, 0.0))?) * log_f.exp()
        };
        Ok(sgn * val)
    };
    let env = |k: i64| {
        let nu = k as f64 + 0.5;
        -PI * y * nu * nu - 2.0 * PI * nu * z.im - 2.0 * PI * z.im * z.im / y + std::f64::consts::LN_2
    };
    sum_bilateral(term, env, tol)
}

pub fn r_zw_num(z: C64, tau: C64) -> Result<Certified> {
    r_zw_num_tol(z, tau, DEFAULT_TOL)
}

/// `M(u, v; tau) = mu(u, v; tau) - R(u - v; tau) / 2`.
pub fn m_num(p: ZwegersParams) -> Result<Certified> {
    let mu = mu_num(p)?;
    let r = r_zw_num(p.u - p.v, p.tau)?;
    Ok(Certified::new(mu.value - 0.5 * r.value, mu.bound + 0.5 * r.bound, mu.terms + r.terms))
}

/// Which residues `n = 1 mod 6` enter `R_f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueRange {
    /// All integers `n = 1 mod 6`, including `-5, -11, ...`.
    Bilateral,
    /// Only `n = 1, 7, 13, ...`.
    PositiveOnly,
}

/// `R_f(z) = sum_{n = 1 mod 6} sign(n) beta(n^2 y / 6) q^(-n^2/24)`, `y = Im z`.
pub fn r_f_num_tol(z: C64, range: ResidueRange, tol: f64) -> Result<Certified> {
    if !(z.im > 0.0) {
        return Err(Error::ConstraintViolation(format!("Im z must be positive, got {}", z)));
    }
    let y = z.im;
    let term = |k: i64| -> Result<C64> {
        let n = (6 * k + 1) as f64;
        // beta(x) = e^(-pi x) erfcx(sqrt(pi x))
        let x = n * n * y / 6.0;
        let (cx, _) = erfcx(C64::new((PI * x).sqrt(), 0.0))?;
        let log_f = -PI * x - 2.0 * PI * I * z * n * n / 24.0;
        Ok(n.signum() * cx * log_f.exp())
    };
    let env = |k: i64| {
        let n = (6 * k + 1) as f64;
        -PI * n * n * y / 12.0
    };
    match range {
        ResidueRange::Bilateral => sum_bilateral(term, env, tol),
        ResidueRange::PositiveOnly => sum_unilateral(0, term, env, tol),
    }
}

pub fn r_f_num(z: C64) -> Result<Certified> {
    r_f_num_tol(z, ResidueRange::Bilateral, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;

    #[test]
    fn theta_is_odd() {
        let tau = c(0.1, 0.9);
        for v in [c(0.2, 0.1), c(-0.37, 0.3), c(0.05, -0.2)] {
            let a = theta_zw_num(v, tau).unwrap().value;
            let b = theta_zw_num(-v, tau).unwrap().value;
            assert!((a + b).norm() < 1e-12);
        }
    }

    #[test]
    fn theta_zero_detected() {
        let p = ZwegersParams { u: c(0.1, 0.2), v: c(0.0, 0.0), tau: c(0.0, 1.0) };
        assert_eq!(mu_num(p), Err(Error::ThetaZero));
    }

    #[test]
    fn mu_is_symmetric() {
        let tau = c(0.15, 1.1);
        let (u, v) = (c(0.21, 0.13), c(-0.17, 0.31));
        let a = mu_num(ZwegersParams { u, v, tau }).unwrap();
        let b = mu_num(ZwegersParams { u: v, v: u, tau }).unwrap();
        assert!((a.value - b.value).norm() < 1e-12);
    }

    #[test]
    fn mu_antiperiodic_in_u() {
        let tau = c(-0.2, 0.8);
        let (u, v) = (c(0.11, 0.05), c(0.3, 0.2));
        let a = mu_num(ZwegersParams { u, v, tau }).unwrap().value;
        let b = mu_num(ZwegersParams { u: u + 1.0, v, tau }).unwrap().value;
        assert!((a + b).norm() < 1e-12);
    }

    #[test]
    fn r_truncation_stable() {
        let tau = c(0.0, 1.0);
        let z = c(0.0, 0.3);
        let coarse = r_zw_num_tol(z, tau, 1e-8).unwrap();
        let fine = r_zw_num_tol(z, tau, 1e-17).unwrap();
        assert!((coarse.value - fine.value).norm() < 1e-12f64.max(coarse.bound));
    }

    #[test]
    fn r_f_real_on_imaginary_axis() {
        let v = r_f_num(c(0.0, 1.0)).unwrap();
        assert!(v.value.im.abs() < 1e-15);
        let pos = r_f_num_tol(c(0.0, 1.0), ResidueRange::PositiveOnly, 1e-16).unwrap();
        assert!((pos.value - v.value).norm() > 1e-6);
    }
}
