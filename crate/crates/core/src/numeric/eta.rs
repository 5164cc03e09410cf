//! `eta(q) = prod_{n>=1} (1 - q^n)` and the Dedekind form `eta_D(z) = e(z/24) eta(e(z))`.

use super::{check_nome, e, Certified, HalfPlanePoint, Stop, C64, DEFAULT_TOL, TERM_BUDGET};
use crate::error::{Error, Result};

pub fn eta_num_tol(q: C64, tol: f64) -> Result<Certified> {
    check_nome(q)?;
    let r = q.norm();
    let mut prod = C64::new(1.0, 0.0);
    let mut mag = 1.0;
    let mut qn = C64::new(1.0, 0.0);
    let mut rn = 1.0;
    let mut stop = Stop::new();
    for n in 1..=TERM_BUDGET {
        qn *= q;
        rn *= r;
        prod *= C64::new(1.0, 0.0) - qn;
        mag *= 1.0 + rn;
        // |log prod_{k>n}(1 - q^k)| <= r^(n+1) / ((1 - r)(1 - r^(n+1)))
        let rn1 = rn * r;
        let delta = rn1 / ((1.0 - r) * (1.0 - rn1));
        let tail = prod.norm() * delta.exp_m1();
        if stop.done(n - 1, tail <= tol * (1.0 + prod.norm())) {
            return Ok(Certified::new(prod, tail + super::rounding(n, mag), n));
        }
    }
    Err(Error::TruncationFailure(TERM_BUDGET))
}

pub fn eta_num(q: C64) -> Result<Certified> {
    eta_num_tol(q, DEFAULT_TOL)
}

pub fn eta_dedekind_num_tol(z: C64, tol: f64) -> Result<Certified> {
    let p = HalfPlanePoint::new(z)?;
    let pre = e(z / 24.0);
    let et = eta_num_tol(p.q(), tol)?;
    Ok(Certified::new(pre * et.value, pre.norm() * et.bound, et.terms))
}

pub fn eta_dedekind_num(z: C64) -> Result<Certified> {
    eta_dedekind_num_tol(z, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{c, I};

    #[test]
    fn eta_at_point_one() {
        // pentagonal expansion 1 - q - q^2 + q^5 + q^7 - ...
        let q = 0.1f64;
        let pent = 1.0 - q - q.powi(2) + q.powi(5) + q.powi(7) - q.powi(12) - q.powi(15);
        let v = eta_num(c(q, 0.0)).unwrap();
        assert!((v.value.re - pent).abs() < 1e-15);
        assert!((v.value.re - 0.8900100999).abs() < 1e-10);
    }

    #[test]
    fn dedekind_fixed_point() {
        let z = c(0.0, 1.0);
        let lhs = eta_dedekind_num(-1.0 / z).unwrap().value;
        let rhs = (-I * z).sqrt() * eta_dedekind_num(z).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-15);
    }
}
