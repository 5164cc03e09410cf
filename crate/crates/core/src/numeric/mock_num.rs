//! Direct summation of `f`, `phi`, `psi` with running Pochhammer denominators.

use super::{check_nome, rounding, Certified, C64, DEFAULT_TOL, TERM_BUDGET};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MockName {
    F,
    Phi,
    Psi,
}

impl std::str::FromStr for MockName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f" => Ok(MockName::F),
            "phi" => Ok(MockName::Phi),
            "psi" => Ok(MockName::Psi),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// `(r; r)_inf` for `0 <= r < 1`, a lower bound for every Pochhammer modulus used here.
fn poch_floor(r: f64) -> f64 {
    let mut p = 1.0;
    let mut rn = 1.0;
    for _ in 0..TERM_BUDGET {
        rn *= r;
        if rn < 1e-18 {
            break;
        }
        p *= 1.0 - rn;
    }
    // the neglected factors lie in [1 - 2 rn / (1 - r), 1]
    p * (1.0 - 2.0 * rn / (1.0 - r)).max(0.0)
}

/// Sums `num_n / den_n` with `den_n = den_(n-1) * factor(n)`; `bound(n)` bounds the tail after `n`.
fn running_sum(
    first: usize,
    num: impl Fn(usize) -> C64,
    factor: impl Fn(usize) -> C64,
    tail_after: impl Fn(usize) -> f64,
    tol: f64,
) -> Result<Certified> {
    let mut den = C64::new(1.0, 0.0);
    let mut sum = C64::new(0.0, 0.0);
    let mut abs = 0.0;
    let mut stop = super::Stop::new();
    for n in first..TERM_BUDGET {
        if n > 0 {
            den *= factor(n);
        }
        let t = num(n) / den;
        sum += t;
        abs += t.norm();
        let tail = tail_after(n);
        if stop.done(n - first, tail <= tol * (1.0 + sum.norm())) {
            let count = n - first + 1;
            return Ok(Certified::new(sum, tail + rounding(count * 4, abs), count));
        }
    }
    Err(Error::TruncationFailure(TERM_BUDGET))
}

pub fn mock_num_tol(name: MockName, q: C64, tol: f64) -> Result<Certified> {
    let r = q.norm();
    if (r - 1.0).abs() < 1e-12 {
        return Err(Error::NomeOnUnitCircle(r));
    }
    if r > 1.0 {
        return match name {
            MockName::F => f_recip_num_tol(1.0 / q, tol),
            _ => Err(Error::NomeOutsideDisk(r)),
        };
    }
    check_nome(q)?;
    let p = poch_floor(r);
    let one = C64::new(1.0, 0.0);
    let sq_tail = |n: usize| {
        let m = (n + 1) as f64;
        r.powf(m * m) / (1.0 - r.powf(2.0 * m + 1.0))
    };
    match name {
        MockName::F => running_sum(
            0,
            |n| q.powu((n * n) as u32),
            |n| (one + q.powu(n as u32)).powu(2),
            |n| sq_tail(n) / (p * p),
            tol,
        ),
        MockName::Phi => running_sum(
            0,
            |n| q.powu((n * n) as u32),
            |n| one + q.powu(2 * n as u32),
            |n| sq_tail(n) / p,
            tol,
        ),
        MockName::Psi => running_sum(
            1,
            |n| q.powu((n * n) as u32),
            |n| one - q.powu(2 * n as u32 - 1),
            |n| sq_tail(n) / p,
            tol,
        ),
    }
}

pub fn mock_num(name: MockName, q: C64) -> Result<Certified> {
    mock_num_tol(name, q, DEFAULT_TOL)
}

/// `f(1/q) = sum_{n>=0} q^n / (-q; q)_n^2` for `|q| < 1`.
pub fn f_recip_num_tol(q: C64, tol: f64) -> Result<Certified> {
    check_nome(q)?;
    let r = q.norm();
    let p = poch_floor(r);
    let one = C64::new(1.0, 0.0);
    running_sum(
        0,
        |n| q.powu(n as u32),
        |n| (one + q.powu(n as u32)).powu(2),
        |n| r.powi(n as i32 + 1) / ((1.0 - r) * p * p),
        tol,
    )
}

/// `2 sum_n (-1)^n q^(n(3n+1)/2) / (1 + q^n)`, the Watson numerator.
pub fn watson_numerator_num(q: C64) -> Result<Certified> {
    check_nome(q)?;
    let lq = q.ln();
    let r = q.norm();
    let term = |n: i64| -> Result<C64> {
        let e = (n * (3 * n + 1) / 2) as f64;
        let sgn = if n % 2 == 0 { 2.0 } else { -2.0 };
        if n >= 0 {
            Ok(sgn * (e * lq).exp() / (1.0 + (n as f64 * lq).exp()))
        } else {
            // 1/(1 + q^n) = q^(-n) / (1 + q^(-n))
            let m = (-n) as f64;
            Ok(sgn * ((e + m) * lq).exp() / (1.0 + (m * lq).exp()))
        }
    };
    let env = |n: i64| {
        let e = (n * (3 * n + 1) / 2 + if n < 0 { -n } else { 0 }) as f64;
        let denom = 1.0 - r.powi(n.unsigned_abs() as i32);
        std::f64::consts::LN_2 + e * r.ln() - denom.max(1e-300).ln()
    };
    super::sum_bilateral(term, env, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{c, eta::eta_num};

    #[test]
    fn f_at_e_minus_two_pi() {
        let q = c((-2.0 * std::f64::consts::PI).exp(), 0.0);
        let v = mock_num(MockName::F, q).unwrap();
        assert!((v.value.re - 1.001_860_50).abs() < 1e-7);
        assert!(v.bound < 1e-13, "bound {:e}", v.bound);
    }

    #[test]
    fn unit_circle_rejected() {
        assert!(matches!(mock_num(MockName::F, c(0.0, 1.0)), Err(Error::NomeOnUnitCircle(_))));
    }

    #[test]
    fn outside_disk_uses_reciprocal_series() {
        let q = c(0.2, 0.0);
        let a = mock_num(MockName::F, 1.0 / q).unwrap().value;
        let b = f_recip_num_tol(q, 1e-16).unwrap().value;
        assert_eq!(a, b);
    }

    #[test]
    fn watson_numeric() {
        let q = c(0.1, 0.0);
        let lhs = eta_num(q).unwrap().value * mock_num(MockName::F, q).unwrap().value;
        let rhs = watson_numerator_num(q).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-12);
    }
}
