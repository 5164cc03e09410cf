//! Jacobi theta functions `theta_3(v, q) = sum_n q^(n^2) e^(2 i n v)` and
//! `theta_4(v, q) = sum_n (-1)^n q^(n^2) e^(2 i n v)`.

use super::{check_nome, sum_bilateral, Certified, C64, DEFAULT_TOL, I};
use crate::error::Result;

fn theta_core(v: C64, log_q: C64, alternating: bool, tol: f64) -> Result<Certified> {
    let term = |n: i64| {
        let nf = n as f64;
        let t = (nf * nf * log_q + 2.0 * I * nf * v).exp();
        Ok(if alternating && n % 2 != 0 { -t } else { t })
    };
    let env = |n: i64| {
        let nf = n as f64;
        nf * nf * log_q.re - 2.0 * nf * v.im
    };
    sum_bilateral(term, env, tol)
}

/// `theta_3` with the nome given through any logarithm of `q` (only integer powers occur).
pub fn theta3_log(v: C64, log_q: C64, tol: f64) -> Result<Certified> {
    if log_q.re >= 0.0 {
        check_nome(log_q.exp())?;
    }
    theta_core(v, log_q, false, tol)
}

pub fn theta4_log(v: C64, log_q: C64, tol: f64) -> Result<Certified> {
    if log_q.re >= 0.0 {
        check_nome(log_q.exp())?;
    }
    theta_core(v, log_q, true, tol)
}

/// `theta(v, q) e^extra` summed around the largest term, so that a huge theta value and a
/// tiny `e^extra` never meet as `inf * 0`. Truncation is below `1e-17` relative to the
/// largest term. Requires `Re log_q < 0`.
pub fn theta_times_exp(v: C64, log_q: C64, alternating: bool, extra: C64) -> C64 {
    assert!(log_q.re < 0.0, "nome must lie inside the unit disk");
    let re = |n: f64| n * n * log_q.re - 2.0 * n * v.im;
    let peak = (v.im / log_q.re).round();
    let m = re(peak);
    let term = |n: f64| {
        let t = (n * n * log_q + 2.0 * I * n * v - m).exp();
        if alternating && (n as i64) % 2 != 0 {
            -t
        } else {
            t
        }
    };
    let mut sum = term(peak);
    let floor = -41.0 * super::truncation_scale().powi(2);
    for dir in [1.0, -1.0] {
        let mut n = peak + dir;
        // past the peak the exponents decrease monotonically
        while re(n) - m > floor {
            sum += term(n);
            n += dir;
        }
    }
    (C64::new(m, 0.0) + extra).exp() * sum
}

pub fn theta3_num_tol(v: C64, q: C64, tol: f64) -> Result<Certified> {
    check_nome(q)?;
    if q == C64::new(0.0, 0.0) {
        return Ok(Certified::new(C64::new(1.0, 0.0), 0.0, 1));
    }
    theta_core(v, q.ln(), false, tol)
}

pub fn theta4_num_tol(v: C64, q: C64, tol: f64) -> Result<Certified> {
    check_nome(q)?;
    if q == C64::new(0.0, 0.0) {
        return Ok(Certified::new(C64::new(1.0, 0.0), 0.0, 1));
    }
    theta_core(v, q.ln(), true, tol)
}

pub fn theta3_num(v: C64, q: C64) -> Result<Certified> {
    theta3_num_tol(v, q, DEFAULT_TOL)
}

pub fn theta4_num(v: C64, q: C64) -> Result<Certified> {
    theta4_num_tol(v, q, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::numeric::c;
    use std::f64::consts::PI;

    #[test]
    fn trivial_nome() {
        assert_eq!(theta3_num(c(0.7, 0.1), c(0.0, 0.0)).unwrap().value, c(1.0, 0.0));
    }

    #[test]
    fn partial_sum_at_point_one() {
        let t = theta3_num(c(0.0, 0.0), c(0.1, 0.0)).unwrap();
        let direct = 1.0 + 2.0 * (0.1 + 1e-4 + 1e-9 + 1e-16);
        assert!((t.value.re - direct).abs() < 1e-15);
        assert!(t.bound < 1e-14);
    }

    #[test]
    fn theta4_shift() {
        let q = c(0.3, 0.0);
        let a = theta4_num(c(PI / 2.0, 0.0), q).unwrap().value;
        let b = theta3_num(c(0.0, 0.0), q).unwrap().value;
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn rejects_outside_disk() {
        assert!(matches!(theta3_num(c(0.0, 0.0), c(1.2, 0.0)), Err(Error::NomeOutsideDisk(_))));
    }
}
