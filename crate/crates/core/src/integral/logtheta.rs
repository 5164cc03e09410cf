//! Integrals of `g(phi) log(theta_4(phi, q) / theta_4(0, q))` over `[0, pi]` for cosine
//! series `g(phi) = sum_{n >= 1} a_n cos(2 n phi)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::eta::eta_num;
use crate::numeric::lerch_num::csch;
use crate::numeric::mock_num::{mock_num, watson_numerator_num, MockName};
use crate::numeric::theta::theta4_num_tol;
use crate::numeric::{check_nome, sum_unilateral, Certified, C64, I};
use crate::quad::integrate_panels;
use crate::report::{IdentityReport, Mode, ReportBuilder};

const MAX_NODES: usize = 2_000_000;

/// `q^x` through the principal logarithm of `q`.
fn qpow(lq: C64, x: f64) -> C64 {
    (lq * x).exp()
}

/// Bound on `|log(theta_4(phi, q) / theta_4(0, q))|` for real `phi`:
/// the cosine expansion has coefficients `-2 q^n / (n (1 - q^(2n)))`.
fn log_ratio_bound(r: f64) -> f64 {
    let mut s = 0.0;
    let mut rn = 1.0;
    for n in 1..10_000 {
        rn *= r;
        let t = 4.0 * rn / (n as f64 * (1.0 - rn * rn));
        s += t;
        if t < 1e-18 * s {
            // remaining terms are below a geometric tail with ratio r
            return s + t * r / (1.0 - r);
        }
    }
    f64::INFINITY
}

/// `int_0^pi g(phi) log(theta_4(phi, q) / theta_4(0, q)) dphi` for `g` with the given
/// cosine coefficients `a_1, a_2, ...`.
pub fn logtheta4_integral(coeffs: &[C64], q: C64, tol: f64) -> Result<Certified> {
    check_nome(q)?;
    let t0 = theta4_num_tol(C64::new(0.0, 0.0), q, 1e-17)?.value;
    if t0.norm() < 1e-300 {
        return Err(Error::LogDomain);
    }
    let f = |phi: f64| {
        let g: C64 = coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * (2.0 * (k + 1) as f64 * phi).cos())
            .sum();
        if g == C64::new(0.0, 0.0) {
            return g;
        }
        match theta4_num_tol(C64::new(phi, 0.0), q, 1e-17) {
            Ok(t) => g * (t.value / t0).ln(),
            Err(_) => C64::new(f64::NAN, f64::NAN),
        }
    };
    let r = integrate_panels(&f, 0.0, PI, 8, tol, MAX_NODES)?;
    Ok(Certified::new(r.value, r.error, r.nodes))
}

/// `-pi sum_n a_n q^n / (n (1 - q^(2n)))`.
pub fn thm3_rhs(coeffs: &[C64], q: C64) -> C64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let n = (k + 1) as i32;
            -PI * a * q.powi(n) / (n as f64 * (1.0 - q.powi(2 * n)))
        })
        .sum()
}

/// Coefficients `a_1..a_N` of a cosine series, cut where the omitted coefficients change
/// the integral by less than `eps`; returns the coefficients and that bound.
fn truncated_coeffs(q: C64, coeff: &dyn Fn(usize) -> C64, ln_abs: &dyn Fn(usize) -> f64, eps: f64) -> Result<(Vec<C64>, f64)> {
    let lmax = PI * log_ratio_bound(q.norm());
    let mut out = Vec::new();
    for n in 1..10_000usize {
        out.push(coeff(n));
        // |a_m| is bounded by exp(ln_abs(m)), decreasing at least geometrically past n
        let e1 = ln_abs(n + 1);
        let e2 = ln_abs(n + 2);
        if e2 < e1 {
            let tail = e1.exp() / -(e2 - e1).exp_m1() * lmax;
            if tail <= eps {
                return Ok((out, tail));
            }
        }
    }
    Err(Error::TruncationFailure(10_000))
}

/// `1 + (2 / pi) int_0^pi d_t psi(t, q) log(theta_4(t, q) / theta_4(0, q)) dt` with
/// `psi(t, q) = sum_n (-1)^n q^(3n^2/2 + n/2) sin(2 n t)`.
pub fn prop1_lhs(q: C64, tol: f64) -> Result<Certified> {
    check_nome(q)?;
    let lq = q.ln();
    let ln_r = q.norm().ln();
    let coeff = |n: usize| {
        let m = n as f64;
        let s = if n % 2 == 0 { 2.0 * m } else { -2.0 * m };
        s * (qpow(lq, (3.0 * m * m + m) / 2.0) - qpow(lq, (3.0 * m * m - m) / 2.0))
    };
    let ln_abs = |n: usize| {
        let m = n as f64;
        (4.0 * m).ln() + ln_r * (3.0 * m * m - m) / 2.0
    };
    let (coeffs, tail) = truncated_coeffs(q, &coeff, &ln_abs, tol * 0.05)?;
    let int = logtheta4_integral(&coeffs, q, tol * 0.4)?;
    Ok(Certified::new(1.0 + 2.0 / PI * int.value, 2.0 / PI * (int.bound + tail), int.terms))
}

/// The one-sided sums on the right of the theorem for `psi_1` and `psi_2`.
fn thm4_side_sum(a: f64, shift: f64, q: C64, tol: f64) -> Result<Certified> {
    let lq = q.ln();
    let ln_r = q.norm().ln();
    sum_unilateral(
        1,
        |n| {
            let m = n as f64;
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            Ok(s * qpow(lq, a * m * m + shift * m) / (1.0 - qpow(lq, 2.0 * m)))
        },
        |n| {
            let m = n as f64;
            ln_r * (a * m * m + shift * m) - (1.0 - q.norm().powf(2.0 * m)).ln()
        },
        tol,
    )
}

/// The bilateral sum `sum_{n != 0} (-1)^n q^(a n^2 + b n) / (q^(-n) - q^n)` as printed.
fn thm4_printed_sum(a: f64, b: f64, q: C64, tol: f64) -> Result<Certified> {
    let lq = q.ln();
    let ln_r = q.norm().ln();
    crate::numeric::sum_bilateral(
        |n| {
            if n == 0 {
                return Ok(C64::new(0.0, 0.0));
            }
            let m = n as f64;
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            // 1 / (q^-n - q^n) = q^|n| / (sgn(n) (1 - q^(2|n|)))
            let k = m.abs();
            Ok(s * m.signum() * qpow(lq, a * m * m + b * m + k) / (1.0 - qpow(lq, 2.0 * k)))
        },
        |n| {
            let k = (n as f64).abs();
            if k == 0.0 {
                return f64::INFINITY;
            }
            ln_r * (a * k * k - b.abs() * k + k) - (1.0 - q.norm().powf(2.0 * k)).ln()
        },
        tol,
    )
}

/// `(1/2) sum_{n != 0} (-1)^n e((a n^2 + b n) z) / sinh(2 pi i n z)`.
fn thm4_sinh_sum(a: f64, b: f64, z: C64, tol: f64) -> Result<Certified> {
    let y = z.im;
    crate::numeric::sum_bilateral(
        |n| {
            if n == 0 {
                return Ok(C64::new(0.0, 0.0));
            }
            let m = n as f64;
            let s = if n % 2 == 0 { 0.5 } else { -0.5 };
            Ok(s * (2.0 * PI * I * (a * m * m + b * m) * z).exp() * csch(2.0 * PI * I * m * z))
        },
        |n| {
            let m = (n as f64).abs();
            if m == 0.0 {
                return f64::INFINITY;
            }
            -2.0 * PI * y * (a * m * m - b.abs() * m) - 2.0 * PI * y * m + (2.0f64).ln()
                - (-(-4.0 * PI * y * m).exp()).ln_1p()
        },
        tol,
    )
}

/// Checks the `psi_1`, `psi_2` and combined forms at `(a, b, q)`; the combined bilateral
/// form is recorded both as printed and with the sign that matches the `sinh` form.
pub fn thm4_check(a: f64, b: f64, q: C64, tol: f64) -> IdentityReport {
    let mut rep = ReportBuilder::new("thm4-psi", Mode::Numeric, tol);
    rep.param("a", a).param("b", b).param("q", q);
    if let Err(e) = thm4_fill(&mut rep, a, b, q, tol) {
        rep.error(&e);
    }
    rep.finish()
}

fn thm4_fill(rep: &mut ReportBuilder, a: f64, b: f64, q: C64, tol: f64) -> Result<()> {
    if !(a > 0.0) {
        return Err(Error::ConstraintViolation(format!("a must be positive, got {}", a)));
    }
    check_nome(q)?;
    let lq = q.ln();
    let ln_r = q.norm().ln();
    let eps = tol * 1e-3;
    let sgn = |n: usize| if n % 2 == 0 { 1.0 } else { -1.0 };
    let psi1 = |n: usize| {
        let m = n as f64;
        sgn(n) * m * qpow(lq, a * m * m + b * m)
    };
    let psi2 = |n: usize| {
        let m = n as f64;
        -sgn(n) * m * qpow(lq, a * m * m - b * m)
    };
    let ln1 = |n: usize| {
        let m = n as f64;
        m.ln() + ln_r * (a * m * m + b * m)
    };
    let ln2 = |n: usize| {
        let m = n as f64;
        m.ln() + ln_r * (a * m * m - b * m)
    };
    let (c1, t1) = truncated_coeffs(q, &psi1, &ln1, eps)?;
    let (c2, t2) = truncated_coeffs(q, &psi2, &ln2, eps)?;
    let l1 = logtheta4_integral(&c1, q, eps)?;
    let l2 = logtheta4_integral(&c2, q, eps)?;
    rep.nodes(l1.terms + l2.terms);
    let r1 = thm4_side_sum(a, b + 1.0, q, 1e-17)?;
    let r2 = thm4_side_sum(a, 1.0 - b, q, 1e-17)?;
    let e28 = (l1.value - (-PI * r1.value)).norm();
    let e30 = (l2.value - PI * r2.value).norm();
    rep.variant("psi1", Ok(e28)).variant("psi2", Ok(e30)).observe(e28).observe(e30);
    let total = l1.value + l2.value;
    let printed = PI * thm4_printed_sum(a, b, q, 1e-17)?.value;
    rep.variant("combined as printed", Ok((total - printed).norm()));
    rep.variant("combined with opposite sign", Ok((total + printed).norm()));
    rep.observe((total + printed).norm());
    if q.norm() > 0.0 {
        let z = lq / (2.0 * PI * I);
        let s = thm4_sinh_sum(a, b, z, 1e-17)?;
        let e33 = (total / PI - s.value).norm();
        rep.variant("sinh form", Ok(e33)).observe(e33);
    }
    rep.param("truncation_bound", t1 + t2 + l1.bound + l2.bound);
    Ok(())
}

/// `eta(q) f(q)` and the Watson numerator at `q`, the two right-hand sides of the
/// proposition.
pub fn prop1_rhs(q: C64) -> Result<(Certified, Certified)> {
    let eta = eta_num(q)?;
    let f = mock_num(MockName::F, q)?;
    let prod = Certified::new(eta.value * f.value, eta.bound * f.value.norm() + f.bound * eta.value.norm(), 0);
    Ok((prod, watson_numerator_num(q)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;

    #[test]
    fn cos2_instance() {
        for (q, expect) in [(0.1, -0.317_332_591_3), (0.3, -1.035_689_885_8)] {
            let q = c(q, 0.0);
            let lhs = logtheta4_integral(&[c(1.0, 0.0)], q, 1e-12).unwrap();
            let rhs = thm3_rhs(&[c(1.0, 0.0)], q);
            assert!((lhs.value - rhs).norm() < 1e-10);
            assert!((rhs.re - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_weight_gives_zero() {
        let v = logtheta4_integral(&[], c(0.2, 0.0), 1e-12).unwrap();
        assert_eq!(v.value, c(0.0, 0.0));
    }

    #[test]
    fn prop1_value() {
        let q = c(0.1, 0.0);
        let l = prop1_lhs(q, 1e-11).unwrap();
        let (r, w) = prop1_rhs(q).unwrap();
        assert!((l.value - r.value).norm() < 1e-9);
        assert!((r.value - w.value).norm() < 1e-12);
        assert!((l.value.re - 0.963_636_759_7).abs() < 1e-9);
    }

    #[test]
    fn thm4_b_zero_vanishes() {
        let r = thm4_check(2.0, 0.0, c(0.2, 0.0), 1e-9);
        assert!(r.passed(), "{:?}", r);
    }
}
