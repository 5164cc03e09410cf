//! Bilateral Lerch sums evaluated numerically.

use std::f64::consts::{LN_2, PI};

use super::{ln_sech_bound, sech, sum_bilateral, Certified, HalfPlanePoint, C64, DEFAULT_TOL, I};
use crate::error::{Error, Result};

/// `(a, b, c)` for the sinh/cosh sums, or `(a, b, A, B, w)` for the general cosh family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LerchParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub cap_a: f64,
    pub cap_b: f64,
    pub w: C64,
}

impl LerchParams {
    pub fn abc(a: f64, b: f64, c: f64) -> Self {
        LerchParams { a, b, c, cap_a: 1.0, cap_b: 0.0, w: C64::new(0.0, 0.0) }
    }

    pub fn general(a: f64, b: f64, cap_a: f64, cap_b: f64, w: C64) -> Self {
        LerchParams { a, b, c: 1.0, cap_a, cap_b, w }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LerchFamily {
    /// `sum_n q^(a n^2 + b n) / (1 + q^(2n))`.
    S,
    /// `sum_{n != 0} (-1)^n q^(a n^2 + b n) / sinh(2 pi i n c z)`.
    Fs,
    /// `sum_n (-1)^n q^(a n^2 + b n) / cosh(2 pi i n c z)`.
    Fc,
    /// `sum_n q^(a n^2 + b n) / cosh(2 pi i w (A n + B))`.
    General,
}

impl std::str::FromStr for LerchFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(LerchFamily::S),
            "fs" => Ok(LerchFamily::Fs),
            "fc" => Ok(LerchFamily::Fc),
            "general" => Ok(LerchFamily::General),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// `1 / sinh(x)` without overflow.
pub fn csch(x: C64) -> C64 {
    if x.re >= 0.0 {
        let t = (-x).exp();
        2.0 * t / (1.0 - t * t)
    } else {
        let t = x.exp();
        -2.0 * t / (1.0 - t * t)
    }
}

fn ln_csch_bound(re_x: f64) -> f64 {
    let a = re_x.abs();
    if a < 1e-3 {
        return f64::INFINITY;
    }
    LN_2 - a - (-(-2.0 * a).exp()).ln_1p()
}

pub fn lerch_num_tol(family: LerchFamily, p: LerchParams, z: HalfPlanePoint, tol: f64) -> Result<Certified> {
    if !(p.a > 0.0) {
        return Err(Error::ConstraintViolation(format!("a must be positive, got {}", p.a)));
    }
    let lq = z.log_q();
    let y = z.z().im;
    let quad_exp = move |n: f64| lq * (p.a * n * n + p.b * n);
    let quad_env = move |n: f64| -2.0 * PI * y * (p.a * n * n + p.b * n);
    let alt = |n: i64| if n % 2 == 0 { 1.0 } else { -1.0 };
    match family {
        LerchFamily::S => sum_bilateral(
            |n| {
                let nf = n as f64;
                if n >= 0 {
                    Ok(quad_exp(nf).exp() / (1.0 + (2.0 * nf * lq).exp()))
                } else {
                    Ok((quad_exp(nf) - 2.0 * nf * lq).exp() / (1.0 + (-2.0 * nf * lq).exp()))
                }
            },
            |n| {
                let nf = n as f64;
                let shift = if n < 0 { 4.0 * PI * y * nf } else { 0.0 };
                let r = (-4.0 * PI * y * nf.abs()).exp();
                quad_env(nf) + shift - (-r).ln_1p()
            },
            tol,
        ),
        LerchFamily::Fs | LerchFamily::Fc => {
            if p.c == 0.0 {
                return Err(Error::ConstraintViolation("c must be nonzero".into()));
            }
            let sinh = family == LerchFamily::Fs;
            sum_bilateral(
                |n| {
                    if n == 0 {
                        return Ok(if sinh { C64::new(0.0, 0.0) } else { C64::new(1.0, 0.0) });
                    }
                    let nf = n as f64;
                    let x = 2.0 * PI * I * nf * p.c * z.z();
                    let k = if sinh { csch(x) } else { sech(x) };
                    Ok(alt(n) * quad_exp(nf).exp() * k)
                },
                |n| {
                    let nf = n as f64;
                    let re_x = -2.0 * PI * nf * p.c * y;
                    quad_env(nf) + if sinh { ln_csch_bound(re_x) } else { ln_sech_bound(re_x) }
                },
                tol,
            )
        }
        LerchFamily::General => {
            if p.w.im == 0.0 {
                return Err(Error::ConstraintViolation("Im w must be nonzero".into()));
            }
            sum_bilateral(
                |n| {
                    let nf = n as f64;
                    let x = 2.0 * PI * I * p.w * (p.cap_a * nf + p.cap_b);
                    let denom_check = 1.0 + (-2.0 * x).exp();
                    if x.re >= 0.0 && denom_check.norm() < 1e-14 {
                        return Err(Error::PoleHit(n));
                    }
                    Ok(quad_exp(nf).exp() * sech(x))
                },
                |n| {
                    let nf = n as f64;
                    quad_env(nf) + ln_sech_bound(-2.0 * PI * p.w.im * (p.cap_a * nf + p.cap_b))
                },
                tol,
            )
        }
    }
}

pub fn lerch_num(family: LerchFamily, p: LerchParams, z: HalfPlanePoint) -> Result<Certified> {
    lerch_num_tol(family, p, z, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lerch::fc_series;
    use crate::numeric::c;

    #[test]
    fn s_tends_to_half() {
        let z = HalfPlanePoint::new(c(0.0, 5.0)).unwrap();
        let v = lerch_num(LerchFamily::S, LerchParams::abc(1.0, 0.0, 1.0), z).unwrap();
        assert!((v.value.re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fc_matches_exact_series() {
        let z = HalfPlanePoint::new(c(0.0, 0.8)).unwrap();
        let q = z.q().re;
        let exact = fc_series(3, 1, 2, 60).eval_f64(q);
        let num = lerch_num(LerchFamily::Fc, LerchParams::abc(3.0, 1.0, 2.0), z).unwrap();
        assert!((num.value.re - exact).abs() < 1e-10);
    }

    #[test]
    fn general_matches_direct_sum() {
        let zz = c(0.1, 0.9);
        let z = HalfPlanePoint::new(zz).unwrap();
        let g = lerch_num(LerchFamily::General, LerchParams::general(3.0, 1.0, 1.0, 0.0, 2.0 * zz), z).unwrap();
        let direct: C64 = (-40..=40)
            .map(|n: i64| {
                let nf = n as f64;
                (2.0 * PI * I * zz * (3.0 * nf * nf + nf)).exp() / (2.0 * PI * I * 2.0 * zz * nf).cosh()
            })
            .sum();
        assert!((g.value - direct).norm() < 1e-12);
    }

    #[test]
    fn real_w_rejected() {
        let z = HalfPlanePoint::new(c(0.0, 1.0)).unwrap();
        let r = lerch_num(LerchFamily::General, LerchParams::general(1.0, 0.0, 1.0, 0.0, c(1.0, 0.0)), z);
        assert!(matches!(r, Err(Error::ConstraintViolation(_))));
    }
}
