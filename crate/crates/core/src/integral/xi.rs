//! The Fourier-side pieces `xi(n, a, b, z)` of `S(a, b, z) = sum_n q^(a n^2 + b n) / (1 + q^(2n))`
//! and the theta Poisson identity behind the assembled integral.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::theta::theta3_log;
use crate::numeric::{ln_sech_bound, sech, sum_bilateral, Certified, C64, I};
use crate::quad::ray_integrate;

use super::{SecKernel, MAX_NODES};

/// Three ways to evaluate `xi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum XiRoute {
    /// `int exp(2 pi i z a t^2 - 2 pi i (n - (b-1) z) t) / cosh(2 pi i z t) dt`.
    Direct,
    /// `i / (4 pi z sqrt(-2iaz)) int exp(-i (g + 2 pi (n - (b-1) z))^2 / (8 a pi z)) sec(g / (4z)) dg`.
    Parseval,
    /// The Parseval form after `g = L h`, with the Gaussian completed.
    Scaled(f64),
}

fn shift(n: i64, b: f64, z: C64) -> C64 {
    n as f64 - (b - 1.0) * z
}

pub fn xi_num(n: i64, a: f64, b: f64, z: C64, route: XiRoute, tol: f64) -> Result<Certified> {
    if !(a > 0.0) {
        return Err(Error::ConstraintViolation(format!("a must be positive, got {}", a)));
    }
    let m = shift(n, b, z);
    let one = C64::new(1.0, 0.0);
    match route {
        XiRoute::Direct => {
            let k = 2.0 * PI * I * z * a;
            if !(k.re < 0.0) {
                return Err(Error::PreconditionFailed(format!("direct route needs Re(2 pi i z a) < 0, got {}", k.re)));
            }
            let expo = move |t: C64| k * t * t - 2.0 * PI * I * m * t;
            let f = |t: C64| expo(t).exp() * sech(2.0 * PI * I * z * t);
            let env = |t: C64| expo(t).re + ln_sech_bound((2.0 * PI * I * z * t).re);
            let r = ray_integrate(&f, &env, one, tol, MAX_NODES)?;
            Ok(Certified::new(r.value, r.error, r.nodes))
        }
        XiRoute::Parseval => {
            let pre = I / (4.0 * PI * z * (-2.0 * I * a * z).sqrt());
            let kernel = SecKernel { slope: 1.0 / (4.0 * z), shift: C64::new(0.0, 0.0) };
            kernel.certify(one)?;
            let expo = move |g: C64| -I * (g + 2.0 * PI * m).powi(2) / (8.0 * a * PI * z);
            let f = |g: C64| expo(g).exp() * kernel.eval(g);
            let env = |g: C64| expo(g).re + kernel.ln_bound(g);
            let r = ray_integrate(&f, &env, one, tol / pre.norm(), MAX_NODES)?;
            Ok(Certified::new(pre * r.value, pre.norm() * r.error, r.nodes))
        }
        XiRoute::Scaled(l) => {
            if !(l > 0.0) {
                return Err(Error::PreconditionFailed(format!("scale L must be positive, got {}", l)));
            }
            let k = -I * l * l / (8.0 * a * PI * z);
            if !(k.re < 0.0) {
                return Err(Error::PreconditionFailed(format!("scaled route needs Re(-i L^2 / (8 a pi z)) < 0, got {}", k.re)));
            }
            let pre = I * l / (4.0 * PI * z * (-2.0 * I * a * z).sqrt()) * (-I * PI * m * m / (2.0 * a * z)).exp();
            let lin = -I * l * m / (2.0 * a * z);
            let expo = move |h: C64| k * h * h + lin * h;
            let f = |h: C64| expo(h).exp() * sech(I * h * l / (4.0 * z));
            let env = |h: C64| expo(h).re + ln_sech_bound((I * h * l / (4.0 * z)).re);
            let r = ray_integrate(&f, &env, one, tol / pre.norm().max(1e-300), MAX_NODES)?;
            Ok(Certified::new(pre * r.value, pre.norm() * r.error, r.nodes))
        }
    }
}

/// `(1/2) sum_n xi(n, a, b, z)`.
///
/// No closed bound on `|xi(n)|` is available; summation on each side stops when the
/// last two terms decrease and their geometric extrapolation falls below `tol`. The
/// returned bound is that extrapolation plus the quadrature errors.
pub fn s_from_xi(a: f64, b: f64, z: C64, route: XiRoute, tol: f64) -> Result<Certified> {
    let each = tol * 1e-2;
    let x0 = xi_num(0, a, b, z, route, each)?;
    let mut sum = x0.value;
    let mut bound = x0.bound;
    let mut nodes = x0.terms;
    for s in [1i64, -1] {
        let mut prev = x0.value.norm();
        let mut n = 0i64;
        loop {
            n += 1;
            if n > 400 {
                return Err(Error::TruncationFailure(400));
            }
            let x = xi_num(s * n, a, b, z, route, each)?;
            sum += x.value;
            bound += x.bound;
            nodes += x.terms;
            let cur = x.value.norm();
            if n >= 2 && cur < prev {
                let r = cur / prev;
                if cur * r / (1.0 - r) <= tol * 0.1 {
                    bound += cur * r / (1.0 - r);
                    break;
                }
            }
            prev = cur;
        }
    }
    Ok(Certified::new(0.5 * sum, 0.5 * bound, nodes))
}

/// Left side of the Poisson identity: `sum_n exp(-i (t + 2 n pi)^2 / (8 pi w))`.
pub fn poisson_lhs(t: f64, w: C64, tol: f64) -> Result<Certified> {
    if !(w.im > 0.0) {
        return Err(Error::ConstraintViolation(format!("Im w must be positive, got {}", w)));
    }
    let expo = move |n: i64| -I * (t + 2.0 * n as f64 * PI).powi(2) / (8.0 * PI * w);
    sum_bilateral(|n| Ok(expo(n).exp()), |n| expo(n).re, tol)
}

/// Right side: `sqrt(-2 i w) theta_3(t / 2, e(w))`.
pub fn poisson_rhs(t: f64, w: C64, tol: f64) -> Result<Certified> {
    if !(w.im > 0.0) {
        return Err(Error::ConstraintViolation(format!("Im w must be positive, got {}", w)));
    }
    let s = (-2.0 * I * w).sqrt();
    let th = theta3_log(C64::new(t / 2.0, 0.0), 2.0 * PI * I * w, tol)?;
    Ok(Certified::new(s * th.value, s.norm() * th.bound, th.terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;
    use crate::numeric::lerch_num::{lerch_num, LerchFamily, LerchParams};
    use crate::numeric::HalfPlanePoint;

    #[test]
    fn routes_agree() {
        let z = c(0.0, 1.0);
        let d = xi_num(0, 1.0, 1.0, z, XiRoute::Direct, 1e-12).unwrap();
        let p = xi_num(0, 1.0, 1.0, z, XiRoute::Parseval, 1e-12).unwrap();
        assert!((d.value - p.value).norm() < 1e-10);
        for l in [1.0, 2.0, 5.0] {
            let s = xi_num(0, 1.0, 1.0, z, XiRoute::Scaled(l), 1e-12).unwrap();
            assert!((s.value - p.value).norm() < 1e-10, "L = {}", l);
        }
    }

    #[test]
    fn reassembles_s() {
        let zz = c(0.0, 1.0);
        let s = s_from_xi(1.0, 1.0, zz, XiRoute::Direct, 1e-10).unwrap();
        let z = HalfPlanePoint::new(zz).unwrap();
        let direct = lerch_num(LerchFamily::S, LerchParams::abc(1.0, 1.0, 1.0), z).unwrap();
        assert!((s.value - direct.value).norm() < 1e-9, "{} vs {}", s.value, direct.value);
    }

    #[test]
    fn poisson() {
        let w = c(0.0, 1.0);
        for t in [0.0, 1.0, 2.5] {
            let l = poisson_lhs(t, w, 1e-17).unwrap();
            let r = poisson_rhs(t, w, 1e-17).unwrap();
            assert!((l.value - r.value).norm() < 1e-12);
        }
    }
}
