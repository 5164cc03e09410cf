//! Product and divisor-sum forms of the theta quotients `W`, `Q`, the function
//! `F_3(a, t; z)`, and the `F_3`-kernel integrals of Lerch sums.
//!
//! `W^(4)_(a,p) = q^C (q^a; q^p)_inf (q^(p-a); q^p)_inf` with `C = p/12 - a/2 + a^2/(2p)`, and
//! `W^(3)` the same with `+` in every factor. `Q^(k)_(a,t) = W^(k)_(a-t, 2a)`, and
//! `F_3(a, t; z) = Q^(3)_(a,t)` at `q = e(z)` for real or complex `t`.

use std::f64::consts::PI;

use crate::divisor::DivisorTable;
use crate::error::{Error, Result};
use crate::integral::{divided, ln_theta_bound, scaled, SecKernel, ThetaKind, MAX_NODES};
use crate::numeric::eta::eta_dedekind_num_tol;
use crate::numeric::theta::theta3_log;
use crate::numeric::{Certified, Stop, C64, I, TERM_BUDGET};
use crate::qseries::{divisor_exp_series, eta_dilated, pochhammer_series, Count, DivisorConstraint, DivisorWeight};
use crate::quad::ray_integrate;
use crate::series::{rat, Exponent, FormalSeries};

fn w_offset(a: i64, p: i64) -> Exponent {
    Exponent::new(p, 12) - Exponent::new(a, 2) + Exponent::new(a * a, 2 * p)
}

fn check_residue(a: i64, p: i64) -> Result<()> {
    if !(p >= 1 && a > 0 && a < p) {
        return Err(Error::ConstraintViolation(format!("need 0 < a < p, got a = {}, p = {}", a, p)));
    }
    Ok(())
}

/// `W^(kind)_(a,p)` from its product, through relative order `order`.
pub fn w_series(kind: ThetaKind, a: i64, p: i64, order: usize) -> Result<FormalSeries> {
    check_residue(a, p)?;
    let sign = if kind == ThetaKind::Four { 1 } else { -1 };
    let step = Exponent::from_integer(p);
    let f1 = pochhammer_series(Exponent::from_integer(a), step, Count::Infinite, sign, order)?;
    let f2 = pochhammer_series(Exponent::from_integer(p - a), step, Count::Infinite, sign, order)?;
    Ok(f1.mul_series(&f2).shift(w_offset(a, p)))
}

/// `W^(kind)_(a,p)` from the divisor-sum exponential; `B = +-a mod p`, weight `(-1)^A` for kind 3.
pub fn w_divisor_series(kind: ThetaKind, a: i64, p: i64, order: usize, table: &DivisorTable) -> Result<FormalSeries> {
    check_residue(a, p)?;
    let weight = if kind == ThetaKind::Four { DivisorWeight::Flat } else { DivisorWeight::Alternating };
    let body = divisor_exp_series(DivisorConstraint::CofactorResidue { residue: a, modulus: p }, weight, 1, order, table)?;
    Ok(body.shift(w_offset(a, p)))
}

/// `sum_n (+-1)^n q^(p n^2 / 2 + (p - 2a) n / 2)` through `q^order`; the sign alternates for kind 4.
pub fn w_theta_side(kind: ThetaKind, a: i64, p: i64, order: usize) -> Result<FormalSeries> {
    check_residue(a, p)?;
    let top = order as i64;
    let mut terms = Vec::new();
    let expo = |n: i64| (p * n * n + (p - 2 * a) * n) / 2;
    for dir in [1i64, -1] {
        let mut n = if dir == 1 { 0 } else { -1 };
        // exponents grow without bound in both directions from the vertex
        loop {
            let e = expo(n);
            if e > top && (n * dir) as f64 > (2 * a - p).abs() as f64 / p as f64 + 1.0 {
                break;
            }
            if e <= top {
                let s = if kind == ThetaKind::Four && n % 2 != 0 { -1 } else { 1 };
                terms.push((e, rat(s)));
            }
            n += dir;
        }
    }
    Ok(FormalSeries::from_terms(terms, top))
}

/// The theta side against `q^(-C) (q^p; q^p)_inf W`, exactly; returns the differing exponents.
pub fn w_check(kind: ThetaKind, a: i64, p: i64, order: usize) -> Result<Vec<Exponent>> {
    let lhs = w_theta_side(kind, a, p, order)?;
    let w = w_series(kind, a, p, order)?.shift(-w_offset(a, p));
    let rhs = eta_dilated(p as usize, order).mul_series(&w);
    lhs.mismatches(&rhs)
}

fn check_at(a: i64, t: i64) -> Result<()> {
    if !(a > t && t >= 0) {
        return Err(Error::ConstraintViolation(format!("need a > t >= 0, got a = {}, t = {}", a, t)));
    }
    Ok(())
}

/// `Q^(kind)_(a,t)` from its product.
pub fn q_series(kind: ThetaKind, a: i64, t: i64, order: usize) -> Result<FormalSeries> {
    check_at(a, t)?;
    w_series(kind, a - t, 2 * a, order)
}

/// `Q^(kind)_(a,t)` from the divisor-sum exponential, defined for integers `a > t > 0`.
pub fn q_divisor_series(kind: ThetaKind, a: i64, t: i64, order: usize, table: &DivisorTable) -> Result<FormalSeries> {
    if !(a > t && t > 0) {
        return Err(Error::ConstraintViolation(format!("divisor form needs integers a > t > 0, got a = {}, t = {}", a, t)));
    }
    w_divisor_series(kind, a - t, 2 * a, order, table)
}

/// `theta_kind(pi z t, e(a z)) = q^(-t^2/(4a)) eta_D(2 a z) Q`, exactly as series in `q`.
pub fn q_check(kind: ThetaKind, a: i64, t: i64, order: usize) -> Result<Vec<Exponent>> {
    check_at(a, t)?;
    w_check(kind, a - t, 2 * a, order)
}

/// `log F_3(a, t; z)` by the truncated product, with an absolute error bound on the
/// logarithm (that is, a relative bound on `F_3`).
pub fn ln_f3(a: f64, t: C64, z: C64, tol: f64) -> Result<(C64, f64, usize)> {
    if !(a > 0.0) {
        return Err(Error::ConstraintViolation(format!("a must be positive, got {}", a)));
    }
    if !(z.im > 0.0) {
        return Err(Error::ConstraintViolation(format!("Im z must be positive, got {}", z)));
    }
    let lq = 2.0 * PI * I * z;
    let mut s = lq * (-a / 12.0 + t * t / (4.0 * a));
    let mut err = 4.0 * f64::EPSILON * s.norm();
    let ratio = (lq.re * 2.0 * a).exp();
    let mut stop = Stop::new();
    for n in 0..TERM_BUDGET {
        let base = (2 * n + 1) as f64 * a;
        for e in [base - t, base + t] {
            let lx = lq * e;
            // log(1 + x) with x = e^lx, rewritten through 1/x when |x| > 1
            let (term, u) = if lx.re > 0.0 {
                let u = (-lx).exp();
                (lx + (1.0 + u).ln(), u)
            } else {
                let u = lx.exp();
                (if u.norm() < 1e-9 { u - u * u / 2.0 } else { (1.0 + u).ln() }, u)
            };
            s += term;
            err += 4.0 * f64::EPSILON * (lx.norm() + 1.0 + u.norm() / (1.0 + u).norm().max(1e-300));
        }
        // every later factor has |x| <= |x_next| ratio^k
        let next = (2 * n + 3) as f64 * a;
        let xm = (lq.re * next - (lq * t).re).exp();
        let xp = (lq.re * next + (lq * t).re).exp();
        let big = xm.max(xp);
        if big < 0.5 {
            let tail = (xm + xp) / ((1.0 - ratio) * (1.0 - big));
            if stop.done(n, tail <= tol) {
                return Ok((s, err + tail, 2 * n + 2));
            }
        }
    }
    Err(Error::TruncationFailure(TERM_BUDGET))
}

/// `F_3(a, t; z)` by the truncated product.
pub fn f3_num(a: f64, t: C64, z: C64) -> Result<Certified> {
    let (l, err, n) = ln_f3(a, t, z, 1e-17)?;
    let v = l.exp();
    Ok(Certified::new(v, v.norm() * err.exp_m1(), n))
}

/// `theta_3(pi z t, e(a z)) q^(t^2/(4a)) / eta_D(2 a z)`, the theta-quotient route to `F_3`.
pub fn f3_theta_form(a: f64, t: C64, z: C64) -> Result<Certified> {
    let th = theta3_log(PI * z * t, 2.0 * PI * I * a * z, 1e-17)?;
    let g = (2.0 * PI * I * z * t * t / (4.0 * a)).exp();
    let eta = eta_dedekind_num_tol(2.0 * a * z, 1e-17)?;
    divided(Certified::new(th.value * g, th.bound * g.norm(), th.terms), eta)
}

/// Primed variables of the `F_3` modular relation: `(1/a, 2 t z / a, -1/(4z))`.
pub fn f3_primed(a: f64, t: C64, z: C64) -> (f64, C64, C64) {
    (1.0 / a, 2.0 * t * z / a, -1.0 / (4.0 * z))
}

/// `(F_3(a', t'; z'), e^(-i pi t^2 z / (2a)) F_3(a, t; z))`.
pub fn f3_modular_sides(a: f64, t: C64, z: C64) -> Result<(Certified, Certified)> {
    let (ap, tp, zp) = f3_primed(a, t, z);
    let lhs = f3_num(ap, tp, zp)?;
    let f = f3_num(a, t, z)?;
    let g = (-I * PI * t * t * z / (2.0 * a)).exp();
    Ok((lhs, scaled(g, f)))
}

/// `(eta_D(-1/z), sqrt(-i z) eta_D(z))`.
pub fn eta_modular_sides(z: C64) -> Result<(Certified, Certified)> {
    let l = eta_dedekind_num_tol(-1.0 / z, 1e-17)?;
    let r = eta_dedekind_num_tol(z, 1e-17)?;
    Ok((l, scaled((-I * z).sqrt(), r)))
}

/// The kernel `K(a, z, h) = F_3(1/a, 2h/a; -1/(4z))`.
pub fn f3_kernel(a: f64, z: C64, h: C64) -> C64 {
    let (ap, _, zp) = f3_primed(a, C64::new(0.0, 0.0), z);
    match ln_f3(ap, 2.0 * h / a, zp, 1e-17) {
        Ok((l, _, _)) => l.exp(),
        Err(_) => C64::new(f64::NAN, f64::NAN),
    }
}

/// Bound on `ln |K(a, z, h)|` through the theta quotient: `F_3(a', t'; z')` equals
/// `theta_3(pi z' t', e(a' z')) e(z' t'^2 / (4 a')) / eta_D(2 a' z')`.
struct KernelBound {
    ap: f64,
    zp: C64,
    ln_abs_q: f64,
    ln_eta: f64,
}

impl KernelBound {
    fn new(a: f64, z: C64) -> Result<Self> {
        let (ap, _, zp) = f3_primed(a, C64::new(0.0, 0.0), z);
        let eta = eta_dedekind_num_tol(2.0 * ap * zp, 1e-17)?;
        let lower = eta.value.norm() - eta.bound;
        if !(lower > 0.0) {
            return Err(Error::PreconditionFailed("eta_D(2 a' z') indistinguishable from zero".into()));
        }
        Ok(KernelBound { ap, zp, ln_abs_q: -2.0 * PI * (ap * zp).im, ln_eta: lower.ln() })
    }

    fn ln_bound(&self, h: C64, a: f64) -> f64 {
        let tp = 2.0 * h / a;
        let v = PI * self.zp * tp;
        ln_theta_bound(self.ln_abs_q, v.im) + (2.0 * PI * I * self.zp * tp * tp / (4.0 * self.ap)).re - self.ln_eta
    }
}

/// Parameters of the `F_3`-kernel integrals:
///
/// `i e^(-2 pi i B b z / A) / (2 A w) int_{ray sigma} K(a, z, g) e^(i pi g^2 j / (2 a z))
///  e^(-2 pi i B g / A) sec((g + b z) pi / (2 A w)) e^(i g x) dg`.
///
/// `j = 0, A = 1, B = 0, x = 0` on the real ray is `S_0`; general `j` and ray give `S_j`
/// and `S~_j`; `x` gives `S_G`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F3Ray {
    pub j: u8,
    pub a: f64,
    pub b: C64,
    pub cap_a: f64,
    pub cap_b: C64,
    pub z: C64,
    pub w: C64,
    pub x: C64,
}

impl F3Ray {
    pub fn s0(a: f64, b: f64, z: C64, w: C64) -> Self {
        F3Ray { j: 0, a, b: C64::new(b, 0.0), cap_a: 1.0, cap_b: C64::new(0.0, 0.0), z, w, x: C64::new(0.0, 0.0) }
    }

    /// `decay`: also require the `sec` kernel to decay (not needed for pointwise values).
    fn validate(&self, decay: bool) -> Result<()> {
        if !(self.a > 0.0) {
            return Err(Error::ConstraintViolation(format!("a must be positive, got {}", self.a)));
        }
        if !(self.cap_a > 0.0) {
            return Err(Error::ConstraintViolation(format!("A must be positive, got {}", self.cap_a)));
        }
        if !(self.z.im > 0.0) {
            return Err(Error::ConstraintViolation(format!("Im z must be positive, got {}", self.z)));
        }
        if decay && self.w.im == 0.0 {
            return Err(Error::DecayCertificateFailed(format!("w = {} is real: the sec kernel does not decay", self.w)));
        }
        if self.j > 1 {
            return Err(Error::ConstraintViolation(format!("j must be 0 or 1, got {}", self.j)));
        }
        Ok(())
    }

    pub fn prefactor(&self) -> C64 {
        I * (-2.0 * PI * I * self.cap_b * self.b * self.z / self.cap_a).exp() / (2.0 * self.cap_a * self.w)
    }

    pub fn kernel(&self) -> SecKernel {
        let d = 2.0 * self.cap_a * self.w;
        SecKernel { slope: PI / d, shift: self.b * self.z * PI / d }
    }

    fn log_factor(&self, g: C64) -> C64 {
        let gauss = if self.j == 1 { I * PI * g * g / (2.0 * self.a * self.z) } else { C64::new(0.0, 0.0) };
        gauss - 2.0 * PI * I * self.cap_b * g / self.cap_a + I * g * self.x
    }

    pub fn integrate(&self, sigma: C64, tol: f64) -> Result<Certified> {
        self.validate(true)?;
        let kernel = self.kernel();
        kernel.certify(sigma)?;
        kernel.pole_check(sigma)?;
        let bound = KernelBound::new(self.a, self.z)?;
        let pre = self.prefactor();
        let (ap, _, zp) = f3_primed(self.a, C64::new(0.0, 0.0), self.z);
        let f = |g: C64| match ln_f3(ap, 2.0 * g / self.a, zp, 1e-17) {
            Ok((l, _, _)) => (l + self.log_factor(g)).exp() * kernel.eval(g),
            Err(_) => C64::new(f64::NAN, f64::NAN),
        };
        let env = |g: C64| bound.ln_bound(g, self.a) + self.log_factor(g).re + kernel.ln_bound(g);
        let r = ray_integrate(&f, &env, sigma, tol / pre.norm().max(1e-300), MAX_NODES)?;
        Ok(scaled(pre, Certified::new(r.value, r.error, r.nodes)))
    }

    /// Fourier transform in `x` at `s`, normalized so that the function equals
    /// `int hat(s) e^(i s x) ds`.
    pub fn hat(&self, s: C64) -> Result<C64> {
        self.validate(false)?;
        let mut at = *self;
        at.x = C64::new(0.0, 0.0);
        Ok(at.prefactor() * f3_kernel(self.a, self.z, s) * at.log_factor(s).exp() * self.kernel().eval(s))
    }
}

/// `S_0 = (i / (2w)) int K(a, z, h) sec((h + b z) pi / (2w)) dh` over the reals, refusing
/// parameters whose `sec` poles cross the real axis.
pub fn s0_integral(a: f64, b: f64, z: C64, w: C64, tol: f64) -> Result<Certified> {
    if !(w.im > 0.0) {
        return Err(Error::ConstraintViolation(format!("the representation needs Im w > 0, got {}", w)));
    }
    if !((b * z.im).abs() < w.im) {
        return Err(Error::PoleStripCrossed(format!("|b Im z| = {} is not below Im w = {}", (b * z.im).abs(), w.im)));
    }
    F3Ray::s0(a, b, z, w).integrate(C64::new(1.0, 0.0), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;
    use crate::numeric::lerch_num::{lerch_num, LerchFamily, LerchParams};
    use crate::numeric::theta::theta3_num;
    use crate::numeric::HalfPlanePoint;

    #[test]
    fn w_identities_small() {
        for (a, p) in [(1, 3), (2, 5)] {
            for kind in [ThetaKind::Three, ThetaKind::Four] {
                assert!(w_check(kind, a, p, 40).unwrap().is_empty(), "kind {:?} a {} p {}", kind, a, p);
            }
        }
    }

    #[test]
    fn w_divisor_equals_product() {
        let table = DivisorTable::new(30);
        for kind in [ThetaKind::Three, ThetaKind::Four] {
            let p = w_series(kind, 2, 5, 30).unwrap();
            let d = w_divisor_series(kind, 2, 5, 30, &table).unwrap();
            assert!(p.agrees_with(&d));
        }
    }

    #[test]
    fn symmetric_residue() {
        // a = p/2: both factors are (q^2; q^4)
        let w = w_series(ThetaKind::Four, 2, 4, 20).unwrap();
        let body = w.shift(-w_offset(2, 4));
        let f = pochhammer_series(Exponent::from_integer(2), Exponent::from_integer(4), Count::Infinite, 1, 20).unwrap();
        assert!(body.agrees_with(&f.mul_series(&f)));
    }

    #[test]
    fn offsets_are_not_multiples_of_one_24th() {
        let w = w_series(ThetaKind::Three, 1, 5, 5).unwrap();
        assert_eq!(w.offset(), Exponent::new(5, 12) - Exponent::new(1, 2) + Exponent::new(1, 10));
        assert_eq!(*w.offset().denom(), 60);
    }

    #[test]
    fn divisor_form_requires_a_above_t() {
        let table = DivisorTable::new(10);
        assert!(matches!(q_divisor_series(ThetaKind::Three, 2, 2, 10, &table), Err(Error::ConstraintViolation(_))));
        assert!(q_divisor_series(ThetaKind::Three, 3, 1, 10, &table).is_ok());
    }

    #[test]
    fn f3_product_vs_theta_quotient() {
        let z = c(0.0, 0.9);
        let p = f3_num(3.0, c(1.0, 0.0), z).unwrap();
        let t = f3_theta_form(3.0, c(1.0, 0.0), z).unwrap();
        assert!((p.value - t.value).norm() < 1e-12 * p.value.norm());
    }

    #[test]
    fn f3_t_zero_matches_theta_at_zero() {
        let z = c(0.05, 0.7);
        let a = 2.0;
        let f = f3_num(a, c(0.0, 0.0), z).unwrap().value;
        let th = theta3_num(c(0.0, 0.0), crate::numeric::e(a * z)).unwrap().value;
        let eta = eta_dedekind_num_tol(2.0 * a * z, 1e-17).unwrap().value;
        assert!((f * eta - th).norm() < 1e-12);
    }

    #[test]
    fn f3_large_argument_stays_finite() {
        let v = f3_kernel(3.0, c(0.1, 0.9), c(60.0, 0.0));
        assert!(v.re.is_finite() && v.im.is_finite());
    }

    #[test]
    fn modular_fixed_point() {
        let (l, r) = f3_modular_sides(1.0, c(0.0, 0.0), c(0.0, 0.5)).unwrap();
        assert!((l.value - r.value).norm() < 1e-14);
    }

    #[test]
    fn s0_matches_lerch_over_eta() {
        let zz = c(0.0, 0.9);
        let w = 2.0 * zz;
        let s = s0_integral(3.0, 1.0, zz, w, 1e-10).unwrap();
        let z = HalfPlanePoint::new(zz).unwrap();
        let l = lerch_num(LerchFamily::General, LerchParams::general(3.0, 1.0, 1.0, 0.0, w), z).unwrap();
        let eta = eta_dedekind_num_tol(2.0 * 3.0 * zz, 1e-17).unwrap();
        assert!((s.value - l.value / eta.value).norm() < 1e-8);
    }
}
