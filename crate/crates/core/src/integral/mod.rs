//! Theta-function integral representations of Lerch sums, evaluated by quadrature along
//! rays `t * sigma` with certified truncation.
//!
//! Every ray integral is refused unless the `sec` kernel decays along the ray and no pole of
//! `sec` sits within `1e-3 |sigma|` of it.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::eta::eta_num_tol;
use crate::numeric::theta::{theta3_log, theta4_log, theta_times_exp};
use crate::numeric::{e, ln_sech_bound, sec, Certified, HalfPlanePoint, C64, I};
use crate::quad::ray_integrate;

pub mod logtheta;
pub mod theorems;
pub mod transforms;
pub mod xi;

/// Integrand evaluations allowed per ray integral.
pub const MAX_NODES: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaKind {
    Three,
    Four,
}

impl ThetaKind {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            3 => Ok(ThetaKind::Three),
            4 => Ok(ThetaKind::Four),
            other => Err(Error::ConstraintViolation(format!("theta kind must be 3 or 4, got {}", other))),
        }
    }
}

/// `theta_kind(v, e(nome_z))`; NaN on failure so the quadrature rejects the point.
pub(crate) fn theta_at(kind: ThetaKind, v: C64, nome_z: C64) -> C64 {
    let lq = 2.0 * PI * I * nome_z;
    let r = match kind {
        ThetaKind::Three => theta3_log(v, lq, 1e-17),
        ThetaKind::Four => theta4_log(v, lq, 1e-17),
    };
    r.map(|c| c.value).unwrap_or(C64::new(f64::NAN, f64::NAN))
}

/// `ln sum_n |q|^(n^2) e^(2 |n| y)`: bounds `ln |theta_{3,4}(v, q)|` for `|Im v| <= y`.
pub fn ln_theta_bound(ln_abs_q: f64, y: f64) -> f64 {
    assert!(ln_abs_q < 0.0, "nome must lie inside the unit disk");
    let rho = -ln_abs_q;
    let y = y.abs();
    let g = |n: f64| -rho * n * n + 2.0 * n * y;
    let peak = (y / rho).round().max(0.0);
    let m = g(peak);
    // terms beyond the peak fall off at least geometrically once past it
    let mut sum = 0.0;
    let mut n = 0.0;
    loop {
        let d = g(n) - m;
        sum += if n == 0.0 { d.exp() } else { 2.0 * d.exp() };
        if n > peak && d < -40.0 {
            break;
        }
        n += 1.0;
    }
    m + sum.ln() + 1e-12
}

/// The kernel `sec(slope * h + shift)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecKernel {
    pub slope: C64,
    pub shift: C64,
}

impl SecKernel {
    pub fn eval(&self, h: C64) -> C64 {
        sec(self.slope * h + self.shift)
    }

    /// Upper bound on `ln |sec(slope h + shift)|`.
    pub fn ln_bound(&self, h: C64) -> f64 {
        // sec x = sech(i x), Re(i x) = -Im x
        ln_sech_bound((self.slope * h + self.shift).im)
    }

    /// Decay rate `|Im(slope * sigma)| / |sigma|` per unit of `|h|` along the ray; refuses zero.
    pub fn certify(&self, sigma: C64) -> Result<f64> {
        let k = self.slope * sigma / sigma.norm();
        let rate = k.im.abs();
        if !(rate > 1e-12 * k.norm().max(1e-300)) {
            return Err(Error::DecayCertificateFailed(format!(
                "sec kernel has no decay along direction {}: Im(slope * sigma) = 0",
                sigma
            )));
        }
        Ok(rate)
    }

    /// Distance from the ray to the nearest pole `h_k = (pi/2 + k pi - shift) / slope`.
    pub fn pole_distance(&self, sigma: C64) -> f64 {
        let u_dir = sigma.conj() / sigma.norm();
        let u = (u_dir / self.slope).im;
        let v = (self.shift * u_dir / self.slope).im;
        if u == 0.0 {
            return 0.0;
        }
        // distances |(pi/2 + k pi) u - v| form an arithmetic progression in k
        let k0 = ((v / u - PI / 2.0) / PI).round();
        (-1..=1)
            .map(|d| ((PI / 2.0 + (k0 + d as f64) * PI) * u - v).abs())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn pole_check(&self, sigma: C64) -> Result<()> {
        let distance = self.pole_distance(sigma);
        let limit = 1e-3 * sigma.norm();
        if distance < limit {
            return Err(Error::PoleNearContour { distance, limit });
        }
        Ok(())
    }
}

/// `int_{ray sigma} theta_kind(h, e(nome_z)) * e^(log_factor(h)) * sec(...) dh`.
///
/// `ln_factor(h)` must bound `Re log_factor(h)` from above.
pub fn theta_kernel_integral(
    kind: ThetaKind,
    nome_z: C64,
    log_factor: &dyn Fn(C64) -> C64,
    ln_factor: &dyn Fn(C64) -> f64,
    kernel: SecKernel,
    sigma: C64,
    tol: f64,
) -> Result<Certified> {
    if !(nome_z.im > 0.0) {
        return Err(Error::ConstraintViolation(format!("theta nome exponent needs Im > 0, got {}", nome_z)));
    }
    kernel.certify(sigma)?;
    kernel.pole_check(sigma)?;
    let lq = 2.0 * PI * I * nome_z;
    let alternating = kind == ThetaKind::Four;
    let f = |h: C64| theta_times_exp(h, lq, alternating, log_factor(h)) * kernel.eval(h);
    let env = |h: C64| ln_theta_bound(lq.re, h.im) + ln_factor(h) + kernel.ln_bound(h);
    let r = ray_integrate(&f, &env, sigma, tol, MAX_NODES)?;
    Ok(Certified::new(r.value, r.error, r.nodes))
}

/// `c * x` with the bound scaled accordingly.
pub(crate) fn scaled(c: C64, x: Certified) -> Certified {
    Certified::new(c * x.value, c.norm() * x.bound, x.terms)
}

/// `x / d` where `d` carries its own bound.
pub(crate) fn divided(x: Certified, d: Certified) -> Result<Certified> {
    let dn = d.value.norm();
    if !(dn > 2.0 * d.bound) {
        return Err(Error::PreconditionFailed("divisor is indistinguishable from zero".into()));
    }
    let v = x.value / d.value;
    let bound = x.bound / (dn - d.bound) + v.norm() * d.bound / (dn - d.bound);
    Ok(Certified::new(v, bound, x.terms + d.terms))
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::ConstraintViolation(format!("a must be positive, got {}", a)));
    }
    Ok(())
}

/// `sec` poles must stay on their own side of the real axis: `|Im(b z)| < A Im w`.
fn strip_check(b: C64, z: C64, cap_a: f64, w: C64) -> Result<()> {
    if !(w.im > 0.0) {
        return Err(Error::ConstraintViolation(format!(
            "the representation needs Im w > 0 (Im w < 0 yields the negated sum), got w = {}",
            w
        )));
    }
    let shift = (b * z).im.abs();
    if !(shift < cap_a * w.im) {
        return Err(Error::PoleStripCrossed(format!(
            "|Im(b z)| = {} is not below A Im w = {}",
            shift,
            cap_a * w.im
        )));
    }
    Ok(())
}

/// Parameters of the ray integrals with a `theta_3`/`theta_4` kernel:
///
/// `i e^(-2 i B b pi z / A) / (2 A pi w) * int_{ray sigma} theta(g, e(a z)) e^(i j g^2 / (2 pi a z))
///  e^(-2 i B g / A) sec((g + b pi z) / (2 A w)) e^(i g x) dg`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaRay {
    pub kind: ThetaKind,
    pub j: u8,
    pub a: f64,
    pub b: C64,
    pub cap_a: f64,
    pub cap_b: C64,
    pub z: C64,
    pub w: C64,
    pub x: C64,
}

impl ThetaRay {
    /// `P_j(a, b; z, w; x)`: `A = 1`, `B = 0`, `theta_3`.
    pub fn p(j: u8, a: f64, b: C64, z: C64, w: C64, x: C64) -> Self {
        ThetaRay { kind: ThetaKind::Three, j, a, b, cap_a: 1.0, cap_b: C64::new(0.0, 0.0), z, w, x }
    }

    /// `P~_j(a, b; A, B; z, w)` (`x = 0`) or, with `j = 0`, `P_G(a, b; A, B; z, w; x)`.
    #[allow(clippy::too_many_arguments)]
    pub fn general(j: u8, a: f64, b: C64, cap_a: f64, cap_b: C64, z: C64, w: C64, x: C64) -> Self {
        ThetaRay { kind: ThetaKind::Three, j, a, b, cap_a, cap_b, z, w, x }
    }

    /// `decay`: also require the `sec` kernel to decay (not needed for pointwise values).
    fn validate(&self, decay: bool) -> Result<()> {
        check_a(self.a)?;
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
        I * (-2.0 * I * self.cap_b * self.b * PI * self.z / self.cap_a).exp() / (2.0 * self.cap_a * PI * self.w)
    }

    pub fn kernel(&self) -> SecKernel {
        let d = 2.0 * self.cap_a * self.w;
        SecKernel { slope: 1.0 / d, shift: self.b * PI * self.z / d }
    }

    /// `e^(i j g^2 / (2 pi a z)) e^(-2 i B g / A) e^(i g x)` as an exponent.
    fn log_factor(&self, g: C64) -> C64 {
        let gauss = if self.j == 1 { I * g * g / (2.0 * PI * self.a * self.z) } else { C64::new(0.0, 0.0) };
        gauss - 2.0 * I * self.cap_b * g / self.cap_a + I * g * self.x
    }

    /// The ray integral along `sigma`, including the prefactor.
    pub fn integrate(&self, sigma: C64, tol: f64) -> Result<Certified> {
        self.validate(true)?;
        let pre = self.prefactor();
        let f = |g: C64| self.log_factor(g);
        let lf = |g: C64| self.log_factor(g).re;
        let inner = theta_kernel_integral(
            self.kind,
            self.a * self.z,
            &f,
            &lf,
            self.kernel(),
            sigma,
            tol / pre.norm().max(1e-300),
        )?;
        Ok(scaled(pre, inner))
    }

    /// The Fourier transform in `x` at frequency `gamma`, in closed form, normalized so
    /// that the function equals `(1 / 2 pi) int hat(gamma) e^(i gamma x) d gamma`.
    pub fn hat(&self, gamma: C64) -> Result<C64> {
        self.validate(false)?;
        let mut at = *self;
        at.x = C64::new(0.0, 0.0);
        Ok(2.0 * PI * at.prefactor() * theta_at(self.kind, gamma, self.a * self.z) * at.log_factor(gamma).exp()
            * self.kernel().eval(gamma))
    }
}

/// `(i / (2 pi w)) int theta_kind(h, e(a z)) sec((h + b pi z) / (2 w)) dh` over the reals,
/// the integral side of the `1 / cosh(2 pi i n w)` Lerch sums.
pub fn theta_integral_rep(kind: ThetaKind, a: f64, b: f64, z: HalfPlanePoint, w: C64, tol: f64) -> Result<Certified> {
    check_a(a)?;
    if w.im == 0.0 {
        return Err(Error::DecayCertificateFailed(format!("w = {} is real: the sec kernel does not decay", w)));
    }
    strip_check(C64::new(b, 0.0), z.z(), 1.0, w)?;
    let mut r = ThetaRay::p(0, a, C64::new(b, 0.0), z.z(), w, C64::new(0.0, 0.0));
    r.kind = kind;
    r.integrate(C64::new(1.0, 0.0), tol)
}

/// Readings of the prefactor of the `(A n + B)` representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneralReading {
    /// `i e^(-2 i B b pi z / A) / (2 A pi w)`, consistent with the `A = 1, B = 0` case.
    Corrected,
    /// `e^(-2 i B b pi z / A) / (2 A pi i w)`, the opposite sign.
    AsPrinted,
    /// `w` replaced by its conjugate in the prefactor and kernel, with the corrected sign.
    Conjugate,
}

/// The `1 / cosh(2 pi i w (A n + B))` representation by quadrature over the reals.
#[allow(clippy::too_many_arguments)]
pub fn general_integral_rep(
    kind: ThetaKind,
    a: f64,
    b: f64,
    cap_a: f64,
    cap_b: f64,
    z: HalfPlanePoint,
    w: C64,
    reading: GeneralReading,
    tol: f64,
) -> Result<Certified> {
    let w_used = if reading == GeneralReading::Conjugate { w.conj() } else { w };
    if w_used.im == 0.0 {
        return Err(Error::DecayCertificateFailed(format!("w = {} is real: the sec kernel does not decay", w)));
    }
    strip_check(C64::new(b, 0.0), z.z(), cap_a, w_used)?;
    let mut r = ThetaRay::general(0, a, C64::new(b, 0.0), cap_a, C64::new(cap_b, 0.0), z.z(), w_used, C64::new(0.0, 0.0));
    r.kind = kind;
    let v = r.integrate(C64::new(1.0, 0.0), tol)?;
    Ok(if reading == GeneralReading::AsPrinted { scaled(C64::new(-1.0, 0.0), v) } else { v })
}

/// `f(q) = i / (pi z eta(q)) int theta_4(h, e(3z/2)) sec(h / z) dh`.
pub fn f_via_integral(z: HalfPlanePoint, tol: f64) -> Result<Certified> {
    let zz = z.z();
    let one = |_: C64| C64::new(0.0, 0.0);
    let zero = |_: C64| 0.0;
    let kernel = SecKernel { slope: 1.0 / zz, shift: C64::new(0.0, 0.0) };
    let int = theta_kernel_integral(ThetaKind::Four, 1.5 * zz, &one, &zero, kernel, C64::new(1.0, 0.0), tol)?;
    let eta = eta_num_tol(z.q(), 1e-17)?;
    divided(scaled(I / (PI * zz), int), eta)
}

/// `phi(q) = i sqrt(2) / (2 pi z eta(q)) int theta_4(h, e(3z/2)) cos(h / (2z)) sec(h / z) dh`.
pub fn phi_via_integral(z: HalfPlanePoint, tol: f64) -> Result<Certified> {
    let zz = z.z();
    let cosf = |h: C64| (h / (2.0 * zz)).cos().ln();
    // |cos x| <= cosh(Im x) <= e^|Im x|
    let ln_cos = |h: C64| (h / (2.0 * zz)).im.abs();
    let kernel = SecKernel { slope: 1.0 / zz, shift: C64::new(0.0, 0.0) };
    let int = theta_kernel_integral(ThetaKind::Four, 1.5 * zz, &cosf, &ln_cos, kernel, C64::new(1.0, 0.0), tol)?;
    let eta = eta_num_tol(z.q(), 1e-17)?;
    divided(scaled(I * 2f64.sqrt() / (2.0 * PI * zz), int), eta)
}

/// `q^(1/2) / (8 pi i z eta(q^4)) int theta_4(g, e(6z)) e^(-i g / 2) sec(g / (4z)) dg`, the
/// integral form offered for `psi(-q)`.
pub fn psi_minus_q_via_integral(z: HalfPlanePoint, tol: f64) -> Result<Certified> {
    let zz = z.z();
    let f = |g: C64| -I * g / 2.0;
    let lf = |g: C64| g.im / 2.0;
    let kernel = SecKernel { slope: 1.0 / (4.0 * zz), shift: C64::new(0.0, 0.0) };
    let int = theta_kernel_integral(ThetaKind::Four, 6.0 * zz, &f, &lf, kernel, C64::new(1.0, 0.0), tol)?;
    let eta = eta_num_tol(e(4.0 * zz), 1e-17)?;
    let pre = e(zz / 2.0) / (8.0 * PI * I * zz);
    divided(scaled(pre, int), eta)
}

/// `p_j(a, b, z) = i / (4 pi z) int_{ray sigma} theta_3(h, e(a z)) e^(i j h^2 / (2 pi a z))
/// sec(h / (2z) + (b - 1) pi / 2) dh`, with `a` and `z` allowed complex as long as
/// `Im(a z) > 0`.
pub fn p_small(j: u8, a: C64, b: f64, z: C64, sigma: C64, tol: f64) -> Result<Certified> {
    if j > 1 {
        return Err(Error::ConstraintViolation(format!("j must be 0 or 1, got {}", j)));
    }
    let az = a * z;
    let gauss = move |h: C64| if j == 1 { I * h * h / (2.0 * PI * az) } else { C64::new(0.0, 0.0) };
    let f = |h: C64| gauss(h);
    let lf = |h: C64| gauss(h).re;
    let kernel = SecKernel { slope: 1.0 / (2.0 * z), shift: C64::new((b - 1.0) * PI / 2.0, 0.0) };
    let int = theta_kernel_integral(ThetaKind::Three, az, &f, &lf, kernel, sigma, tol * 4.0 * PI * z.norm())?;
    Ok(scaled(I / (4.0 * PI * z), int))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;
    use crate::numeric::lerch_num::{lerch_num, LerchFamily, LerchParams};
    use crate::numeric::mock_num::{mock_num, MockName};

    #[test]
    fn theta_bound_dominates() {
        let q: f64 = 0.3;
        for y in [0.0, 0.5, 3.0] {
            let direct: f64 = (-40..=40).map(|n: i64| q.powi((n * n) as i32) * (2.0 * (n.abs() as f64) * y).exp()).sum();
            let b = ln_theta_bound(q.ln(), y);
            assert!(b >= direct.ln() && b < direct.ln() + 1e-9, "y = {}", y);
        }
    }

    #[test]
    fn pole_distance_on_real_axis() {
        // sec(h / (2i)) = sech(h / 2) has poles at h = i pi (2k + 1): distance pi from the real line
        let k = SecKernel { slope: 1.0 / c(0.0, 2.0), shift: c(0.0, 0.0) };
        assert!((k.pole_distance(c(1.0, 0.0)) - PI).abs() < 1e-12);
        // with shift pi/2 the k = 0 pole sits at h = 0
        let k = SecKernel { slope: 1.0 / c(0.0, 2.0), shift: c(PI / 2.0, 0.0) };
        assert!(matches!(k.pole_check(c(1.0, 0.0)), Err(Error::PoleNearContour { .. })));
    }

    #[test]
    fn real_w_has_no_certificate() {
        let k = SecKernel { slope: c(0.5, 0.0), shift: c(0.0, 0.0) };
        assert!(matches!(k.certify(c(1.0, 0.0)), Err(Error::DecayCertificateFailed(_))));
    }

    #[test]
    fn theta10_matches_sum() {
        let zz = c(0.1, 0.9);
        let z = HalfPlanePoint::new(zz).unwrap();
        let w = 2.0 * zz;
        let v = theta_integral_rep(ThetaKind::Three, 3.0, 1.0, z, w, 1e-11).unwrap();
        let s = lerch_num(LerchFamily::General, LerchParams::general(3.0, 1.0, 1.0, 0.0, w), z).unwrap();
        assert!((v.value - s.value).norm() < 1e-9, "{} vs {}", v.value, s.value);
        assert!(v.bound < 1e-10);
    }

    #[test]
    fn negative_im_w_rejected() {
        let z = HalfPlanePoint::new(c(0.0, 0.9)).unwrap();
        let r = theta_integral_rep(ThetaKind::Three, 3.0, 1.0, z, c(0.0, -1.8), 1e-8);
        assert!(matches!(r, Err(Error::ConstraintViolation(_))));
        let r = theta_integral_rep(ThetaKind::Three, 3.0, 3.0, z, c(0.0, 1.8), 1e-8);
        assert!(matches!(r, Err(Error::PoleStripCrossed(_))));
    }

    #[test]
    fn f_integral_at_i() {
        let z = HalfPlanePoint::new(c(0.0, 1.0)).unwrap();
        let v = f_via_integral(z, 1e-11).unwrap();
        let f = mock_num(MockName::F, z.q()).unwrap();
        assert!((v.value - f.value).norm() < 1e-9);
    }

    #[test]
    fn hat_at_zero() {
        let (a, b, zz, w) = (1.3, 0.4, c(0.1, 0.8), c(0.2, 1.1));
        let p = ThetaRay::p(0, a, c(b, 0.0), zz, w, c(0.0, 0.0));
        let h = p.hat(c(0.0, 0.0)).unwrap();
        let expect = I / w * theta_at(ThetaKind::Three, c(0.0, 0.0), a * zz) * sec(b * PI * zz / (2.0 * w));
        assert!((h - expect).norm() < 1e-13 * expect.norm());
    }
}
