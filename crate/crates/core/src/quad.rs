//! Adaptive Gauss-Kronrod (7/15) quadrature on real intervals and on complex rays `t * sigma`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Result of a quadrature: value, error bound, integrand evaluations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: C64,
    pub error: f64,
    pub nodes: usize,
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: C64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15(f: &dyn Fn(f64) -> C64, a: f64, b: f64) -> Result<Panel> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = C64::new(0.0, 0.0);
    let mut g = C64::new(0.0, 0.0);
    let mut abs = 0.0;
    for i in 0..8 {
        let pts: &[f64] = if i == 7 { &[0.0] } else { &[-1.0, 1.0] };
        for &s in pts {
            let x = c + s * h * XGK[i];
            let v = f(x);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::PreconditionFailed(format!("integrand not finite at t = {}", x)));
            }
            k += WGK[i] * v;
            abs += WGK[i] * v.norm();
            if i % 2 == 1 {
                g += WG[i / 2] * v;
            }
        }
    }
    let value = k * h;
    let abs = abs * h.abs();
    let error = ((k - g) * h).norm() + 50.0 * f64::EPSILON * abs;
    Ok(Panel { a, b, value, error })
}

/// Adaptive quadrature of `f` over `[a, b]`, bisecting the worst panel until the summed
/// error is below `tol`.
pub fn integrate_interval(f: &dyn Fn(f64) -> C64, a: f64, b: f64, tol: f64, max_nodes: usize) -> Result<QuadResult> {
    integrate_panels(f, a, b, 1, tol, max_nodes)
}

/// As [`integrate_interval`], starting from `initial` equal panels.
pub fn integrate_panels(
    f: &dyn Fn(f64) -> C64,
    a: f64,
    b: f64,
    initial: usize,
    tol: f64,
    max_nodes: usize,
) -> Result<QuadResult> {
    let initial = initial.max(1);
    let mut heap = BinaryHeap::new();
    let mut nodes = 0usize;
    let w = (b - a) / initial as f64;
    for i in 0..initial {
        let lo = a + w * i as f64;
        let hi = if i + 1 == initial { b } else { lo + w };
        heap.push(gk15(f, lo, hi)?);
        nodes += 15;
    }
    let mut total_err: f64 = heap.iter().map(|p| p.error).sum();
    loop {
        if total_err <= tol {
            // resum to shed drift from the running total
            let err: f64 = heap.iter().map(|p| p.error).sum();
            if err <= tol {
                let value = heap.iter().map(|p| p.value).sum();
                return Ok(QuadResult { value, error: err, nodes });
            }
            total_err = err;
            continue;
        }
        if nodes + 30 > max_nodes {
            return Err(Error::BudgetExceeded(max_nodes));
        }
        let worst = heap.pop().expect("non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::BudgetExceeded(max_nodes));
        }
        let left = gk15(f, worst.a, mid)?;
        let right = gk15(f, mid, worst.b)?;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        nodes += 30;
    }
}

/// Bound on `|integrand(t sigma)|` for `|t| > T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TailEnvelope {
    /// `scale * exp(-rate |t|)`.
    Exponential { scale: f64, rate: f64 },
    /// `scale * exp(-rate t^2)`.
    Gaussian { scale: f64, rate: f64 },
}

impl TailEnvelope {
    /// Bound on `int_{|t| > T} |integrand| dt` (both ends).
    pub fn tail(&self, t: f64) -> f64 {
        match *self {
            TailEnvelope::Exponential { scale, rate } => 2.0 * scale * (-rate * t).exp() / rate,
            TailEnvelope::Gaussian { scale, rate } => {
                if t <= 0.0 {
                    f64::INFINITY
                } else {
                    scale * (-rate * t * t).exp() / (rate * t)
                }
            }
        }
    }

    /// Smallest `T` with `tail(T) <= eps`, found by doubling and bisection.
    pub fn truncation_for(&self, eps: f64) -> f64 {
        let mut hi = 1.0;
        while self.tail(hi) > eps {
            hi *= 2.0;
            if hi > 1e8 {
                return hi;
            }
        }
        let mut lo = 0.0;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.tail(mid) > eps {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }
}

/// A ray `t * direction`, `t in [-T, T]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourSpec {
    pub direction: C64,
    pub truncation: f64,
    pub tolerance: f64,
    pub max_nodes: usize,
    pub tail: TailEnvelope,
}

impl ContourSpec {
    /// Chooses `T` so the envelope tail is a tenth of the tolerance.
    pub fn with_envelope(direction: C64, tail: TailEnvelope, tolerance: f64, max_nodes: usize) -> Self {
        let truncation = tail.truncation_for(tolerance * 0.1 / direction.norm().max(1e-300));
        ContourSpec { direction, truncation, tolerance, max_nodes, tail }
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail.tail(self.truncation) * self.direction.norm()
    }
}

/// `int f(s) ds` along `s = t * sigma`: the truncated quadrature plus the tail envelope
/// in the returned error.
pub fn contour_integrate(f: &dyn Fn(C64) -> C64, spec: &ContourSpec) -> Result<QuadResult> {
    if !(spec.truncation > 0.0) || spec.direction.norm() == 0.0 {
        return Err(Error::PreconditionFailed("contour needs a nonzero direction and T > 0".into()));
    }
    let sigma = spec.direction;
    let g = |t: f64| f(sigma * t) * sigma;
    let tail = spec.tail_bound();
    let budget = (spec.tolerance - tail).max(spec.tolerance * 0.5);
    let panels = ((spec.truncation * 2.0).ceil() as usize).clamp(16, 512);
    let r = integrate_panels(&g, -spec.truncation, spec.truncation, panels, budget, spec.max_nodes)?;
    Ok(QuadResult { value: r.value, error: r.error + tail, nodes: r.nodes })
}

/// Largest `|t|` the truncation search will consider before refusing.
const RAY_T_MAX: f64 = 1e5;

/// Cut-off for one side of a ray: the first integer `T >= 1` where `env` decreases and the
/// geometric bound `exp(env(T)) / (1 - exp(env(T+1) - env(T)))` is below `eps`.
///
/// For an envelope that is decreasing and log-concave beyond `T` this bounds
/// `int_T^inf exp(env)` from above, since the integral is at most `sum_k exp(env(T + k))`.
fn ray_cutoff(env: &dyn Fn(f64) -> f64, eps: f64) -> Result<(f64, f64)> {
    let mut t = 1.0;
    let scale = crate::numeric::truncation_scale();
    let mut first: Option<f64> = None;
    while t <= RAY_T_MAX {
        let e1 = env(t);
        let e2 = env(t + 1.0);
        if e1.is_finite() && e2 < e1 {
            let bound = e1.exp() / -(e2 - e1).exp_m1();
            if bound <= eps {
                let f = *first.get_or_insert(t);
                if t >= f * scale {
                    return Ok((t, bound));
                }
            }
        }
        t += if t < 64.0 { 1.0 } else { (t / 16.0).floor() };
    }
    Err(Error::DecayCertificateFailed(format!("integrand envelope does not decay within |t| <= {}", RAY_T_MAX)))
}

/// `int f(s) ds` along `s = t * sigma`, `t` over the reals, given `ln_env(s) >= ln |f(s)|`.
///
/// The truncation on each side comes from [`ray_cutoff`] with a tenth of `tol`; the tail
/// bound is part of the returned error.
pub fn ray_integrate(
    f: &dyn Fn(C64) -> C64,
    ln_env: &dyn Fn(C64) -> f64,
    sigma: C64,
    tol: f64,
    max_nodes: usize,
) -> Result<QuadResult> {
    let scale = sigma.norm();
    if !(scale > 0.0) || !(tol > 0.0) {
        return Err(Error::PreconditionFailed("ray needs a nonzero direction and tol > 0".into()));
    }
    let ln_s = scale.ln();
    let up = |t: f64| ln_env(sigma * t) + ln_s;
    let down = |t: f64| ln_env(-sigma * t) + ln_s;
    let (t_up, tail_up) = ray_cutoff(&up, tol * 0.05)?;
    let (t_down, tail_down) = ray_cutoff(&down, tol * 0.05)?;
    let tail = tail_up + tail_down;
    let g = |t: f64| f(sigma * t) * sigma;
    let span = t_up + t_down;
    let panels = (span.ceil() as usize).clamp(16, 8192);
    let r = integrate_panels(&g, -t_down, t_up, panels, tol - tail, max_nodes)?;
    Ok(QuadResult { value: r.value, error: r.error + tail, nodes: r.nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ray_integrate_gaussian_with_envelope() {
        let f = |s: C64| (-PI * s * s).exp();
        let env = |s: C64| (-PI * s * s).re;
        let r = ray_integrate(&f, &env, C64::new(1.0, 0.0), 1e-12, 100_000).unwrap();
        assert!((r.value - C64::new(1.0, 0.0)).norm() < 1e-12);
        // a negative direction reverses orientation
        let r = ray_integrate(&f, &env, C64::new(-2.0, 0.0), 1e-12, 100_000).unwrap();
        assert!((r.value + C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn ray_without_decay_is_refused() {
        let f = |_: C64| C64::new(1.0, 0.0);
        let env = |_: C64| 0.0;
        assert!(matches!(
            ray_integrate(&f, &env, C64::new(1.0, 0.0), 1e-8, 100_000),
            Err(Error::DecayCertificateFailed(_))
        ));
    }

    #[test]
    fn polynomial_exact() {
        let f = |x: f64| C64::new(x * x * x - 2.0 * x, 0.0);
        let r = integrate_interval(&f, 0.0, 2.0, 1e-12, 1000).unwrap();
        assert!((r.value.re - 0.0).abs() < 1e-14);
    }

    #[test]
    fn gaussian_along_ray() {
        // int exp(-s^2) ds along the real axis = sqrt(pi)
        let f = |s: C64| (-s * s).exp();
        let spec = ContourSpec::with_envelope(
            C64::new(1.0, 0.0),
            TailEnvelope::Gaussian { scale: 1.0, rate: 1.0 },
            1e-12,
            100_000,
        );
        let r = contour_integrate(&f, &spec).unwrap();
        assert!((r.value.re - PI.sqrt()).abs() < 1e-12);
        assert!(r.error < 1e-12);
    }

    #[test]
    fn rotated_ray_uses_direction() {
        // exp(-s^2) is entire; rotating the ray by a small angle keeps the value
        let f = |s: C64| (-s * s).exp();
        let sigma = C64::from_polar(1.0, 0.2);
        let rate = (2.0 * 0.2f64).cos();
        let spec = ContourSpec::with_envelope(sigma, TailEnvelope::Gaussian { scale: 1.0, rate }, 1e-11, 100_000);
        let r = contour_integrate(&f, &spec).unwrap();
        assert!((r.value - C64::new(PI.sqrt(), 0.0)).norm() < 1e-11);
    }

    #[test]
    fn budget_is_enforced() {
        let f = |x: f64| C64::new((1.0 / (x + 1e-9)).sin(), 0.0);
        assert!(matches!(integrate_interval(&f, 0.0, 1.0, 1e-14, 300), Err(Error::BudgetExceeded(300))));
    }
}
