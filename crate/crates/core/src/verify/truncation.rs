//! Certified truncation: every evaluator is run twice at each point of a seeded grid, once as
//! is and once with every series, product and ray truncation doubled. The change must not
//! exceed the bound reported by the first run.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::integral::logtheta::logtheta4_integral;
use crate::integral::xi::{poisson_lhs, xi_num, XiRoute};
use crate::integral::{f_via_integral, theta_integral_rep, ThetaKind};
use crate::numeric::erf::{beta_num, erf_e_num};
use crate::numeric::eta::{eta_dedekind_num, eta_num};
use crate::numeric::lerch_num::{lerch_num, LerchFamily, LerchParams};
use crate::numeric::mock_num::{f_recip_num_tol, mock_num, MockName};
use crate::numeric::theta::{theta3_num, theta4_num};
use crate::numeric::zwegers::{m_num, mu_num, r_f_num, r_zw_num, theta_zw_num, ZwegersParams};
use crate::numeric::{with_truncation_scale, Certified, HalfPlanePoint, C64};
use crate::report::{IdentityReport, Mode, ReportBuilder};
use crate::theta_product::{f3_num, s0_integral};

/// Points per evaluator.
pub const GRID_POINTS: usize = 20;
/// The metric is `|change| / bound`, so the pass threshold is 1.
pub const THRESHOLD: f64 = 1.0;

/// Six uniform draws in `[0, 1)`, mapped to parameters by each evaluator.
pub type Draw = [f64; 6];

pub struct Evaluator {
    pub name: &'static str,
    pub eval: fn(&Draw) -> Result<Certified>,
}

fn lerp(u: f64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * u
}

/// `|q| in [0.05, 0.9]`, any argument.
fn nome(u: &Draw) -> C64 {
    C64::from_polar(lerp(u[0], 0.05, 0.9), 2.0 * PI * u[1])
}

fn upper(u: &Draw) -> C64 {
    C64::new(lerp(u[0], -0.5, 0.5), lerp(u[1], 0.3, 1.5))
}

fn hp(u: &Draw) -> Result<HalfPlanePoint> {
    HalfPlanePoint::new(upper(u))
}

fn small(u0: f64, u1: f64) -> C64 {
    C64::new(lerp(u0, -0.5, 0.5), lerp(u1, -0.25, 0.25))
}

/// `(u, v, tau)` with `u, v` off the theta zeros.
fn zw(u: &Draw) -> ZwegersParams {
    ZwegersParams {
        u: C64::new(lerp(u[2], 0.1, 0.4), lerp(u[3], 0.05, 0.2)),
        v: C64::new(lerp(u[4], 0.1, 0.4), lerp(u[5], -0.2, -0.05)),
        tau: C64::new(lerp(u[0], -0.3, 0.3), lerp(u[1], 0.6, 1.4)),
    }
}

pub fn evaluators() -> Vec<Evaluator> {
    vec![
        Evaluator { name: "theta3", eval: |u| theta3_num(small(u[2], u[3]), nome(u)) },
        Evaluator { name: "theta4", eval: |u| theta4_num(small(u[2], u[3]), nome(u)) },
        Evaluator { name: "eta", eval: |u| eta_num(nome(u)) },
        Evaluator { name: "eta_dedekind", eval: |u| eta_dedekind_num(upper(u)) },
        Evaluator { name: "mock f", eval: |u| mock_num(MockName::F, nome(u)) },
        Evaluator { name: "mock phi", eval: |u| mock_num(MockName::Phi, nome(u)) },
        Evaluator { name: "mock psi", eval: |u| mock_num(MockName::Psi, nome(u)) },
        Evaluator { name: "f(1/q)", eval: |u| f_recip_num_tol(nome(u), 1e-16) },
        Evaluator {
            name: "lerch S",
            eval: |u| lerch_num(LerchFamily::S, LerchParams::abc(lerp(u[2], 0.5, 3.0), lerp(u[3], -1.0, 1.0), 1.0), hp(u)?),
        },
        Evaluator {
            name: "lerch fs",
            eval: |u| {
                let p = LerchParams::abc(lerp(u[2], 0.5, 3.0), lerp(u[3], -1.0, 1.0), lerp(u[4], 0.5, 2.0));
                lerch_num(LerchFamily::Fs, p, hp(u)?)
            },
        },
        Evaluator {
            name: "lerch fc",
            eval: |u| {
                let p = LerchParams::abc(lerp(u[2], 0.5, 3.0), lerp(u[3], -1.0, 1.0), lerp(u[4], 0.5, 2.0));
                lerch_num(LerchFamily::Fc, p, hp(u)?)
            },
        },
        Evaluator {
            name: "lerch general",
            eval: |u| {
                let w = C64::new(lerp(u[4], -0.5, 0.5), lerp(u[5], 0.5, 1.5));
                let p = LerchParams::general(lerp(u[2], 0.5, 3.0), lerp(u[3], -1.0, 1.0), lerp(u[4], 1.0, 2.0), lerp(u[5], -0.5, 0.5), w);
                lerch_num(LerchFamily::General, p, hp(u)?)
            },
        },
        Evaluator { name: "zwegers theta", eval: |u| theta_zw_num(zw(u).u, zw(u).tau) },
        Evaluator { name: "mu", eval: |u| mu_num(zw(u)) },
        Evaluator { name: "R", eval: |u| r_zw_num(zw(u).u - zw(u).v, zw(u).tau) },
        Evaluator { name: "M", eval: |u| m_num(zw(u)) },
        Evaluator { name: "R_f", eval: |u| r_f_num(upper(u)) },
        Evaluator { name: "E", eval: |u| erf_e_num(C64::new(lerp(u[2], -2.0, 2.0), lerp(u[3], -1.0, 1.0))) },
        Evaluator { name: "beta", eval: |u| beta_num(lerp(u[2], 0.0, 5.0)) },
        Evaluator { name: "F3", eval: |u| f3_num(lerp(u[2], 0.5, 3.0), C64::new(lerp(u[3], 0.0, 0.4), 0.0), upper(u)) },
        Evaluator { name: "poisson sum", eval: |u| poisson_lhs(lerp(u[2], -3.0, 3.0), upper(u), 1e-16) },
        Evaluator {
            name: "log-theta integral",
            eval: |u| logtheta4_integral(&[C64::new(1.0, 0.0)], C64::new(lerp(u[0], 0.05, 0.5), 0.0), 1e-10),
        },
        Evaluator {
            name: "theta ray integral",
            eval: |u| {
                let z = hp(u)?;
                let w = 2.0 * z.z() + C64::new(lerp(u[4], -0.3, 0.3), 0.0);
                theta_integral_rep(ThetaKind::Three, lerp(u[2], 1.0, 3.0), lerp(u[3], -0.5, 0.5), z, w, 1e-10)
            },
        },
        Evaluator {
            name: "F3 ray integral",
            eval: |u| {
                let z = upper(u);
                let w = 2.0 * z + C64::new(lerp(u[4], -0.3, 0.3), 0.0);
                s0_integral(lerp(u[2], 1.0, 3.0), lerp(u[3], -0.5, 0.5), z, w, 1e-10)
            },
        },
        Evaluator {
            name: "xi",
            eval: |u| xi_num(0, lerp(u[2], 0.5, 2.0), lerp(u[3], 0.0, 2.0), upper(u), XiRoute::Parseval, 1e-10),
        },
        Evaluator { name: "f integral", eval: |u| f_via_integral(HalfPlanePoint::new(C64::new(lerp(u[0], -0.3, 0.3), lerp(u[1], 0.6, 1.4)))?, 1e-10) },
    ]
}

/// `|v1 - v2| / bound1` for one evaluator at one draw.
pub fn ratio(ev: &Evaluator, u: &Draw) -> Result<f64> {
    let base = (ev.eval)(u)?;
    let doubled = with_truncation_scale(2.0, || (ev.eval)(u))?;
    let d = (base.value - doubled.value).norm();
    Ok(if d == 0.0 { 0.0 } else { d / base.bound })
}

pub fn draws(seed: u64, points: usize) -> Vec<Draw> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..points).map(|_| std::array::from_fn(|_| rng.gen::<f64>())).collect()
}

pub fn truncation_report(seed: u64, points: usize) -> IdentityReport {
    let mut rb = ReportBuilder::new("certified-truncation", Mode::Numeric, THRESHOLD);
    rb.seed(seed).param("points_per_evaluator", points).param("metric", "|value(2x truncation) - value| / reported bound");
    let grid = draws(seed, points);
    for ev in evaluators() {
        let mut worst: std::result::Result<f64, crate::error::Error> = Ok(0.0);
        for (k, u) in grid.iter().enumerate() {
            match ratio(&ev, u) {
                Ok(r) => {
                    rb.observe(r);
                    worst = worst.map(|w| w.max(r));
                }
                Err(e) => {
                    rb.append_note(&format!("{} at point {}", ev.name, k));
                    rb.error(&e);
                    worst = Err(e);
                    break;
                }
            }
        }
        rb.variant(ev.name, worst);
    }
    rb.finish()
}
