//! Numeric-mode identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::integral::theorems::{
    f_integral_check, phi_integral_check, poisson_check, prop1_check, psi_integral_check, run_theorem,
};
use crate::integral::transforms::{theta3_modular_sides, Params};
use crate::numeric::erf::{beta_num, beta_quadrature, erf_e_num};
use crate::numeric::zwegers::{mu_num, ZwegersParams};
use crate::numeric::{C64, I};
use crate::report::{IdentityReport, Mode, ReportBuilder};
use crate::theta_product::{eta_modular_sides, f3_modular_sides, f3_num, f3_theta_form};

use super::{truncation, IdentityDescriptor, Settings};

fn desc(id: &'static str, module: &'static str, summary: &'static str, tol: f64, run: fn(&Settings) -> IdentityReport) -> IdentityDescriptor {
    IdentityDescriptor {
        id,
        mode: Mode::Numeric,
        module,
        summary,
        default_order: 0,
        default_tolerance: tol,
        default_params: &[],
        run,
    }
}

macro_rules! theorem {
    ($id:literal, $n:literal, $module:literal, $summary:literal, $tol:expr) => {
        desc($id, $module, $summary, $tol, |s| theorem_report($n, s))
    };
}

pub(super) fn descriptors() -> Vec<IdentityDescriptor> {
    let mut v = vec![
        theorem!("thm3-logtheta", 3, "integral", "log-theta cosine integral, instance a_1 = 1 at q = 0.1, 0.3", 1e-9),
        theorem!("thm4-psi", 4, "integral", "log-theta integrals of psi_1, psi_2 and the sinh form", 1e-8),
        theorem!("thm8-xi", 8, "integral", "xi routes agree and reassemble S(a, b, z)", 1e-8),
        theorem!("thm9-transform", 9, "integral", "p_0 inversion and the p_0 sum representation", 1e-7),
        theorem!("thm10-theta", 10, "integral", "theta_3 and theta_4 integrals equal the cosh Lerch sums", 1e-8),
        theorem!("thm11-transform", 11, "integral", "closed-form P-hat transform", 1e-7),
        theorem!("thm12-transform", 12, "integral", "P_j transform with the convolution side", 1e-7),
        theorem!("thm15-s0", 15, "theta_product", "F3-kernel integral equals the Lerch sum over eta_D(2az)", 1e-7),
        theorem!("thm16-transform", 16, "integral", "P_G inversion", 1e-7),
        theorem!("thm17-general", 17, "integral", "(A n + B) integral representation", 1e-8),
        theorem!("thm18-transform", 18, "integral", "P_G ray transform", 1e-7),
        theorem!("thm19-transform", 19, "integral", "closed-form P_G-hat transform", 1e-7),
        theorem!("thm20-transform", 20, "theta_product", "S-tilde_j transform", 1e-7),
        theorem!("thm21-transform", 21, "theta_product", "closed-form S_G-hat transform", 1e-7),
    ];
    v.extend([
        desc("prop1-etaf", "integral", "log-theta integral of the Watson numerator equals eta(q) f(q) at q = 0.1", 1e-8, |s| {
            prop1_check(C64::new(0.1, 0.0), s.tol)
        }),
        desc("f-integral", "integral", "f(e^(-2 pi)) through the theta_4 integral", 1e-7, |s| f_integral_check(s.tol)),
        desc("phi-integral", "integral", "phi(e^(-2 pi)) through the cos-weighted integral", 1e-7, |s| phi_integral_check(I, s.tol)),
        desc("psi-integral", "integral", "psi(-q) at z = 0.8i through the integral", 1e-7, |s| {
            psi_integral_check(C64::new(0.0, 0.8), s.tol)
        }),
        desc("theta-poisson", "integral", "Poisson summation for the theta_3 Gaussian at w = i", 1e-10, |s| {
            poisson_check(I, &[0.0, 1.0, 2.5], s.tol)
        }),
        desc("eta-modular", "theta_product", "eta_D(-1/z) = sqrt(-iz) eta_D(z) at 10 seeded points", 1e-10, eta_modular),
        desc("f3-modular", "theta_product", "F3 modular relation on the three-point grid", 1e-8, f3_modular),
        desc("f3-theta", "theta_product", "F3 product equals the theta quotient on a 3x3x3 grid", 1e-10, f3_theta),
        desc("theta-modular", "integral", "theta_3 inversion at a fixed point and 5 seeded points", 1e-10, theta_modular),
        desc("beta-erf", "numeric", "beta(x) = 1 - E(sqrt x) against independent quadrature", 1e-12, beta_erf),
        desc("mu-symmetry", "numeric", "mu(u, v) = mu(v, u) at 5 seeded points", 1e-10, mu_symmetry),
        desc(
            "certified-truncation",
            "numeric",
            "doubling every truncation moves each evaluator by less than its reported bound",
            truncation::THRESHOLD,
            |s| truncation::truncation_report(s.seed, truncation::GRID_POINTS),
        ),
    ]);
    v
}

fn theorem_report(n: u32, s: &Settings) -> IdentityReport {
    let params = Params::new().set("seed", s.seed);
    match run_theorem(n, &params, Some(s.tol)) {
        Ok(r) => r,
        Err(e) => {
            let mut rb = ReportBuilder::new(&format!("thm{}", n), Mode::Numeric, s.tol);
            rb.error(&e);
            rb.finish()
        }
    }
}

fn numeric(id: &str, tol: f64, body: impl FnOnce(&mut ReportBuilder) -> Result<()>) -> IdentityReport {
    let mut rb = ReportBuilder::new(id, Mode::Numeric, tol);
    if let Err(e) = body(&mut rb) {
        rb.error(&e);
    }
    rb.finish()
}

fn rel(l: C64, r: C64) -> f64 {
    (l - r).norm() / r.norm()
}

fn eta_modular(s: &Settings) -> IdentityReport {
    numeric("eta-modular", s.tol, |rb| {
        rb.seed(s.seed).param("points", 10).param("metric", "relative");
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        for _ in 0..10 {
            let z = C64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..2.0));
            let (l, r) = eta_modular_sides(z)?;
            rb.nodes(l.terms + r.terms).observe(rel(l.value, r.value));
        }
        Ok(())
    })
}

fn f3_modular(s: &Settings) -> IdentityReport {
    numeric("f3-modular", s.tol, |rb| {
        rb.param("metric", "relative");
        for (a, t, z) in [(1.0, 0.0, C64::new(0.0, 0.5)), (3.0, 1.0, C64::new(0.0, 0.8)), (2.0, 0.5, C64::new(0.6, 0.8))] {
            let (l, r) = f3_modular_sides(a, C64::new(t, 0.0), z)?;
            rb.nodes(l.terms + r.terms).observe(rel(l.value, r.value));
        }
        Ok(())
    })
}

fn f3_theta(s: &Settings) -> IdentityReport {
    numeric("f3-theta", s.tol, |rb| {
        rb.param("metric", "relative");
        for a in [1.0, 2.0, 3.0] {
            for t in [0.0, 0.5, 0.8] {
                for z in [C64::new(0.0, 0.9), C64::new(0.2, 0.8), C64::new(-0.3, 1.3)] {
                    let p = f3_num(a, C64::new(t, 0.0), z)?;
                    let th = f3_theta_form(a, C64::new(t, 0.0), z)?;
                    rb.nodes(p.terms + th.terms).observe(rel(p.value, th.value));
                }
            }
        }
        Ok(())
    })
}

fn theta_modular(s: &Settings) -> IdentityReport {
    numeric("theta-modular", s.tol, |rb| {
        rb.seed(s.seed).param("metric", "relative");
        let mut pts = vec![(1.0, C64::new(0.0, 0.5), C64::new(0.0, 0.0))];
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        for _ in 0..5 {
            let a = rng.gen_range(0.5..2.0);
            let z = C64::new(rng.gen_range(-0.3..0.3), rng.gen_range(0.6..1.4));
            let w = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.3..0.3));
            pts.push((a, z, w));
        }
        for (a, z, w) in pts {
            let (l, r) = theta3_modular_sides(a, z, w)?;
            rb.observe(rel(l, r));
        }
        Ok(())
    })
}

fn beta_erf(s: &Settings) -> IdentityReport {
    numeric("beta-erf", s.tol, |rb| {
        for x in [0.0, 0.25, 1.0, 4.0] {
            let b = beta_num(x)?;
            let e = erf_e_num(C64::new(x.sqrt(), 0.0))?;
            let q = beta_quadrature(x, s.tol * 0.1)?;
            rb.observe((b.value - (1.0 - e.value)).norm());
            rb.nodes(q.terms).observe((b.value - q.value).norm());
        }
        Ok(())
    })
}

fn mu_symmetry(s: &Settings) -> IdentityReport {
    numeric("mu-symmetry", s.tol, |rb| {
        rb.seed(s.seed);
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        for _ in 0..5 {
            let tau = C64::new(rng.gen_range(-0.3..0.3), rng.gen_range(0.7..1.5));
            let u = C64::new(rng.gen_range(0.05..0.45), rng.gen_range(0.05..0.3));
            let v = C64::new(rng.gen_range(0.05..0.45), rng.gen_range(-0.3..-0.05));
            let l = mu_num(ZwegersParams { u, v, tau })?;
            let r = mu_num(ZwegersParams { u: v, v: u, tau })?;
            rb.nodes(l.terms + r.terms).observe((l.value - r.value).norm());
        }
        Ok(())
    })
}
