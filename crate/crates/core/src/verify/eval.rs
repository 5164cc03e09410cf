//! Named numeric evaluators for the `eval` front end.

use crate::error::{Error, Result};
use crate::integral::transforms::{parse_c64, Params};
use crate::integral::{f_via_integral, phi_via_integral, psi_minus_q_via_integral};
use crate::numeric::erf::{beta_num, erf_e_num};
use crate::numeric::eta::{eta_dedekind_num_tol, eta_num_tol};
use crate::numeric::lerch_num::{lerch_num_tol, LerchFamily, LerchParams};
use crate::numeric::mock_num::{f_recip_num_tol, mock_num_tol, MockName};
use crate::numeric::theta::{theta3_num_tol, theta4_num_tol};
use crate::numeric::zwegers::{m_num, mu_num_tol, r_f_num_tol, r_zw_num_tol, theta_zw_num_tol, ResidueRange, ZwegersParams};
use crate::numeric::{Certified, HalfPlanePoint, C64, DEFAULT_TOL};
use crate::theta_product::f3_num;

/// Integral evaluators run at this tolerance unless told otherwise.
const INTEGRAL_TOL: f64 = 1e-10;

/// `(name, positional arguments, params)` for every evaluator.
pub fn eval_names() -> &'static [(&'static str, &'static str, &'static str)] {
    &[
        ("theta3", "v q", ""),
        ("theta4", "v q", ""),
        ("eta", "q", ""),
        ("eta-dedekind", "z", ""),
        ("f", "q", ""),
        ("phi", "q", ""),
        ("psi", "q", ""),
        ("f-recip", "q", ""),
        ("lerch-s", "z", "a b"),
        ("lerch-fs", "z", "a b c"),
        ("lerch-fc", "z", "a b c"),
        ("lerch-general", "z", "a b A B w"),
        ("theta-zw", "v tau", ""),
        ("mu", "u v tau", ""),
        ("R", "u tau", ""),
        ("M", "u v tau", ""),
        ("R_f", "z", "[range=positive]"),
        ("E", "x", ""),
        ("beta", "x", ""),
        ("F3", "z", "a t"),
        ("f-integral", "z", ""),
        ("phi-integral", "z", ""),
        ("psi-integral", "z", ""),
    ]
}

fn real(params: &Params, key: &str, default: f64) -> Result<f64> {
    Ok(params.f64(key)?.unwrap_or(default))
}

/// Evaluates `name` at the positional complex `args`. `tol` defaults to each evaluator's own
/// target; evaluators without a tolerance knob ignore it.
pub fn evaluate(name: &str, args: &[&str], params: &Params, tol: Option<f64>) -> Result<Certified> {
    let (_, spec, _) = eval_names()
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
    let want = spec.split_whitespace().count();
    if args.len() != want {
        return Err(Error::ConfigInvalid(format!("{} takes {} argument(s) ({}), got {}", name, want, spec, args.len())));
    }
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(Error::ConfigInvalid(format!("tolerance must be positive, got {}", t)));
        }
    }
    let x: Vec<C64> = args.iter().map(|a| parse_c64(a)).collect::<Result<_>>()?;
    let series_tol = tol.unwrap_or(DEFAULT_TOL);
    let int_tol = tol.unwrap_or(INTEGRAL_TOL);
    let hp = |z: C64| HalfPlanePoint::new(z);
    let zw = || ZwegersParams { u: x[0], v: x[1], tau: x[2] };
    let lerch = |family: LerchFamily, p: LerchParams| lerch_num_tol(family, p, hp(x[0])?, series_tol);
    match name {
        "theta3" => theta3_num_tol(x[0], x[1], series_tol),
        "theta4" => theta4_num_tol(x[0], x[1], series_tol),
        "eta" => eta_num_tol(x[0], series_tol),
        "eta-dedekind" => eta_dedekind_num_tol(x[0], series_tol),
        "f" => mock_num_tol(MockName::F, x[0], series_tol),
        "phi" => mock_num_tol(MockName::Phi, x[0], series_tol),
        "psi" => mock_num_tol(MockName::Psi, x[0], series_tol),
        "f-recip" => f_recip_num_tol(x[0], series_tol),
        "lerch-s" => lerch(LerchFamily::S, LerchParams::abc(real(params, "a", 1.0)?, real(params, "b", 0.0)?, 1.0)),
        "lerch-fs" | "lerch-fc" => {
            let p = LerchParams::abc(real(params, "a", 1.0)?, real(params, "b", 0.0)?, real(params, "c", 1.0)?);
            lerch(if name == "lerch-fs" { LerchFamily::Fs } else { LerchFamily::Fc }, p)
        }
        "lerch-general" => {
            let w = params.c64("w")?.unwrap_or(2.0 * x[0]);
            let p = LerchParams::general(real(params, "a", 1.0)?, real(params, "b", 0.0)?, real(params, "A", 1.0)?, real(params, "B", 0.0)?, w);
            lerch(LerchFamily::General, p)
        }
        "theta-zw" => theta_zw_num_tol(x[0], x[1], series_tol),
        "mu" => mu_num_tol(zw(), series_tol),
        "R" => r_zw_num_tol(x[0], x[1], series_tol),
        "M" => m_num(zw()),
        "R_f" => {
            let range = match params.get("range") {
                None | Some("bilateral") => ResidueRange::Bilateral,
                Some("positive") => ResidueRange::PositiveOnly,
                Some(other) => return Err(Error::ConfigInvalid(format!("range must be bilateral or positive, got {:?}", other))),
            };
            r_f_num_tol(x[0], range, series_tol)
        }
        "E" => erf_e_num(x[0]),
        "beta" => {
            if x[0].im != 0.0 {
                return Err(Error::ConstraintViolation(format!("beta takes a real argument, got {}", x[0])));
            }
            beta_num(x[0].re)
        }
        "F3" => f3_num(real(params, "a", 1.0)?, params.c64("t")?.unwrap_or(C64::new(0.0, 0.0)), x[0]),
        "f-integral" => f_via_integral(hp(x[0])?, int_tol),
        "phi-integral" => phi_via_integral(hp(x[0])?, int_tol),
        "psi-integral" => psi_minus_q_via_integral(hp(x[0])?, int_tol),
        _ => unreachable!("every listed name is dispatched"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_dispatches() {
        let sample = |kind: &str| match kind {
            "q" => "0.2+0.1i",
            "v" | "u" => "0.2+0.1i",
            "x" => "0.5",
            _ => "0.1+0.9i",
        };
        for (name, spec, _) in eval_names() {
            let mut args: Vec<&str> = spec.split_whitespace().map(sample).collect();
            if *name == "mu" || *name == "M" {
                args[1] = "0.3-0.1i";
            }
            let r = evaluate(name, &args, &Params::new(), None);
            assert!(r.is_ok(), "{}: {:?}", name, r);
        }
    }

    #[test]
    fn arity_and_names() {
        assert!(matches!(evaluate("f", &[], &Params::new(), None), Err(Error::ConfigInvalid(_))));
        assert!(matches!(evaluate("nope", &["1"], &Params::new(), None), Err(Error::UnknownFamily(_))));
        assert!(matches!(evaluate("f", &["0.1"], &Params::new(), Some(0.0)), Err(Error::ConfigInvalid(_))));
    }

    #[test]
    fn f_at_e_minus_two_pi() {
        let q = (-2.0 * std::f64::consts::PI).exp().to_string();
        let v = evaluate("f", &[&q], &Params::new(), None).unwrap();
        assert!((v.value.re - 1.001_860_49).abs() < 1e-8);
    }
}
