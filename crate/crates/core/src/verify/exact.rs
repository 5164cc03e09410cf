//! Exact-mode identities: rational series compared coefficient by coefficient.

use crate::divisor::DivisorTable;
use crate::error::Result;
use crate::integral::ThetaKind;
use crate::lerch::{fc_bruteforce, fc_series, fs_bruteforce, fs_series};
use crate::qseries::{
    eta_dilated, f_divisor_form, f_divisor_form_reindexed, f_product_form, f_recip_divisor_form, f_recip_product_form,
    f_recip_series, mock_f_series, phi_series, theta_char_coeffs, theta_char_direct, watson_rhs_series,
};
use crate::report::{IdentityReport, Mode, ReportBuilder};
use crate::series::FormalSeries;
use crate::theta_product::{q_check, q_divisor_series, q_series, w_check, w_divisor_series, w_series};

use super::{IdentityDescriptor, Settings, DEFAULT_ORDER};

/// `(a, p)` pairs for the W identities.
const W_GRID: [(i64, i64); 4] = [(1, 3), (1, 4), (2, 5), (3, 7)];
/// `(a, t)` pairs with `a > t > 0` for the Q divisor forms.
const Q_GRID: [(i64, i64); 3] = [(3, 1), (2, 1), (5, 2)];

fn desc(id: &'static str, module: &'static str, summary: &'static str, order: usize, run: fn(&Settings) -> IdentityReport) -> IdentityDescriptor {
    IdentityDescriptor {
        id,
        mode: Mode::Exact,
        module,
        summary,
        default_order: order,
        default_tolerance: 0.0,
        default_params: &[],
        run,
    }
}

pub(super) fn descriptors() -> Vec<IdentityDescriptor> {
    vec![
        desc("thm1-watson", "qseries", "f(q) equals Watson's bilateral form over (q;q)_inf", DEFAULT_ORDER, watson),
        desc("thm2-f-forms", "qseries", "f(q): defining series, tail-product form and divisor-exponential forms", 40, f_forms),
        desc("thm2-f-recip-forms", "qseries", "f(1/q): defining series, tail-product form and divisor-exponential form", 40, f_recip_forms),
        desc("thm6-fs-oracle", "lerch", "fs divisor coefficients against direct expansion on the 4x4x3 grid", 120, fs_oracle),
        desc("thm7-fc-oracle", "lerch", "fc divisor coefficients against direct expansion on the 4x4x3 grid", 120, fc_oracle),
        desc("etaphi-product", "lerch", "eta(q^2) phi(q^2) equals the fc(3,1;2) coefficient reconstruction", 200, eta_phi),
        desc("theta-char-divisor", "qseries", "character-twisted theta series through divisors", DEFAULT_ORDER, theta_char),
        desc("w-theta-product", "theta_product", "bilateral theta sums equal eta(q^p) W for kinds 3 and 4", 40, w_theta),
        desc("w-divisor", "theta_product", "W product form equals its divisor-exponential form", 30, w_divisor),
        desc("q-divisor", "theta_product", "Q product form equals its divisor-exponential form and the theta quotient", 30, q_divisor),
    ]
}

/// Builds an exact report; the threshold is 0 and each comparison contributes its largest
/// coefficient difference.
fn exact(id: &str, order: usize, body: impl FnOnce(&mut Exact) -> Result<()>) -> IdentityReport {
    let mut ex = Exact { rb: ReportBuilder::new(id, Mode::Exact, 0.0), mismatched: 0, compared: 0 };
    ex.rb.param("order", order);
    let res = body(&mut ex);
    let Exact { mut rb, mismatched, compared } = ex;
    rb.param("comparisons", compared).param("mismatched_coefficients", mismatched);
    if let Err(e) = res {
        rb.error(&e);
    }
    rb.finish()
}

struct Exact {
    rb: ReportBuilder,
    mismatched: usize,
    compared: usize,
}

impl Exact {
    fn compare(&mut self, label: &str, lhs: &FormalSeries, rhs: &FormalSeries) -> Result<()> {
        let bad = lhs.mismatches(rhs)?;
        self.compared += 1;
        if bad.is_empty() {
            self.rb.observe(0.0);
        } else {
            self.mismatched += bad.len();
            self.rb.append_note(&format!("{}: first mismatch at exponent {}", label, bad[0]));
            self.rb.observe(lhs.max_abs_diff(rhs)?);
        }
        Ok(())
    }

    fn empty(&mut self, label: &str, bad: Vec<crate::series::Exponent>) {
        self.compared += 1;
        if bad.is_empty() {
            self.rb.observe(0.0);
        } else {
            self.mismatched += bad.len();
            self.rb.append_note(&format!("{}: first mismatch at exponent {}", label, bad[0]));
            self.rb.observe(f64::INFINITY);
        }
    }
}

fn watson(s: &Settings) -> IdentityReport {
    exact("thm1-watson", s.order, |ex| ex.compare("watson", &mock_f_series(s.order), &watson_rhs_series(s.order)))
}

fn f_forms(s: &Settings) -> IdentityReport {
    exact("thm2-f-forms", s.order, |ex| {
        let table = DivisorTable::new(s.order);
        let series = mock_f_series(s.order);
        ex.compare("product form", &series, &f_product_form(s.order))?;
        let div = f_divisor_form(s.order, &table)?;
        ex.compare("divisor form", &series, &div)?;
        ex.compare("reindexed divisor form", &div, &f_divisor_form_reindexed(s.order)?)
    })
}

fn f_recip_forms(s: &Settings) -> IdentityReport {
    exact("thm2-f-recip-forms", s.order, |ex| {
        let table = DivisorTable::new(s.order);
        let series = f_recip_series(s.order);
        ex.compare("product form", &series, &f_recip_product_form(s.order))?;
        ex.compare("divisor form", &series, &f_recip_divisor_form(s.order, &table)?)
    })
}

fn lerch_grid(ex: &mut Exact, order: usize, formula: fn(i64, i64, i64, usize) -> FormalSeries, brute: fn(i64, i64, i64, usize) -> FormalSeries) -> Result<()> {
    for a in 1..=4 {
        for b in 0..=3 {
            for c in 1..=3 {
                ex.compare(&format!("(a,b,c)=({},{},{})", a, b, c), &formula(a, b, c, order), &brute(a, b, c, order))?;
            }
        }
    }
    Ok(())
}

fn fs_oracle(s: &Settings) -> IdentityReport {
    exact("thm6-fs-oracle", s.order, |ex| lerch_grid(ex, s.order, fs_series, fs_bruteforce))
}

fn fc_oracle(s: &Settings) -> IdentityReport {
    exact("thm7-fc-oracle", s.order, |ex| lerch_grid(ex, s.order, fc_series, fc_bruteforce))
}

/// `eta(q^2) phi(q^2)` as an exact product, against `fc(3, 1; 2)`.
pub(crate) fn eta_phi_product(order: usize) -> FormalSeries {
    let phi2 = phi_series(order / 2 + 1).dilate(2).truncate(order);
    eta_dilated(2, order).mul_series(&phi2)
}

fn eta_phi(s: &Settings) -> IdentityReport {
    exact("etaphi-product", s.order, |ex| {
        let prod = eta_phi_product(s.order);
        ex.compare("product vs reconstruction", &prod, &fc_series(3, 1, 2, s.order))
    })
}

fn theta_char(s: &Settings) -> IdentityReport {
    exact("theta-char-divisor", s.order, |ex| {
        let table = DivisorTable::new(s.order);
        let one = |_: i64| 1;
        let alt = |d: i64| if d % 2 == 0 { 1 } else { -1 };
        let mod3 = |d: i64| [0, 1, -1][d.rem_euclid(3) as usize];
        let cases: [(i64, i64, &dyn Fn(i64) -> i64, &str); 4] =
            [(1, 0, &one, "squares"), (3, 1, &alt, "alternating"), (2, 1, &mod3, "mod 3"), (3, -2, &alt, "negative b")];
        for (a, b, chi, label) in cases {
            ex.compare(label, &theta_char_coeffs(a, b, chi, s.order, &table)?, &theta_char_direct(a, b, chi, s.order))?;
        }
        Ok(())
    })
}

fn w_theta(s: &Settings) -> IdentityReport {
    exact("w-theta-product", s.order, |ex| {
        for kind in [ThetaKind::Three, ThetaKind::Four] {
            for (a, p) in W_GRID {
                let bad = w_check(kind, a, p, s.order)?;
                ex.empty(&format!("{:?} (a,p)=({},{})", kind, a, p), bad);
            }
        }
        Ok(())
    })
}

fn w_divisor(s: &Settings) -> IdentityReport {
    exact("w-divisor", s.order, |ex| {
        let table = DivisorTable::new(s.order);
        for kind in [ThetaKind::Three, ThetaKind::Four] {
            for (a, p) in W_GRID {
                let label = format!("{:?} (a,p)=({},{})", kind, a, p);
                ex.compare(&label, &w_series(kind, a, p, s.order)?, &w_divisor_series(kind, a, p, s.order, &table)?)?;
            }
        }
        Ok(())
    })
}

fn q_divisor(s: &Settings) -> IdentityReport {
    exact("q-divisor", s.order, |ex| {
        let table = DivisorTable::new(s.order);
        for kind in [ThetaKind::Three, ThetaKind::Four] {
            for (a, t) in Q_GRID {
                let label = format!("{:?} (a,t)=({},{})", kind, a, t);
                ex.compare(&label, &q_series(kind, a, t, s.order)?, &q_divisor_series(kind, a, t, s.order, &table)?)?;
                ex.empty(&format!("{} theta quotient", label), q_check(kind, a, t, s.order)?);
            }
        }
        Ok(())
    })
}
