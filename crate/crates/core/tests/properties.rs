use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use lerchq::integral::transforms::parse_c64;
use lerchq::numeric::eta::eta_dedekind_num;
use lerchq::numeric::mock_num::{mock_num, MockName};
use lerchq::numeric::theta::{theta3_num, theta4_num};
use lerchq::numeric::zwegers::{mu_num, ZwegersParams};
use lerchq::qseries::mock_f_series;
use lerchq::verify::{run_suite, Config, Filter};
use lerchq::{FormalSeries, Mode};

const ORDER: usize = 12;

fn series() -> impl Strategy<Value = FormalSeries> {
    prop::collection::vec(-9i64..=9, ORDER + 1).prop_map(|c| FormalSeries::from_integers(0, &c, ORDER))
}

fn unit_series() -> impl Strategy<Value = FormalSeries> {
    prop::collection::vec(-9i64..=9, ORDER).prop_map(|mut c| {
        c.insert(0, 1);
        FormalSeries::from_integers(0, &c, ORDER)
    })
}

fn nome() -> impl Strategy<Value = C64> {
    (0.05f64..0.6, 0.0f64..(2.0 * PI)).prop_map(|(r, t)| C64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_commutes(a in series(), b in series()) {
        prop_assert!(a.mul_series(&b).agrees_with(&b.mul_series(&a)));
    }

    #[test]
    fn product_associates(a in series(), b in series(), c in series()) {
        prop_assert!(a.mul_series(&b).mul_series(&c).agrees_with(&a.mul_series(&b.mul_series(&c))));
    }

    #[test]
    fn product_distributes(a in series(), b in series(), c in series()) {
        let lhs = a.mul_series(&b.checked_add(&c).unwrap());
        let rhs = a.mul_series(&b).checked_add(&a.mul_series(&c)).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series()) {
        let one = FormalSeries::one(ORDER);
        let inv = a.inv().unwrap();
        prop_assert!(a.mul_series(&inv).agrees_with(&one));
        prop_assert!(inv.mul_series(&a).agrees_with(&one));
    }

    #[test]
    fn log_then_exp(a in unit_series()) {
        prop_assert!(a.log().unwrap().exp().unwrap().agrees_with(&a));
    }

    #[test]
    fn log_of_product_adds(a in unit_series(), b in unit_series()) {
        let lhs = a.mul_series(&b).log().unwrap();
        let rhs = a.log().unwrap().checked_add(&b.log().unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn json_round_trip(a in series(), shift in -5i64..5) {
        let s = a.shift(lerchq::Exponent::new(shift, 24));
        let back = FormalSeries::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), s.to_json());
        prop_assert!(back.agrees_with(&s));
    }

    #[test]
    fn theta_periodic_in_v(v in -1.0f64..1.0) {
        let q = C64::new(0.2, 0.1);
        let v = C64::new(v, 0.0);
        let a = theta3_num(v + PI, q).unwrap().value;
        let b = theta3_num(v, q).unwrap().value;
        prop_assert!((a - b).norm() < 1e-13);
        let c = theta4_num(v + PI, q).unwrap().value;
        let d = theta4_num(v, q).unwrap().value;
        prop_assert!((c - d).norm() < 1e-13);
    }

    #[test]
    fn theta_bound_covers_error(q in nome(), v in -0.5f64..0.5) {
        // theta_3(v, q) + theta_4(v, q) = 2 theta_3(2v, q^4)
        let v = C64::new(v, 0.0);
        let s = theta3_num(v, q).unwrap();
        let t = theta4_num(v, q).unwrap();
        let r = theta3_num(2.0 * v, q.powi(4)).unwrap();
        let bound = s.bound + t.bound + 2.0 * r.bound;
        prop_assert!((s.value + t.value - 2.0 * r.value).norm() <= bound + 1e-15);
    }

    #[test]
    fn eta_translation(x in -0.5f64..0.5, y in 0.4f64..2.0) {
        let z = C64::new(x, y);
        let a = eta_dedekind_num(z + 1.0).unwrap().value;
        let b = (2.0 * PI * C64::i() / 24.0).exp() * eta_dedekind_num(z).unwrap().value;
        prop_assert!((a - b).norm() <= 1e-13 * (1.0 + b.norm()));
    }

    #[test]
    fn mu_is_symmetric(
        tr in -0.3f64..0.3, ti in 0.7f64..1.5,
        ur in 0.05f64..0.45, ui in 0.05f64..0.3,
        vr in 0.05f64..0.45, vi in -0.3f64..-0.05,
    ) {
        let (u, v, tau) = (C64::new(ur, ui), C64::new(vr, vi), C64::new(tr, ti));
        let a = mu_num(ZwegersParams { u, v, tau }).unwrap().value;
        let b = mu_num(ZwegersParams { u: v, v: u, tau }).unwrap().value;
        prop_assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn exact_and_numeric_f_agree(q in 0.01f64..0.3) {
        let exact = mock_f_series(60).eval_f64(q);
        let num = mock_num(MockName::F, C64::new(q, 0.0)).unwrap();
        prop_assert!((num.value.re - exact).abs() < 1e-12 + num.bound);
    }

    #[test]
    fn complex_parse_round_trip(re in -1e3f64..1e3, im in -1e3f64..1e3) {
        let text = format!("{}{:+}i", re, im);
        prop_assert_eq!(parse_c64(&text).unwrap(), C64::new(re, im));
    }
}

#[test]
fn suite_is_deterministic_across_jobs() {
    let strip = |jobs| {
        let config = Config { order: Some(25), jobs: Some(jobs), ..Config::default() };
        let mut r = run_suite(&Filter::Mode(Mode::Exact), &config).unwrap();
        for x in &mut r {
            x.runtime_ms = 0.0;
        }
        r
    };
    let one = strip(1);
    assert!(one.iter().all(|r| r.passed() && r.max_abs_error == Some(0.0)));
    assert_eq!(one, strip(4));
}
