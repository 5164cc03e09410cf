//! Coefficient export for the registered series families.

use std::path::Path;
use std::str::FromStr;

use crate::divisor::DivisorTable;
use crate::error::{Error, Result};
use crate::integral::transforms::Params;
use crate::integral::ThetaKind;
use crate::lerch::{chebyshev_fs, fc_bruteforce, fc_series, fs_bruteforce, fs_series};
use crate::qseries::{
    chi_series, eta_dedekind_series, eta_series, f_recip_series, mock_f_series, phi_series, psi_series, watson_rhs_series,
};
use crate::series::FormalSeries;
use crate::theta_product::{q_divisor_series, q_series, w_divisor_series, w_series};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::ConfigInvalid(format!("format must be csv or json, got {:?}", other))),
        }
    }
}

/// Family names with the parameters each one reads.
pub fn family_names() -> &'static [(&'static str, &'static str)] {
    &[
        ("f", ""),
        ("phi", ""),
        ("psi", ""),
        ("f-recip", ""),
        ("watson", ""),
        ("eta", ""),
        ("eta-dedekind", ""),
        ("chi", ""),
        ("fs", "a b c"),
        ("fc", "a b c"),
        ("fs-direct", "a b c"),
        ("fc-direct", "a b c"),
        ("chebyshev", "a b"),
        ("w3", "a p [form=divisor]"),
        ("w4", "a p [form=divisor]"),
        ("q3", "a t [form=divisor]"),
        ("q4", "a t [form=divisor]"),
    ]
}

fn int(params: &Params, key: &str, default: i64) -> Result<i64> {
    match params.get(key) {
        None => Ok(default),
        Some(s) => s.parse().map_err(|_| Error::ConfigInvalid(format!("{} must be an integer, got {:?}", key, s))),
    }
}

fn series(family: &str, params: &Params, order: usize) -> Result<FormalSeries> {
    let divisor = params.get("form") == Some("divisor");
    let table = || DivisorTable::new(order.max(1));
    let theta = |kind: ThetaKind, second: &str| -> Result<FormalSeries> {
        let a = int(params, "a", 1)?;
        let m = int(params, second, 3)?;
        match (second, divisor) {
            ("p", false) => w_series(kind, a, m, order),
            ("p", true) => w_divisor_series(kind, a, m, order, &table()),
            (_, false) => q_series(kind, a, m, order),
            (_, true) => q_divisor_series(kind, a, m, order, &table()),
        }
    };
    let abc = || -> Result<(i64, i64, i64)> {
        let (a, c) = (int(params, "a", 3)?, int(params, "c", 2)?);
        if a < 1 || c < 1 {
            return Err(Error::ConstraintViolation(format!("a and c must be positive, got a={}, c={}", a, c)));
        }
        Ok((a, int(params, "b", 1)?, c))
    };
    Ok(match family {
        "f" => mock_f_series(order),
        "phi" => phi_series(order),
        "psi" => psi_series(order),
        "f-recip" => f_recip_series(order),
        "watson" => watson_rhs_series(order),
        "eta" => eta_series(order),
        "eta-dedekind" => eta_dedekind_series(order),
        "chi" => chi_series(order),
        "fs" => {
            let (a, b, c) = abc()?;
            fs_series(a, b, c, order)
        }
        "fc" => {
            let (a, b, c) = abc()?;
            fc_series(a, b, c, order)
        }
        "fs-direct" => {
            let (a, b, c) = abc()?;
            fs_bruteforce(a, b, c, order)
        }
        "fc-direct" => {
            let (a, b, c) = abc()?;
            fc_bruteforce(a, b, c, order)
        }
        "chebyshev" => {
            let (a, b) = (int(params, "a", 2)?, int(params, "b", 1)?);
            if a < 1 || b < 1 {
                return Err(Error::ConstraintViolation(format!("a and b must be positive, got a={}, b={}", a, b)));
            }
            chebyshev_fs(a, b, order)
        }
        "w3" => theta(ThetaKind::Three, "p")?,
        "w4" => theta(ThetaKind::Four, "p")?,
        "q3" => theta(ThetaKind::Three, "t")?,
        "q4" => theta(ThetaKind::Four, "t")?,
        other => return Err(Error::UnknownFamily(other.to_string())),
    })
}

/// Coefficients of `family` through `order` as CSV rows `exponent,numerator,denominator`
/// or as the series JSON object. Output bytes depend only on the inputs.
pub fn export_coeffs(family: &str, params: &Params, order: usize, format: Format) -> Result<String> {
    let s = series(family, params, order)?;
    Ok(match format {
        Format::Csv => s.to_csv(),
        Format::Json => s.to_json(),
    })
}

pub fn write_coeffs(path: &Path, family: &str, params: &Params, order: usize, format: Format) -> Result<()> {
    std::fs::write(path, export_coeffs(family, params, order, format)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_order_six_rows() {
        let csv = export_coeffs("f", &Params::new(), 6, Format::Csv).unwrap();
        let rows: Vec<&str> = csv.lines().skip(1).collect();
        assert_eq!(rows, ["0,1,1", "1,1,1", "2,-2,1", "3,3,1", "4,-3,1", "5,3,1", "6,-5,1"]);
    }

    #[test]
    fn fc_order_zero() {
        let csv = export_coeffs("fc", &Params::new(), 0, Format::Csv).unwrap();
        assert_eq!(csv.lines().skip(1).collect::<Vec<_>>(), ["0,1,1"]);
    }

    #[test]
    fn json_round_trip() {
        let p = Params::new().set("a", 2).set("p", 5);
        let j = export_coeffs("w4", &p, 20, Format::Json).unwrap();
        let back = FormalSeries::from_json(&j).unwrap();
        assert_eq!(back.to_json(), j);
        assert!(back.agrees_with(&w_series(ThetaKind::Four, 2, 5, 20).unwrap()));
    }

    #[test]
    fn unknown_family() {
        assert!(matches!(export_coeffs("nope", &Params::new(), 5, Format::Csv), Err(Error::UnknownFamily(_))));
    }
}
