//! Exact series constructions: q-Pochhammer products, eta, chi, the order 3 mock
//! theta functions and divisor-sum exponentials.
//!
//! `order` arguments are absolute: results are reliable through `q^order`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::divisor::DivisorTable;
use crate::error::{Error, Result};
use crate::series::{rat, ratio, Exponent, FormalSeries};

/// Number of factors in a q-Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Finite(usize),
    Infinite,
}

/// `prod_{j} (1 - sign * q^(c + j p))` through `q^order`.
///
/// Exponents must be positive integers; rational `c, p` are accepted only when every
/// included exponent is integral. For half-integer lattices substitute `q -> q^2` first.
pub fn pochhammer_series(c: Exponent, p: Exponent, n: Count, sign: i8, order: usize) -> Result<FormalSeries> {
    assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
    if n == Count::Infinite && p <= Exponent::zero() {
        return Err(Error::DivergentProduct(p.to_string()));
    }
    let mut coeffs = vec![BigRational::zero(); order + 1];
    coeffs[0] = BigRational::one();
    let top = Exponent::from_integer(order as i64);
    let mut j = 0usize;
    loop {
        if let Count::Finite(m) = n {
            if j >= m {
                break;
            }
        }
        let e = c + p * Exponent::from_integer(j as i64);
        if e <= Exponent::zero() {
            return Err(Error::ConstraintViolation(format!("exponent {} of factor {} is not positive", e, j)));
        }
        if !e.is_integer() {
            return Err(Error::NonIntegralExponent(e.to_string()));
        }
        if e > top {
            if n == Count::Infinite || p >= Exponent::zero() {
                break;
            }
            j += 1;
            continue;
        }
        let e = e.to_integer() as usize;
        // multiply in place by (1 - sign q^e), high index first
        for k in (e..=order).rev() {
            if !coeffs[k - e].is_zero() {
                let t = coeffs[k - e].clone();
                if sign == 1 {
                    coeffs[k] -= t;
                } else {
                    coeffs[k] += t;
                }
            }
        }
        j += 1;
    }
    Ok(FormalSeries::new(Exponent::zero(), coeffs, order))
}

fn int_poch(c: i64, p: i64, n: Count, sign: i8, order: usize) -> FormalSeries {
    pochhammer_series(Exponent::from_integer(c), Exponent::from_integer(p), n, sign, order)
        .expect("integral positive exponents")
}

/// `(q; q)_inf`.
pub fn eta_series(order: usize) -> FormalSeries {
    int_poch(1, 1, Count::Infinite, 1, order)
}

/// `(q^p; q^p)_inf`.
pub fn eta_dilated(p: usize, order: usize) -> FormalSeries {
    int_poch(p as i64, p as i64, Count::Infinite, 1, order)
}

/// Dedekind eta as a series: `q^(1/24) (q; q)_inf`.
pub fn eta_dedekind_series(order: usize) -> FormalSeries {
    eta_series(order).shift(Exponent::new(1, 24))
}

/// `chi(q) = (-q; q)_inf`.
pub fn chi_series(order: usize) -> FormalSeries {
    int_poch(1, 1, Count::Infinite, -1, order)
}

/// Adds `q^e * body` into `acc`, where `body` is known through relative order `order - e`.
fn add_shifted(acc: &mut FormalSeries, e: usize, body: &FormalSeries) {
    let term = body.shift(Exponent::from_integer(e as i64));
    *acc = acc.checked_add(&term).expect("integer offsets");
}

/// `f(q) = sum_{n>=0} q^(n^2) / (-q; q)_n^2`.
pub fn mock_f_series(order: usize) -> FormalSeries {
    let mut acc = FormalSeries::zero(order);
    let mut den = FormalSeries::one(order);
    let mut n = 0usize;
    while n * n <= order {
        if n > 0 {
            den = den.mul_series(&int_poch(n as i64, 1, Count::Finite(1), -1, order));
        }
        let rel = order - n * n;
        let body = den.truncate(rel).pow(-2).expect("unit constant term");
        add_shifted(&mut acc, n * n, &body);
        n += 1;
    }
    acc
}

/// `phi(q) = sum_{n>=0} q^(n^2) / (-q^2; q^2)_n`.
pub fn phi_series(order: usize) -> FormalSeries {
    let mut acc = FormalSeries::zero(order);
    let mut den = FormalSeries::one(order);
    let mut n = 0usize;
    while n * n <= order {
        if n > 0 {
            den = den.mul_series(&int_poch(2 * n as i64, 1, Count::Finite(1), -1, order));
        }
        let body = den.truncate(order - n * n).inv().expect("unit constant term");
        add_shifted(&mut acc, n * n, &body);
        n += 1;
    }
    acc
}

/// `psi(q) = sum_{n>=1} q^(n^2) / (q; q^2)_n`.
pub fn psi_series(order: usize) -> FormalSeries {
    let mut acc = FormalSeries::zero(order);
    let mut den = FormalSeries::one(order);
    let mut n = 1usize;
    while n * n <= order {
        den = den.mul_series(&int_poch(2 * n as i64 - 1, 1, Count::Finite(1), 1, order));
        let body = den.truncate(order - n * n).inv().expect("unit constant term");
        add_shifted(&mut acc, n * n, &body);
        n += 1;
    }
    acc
}

/// `f(1/q) = sum_{n>=0} q^n / (-q; q)_n^2` for `|q| < 1`.
pub fn f_recip_series(order: usize) -> FormalSeries {
    let mut acc = FormalSeries::zero(order);
    let mut den = FormalSeries::one(order);
    for n in 0..=order {
        if n > 0 {
            den = den.mul_series(&int_poch(n as i64, 1, Count::Finite(1), -1, order));
        }
        let body = den.truncate(order - n).pow(-2).expect("unit constant term");
        add_shifted(&mut acc, n, &body);
    }
    acc
}

/// `chi^-2 * sum_n q^(g(n)) (-q^(n+1); q)_inf^2` with `g(n) = n^2` or `n`.
fn product_form(order: usize, square: bool) -> FormalSeries {
    let mut acc = FormalSeries::zero(order);
    let mut n = 0usize;
    loop {
        let e = if square { n * n } else { n };
        if e > order {
            break;
        }
        let rel = order - e;
        let p = int_poch(n as i64 + 1, 1, Count::Infinite, -1, rel);
        add_shifted(&mut acc, e, &p.mul_series(&p));
        n += 1;
    }
    acc.mul_series(&chi_series(order).pow(-2).expect("unit constant term"))
}

/// f(q) through the reversed-tail products `(-q^(n+1); q)_inf`.
pub fn f_product_form(order: usize) -> FormalSeries {
    product_form(order, true)
}

/// f(1/q) through the reversed-tail products `(-q^(n+1); q)_inf`.
pub fn f_recip_product_form(order: usize) -> FormalSeries {
    product_form(order, false)
}

/// `chi^-2 * sum_n q^(g(n)) exp(-2 sum_s q^s sum_{d | s, d <= s/(n+1)} (-1)^d / d)`.
fn divisor_form(order: usize, square: bool, table: &DivisorTable) -> Result<FormalSeries> {
    let mut acc = FormalSeries::zero(order);
    let mut n = 0usize;
    loop {
        let e = if square { n * n } else { n };
        if e > order {
            break;
        }
        let rel = order - e;
        let body = if rel == 0 {
            FormalSeries::one(0)
        } else {
            divisor_exp_series(
                DivisorConstraint::CofactorAtLeast(n as u64 + 1),
                DivisorWeight::Alternating,
                2,
                rel,
                table,
            )?
        };
        add_shifted(&mut acc, e, &body);
        n += 1;
    }
    Ok(acc.mul_series(&chi_series(order).pow(-2)?))
}

/// f(q) through divisor-sum exponentials.
pub fn f_divisor_form(order: usize, table: &DivisorTable) -> Result<FormalSeries> {
    divisor_form(order, true, table)
}

/// f(1/q) through divisor-sum exponentials.
pub fn f_recip_divisor_form(order: usize, table: &DivisorTable) -> Result<FormalSeries> {
    divisor_form(order, false, table)
}

/// The same exponent written as `(1/s) sum_{d | s, d >= n+1} (-1)^(s/d) d`, summed directly
/// without the divisor table. Used to cross-check the reindexing.
pub fn f_divisor_form_reindexed(order: usize) -> Result<FormalSeries> {
    let chi2 = chi_series(order).pow(-2)?;
    let mut acc = FormalSeries::zero(order);
    let mut n = 0usize;
    while n * n <= order {
        let rel = order - n * n;
        let mut x = vec![BigRational::zero(); rel + 1];
        for (s, slot) in x.iter_mut().enumerate().skip(1) {
            let mut inner = 0i64;
            for d in (n + 1)..=s {
                if s % d == 0 {
                    let sgn = if (s / d) % 2 == 0 { 1 } else { -1 };
                    inner += sgn * d as i64;
                }
            }
            *slot = ratio(-2 * inner, s as i64);
        }
        let body = FormalSeries::new(Exponent::zero(), x, rel).exp()?;
        add_shifted(&mut acc, n * n, &body);
        n += 1;
    }
    Ok(acc.mul_series(&chi2))
}

/// Which divisor pairs `A * B = s` contribute to the exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisorConstraint {
    /// `B >= n0`.
    CofactorAtLeast(u64),
    /// `B = r` or `B = -r` mod `p`, each congruence counted separately.
    CofactorResidue { residue: i64, modulus: i64 },
}

/// Weight `w(A)` attached to the divisor `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisorWeight {
    Flat,
    Alternating,
}

/// `exp(-m * sum_{s=1}^{order} q^s sum_{A B = s, constraint(B)} w(A) / A)`.
pub fn divisor_exp_series(
    constraint: DivisorConstraint,
    weight: DivisorWeight,
    multiplier: i64,
    order: usize,
    table: &DivisorTable,
) -> Result<FormalSeries> {
    if order > table.limit() {
        return Err(Error::ConstraintViolation(format!(
            "divisor table limit {} below order {}",
            table.limit(),
            order
        )));
    }
    if let DivisorConstraint::CofactorResidue { modulus, .. } = constraint {
        if modulus < 1 {
            return Err(Error::ConstraintViolation(format!("modulus {} must be positive", modulus)));
        }
    }
    let mut x = vec![BigRational::zero(); order + 1];
    for (s, slot) in x.iter_mut().enumerate().skip(1) {
        let mut acc = BigRational::zero();
        for &a in table.divisors(s) {
            let a = a as i64;
            let b = s as i64 / a;
            let mult = match constraint {
                DivisorConstraint::CofactorAtLeast(n0) => i64::from(b as u64 >= n0),
                DivisorConstraint::CofactorResidue { residue, modulus } => {
                    i64::from((b - residue).rem_euclid(modulus) == 0)
                        + i64::from((b + residue).rem_euclid(modulus) == 0)
                }
            };
            if mult == 0 {
                continue;
            }
            let w = match weight {
                DivisorWeight::Flat => 1,
                DivisorWeight::Alternating => {
                    if a % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                }
            };
            acc += ratio(w * mult, a);
        }
        *slot = -acc * rat(multiplier);
    }
    FormalSeries::new(Exponent::zero(), x, order).exp()
}

/// `2 sum_{n in Z} (-1)^n q^(3n^2/2 + n/2) / (1 + q^n)`, the numerator of the Watson form.
pub fn watson_numerator_series(order: usize) -> FormalSeries {
    let mut terms: Vec<(i64, BigRational)> = Vec::new();
    let top = order as i64;
    terms.push((0, rat(1)));
    let mut m = 1i64;
    loop {
        let mut live = false;
        for n in [m, -m] {
            // exponent of the leading term after rewriting 1/(1+q^n) for n < 0
            let base = (3 * n * n + n) / 2 + if n < 0 { -n } else { 0 };
            if base > top {
                continue;
            }
            live = true;
            let step = n.abs();
            let sgn = if n % 2 == 0 { 2 } else { -2 };
            let mut k = 0i64;
            while base + k * step <= top {
                let alt = if k % 2 == 0 { 1 } else { -1 };
                terms.push((base + k * step, rat(sgn * alt)));
                k += 1;
            }
        }
        if !live {
            break;
        }
        m += 1;
    }
    FormalSeries::from_terms(terms, top)
}

/// Watson's form of `f(q)`: the numerator divided by `(q; q)_inf`.
pub fn watson_rhs_series(order: usize) -> FormalSeries {
    watson_numerator_series(order).mul_series(&eta_series(order).inv().expect("unit constant term"))
}

/// Coefficients of `sum_{n>=1} chi(n) q^(a n^2 + b n)` through the divisor form: the
/// coefficient of `q^n` sums `chi(d)` over `d | n` with `a d^2 + b d = n`.
pub fn theta_char_coeffs(a: i64, b: i64, chi: &dyn Fn(i64) -> i64, order: usize, table: &DivisorTable) -> Result<FormalSeries> {
    if a <= 0 || !(b > 0 || a > b.abs()) {
        return Err(Error::ConstraintViolation(format!("divisor form needs a > 0 and (b > 0 or a > |b|), got a={}, b={}", a, b)));
    }
    if order > table.limit() {
        return Err(Error::ConstraintViolation("divisor table too small".into()));
    }
    let mut c = vec![BigRational::zero(); order + 1];
    for (n, slot) in c.iter_mut().enumerate().skip(1) {
        let mut s = 0i64;
        for &d in table.divisors(n) {
            let d = d as i64;
            if a * d * d + b * d == n as i64 {
                s += chi(d);
            }
        }
        *slot = rat(s);
    }
    Ok(FormalSeries::new(Exponent::zero(), c, order))
}

/// The same theta function summed term by term.
pub fn theta_char_direct(a: i64, b: i64, chi: &dyn Fn(i64) -> i64, order: usize) -> FormalSeries {
    let top = order as i64;
    let mut terms = Vec::new();
    let mut n = 1i64;
    loop {
        let e = a * n * n + b * n;
        if e > top && 2 * a * n + b > 0 {
            break;
        }
        if e <= top {
            terms.push((e, rat(chi(n))));
        }
        n += 1;
    }
    FormalSeries::from_terms(terms, top)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &FormalSeries) -> Vec<i64> {
        s.integer_coeffs().unwrap()
    }

    #[test]
    fn finite_pochhammer() {
        let p = int_poch(1, 1, Count::Finite(3), 1, 6);
        assert_eq!(ints(&p), vec![1, -1, -1, 0, 1, 1, -1]);
    }

    #[test]
    fn euler_product_to_twelve() {
        assert_eq!(ints(&eta_series(12)), vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
    }

    #[test]
    fn divergent_product_rejected() {
        let r = pochhammer_series(Exponent::from_integer(1), Exponent::zero(), Count::Infinite, 1, 5);
        assert!(matches!(r, Err(Error::DivergentProduct(_))));
    }

    #[test]
    fn half_integer_lattice_rejected() {
        let r = pochhammer_series(Exponent::new(1, 2), Exponent::one(), Count::Finite(2), 1, 5);
        assert!(matches!(r, Err(Error::NonIntegralExponent(_))));
    }

    #[test]
    fn mock_f_low_order() {
        assert_eq!(ints(&mock_f_series(6)), vec![1, 1, -2, 3, -3, 3, -5]);
    }

    #[test]
    fn psi_starts_at_q() {
        let p = psi_series(10);
        assert!(p.coeff(0).is_zero());
        assert_eq!(p.coeff(1), &rat(1));
    }

    #[test]
    fn watson_constant_term() {
        let w = watson_rhs_series(10);
        assert_eq!(w.coeff_at_int(0), Some(rat(1)));
        assert!(watson_numerator_series(50).integer_coeffs().is_some());
    }

    #[test]
    fn divisor_exp_empty_constraint_is_one() {
        let t = DivisorTable::new(10);
        let s = divisor_exp_series(DivisorConstraint::CofactorAtLeast(100), DivisorWeight::Flat, 1, 10, &t).unwrap();
        assert_eq!(s, FormalSeries::one(10));
    }

    #[test]
    fn theta_char_examples() {
        let t = DivisorTable::new(40);
        let one = |_: i64| 1;
        let sq = theta_char_coeffs(1, 0, &one, 40, &t).unwrap();
        for n in 1..=40usize {
            let is_sq = (1..=7).any(|d| d * d == n);
            assert_eq!(sq.coeff(n), &rat(i64::from(is_sq)));
        }
        let alt = |d: i64| if d % 2 == 0 { 1 } else { -1 };
        let s = theta_char_coeffs(3, 1, &alt, 40, &t).unwrap();
        assert_eq!(s.coeff(4), &rat(-1));
        assert_eq!(s.coeff(2), &rat(0));
        assert!(s.agrees_with(&theta_char_direct(3, 1, &alt, 40)));
    }
}
