//! Fourier coefficients of the sinh and cosh Lerch sums
//!
//! `f_s(a,b;c;z) = sum_{n != 0} (-1)^n q^(a n^2 + b n) / sinh(2 pi i n c z)` and
//! `f_c(a,b;c;z) = sum_n (-1)^n q^(a n^2 + b n) / cosh(2 pi i n c z)`,
//!
//! via divisor sums, with independent double-sum oracles.

use std::collections::BTreeMap;

use crate::series::{rat, FormalSeries};

fn sign(x: i64) -> i64 {
    x.signum()
}

/// `sign(n) sign(l) (sign(n) + sign(l)) / 2`: 1 if both positive, -1 if both negative.
pub fn eps(n: i64, l: i64) -> i64 {
    sign(n) * sign(l) * (sign(n) + sign(l)) / 2
}

/// 1 iff `n l > 0`.
pub fn eps0(n: i64, l: i64) -> i64 {
    i64::from(n.signum() * l.signum() > 0)
}

fn neg_one_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Signed divisors `d` of `n` with `d != 0`, ascending by `|d|`.
fn signed_divisors(n: i64) -> impl Iterator<Item = i64> {
    (1..=n).filter(move |d| n % d == 0).flat_map(|d| [d, -d])
}

/// `2 sum_{|d| | n} (-1)^d [k in Z] eps(d, -k)` with `k = (b + a d - n/d) / c`, `n/d` signed.
pub fn c1(a: i64, b: i64, c: i64, n: i64) -> i64 {
    assert!(n >= 1 && c != 0);
    let mut s = 0;
    for d in signed_divisors(n) {
        let num = b + a * d - n / d;
        if num % c != 0 {
            continue;
        }
        s += neg_one_pow(d) * eps(d, -num / c);
    }
    2 * s
}

/// `C1(a, c - b, 2c; n)`.
pub fn cs(a: i64, b: i64, c: i64, n: i64) -> i64 {
    c1(a, c - b, 2 * c, n)
}

/// `2 sum_{d | n, d > 0} (-1)^d [k in Z] eps(d, -k) (-1)^(-k)` with `k = (b + a d - n/d) / c`.
pub fn c2(a: i64, b: i64, c: i64, n: i64) -> i64 {
    c2_with_divisors(a, b, c, n, false)
}

/// `C2` summed over signed divisors as well. Kept only to document that this reading
/// disagrees with the direct expansion.
pub fn c2_signed(a: i64, b: i64, c: i64, n: i64) -> i64 {
    c2_with_divisors(a, b, c, n, true)
}

fn c2_with_divisors(a: i64, b: i64, c: i64, n: i64, signed: bool) -> i64 {
    assert!(n >= 1 && c != 0);
    let ds: Vec<i64> = if signed { signed_divisors(n).collect() } else { (1..=n).filter(|d| n % d == 0).collect() };
    let mut s = 0;
    for d in ds {
        let num = b + a * d - n / d;
        if num % c != 0 {
            continue;
        }
        let k = -num / c;
        s += neg_one_pow(d) * eps(d, k) * neg_one_pow(k);
    }
    2 * s
}

/// `C2(a, c + b, 2c; n) + C2(a, c - b, 2c; n)`.
pub fn cc(a: i64, b: i64, c: i64, n: i64) -> i64 {
    c2(a, c + b, 2 * c, n) + c2(a, c - b, 2 * c, n)
}

fn check_params(a: i64, c: i64) {
    assert!(a >= 1, "a must be a positive integer");
    assert!(c >= 1, "series mode needs c >= 1");
}

/// Adds `scale * sum_{n>=1} (-1)^n q^(a n^2 + s n)` for exponents `<= top`.
fn theta_remainder(terms: &mut Vec<(i64, i64)>, a: i64, s: i64, scale: i64, top: i64) {
    let mut n = 1i64;
    loop {
        let e = a * n * n + s * n;
        // past the vertex the exponent only grows
        if e > top && 2 * a * n + s > 0 {
            break;
        }
        if e <= top {
            terms.push((e, scale * neg_one_pow(n)));
        }
        n += 1;
    }
}

fn collect(terms: Vec<(i64, i64)>, top: i64) -> FormalSeries {
    let mut m: BTreeMap<i64, i64> = BTreeMap::new();
    for (e, c) in terms {
        *m.entry(e).or_insert(0) += c;
    }
    FormalSeries::from_terms(m.into_iter().map(|(e, c)| (e, rat(c))), top)
}

/// `sum_n Cs(a,b;c;n) q^n + 2 sum_{n>=1} (-1)^n q^(a n^2 + (c - b) n)`.
pub fn fs_series(a: i64, b: i64, c: i64, order: usize) -> FormalSeries {
    check_params(a, c);
    let top = order as i64;
    let mut terms: Vec<(i64, i64)> = (1..=top).map(|n| (n, cs(a, b, c, n))).collect();
    theta_remainder(&mut terms, a, c - b, 2, top);
    collect(terms, top)
}

/// `1 + sum_n Cc(a,b;c;n) q^n + 2 sum_{n>=1} (-1)^n (q^(a n^2 + (c - b) n) + q^(a n^2 + (c + b) n))`.
pub fn fc_series(a: i64, b: i64, c: i64, order: usize) -> FormalSeries {
    check_params(a, c);
    let top = order as i64;
    let mut terms: Vec<(i64, i64)> = vec![(0, 1)];
    terms.extend((1..=top).map(|n| (n, cc(a, b, c, n))));
    theta_remainder(&mut terms, a, c - b, 2, top);
    theta_remainder(&mut terms, a, c + b, 2, top);
    collect(terms, top)
}

/// Iterates `(n, l)` with `n >= 1`, `l >= l0` over every pair whose smaller exponent
/// `a n^2 + c (2l+1) n - |b| n` can still be `<= top`.
fn double_sum(a: i64, b: i64, c: i64, l0: i64, top: i64, mut visit: impl FnMut(i64, i64)) {
    let lowest = |n: i64, l: i64| a * n * n + c * (2 * l + 1) * n - b.abs() * n;
    let mut n = 1i64;
    loop {
        let vertex_passed = 2 * a * n + c * (2 * l0 + 1) - b.abs() > 0;
        if lowest(n, l0) > top && vertex_passed {
            break;
        }
        let mut l = l0;
        while lowest(n, l) <= top {
            visit(n, l);
            l += 1;
        }
        n += 1;
    }
}

/// `f_s` expanded geometrically:
/// `2 sum_{l>=0} sum_{n>=1} (-1)^n (q^(a n^2 + c(2l+1) n - b n) - q^(a n^2 + c(2l+1) n + b n))`.
pub fn fs_bruteforce(a: i64, b: i64, c: i64, order: usize) -> FormalSeries {
    check_params(a, c);
    let top = order as i64;
    let mut terms = Vec::new();
    double_sum(a, b, c, 0, top, |n, l| {
        let base = a * n * n + c * (2 * l + 1) * n;
        let sg = neg_one_pow(n);
        terms.push((base - b * n, 2 * sg));
        terms.push((base + b * n, -2 * sg));
    });
    collect(terms, top)
}

/// `f_c` expanded geometrically:
/// `1 + 2 sum_{l>=0} sum_{n>=1} (-1)^(n+l) (q^(a n^2 + c(2l+1) n - b n) + q^(a n^2 + c(2l+1) n + b n))`.
pub fn fc_bruteforce(a: i64, b: i64, c: i64, order: usize) -> FormalSeries {
    check_params(a, c);
    let top = order as i64;
    let mut terms = vec![(0, 1)];
    double_sum(a, b, c, 0, top, |n, l| {
        let base = a * n * n + c * (2 * l + 1) * n;
        let sg = 2 * neg_one_pow(n + l);
        terms.push((base - b * n, sg));
        terms.push((base + b * n, sg));
    });
    collect(terms, top)
}

/// `sum_{n>=1} (-1)^n q^(a n^2) U_{b-1}(cos 2 pi n z)` with the cosine expansion of `U_{b-1}`:
/// `2 cos(2 pi k n z) = q^(k n) + q^(-k n)`.
pub fn chebyshev_fs(a: i64, b: i64, order: usize) -> FormalSeries {
    assert!(a >= 1 && b >= 1);
    let top = order as i64;
    // frequencies k with multiplicity one per cosine pair; odd b adds the constant 1
    let freqs: Vec<i64> = if b % 2 == 1 {
        (1..=(b - 1) / 2).map(|j| 2 * j).collect()
    } else {
        (0..=(b - 2) / 2).map(|j| 2 * j + 1).collect()
    };
    let mut terms = Vec::new();
    let kmax = freqs.iter().copied().max().unwrap_or(0);
    let mut n = 1i64;
    loop {
        if a * n * n - kmax * n > top && 2 * a * n - kmax > 0 {
            break;
        }
        let sg = neg_one_pow(n);
        if b % 2 == 1 {
            terms.push((a * n * n, sg));
        }
        for &k in &freqs {
            terms.push((a * n * n + k * n, sg));
            terms.push((a * n * n - k * n, sg));
        }
        n += 1;
    }
    collect(terms, top)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_table() {
        assert_eq!(eps(1, 1), 1);
        assert_eq!(eps(-2, -3), -1);
        assert_eq!(eps(1, 0), 0);
        assert_eq!(eps(1, -1), 0);
        assert_eq!(eps0(-2, 3), 0);
        assert_eq!(eps0(-2, -3), 1);
    }

    #[test]
    fn cc_hand_values() {
        assert_eq!(cc(3, 1, 2, 4), 0);
        assert_eq!(cc(3, 1, 2, 8), 2);
    }

    #[test]
    fn fs_lowest_terms() {
        // the 1/sinh pairing doubles each geometric term
        let s = fs_bruteforce(3, 1, 2, 6);
        assert_eq!(s.integer_coeffs().unwrap(), vec![0, 0, 0, 0, -2, 0, 2]);
    }

    #[test]
    fn fc_matches_eta_phi_prefix() {
        let s = fc_bruteforce(3, 1, 2, 8);
        assert_eq!(s.integer_coeffs().unwrap(), vec![1, 0, 0, 0, -2, 0, -2, 0, 2]);
    }

    #[test]
    fn fs_b_zero_vanishes() {
        assert!(fs_bruteforce(2, 0, 3, 50).is_zero());
    }

    #[test]
    fn negative_exponents_are_kept() {
        let s = fs_bruteforce(1, 3, 1, 10);
        assert_eq!(s.coeff_at_int(-1), Some(rat(-2)));
        assert!(s.agrees_with(&fs_series(1, 3, 1, 10)));
    }

    #[test]
    fn signed_c2_disagrees_somewhere() {
        let differs = (1..=40).any(|n| c2(3, 3 + 4, 8, n) != c2_signed(3, 3 + 4, 8, n));
        assert!(differs);
    }

    #[test]
    fn chebyshev_b1_is_plain_theta() {
        let s = chebyshev_fs(2, 1, 30);
        let mut expect = vec![0i64; 31];
        for n in 1..=3i64 {
            expect[(2 * n * n) as usize] = if n % 2 == 0 { 1 } else { -1 };
        }
        assert_eq!(s.integer_coeffs().unwrap(), expect);
    }
}
