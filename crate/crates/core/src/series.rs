//! Truncated formal power series with exact rational coefficients.
//!
//! A series is `q^offset * sum_k coeffs[k] q^k`. It is known exactly through the
//! absolute exponent `offset + order`, and `coeffs.len() == order + 1` always.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rational exponent type used for offsets.
pub type Exponent = Ratio<i64>;

/// Exact truncated series in `q` with a rational leading offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    offset: Exponent,
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn frac_part_is_zero(e: Exponent) -> bool {
    e.is_integer()
}

impl FormalSeries {
    /// Builds a series from coefficients; pads with zeros or truncates to `order + 1` entries.
    pub fn new(offset: Exponent, mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        FormalSeries { offset, coeffs }
    }

    pub fn from_integers(offset: i64, coeffs: &[i64], order: usize) -> Self {
        Self::new(Exponent::from_integer(offset), coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Exponent::zero(), Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(Exponent::zero(), vec![BigRational::one()], order)
    }

    /// `c q^e`, reliable through absolute exponent `through`. Returns `None` if `e > through`.
    pub fn monomial(e: i64, c: BigRational, through: i64) -> Option<Self> {
        if e > through {
            return None;
        }
        Some(Self::new(Exponent::from_integer(e), vec![c], (through - e) as usize))
    }

    /// Collects integer-exponent terms into a series known through `through`.
    /// The offset is `min(0, smallest exponent)`.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I, through: i64) -> Self {
        let terms: Vec<(i64, BigRational)> = terms.into_iter().filter(|(e, _)| *e <= through).collect();
        let low = terms.iter().map(|(e, _)| *e).min().unwrap_or(0).min(0);
        let order = (through - low).max(0) as usize;
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        FormalSeries { offset: Exponent::from_integer(low), coeffs }
    }

    pub fn offset(&self) -> Exponent {
        self.offset
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Largest exponent known exactly.
    pub fn through(&self) -> Exponent {
        self.offset + Exponent::from_integer(self.order() as i64)
    }

    /// Coefficient of `q^(offset + k)`.
    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// Coefficient at an absolute exponent. Below the offset the coefficient is 0;
    /// beyond the truncation or off the lattice the result is `None`.
    pub fn coeff_at(&self, e: Exponent) -> Option<BigRational> {
        let k = e - self.offset;
        if !k.is_integer() {
            return None;
        }
        let k = k.to_integer();
        if k < 0 {
            Some(BigRational::zero())
        } else if (k as usize) < self.coeffs.len() {
            Some(self.coeffs[k as usize].clone())
        } else {
            None
        }
    }

    pub fn coeff_at_int(&self, e: i64) -> Option<BigRational> {
        self.coeff_at(Exponent::from_integer(e))
    }

    /// Integer coefficients as `i64`, if every coefficient is integral and fits.
    pub fn integer_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Keeps only terms through relative index `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self::new(self.offset, self.coeffs[..=order].to_vec(), order)
    }

    /// Truncates to the absolute exponent `through`.
    pub fn truncate_abs(&self, through: i64) -> Self {
        let rel = Exponent::from_integer(through) - self.offset;
        let rel = rel.floor().to_integer().max(0) as usize;
        self.truncate(rel)
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: Exponent) -> Self {
        FormalSeries { offset: self.offset + e, coeffs: self.coeffs.clone() }
    }

    /// Substitutes `q -> q^k` for `k >= 1`.
    pub fn dilate(&self, k: usize) -> Self {
        assert!(k >= 1, "dilation factor must be positive");
        let order = self.order() * k;
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        FormalSeries { offset: self.offset * Exponent::from_integer(k as i64), coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        FormalSeries { offset: self.offset, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Exact sum; offsets must differ by an integer.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self> {
        let diff = other.offset - self.offset;
        if !frac_part_is_zero(diff) {
            return Err(Error::IncompatibleOffsets(self.offset.to_string(), other.offset.to_string()));
        }
        let low = self.offset.min(other.offset);
        let through = self.through().min(other.through());
        let order = (through - low).to_integer() as usize;
        let mut coeffs = vec![BigRational::zero(); order + 1];
        let s0 = (self.offset - low).to_integer() as usize;
        for (i, c) in self.coeffs.iter().enumerate() {
            if s0 + i <= order {
                coeffs[s0 + i] += c;
            }
        }
        let o0 = (other.offset - low).to_integer() as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            if o0 + i <= order {
                if negate {
                    coeffs[o0 + i] -= c;
                } else {
                    coeffs[o0 + i] += c;
                }
            }
        }
        Ok(FormalSeries { offset: low, coeffs })
    }

    /// Cauchy product truncated to the smaller relative order.
    pub fn mul_series(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        FormalSeries { offset: self.offset + other.offset, coeffs }
    }

    /// Multiplicative inverse. The leading coefficient must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    s += a * &out[k - j];
                }
            }
            out.push(-(s * &inv0));
        }
        Ok(FormalSeries { offset: -self.offset, coeffs: out })
    }

    /// Exact quotient `self / other`.
    pub fn div_series(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_series(&other.inv()?))
    }

    /// `exp(A)` for `A` with offset 0 and zero constant term.
    pub fn exp(&self) -> Result<Self> {
        let a = self.at_offset_zero().ok_or(Error::NonzeroConstantTerm)?;
        if !a.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = a.order();
        let mut c: Vec<BigRational> = Vec::with_capacity(n + 1);
        c.push(BigRational::one());
        for k in 1..=n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                let aj = &a.coeffs[j];
                if !aj.is_zero() {
                    s += aj * rat(j as i64) * &c[k - j];
                }
            }
            c.push(s / rat(k as i64));
        }
        Ok(FormalSeries { offset: Exponent::zero(), coeffs: c })
    }

    /// `log(A)` for `A` with offset 0 and constant term 1.
    pub fn log(&self) -> Result<Self> {
        let a = self.at_offset_zero().ok_or(Error::LogDomain)?;
        if !a.coeffs[0].is_one() {
            return Err(Error::LogDomain);
        }
        let n = a.order();
        // k l_k = k a_k - sum_{j=1}^{k-1} j l_j a_{k-j}
        let mut l: Vec<BigRational> = vec![BigRational::zero(); n + 1];
        for k in 1..=n {
            let mut s = rat(k as i64) * &a.coeffs[k];
            for j in 1..k {
                if !l[j].is_zero() && !a.coeffs[k - j].is_zero() {
                    s -= rat(j as i64) * &l[j] * &a.coeffs[k - j];
                }
            }
            l[k] = s / rat(k as i64);
        }
        Ok(FormalSeries { offset: Exponent::zero(), coeffs: l })
    }

    /// Integer power; negative powers invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FormalSeries::one(base.order());
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_series(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul_series(&b);
            }
        }
        Ok(acc)
    }

    /// Re-expresses a series with integer offset `>= 0` at offset 0.
    fn at_offset_zero(&self) -> Option<Self> {
        if !self.offset.is_integer() || self.offset < Exponent::zero() {
            return None;
        }
        let s = self.offset.to_integer() as usize;
        if s == 0 {
            return Some(self.clone());
        }
        let order = self.order() + s;
        let mut coeffs = vec![BigRational::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        Some(Self::new(Exponent::zero(), coeffs, order))
    }

    /// True when both series agree on their common reliable range.
    pub fn agrees_with(&self, other: &Self) -> bool {
        match self.checked_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }

    /// Exponents in the common range where the two series differ.
    pub fn mismatches(&self, other: &Self) -> Result<Vec<Exponent>> {
        let d = self.checked_sub(other)?;
        Ok(d.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| d.offset + Exponent::from_integer(k as i64))
            .collect())
    }

    /// Largest absolute coefficient difference over the common range, as f64.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        let d = self.checked_sub(other)?;
        Ok(d.coeffs.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max))
    }

    /// Evaluates the truncated series at a real `q > 0`.
    pub fn eval_f64(&self, q: f64) -> f64 {
        let mut acc = 0.0;
        let mut pw = 1.0;
        for c in &self.coeffs {
            acc += c.to_f64().unwrap_or(0.0) * pw;
            pw *= q;
        }
        acc * q.powf(self.offset.to_f64().unwrap_or(0.0))
    }

    /// Rows `(exponent, numerator, denominator)`.
    pub fn rows(&self) -> Vec<(Exponent, BigInt, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (self.offset + Exponent::from_integer(k as i64), c.numer().clone(), c.denom().clone()))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("exponent,numerator,denominator\n");
        for (e, n, d) in self.rows() {
            out.push_str(&format!("{},{},{}\n", e, n, d));
        }
        out
    }

    pub fn to_json_value(&self) -> SeriesJson {
        SeriesJson {
            offset_num: *self.offset.numer(),
            offset_den: *self.offset.denom(),
            order: self.order(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [big_to_number(c.numer()), big_to_number(c.denom())])
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("series serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: SeriesJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &SeriesJson) -> Result<Self> {
        if v.offset_den == 0 {
            return Err(Error::Parse("zero offset denominator".into()));
        }
        if v.coeffs.len() != v.order + 1 {
            return Err(Error::Parse(format!("expected {} coefficients, got {}", v.order + 1, v.coeffs.len())));
        }
        let coeffs = v
            .coeffs
            .iter()
            .map(|[n, d]| {
                let n = number_to_big(n)?;
                let d = number_to_big(d)?;
                if d.is_zero() {
                    return Err(Error::Parse("zero coefficient denominator".into()));
                }
                Ok(BigRational::new(n, d))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FormalSeries { offset: Exponent::new(v.offset_num, v.offset_den), coeffs })
    }
}

fn big_to_number(b: &BigInt) -> serde_json::Number {
    b.to_string().parse().expect("integers are valid JSON numbers")
}

fn number_to_big(n: &serde_json::Number) -> Result<BigInt> {
    n.to_string().parse().map_err(|_| Error::Parse(format!("not an integer: {}", n)))
}

/// Wire format for series.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SeriesJson {
    pub offset_num: i64,
    pub offset_den: i64,
    pub order: usize,
    pub coeffs: Vec<[serde_json::Number; 2]>,
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.offset + Exponent::from_integer(k as i64);
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({})q^{}", c, e)?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.through() + Exponent::one())
    }
}

impl<'a> Add<&'a FormalSeries> for &'a FormalSeries {
    type Output = FormalSeries;
    /// Panics when offsets are incompatible; see [`FormalSeries::checked_add`].
    fn add(self, rhs: &'a FormalSeries) -> FormalSeries {
        self.checked_add(rhs).expect("compatible offsets")
    }
}

impl<'a> Sub<&'a FormalSeries> for &'a FormalSeries {
    type Output = FormalSeries;
    fn sub(self, rhs: &'a FormalSeries) -> FormalSeries {
        self.checked_sub(rhs).expect("compatible offsets")
    }
}

impl<'a> Mul<&'a FormalSeries> for &'a FormalSeries {
    type Output = FormalSeries;
    fn mul(self, rhs: &'a FormalSeries) -> FormalSeries {
        self.mul_series(rhs)
    }
}

impl Neg for &FormalSeries {
    type Output = FormalSeries;
    fn neg(self) -> FormalSeries {
        FormalSeries { offset: self.offset, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}
