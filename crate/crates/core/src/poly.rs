//! Dense univariate polynomials over `F_q`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// A polynomial in `F_q[t]`, coefficients in increasing degree.
///
/// Always canonical: the coefficient vector carries no trailing zeros, so the
/// zero polynomial has no coefficients. [`Poly::degree`] returns `None` for
/// zero, and `None` sorts below every `Some(d)`, which makes it behave as
/// degree −∞ in comparisons.
///
/// Polynomials over the same field are ordered as base-`q` integers
/// `Σ c_i q^i`; this is the canonical encoding order used by sets.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero(field: &Field) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, 1)
    }

    /// The constant `c`. Panics if `c` is not a field element.
    pub fn constant(field: &Field, c: Elem) -> Self {
        assert!(c < field.order(), "constant {c} out of range");
        Self::from_raw(field, vec![c])
    }

    /// `t^k`.
    pub fn monomial(field: &Field, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial from coefficients in increasing degree, trimming trailing zeros.
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Result<Self> {
        for &c in &coeffs {
            field.check(c)?;
        }
        Ok(Self::from_raw(field, coeffs))
    }

    pub(crate) fn from_raw(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    #[inline]
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient, zero for the zero polynomial.
    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    /// Scales to leading coefficient one. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.lead() {
            0 | 1 => self.clone(),
            c => self.scale(self.field.inv(c).expect("nonzero lead")),
        }
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::from_raw(f, coeffs))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::from_raw(f, coeffs))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(out[i + j], a, b);
            }
        }
        Ok(Self::from_raw(f, out))
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        if c == 0 {
            return Self::zero(f);
        }
        Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `t^k · self`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// In-place `self += c · other · t^k`; both must share the field.
    pub(crate) fn add_scaled_shifted(&mut self, c: Elem, other: &Poly, k: usize) {
        if c == 0 || other.is_zero() {
            return;
        }
        let f = &self.field;
        let need = other.coeffs.len() + k;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, 0);
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            self.coeffs[i + k] = f.mul_add(self.coeffs[i + k], c, b);
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    /// Parses the text format: comma-separated coefficients in increasing
    /// degree, canonical (`0` alone for the zero polynomial).
    pub fn parse(field: &Field, s: &str) -> Result<Poly> {
        let s = s.trim();
        let bad = |msg: String| Error::parse(0, msg);
        if s.is_empty() {
            return Err(bad("empty polynomial".into()));
        }
        let coeffs = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                let c: Elem = tok
                    .parse()
                    .map_err(|_| bad(format!("bad coefficient `{tok}`")))?;
                field
                    .check(c)
                    .map_err(|_| bad(format!("coefficient {c} outside F_{}", field.order())))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() > 1 && coeffs.last() == Some(&0) {
            return Err(bad(format!("`{s}` is not canonical (trailing zero)")));
        }
        Ok(Self::from_raw(field, coeffs))
    }

    /// Human-readable form such as `1 + 2t + t^2`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        parts.join(" + ")
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// The canonical text encoding, e.g. `1,0,1` for `1 + t^2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.pretty())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// Operator forms panic on mixed fields; use the `checked_*` methods to get an error instead.

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomials over different fields")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomials over different fields")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomials over different fields")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: &Field, c: &[Elem]) -> Poly {
        Poly::new(f, c.to_vec()).unwrap()
    }

    #[test]
    fn char_two_cancels() {
        let f2 = Field::prime(2).unwrap();
        let a = p(&f2, &[1, 1]);
        assert!((&a + &a).is_zero());
    }

    #[test]
    fn shift_by_t() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(p(&f2, &[1, 1]).shift(1), p(&f2, &[0, 1, 1]));
        assert!(Poly::zero(&f2).shift(3).is_zero());
    }

    #[test]
    fn square_over_f3() {
        let f3 = Field::prime(3).unwrap();
        let a = p(&f3, &[1, 1]);
        assert_eq!(&a * &a, p(&f3, &[1, 2, 1]));
    }

    #[test]
    fn zero_degree_sorts_below_everything() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(Poly::zero(&f2).degree(), None);
        assert!(Poly::zero(&f2).degree() < Some(0));
        assert_eq!(Poly::one(&f2).degree(), Some(0));
    }

    #[test]
    fn canonical_trim() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(p(&f3, &[1, 2, 0, 0]).coeffs(), &[1, 2]);
        assert!(p(&f3, &[0, 0]).is_zero());
        assert!(Poly::new(&f3, vec![3]).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        let a = Poly::one(&f2);
        let b = Poly::one(&f3);
        assert_eq!(a.checked_add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.checked_mul(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn text_format() {
        let f3 = Field::prime(3).unwrap();
        let a = Poly::parse(&f3, "1, 0,2").unwrap();
        assert_eq!(a, p(&f3, &[1, 0, 2]));
        assert_eq!(a.to_string(), "1,0,2");
        assert_eq!(a.pretty(), "1 + 2t^2");
        assert!(Poly::parse(&f3, "0").unwrap().is_zero());
        assert_eq!(Poly::zero(&f3).to_string(), "0");
        assert!(Poly::parse(&f3, "1,0").is_err());
        assert!(Poly::parse(&f3, "1,3").is_err());
        assert!(Poly::parse(&f3, "1,x").is_err());
        assert!(Poly::parse(&f3, "").is_err());
    }

    #[test]
    fn monic_normalization() {
        let f5 = Field::prime(5).unwrap();
        let a = p(&f5, &[1, 3]);
        let m = a.monic();
        assert!(m.is_monic());
        assert_eq!(m, p(&f5, &[2, 1]));
    }

    #[test]
    fn ordering_is_base_q_integer() {
        let f2 = Field::prime(2).unwrap();
        let mut v = [p(&f2, &[1, 1]), Poly::zero(&f2), p(&f2, &[0, 1]), Poly::one(&f2)];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["0", "1", "0,1", "1,1"]);
    }
}
