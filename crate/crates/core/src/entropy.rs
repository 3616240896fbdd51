//! Shannon entropy and the entropic Ruzsa distance
//! `d[X;Y] = H(X' + Y') − (H(X') + H(Y'))/2` for uniform variables on sets.
//!
//! Probabilities are kept as integer weights over a common denominator, so
//! convolutions are exact; floating point enters only when a logarithm is
//! taken. Logarithms are base `q`, so `H(U_{Pol(n)}) = n`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::setops::PolySet;

/// A finitely supported distribution with rational probabilities `weight / total`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution<K: Ord> {
    weights: BTreeMap<K, u64>,
    total: u64,
}

impl<K: Ord> Distribution<K> {
    /// Merges repeated keys and drops zero weights. Errors if every weight is zero.
    pub fn from_counts(counts: impl IntoIterator<Item = (K, u64)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        let mut total = 0u64;
        for (k, c) in counts {
            if c == 0 {
                continue;
            }
            *weights.entry(k).or_insert(0) += c;
            total += c;
        }
        if total == 0 {
            return Err(Error::EmptySet);
        }
        Ok(Distribution { weights, total })
    }

    pub fn uniform(support: impl IntoIterator<Item = K>) -> Result<Self> {
        Self::from_counts(support.into_iter().map(|k| (k, 1)))
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    /// Exact probability as `(numerator, denominator)`.
    pub fn weight(&self, k: &K) -> (u64, u64) {
        (self.weights.get(k).copied().unwrap_or(0), self.total)
    }

    pub fn probability(&self, k: &K) -> f64 {
        self.weights.get(k).copied().unwrap_or(0) as f64 / self.total as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, f64)> {
        self.weights
            .iter()
            .map(move |(k, &w)| (k, w as f64 / self.total as f64))
    }
}

/// Shannon entropy in the given logarithm base.
pub fn entropy<K: Ord>(d: &Distribution<K>, base: f64) -> f64 {
    // H = ln N − (Σ c ln c) / N
    let n = d.total as f64;
    let s: f64 = d.weights.values().map(|&c| (c as f64) * (c as f64).ln()).sum();
    let h = n.ln() - s / n;
    (h / base.ln()).max(0.0)
}

/// Distribution of `X + Y` for independent uniform `X` on `a` and `Y` on `b`.
pub fn sum_distribution(a: &PolySet, b: &PolySet) -> Result<Distribution<Poly>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut counts: BTreeMap<Poly, u64> = BTreeMap::new();
    for x in a {
        for y in b {
            *counts.entry(x + y).or_insert(0) += 1;
        }
    }
    Distribution::from_counts(counts)
}

/// `d[U_A; U_B]`, base `q`.
pub fn entropic_distance(a: &PolySet, b: &PolySet) -> Result<f64> {
    let base = a.field().order() as f64;
    let sum = sum_distribution(a, b)?;
    let ha = (a.len() as f64).ln() / base.ln();
    let hb = (b.len() as f64).ln() / base.ln();
    Ok(entropy(&sum, base) - (ha + hb) / 2.0)
}

/// `H(U_A)`, base `q`.
pub fn uniform_entropy(a: &PolySet) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok((a.len() as f64).ln() / (a.field().order() as f64).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::subspace::Subspace;

    const TOL: f64 = 1e-9;

    fn set(f: &Field, elems: &[&[u32]]) -> PolySet {
        PolySet::from_polys(f, elems.iter().map(|c| Poly::new(f, c.to_vec()).unwrap())).unwrap()
    }

    #[test]
    fn subgroup_distance_is_zero() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            for n in 0..=4 {
                let a = PolySet::from_subspace(&Subspace::pol(&f, n), 10_000).unwrap();
                assert!(entropic_distance(&a, &a).unwrap().abs() < TOL);
                assert!((uniform_entropy(&a).unwrap() - n as f64).abs() < TOL);
            }
        }
    }

    #[test]
    fn three_point_set() {
        let f = Field::prime(2).unwrap();
        let a = set(&f, &[&[0], &[1], &[0, 1]]);
        let sum = sum_distribution(&a, &a).unwrap();
        assert_eq!(sum.weight(&Poly::zero(&f)), (3, 9));
        assert_eq!(sum.weight(&Poly::one(&f)), (2, 9));
        assert_eq!(sum.weight(&Poly::monomial(&f, 1)), (2, 9));
        assert_eq!(sum.weight(&Poly::new(&f, vec![1, 1]).unwrap()), (2, 9));
        // H = (1/3) log2 3 + (6/9) log2 (9/2), minus H(U_A) = log2 3
        let h: f64 = (1.0 / 3.0) * 3f64.log2() + (2.0 / 3.0) * (4.5f64).log2();
        let expect = h - 3f64.log2();
        assert!((entropic_distance(&a, &a).unwrap() - expect).abs() < TOL);
        assert!(expect > 0.0);
    }

    #[test]
    fn point_against_set() {
        let f = Field::prime(3).unwrap();
        let zero = set(&f, &[&[0]]);
        let b = set(&f, &[&[1], &[0, 2], &[1, 1, 1], &[2]]);
        let hb = uniform_entropy(&b).unwrap();
        assert!((entropic_distance(&zero, &b).unwrap() - hb / 2.0).abs() < TOL);
    }

    #[test]
    fn entropy_of_explicit_distributions() {
        let d = Distribution::from_counts([("a", 1), ("b", 1), ("c", 2), ("d", 0)]).unwrap();
        assert_eq!(d.support_len(), 3);
        assert!((entropy(&d, 2.0) - 1.5).abs() < TOL);
        let total: f64 = d.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < TOL);
        assert!(Distribution::<u8>::from_counts([]).is_err());
        assert_eq!(entropy(&Distribution::uniform([7]).unwrap(), 3.0), 0.0);
    }

    #[test]
    fn empty_sets_rejected() {
        let f = Field::prime(2).unwrap();
        let e = PolySet::new(&f);
        assert_eq!(entropic_distance(&e, &e), Err(Error::EmptySet));
    }
}
