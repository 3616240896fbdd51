//! Finite subsets of `F_q[t]` and their sumsets.

use std::collections::btree_set;
use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::subspace::Subspace;

/// Default ceiling on the size of any computed set.
pub const DEFAULT_SET_CAP: usize = 1_000_000;

/// A finite set of polynomials over one field, iterated in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct PolySet {
    field: Field,
    elems: BTreeSet<Poly>,
}

impl PolySet {
    pub fn new(field: &Field) -> Self {
        PolySet {
            field: field.clone(),
            elems: BTreeSet::new(),
        }
    }

    pub fn from_polys(field: &Field, polys: impl IntoIterator<Item = Poly>) -> Result<Self> {
        let mut s = Self::new(field);
        for p in polys {
            s.insert(p)?;
        }
        Ok(s)
    }

    /// All elements of `v`, as long as `|v| ≤ cap`.
    pub fn from_subspace(v: &Subspace, cap: usize) -> Result<Self> {
        let size = v.cardinality().unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(Error::cap("subspace as a set", size, cap as u128));
        }
        Ok(PolySet {
            field: v.field().clone(),
            elems: v.elements().collect(),
        })
    }

    /// Returns whether the element was new.
    pub fn insert(&mut self, p: Poly) -> Result<bool> {
        if p.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.elems.insert(p))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.elems.contains(p)
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Poly> {
        self.elems.iter()
    }

    pub fn is_subset(&self, other: &PolySet) -> bool {
        self.elems.is_subset(&other.elems)
    }

    fn same_field(&self, other: &PolySet) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn pairwise(
        &self,
        other: &PolySet,
        cap: usize,
        op: impl Fn(&Poly, &Poly) -> Poly,
    ) -> Result<PolySet> {
        self.same_field(other)?;
        let mut out = BTreeSet::new();
        for a in &self.elems {
            for b in &other.elems {
                out.insert(op(a, b));
                if out.len() > cap {
                    return Err(Error::cap("sumset", out.len() as u128, cap as u128));
                }
            }
        }
        Ok(PolySet {
            field: self.field.clone(),
            elems: out,
        })
    }

    /// `A + B`.
    pub fn sumset(&self, other: &PolySet) -> Result<PolySet> {
        self.sumset_capped(other, DEFAULT_SET_CAP)
    }

    pub fn sumset_capped(&self, other: &PolySet, cap: usize) -> Result<PolySet> {
        self.pairwise(other, cap, |a, b| a + b)
    }

    /// `A − B`.
    pub fn difference_set(&self, other: &PolySet) -> Result<PolySet> {
        self.pairwise(other, DEFAULT_SET_CAP, |a, b| a - b)
    }

    /// `c·A` for `c ≠ 0`; same size as `A`.
    pub fn dilate(&self, c: &Poly) -> Result<PolySet> {
        if c.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if c.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        Ok(PolySet {
            field: self.field.clone(),
            elems: self.elems.iter().map(|a| a * c).collect(),
        })
    }

    /// `x + A`.
    pub fn translate(&self, x: &Poly) -> Result<PolySet> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(PolySet {
            field: self.field.clone(),
            elems: self.elems.iter().map(|a| a + x).collect(),
        })
    }

    /// `A + tA`.
    pub fn dilate_sum(&self) -> Result<PolySet> {
        self.sumset(&self.dilate(&Poly::monomial(&self.field, 1))?)
    }

    /// The `n`-fold sumset `A + ⋯ + A`.
    pub fn iterated_sumset(&self, n: usize, cap: usize) -> Result<PolySet> {
        if n == 0 {
            return Err(Error::InvalidArgument("iterated sumset needs n >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.sumset_capped(self, cap)?;
        }
        Ok(acc)
    }

    pub fn doubling_stats(&self) -> Result<DoublingStats> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let size = self.len() as u64;
        let sum_size = self.sumset(self)?.len() as u64;
        let dilate_sum_size = self.dilate_sum()?.len() as u64;
        let difference_size = self.difference_set(self)?.len() as u64;
        let k1 = Ratio::new(sum_size, size);
        let k2 = Ratio::new(dilate_sum_size, size);
        Ok(DoublingStats {
            size,
            sum_size,
            dilate_sum_size,
            difference_size,
            k1_num: *k1.numer(),
            k1_den: *k1.denom(),
            k2_num: *k2.numer(),
            k2_den: *k2.denom(),
        })
    }

    /// A set `X ⊆ B` with `B ⊆ A − A + X` and `|X| ≤ |A + B| / |A|`.
    ///
    /// Greedy: walk `B` in canonical order and keep `b` whenever `b + A` misses
    /// every translate chosen so far. The chosen translates are disjoint
    /// subsets of `A + B`, which gives the size bound; maximality means every
    /// `b` meets some `x + A`, so `b ∈ x + A − A`.
    pub fn ruzsa_cover(&self, b: &PolySet) -> Result<PolySet> {
        self.same_field(b)?;
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut covered: BTreeSet<Poly> = BTreeSet::new();
        let mut chosen = PolySet::new(&self.field);
        for x in &b.elems {
            let translate: Vec<Poly> = self.elems.iter().map(|a| a + x).collect();
            if translate.iter().all(|y| !covered.contains(y)) {
                covered.extend(translate);
                chosen.elems.insert(x.clone());
            }
        }

        let a_minus_a = self.difference_set(self)?;
        let covers = b
            .iter()
            .all(|y| chosen.iter().any(|x| a_minus_a.contains(&(y - x))));
        if !covers {
            return Err(Error::Invariant("greedy cover misses an element of B".into()));
        }
        let sum = self.sumset(b)?.len();
        if chosen.len() * self.len() > sum {
            return Err(Error::Invariant("greedy cover exceeds |A+B|/|A|".into()));
        }
        Ok(chosen)
    }
}

impl std::fmt::Debug for PolySet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.elems.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a PolySet {
    type Item = &'a Poly;
    type IntoIter = btree_set::Iter<'a, Poly>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

/// Sizes of `A`, `A + A`, `A + tA`, `A − A` and the ratios
/// `K_1 = |A+A|/|A|`, `K_2 = |A+tA|/|A|` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoublingStats {
    pub size: u64,
    pub sum_size: u64,
    pub dilate_sum_size: u64,
    pub difference_size: u64,
    pub k1_num: u64,
    pub k1_den: u64,
    pub k2_num: u64,
    pub k2_den: u64,
}

impl DoublingStats {
    pub fn k1(&self) -> Ratio<u64> {
        Ratio::new(self.k1_num, self.k1_den)
    }

    pub fn k2(&self) -> Ratio<u64> {
        Ratio::new(self.k2_num, self.k2_den)
    }
}
