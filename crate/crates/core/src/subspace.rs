//! Finite `F_q`-subspaces of `F_q[t]` in reduced degree-echelon form.
//!
//! Every finite subspace has a basis of monic polynomials with strictly
//! increasing degrees. We additionally clear, in each basis element, the
//! coefficients sitting at the leading degrees of the other elements. That
//! fully reduced basis is unique, so structural equality of [`Subspace`]
//! values is equality of subspaces.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    field: Field,
    basis: Vec<Poly>,
}

/// Incremental degree-pivoted elimination.
///
/// Rows are keyed by leading degree. Each row remembers which combination of
/// the inserted vectors produced it, so a vector that reduces to zero yields
/// a linear relation among the inputs.
pub(crate) struct Eliminator {
    field: Field,
    rows: BTreeMap<usize, (Poly, Vec<Elem>)>,
    inserted: usize,
    track: bool,
}

impl Eliminator {
    pub(crate) fn new(field: &Field, track: bool) -> Self {
        Eliminator {
            field: field.clone(),
            rows: BTreeMap::new(),
            inserted: 0,
            track,
        }
    }

    /// Reduces `v` against the current rows, top degree first.
    fn reduce(&self, v: &mut Poly, combo: &mut [Elem]) {
        let f = &self.field;
        while let Some(d) = v.degree() {
            let Some((row, row_combo)) = self.rows.get(&d) else {
                break;
            };
            // rows are monic, so subtracting lead(v)·row clears degree d
            let c = f.neg(v.lead());
            v.add_scaled_shifted(c, row, 0);
            if self.track {
                for (k, &a) in row_combo.iter().enumerate() {
                    combo[k] = f.mul_add(combo[k], c, a);
                }
            }
        }
    }

    /// Inserts `v`. Returns a relation (coefficients on all inserted vectors,
    /// including this one) when `v` is dependent on earlier inserts.
    pub(crate) fn insert(&mut self, v: &Poly) -> Option<Vec<Elem>> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut combo = if self.track {
            for (_, c) in self.rows.values_mut() {
                c.push(0);
            }
            let mut c = vec![0; self.inserted];
            c[idx] = 1;
            c
        } else {
            Vec::new()
        };
        let mut v = v.clone();
        loop {
            self.reduce(&mut v, &mut combo);
            let Some(d) = v.degree() else {
                return self.track.then_some(combo);
            };
            if self.rows.contains_key(&d) {
                continue;
            }
            let inv = self.field.inv(v.lead()).expect("nonzero lead");
            let v = v.scale(inv);
            if self.track {
                for c in combo.iter_mut() {
                    *c = self.field.mul(*c, inv);
                }
            }
            self.rows.insert(d, (v, combo));
            return None;
        }
    }

    pub(crate) fn into_subspace(self) -> Subspace {
        let basis: Vec<Poly> = self.rows.into_values().map(|(v, _)| v).collect();
        Subspace::from_echelon(&self.field, basis)
    }
}

/// All linear relations among `vectors`: a basis of the kernel of
/// `(a_1, …, a_n) ↦ Σ a_i v_i`.
pub(crate) fn relations(field: &Field, vectors: &[Poly]) -> Vec<Vec<Elem>> {
    let mut elim = Eliminator::new(field, true);
    let mut out = Vec::new();
    for v in vectors {
        if let Some(mut rel) = elim.insert(v) {
            rel.resize(vectors.len(), 0);
            out.push(rel);
        }
    }
    out
}

/// `Σ coeffs[i] · vectors[i]`.
pub(crate) fn combine(field: &Field, coeffs: &[Elem], vectors: &[Poly]) -> Poly {
    let mut acc = Poly::zero(field);
    for (&c, v) in coeffs.iter().zip(vectors) {
        acc.add_scaled_shifted(c, v, 0);
    }
    acc
}

fn check_fields<'a>(field: &Field, polys: impl IntoIterator<Item = &'a Poly>) -> Result<()> {
    if polys.into_iter().all(|p| p.field() == field) {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

impl Subspace {
    pub fn zero(field: &Field) -> Self {
        Subspace {
            field: field.clone(),
            basis: Vec::new(),
        }
    }

    /// `Pol(n)`: polynomials of degree below `n`.
    pub fn pol(field: &Field, n: usize) -> Self {
        Subspace {
            field: field.clone(),
            basis: (0..n).map(|k| Poly::monomial(field, k)).collect(),
        }
    }

    /// The canonical basis of the `F_q`-span of `generators`.
    ///
    /// Gaussian elimination with the pivot of each row at its degree: this
    /// is the greedy minimal-degree construction of a degree-echelon basis,
    /// followed by back-substitution to the fully reduced form.
    pub fn span<'a>(field: &Field, generators: impl IntoIterator<Item = &'a Poly>) -> Result<Self> {
        let mut elim = Eliminator::new(field, false);
        for g in generators {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            elim.insert(g);
        }
        Ok(elim.into_subspace())
    }

    /// Back-substitutes an echelon basis (monic, distinct degrees) into reduced form.
    pub(crate) fn from_echelon(field: &Field, mut basis: Vec<Poly>) -> Self {
        basis.sort_by_key(|b| b.degree());
        for i in 0..basis.len() {
            let d = basis[i].degree().expect("nonzero basis element");
            let (lo, hi) = basis.split_at_mut(i + 1);
            let pivot = &lo[i];
            for b in hi.iter_mut() {
                let c = b.coeff(d);
                if c != 0 {
                    b.add_scaled_shifted(field.neg(c), pivot, 0);
                }
            }
        }
        Subspace {
            field: field.clone(),
            basis,
        }
    }

    /// Wraps a basis already known to be monic, degree-increasing and fully reduced.
    pub(crate) fn from_reduced_unchecked(field: &Field, basis: Vec<Poly>) -> Self {
        debug_assert!(basis.windows(2).all(|w| w[0].degree() < w[1].degree()));
        Subspace {
            field: field.clone(),
            basis,
        }
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Monic basis with strictly increasing degrees, fully reduced.
    #[inline]
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// `|V| = q^dim`, or `None` if that overflows `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        (self.field.order() as u128).checked_pow(self.dim() as u32)
    }

    /// Largest degree occurring in `V`, `None` for the zero space.
    pub fn max_degree(&self) -> Option<usize> {
        self.basis.last().and_then(|b| b.degree())
    }

    /// Leading degrees of the basis.
    pub fn degrees(&self) -> Vec<usize> {
        self.basis.iter().filter_map(|b| b.degree()).collect()
    }

    /// Remainder of `x` after clearing every pivot degree; zero iff `x ∈ V`.
    pub fn reduce(&self, x: &Poly) -> Poly {
        let mut x = x.clone();
        let f = &self.field;
        for b in self.basis.iter().rev() {
            let c = x.coeff(b.degree().expect("nonzero basis element"));
            if c != 0 {
                x.add_scaled_shifted(f.neg(c), b, 0);
            }
        }
        x
    }

    pub fn contains(&self, x: &Poly) -> Result<bool> {
        check_fields(&self.field, [x])?;
        if x.degree() > self.max_degree() {
            return Ok(false);
        }
        Ok(self.reduce(x).is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.dim() > other.dim() {
            return Ok(false);
        }
        Ok(self.basis.iter().all(|b| other.reduce(b).is_zero()))
    }

    /// Coordinates of `x` in the basis, if `x ∈ V`.
    pub fn coordinates(&self, x: &Poly) -> Result<Option<Vec<Elem>>> {
        check_fields(&self.field, [x])?;
        let mut x = x.clone();
        let f = &self.field;
        let mut coords = vec![0; self.dim()];
        for (i, b) in self.basis.iter().enumerate().rev() {
            let c = x.coeff(b.degree().expect("nonzero basis element"));
            if c != 0 {
                coords[i] = c;
                x.add_scaled_shifted(f.neg(c), b, 0);
            }
        }
        Ok(x.is_zero().then_some(coords))
    }

    /// `V_{≤s}`: span of the first `s` basis elements, i.e. all elements of
    /// degree at most the degree of the `s`-th one.
    pub fn prefix(&self, s: usize) -> Subspace {
        Subspace::from_reduced_unchecked(&self.field, self.basis[..s].to_vec())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Subspace::span(&self.field, self.basis.iter().chain(&other.basis))
    }

    /// `V ∩ W`, read off the kernel of `(a, b) ↦ Σ a_i v_i − Σ b_j w_j`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let stacked: Vec<Poly> = self.basis.iter().chain(&other.basis).cloned().collect();
        let rels = relations(&self.field, &stacked);
        let k = self.dim();
        let elems: Vec<Poly> = rels
            .iter()
            .map(|rel| combine(&self.field, &rel[..k], &self.basis))
            .collect();
        Subspace::span(&self.field, &elems)
    }

    /// `c · V`.
    pub fn dilate(&self, c: &Poly) -> Result<Subspace> {
        check_fields(&self.field, [c])?;
        if c.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        let images: Vec<Poly> = self.basis.iter().map(|b| b * c).collect();
        Subspace::span(&self.field, &images)
    }

    /// `t^k · V`, cheaper than a general dilation.
    pub fn shift(&self, k: usize) -> Subspace {
        Subspace::from_reduced_unchecked(
            &self.field,
            self.basis.iter().map(|b| b.shift(k)).collect(),
        )
    }

    /// `V + tV`.
    pub fn plus_t_multiple(&self) -> Subspace {
        let shifted: Vec<Poly> = self.basis.iter().map(|b| b.shift(1)).collect();
        Subspace::span(&self.field, self.basis.iter().chain(&shifted)).expect("same field")
    }

    /// Weak arithmetic dimension `log_q(|V + tV| / |V|) = dim(V + tV) − dim V`.
    pub fn weak_dim(&self) -> usize {
        self.plus_t_multiple().dim() - self.dim()
    }

    /// Iterates over all `q^dim` elements. Callers must bound the dimension.
    pub fn elements(&self) -> impl Iterator<Item = Poly> + '_ {
        let q = self.field.order();
        let d = self.dim();
        let total = self.cardinality().expect("enumeration of an astronomically large space");
        (0..total).map(move |mut idx| {
            let mut acc = Poly::zero(&self.field);
            for b in &self.basis[..d] {
                let c = (idx % q as u128) as Elem;
                idx /= q as u128;
                acc.add_scaled_shifted(c, b, 0);
            }
            acc
        })
    }

    /// Monic elements (one representative of each line through the origin).
    pub fn monic_elements(&self) -> impl Iterator<Item = Poly> + '_ {
        self.elements().filter(|x| x.is_monic())
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.basis.iter()).finish()
    }
}
