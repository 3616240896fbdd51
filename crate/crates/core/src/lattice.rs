//! The lattice of subspaces of `Pol(n)`: counting, exhaustive enumeration
//! and uniform-by-shape random sampling of reduced echelon bases.

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;
use crate::subspace::Subspace;

/// Gaussian binomial `[n choose k]_q`, the number of `k`-dimensional
/// subspaces of `F_q^n`. `None` on overflow.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(q.checked_pow(n - i)? - 1)?;
        den = den.checked_mul(q.checked_pow(i + 1)? - 1)?;
    }
    Some(num / den)
}

/// Total number of subspaces of `F_q^n` (the Galois number).
pub fn subspace_count(n: u32, q: u64) -> Option<u128> {
    (0..=n).try_fold(0u128, |acc, k| acc.checked_add(gaussian_binomial(n, k, q)?))
}

/// Free coefficient positions of a reduced echelon basis with pivot set `pivots`.
fn free_slots(pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for (row, &d) in pivots.iter().enumerate() {
        for pos in 0..d {
            if !pivots.contains(&pos) {
                slots.push((row, pos));
            }
        }
    }
    slots
}

fn build_basis(field: &Field, pivots: &[usize], slots: &[(usize, usize)], values: &[Elem]) -> Subspace {
    let mut rows: Vec<Vec<Elem>> = pivots
        .iter()
        .map(|&d| {
            let mut c = vec![0; d + 1];
            c[d] = 1;
            c
        })
        .collect();
    for (&(row, pos), &v) in slots.iter().zip(values) {
        rows[row][pos] = v;
    }
    let basis = rows.into_iter().map(|c| Poly::from_raw(field, c)).collect();
    Subspace::from_reduced_unchecked(field, basis)
}

/// Iterator over every subspace of `Pol(n)`, one per reduced echelon basis.
///
/// Subspaces come out grouped by pivot set (in increasing bitmask order), and
/// within a pivot set by free coefficients in odometer order.
pub struct EchelonSubspaces {
    field: Field,
    n: usize,
    max_dim: usize,
    mask: u64,
    pivots: Vec<usize>,
    slots: Vec<(usize, usize)>,
    values: Vec<Elem>,
    fresh: bool,
}

impl EchelonSubspaces {
    pub fn new(field: &Field, n: usize) -> Self {
        Self::with_max_dim(field, n, n)
    }

    /// Only subspaces of dimension at most `max_dim`.
    pub fn with_max_dim(field: &Field, n: usize, max_dim: usize) -> Self {
        assert!(n < 64, "ambient degree bound too large to enumerate");
        EchelonSubspaces {
            field: field.clone(),
            n,
            max_dim,
            mask: 0,
            pivots: Vec::new(),
            slots: Vec::new(),
            values: Vec::new(),
            fresh: true,
        }
    }

    fn load_mask(&mut self) {
        self.pivots = (0..self.n).filter(|&i| self.mask >> i & 1 == 1).collect();
        self.slots = free_slots(&self.pivots);
        self.values = vec![0; self.slots.len()];
        self.fresh = true;
    }

    fn next_mask(&mut self) -> bool {
        loop {
            self.mask += 1;
            if self.mask >= 1u64 << self.n {
                return false;
            }
            if self.mask.count_ones() as usize <= self.max_dim {
                self.load_mask();
                return true;
            }
        }
    }
}

impl Iterator for EchelonSubspaces {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.mask >= 1u64 << self.n {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(build_basis(&self.field, &self.pivots, &self.slots, &self.values));
        }
        let q = self.field.order();
        for v in self.values.iter_mut() {
            *v += 1;
            if *v < q {
                return Some(build_basis(&self.field, &self.pivots, &self.slots, &self.values));
            }
            *v = 0;
        }
        if self.next_mask() {
            self.next()
        } else {
            None
        }
    }
}

/// Checks the number of subspaces of `Pol(n)` against `cap` before enumerating.
pub fn enumerate_all(field: &Field, n: usize, cap: u128) -> Result<EchelonSubspaces> {
    let total = subspace_count(n as u32, field.order() as u64).unwrap_or(u128::MAX);
    if total > cap || n >= 64 {
        return Err(Error::cap("subspace enumeration", total, cap));
    }
    Ok(EchelonSubspaces::new(field, n))
}

/// A random subspace of `Pol(max_deg + 1)`: dimension uniform in
/// `0..=max_dim`, pivot degrees a uniform subset, free coefficients uniform.
pub fn random_subspace<R: Rng + ?Sized>(
    field: &Field,
    rng: &mut R,
    max_dim: usize,
    max_deg: usize,
) -> Subspace {
    let ambient = max_deg + 1;
    let dim = rng.random_range(0..=max_dim.min(ambient));
    let mut pivots = index::sample(rng, ambient, dim).into_vec();
    pivots.sort_unstable();
    let slots = free_slots(&pivots);
    let q = field.order();
    let values: Vec<Elem> = slots.iter().map(|_| rng.random_range(0..q)).collect();
    build_basis(field, &pivots, &slots, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    // q-Pascal recurrence: [n,k] = [n-1,k-1] + q^k [n-1,k]
    fn q_pascal(n: u32, k: u32, q: u128) -> u128 {
        if k == 0 || k == n {
            return 1;
        }
        if k > n {
            return 0;
        }
        q_pascal(n - 1, k - 1, q) + q.pow(k) * q_pascal(n - 1, k, q)
    }

    #[test]
    fn gaussian_binomials_match_recurrence() {
        for q in [2u64, 3, 4, 5, 9] {
            for n in 0..8 {
                for k in 0..=n {
                    assert_eq!(gaussian_binomial(n, k, q).unwrap(), q_pascal(n, k, q as u128));
                }
            }
        }
        assert_eq!(subspace_count(4, 2), Some(67));
        assert_eq!(subspace_count(5, 2), Some(374));
    }

    #[test]
    fn enumeration_count_and_distinctness() {
        for (p, n) in [(2, 4), (2, 5), (3, 3)] {
            let f = Field::prime(p).unwrap();
            let all: Vec<Subspace> = EchelonSubspaces::new(&f, n).collect();
            let distinct: BTreeSet<&Subspace> = all.iter().collect();
            assert_eq!(all.len() as u128, subspace_count(n as u32, p as u64).unwrap());
            assert_eq!(distinct.len(), all.len());
            for v in &all {
                assert_eq!(&Subspace::span(&f, v.basis()).unwrap(), v);
            }
        }
    }

    #[test]
    fn tiny_ambient() {
        let f = Field::prime(2).unwrap();
        let all: Vec<Subspace> = EchelonSubspaces::new(&f, 1).collect();
        assert_eq!(all, vec![Subspace::zero(&f), Subspace::pol(&f, 1)]);
        let none: Vec<Subspace> = EchelonSubspaces::new(&f, 0).collect();
        assert_eq!(none, vec![Subspace::zero(&f)]);
    }

    #[test]
    fn max_dim_filter() {
        let f = Field::prime(3).unwrap();
        let n = EchelonSubspaces::with_max_dim(&f, 4, 2).count() as u128;
        let expect: u128 = (0..=2).map(|k| gaussian_binomial(4, k, 3).unwrap()).sum();
        assert_eq!(n, expect);
    }

    #[test]
    fn cap_enforced() {
        let f = Field::prime(2).unwrap();
        assert!(matches!(enumerate_all(&f, 5, 100), Err(Error::CapExceeded { .. })));
        assert!(enumerate_all(&f, 5, 374).is_ok());
    }

    #[test]
    fn random_subspaces_are_canonical_and_seeded() {
        let f = Field::new(2, 2, None).unwrap();
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let v = random_subspace(&f, &mut a, 8, 16);
            let w = random_subspace(&f, &mut b, 8, 16);
            assert_eq!(v, w);
            assert!(v.dim() <= 8);
            assert!(v.max_degree().is_none_or(|d| d <= 16));
            assert_eq!(Subspace::span(&f, v.basis()).unwrap(), v);
        }
    }
}
