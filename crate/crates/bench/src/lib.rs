//! Shared inputs for the benchmarks.

use fqprog::lattice::random_subspace;
use fqprog::{Field, PolySet, Subspace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A fixed batch of random subspaces so every run measures the same work.
pub fn subspace_batch(field: &Field, count: usize, max_dim: usize, max_deg: usize) -> Vec<Subspace> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..count)
        .map(|_| random_subspace(field, &mut rng, max_dim, max_deg))
        .collect()
}

/// `span{1, t^2, …, t^{2(k-1)}}` as a set: the worst case for `A + tA`.
pub fn even_power_set(field: &Field, k: usize) -> PolySet {
    let gens: Vec<_> = (0..k).map(|i| fqprog::Poly::monomial(field, 2 * i)).collect();
    let v = Subspace::span(field, &gens).expect("one field");
    PolySet::from_subspace(&v, 1 << 20).expect("small set")
}
