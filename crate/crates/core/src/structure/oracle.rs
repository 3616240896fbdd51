//! Exhaustive search for the structural and strong arithmetic dimensions.
//!
//! These are independent of [`decompose`](super::decompose): they never look
//! at weak dimensions or merge steps, only at which blocks `Pol(d)·x ⊆ V`
//! exist and how few of them are needed to fill `V`. Exponential by design.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::subspace::Subspace;

/// Resource caps for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest admissible `|V| = q^dim`.
    pub max_elements: u128,
    /// Largest number of search nodes before giving up.
    pub max_nodes: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_elements: 100_000,
            max_nodes: 5_000_000,
        }
    }
}

/// `max{d : t^j x ∈ V for all j < d}`.
pub fn max_block_length(v: &Subspace, x: &Poly) -> usize {
    let mut d = 0;
    let mut y = x.clone();
    while !y.is_zero() && y.degree() <= v.max_degree() && v.reduce(&y).is_zero() {
        d += 1;
        y = y.shift(1);
    }
    d
}

fn block_space(v: &Subspace, x: &Poly, d: usize) -> Subspace {
    let gens: Vec<Poly> = (0..d).map(|j| x.shift(j)).collect();
    Subspace::span(v.field(), &gens).expect("same field")
}

fn check_size(v: &Subspace, limits: &OracleLimits) -> Result<()> {
    let size = v.cardinality().unwrap_or(u128::MAX);
    if size > limits.max_elements {
        return Err(Error::cap("oracle search space", size, limits.max_elements));
    }
    Ok(())
}

struct Budget {
    used: u64,
    max: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.max {
            Err(Error::cap("oracle search nodes", self.used as u128, self.max as u128))
        } else {
            Ok(())
        }
    }
}

/// The least `k` with `V = Pol(d_1)·x_1 + … + Pol(d_k)·x_k`, sums not
/// necessarily direct.
///
/// Only maximal blocks matter: `Pol(d)·x ⊆ Pol(dmax(x))·x`, and if `x = t·w`
/// with `w ∈ V` then `Pol(dmax(x))·x ⊆ Pol(dmax(w))·w`. The search runs over
/// the remaining candidate blocks with iterative deepening on `k`.
pub fn struct_dim_oracle(v: &Subspace, limits: &OracleLimits) -> Result<usize> {
    check_size(v, limits)?;
    if v.is_zero() {
        return Ok(0);
    }
    let mut budget = Budget {
        used: 0,
        max: limits.max_nodes,
    };

    let mut seen = BTreeSet::new();
    for x in v.monic_elements() {
        budget.tick()?;
        let is_t_multiple = x.coeff(0) == 0 && {
            let w = Poly::from_raw(x.field(), x.coeffs()[1..].to_vec());
            v.reduce(&w).is_zero()
        };
        if is_t_multiple {
            continue;
        }
        let d = max_block_length(v, &x);
        seen.insert(block_space(v, &x, d));
    }
    let mut cands: Vec<Subspace> = seen.into_iter().collect();
    if cands.len() <= 4096 {
        let all = cands.clone();
        cands.retain(|c| {
            !all.iter()
                .any(|o| o.dim() > c.dim() && c.is_subspace_of(o).unwrap_or(false))
        });
    }
    cands.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.cmp(b)));
    let dims: Vec<usize> = cands.iter().map(|c| c.dim()).collect();

    for k in 1..=v.dim() {
        let zero = Subspace::zero(v.field());
        if cover_search(&cands, &dims, v.dim(), &zero, 0, k, &mut budget)? {
            return Ok(k);
        }
    }
    Err(Error::Invariant("no covering by single elements found".into()))
}

fn cover_search(
    cands: &[Subspace],
    dims: &[usize],
    target: usize,
    current: &Subspace,
    start: usize,
    remaining: usize,
    budget: &mut Budget,
) -> Result<bool> {
    if current.dim() == target {
        return Ok(true);
    }
    if remaining == 0 {
        return Ok(false);
    }
    for i in start..cands.len() {
        // dims are sorted descending, so this bounds every later choice too
        let best: usize = dims[i..].iter().take(remaining).sum();
        if current.dim() + best < target {
            break;
        }
        budget.tick()?;
        if cands[i].is_subspace_of(current)? {
            continue;
        }
        let next = current.sum(&cands[i])?;
        if cover_search(cands, dims, target, &next, i + 1, remaining - 1, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The least `k` with a direct decomposition `⊕ Pol(d_i)·x_i = V` whose
/// `d_i + deg x_i` strictly increase. Considers every monic `x ∈ V` and
/// every admissible `d`, so keep `V` small.
pub fn strong_dim_oracle(v: &Subspace, limits: &OracleLimits) -> Result<usize> {
    check_size(v, limits)?;
    if v.is_zero() {
        return Ok(0);
    }
    let mut budget = Budget {
        used: 0,
        max: limits.max_nodes,
    };
    // (top = d + deg x, d, x)
    let mut cands: Vec<(usize, usize, Poly)> = Vec::new();
    for x in v.monic_elements() {
        budget.tick()?;
        let deg = x.degree().expect("monic is nonzero");
        for d in 1..=max_block_length(v, &x) {
            cands.push((d + deg, d, x.clone()));
        }
    }
    cands.sort();

    for k in 1..=v.dim() {
        let zero = Subspace::zero(v.field());
        if strong_search(&cands, v.dim(), &zero, None, k, &mut budget)? {
            return Ok(k);
        }
    }
    Err(Error::Invariant("no strong decomposition found".into()))
}

fn strong_search(
    cands: &[(usize, usize, Poly)],
    target: usize,
    current: &Subspace,
    last_top: Option<usize>,
    remaining: usize,
    budget: &mut Budget,
) -> Result<bool> {
    if current.dim() == target {
        return Ok(true);
    }
    if remaining == 0 {
        return Ok(false);
    }
    let start = cands.partition_point(|c| Some(c.0) <= last_top);
    for (top, d, x) in &cands[start..] {
        if current.dim() + d > target {
            continue;
        }
        budget.tick()?;
        let block = block_space(current, x, *d);
        let next = current.sum(&block)?;
        if next.dim() != current.dim() + d {
            continue;
        }
        if strong_search(cands, target, &next, Some(*top), remaining - 1, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}
