//! Strong decompositions `V = Pol(d_1)·y_1 ⊕ … ⊕ Pol(d_k)·y_k` with
//! `d_1 + deg y_1 < … < d_k + deg y_k` and `k` equal to the weak dimension.
//!
//! The construction walks the echelon basis `x_1, …, x_ℓ` of `V` in degree
//! order, keeping a decomposition of `V_{≤s}` whose rank equals
//! `weak_dim(V_{≤s})`. Under that invariant the spanning set
//! `{t^j y_i : 0 ≤ j ≤ d_i}` of `V_{≤s} + tV_{≤s}` is linearly independent,
//! so `W = span{t^{d_i} y_i}` meets `V_{≤s}` trivially and meets
//! `V_{≤s+1}` in at most a line. When that line exists, with generator
//! `z = Σ α_i t^{d_i} y_i`, the block with `α_i ≠ 0` and smallest `d_i`
//! absorbs `z`: it is replaced by `(d_i + 1, z / t^{d_i})`, appended last.
//! Otherwise `x_{s+1}` opens a new block `(1, x_{s+1})`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;
use crate::subspace::{combine, relations, Subspace};

/// One summand `Pol(d)·y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub d: usize,
    pub y: Poly,
}

impl Block {
    /// `d + deg y`, the quantity that must strictly increase along a decomposition.
    pub fn top(&self) -> Option<usize> {
        self.y.degree().map(|e| e + self.d)
    }

    /// The `F_q`-basis `y, t y, …, t^{d-1} y` of `Pol(d)·y`.
    pub fn generators(&self) -> impl Iterator<Item = Poly> + '_ {
        (0..self.d).map(move |j| self.y.shift(j))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongDecomposition {
    field: Field,
    blocks: Vec<Block>,
}

impl StrongDecomposition {
    /// Wraps caller-supplied blocks without validating them; use
    /// [`verify_decomposition`] to check a hand-built witness.
    pub fn from_blocks(field: &Field, blocks: Vec<Block>) -> Self {
        StrongDecomposition {
            field: field.clone(),
            blocks,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.len()
    }

    /// `Σ d_i`.
    pub fn total_length(&self) -> usize {
        self.blocks.iter().map(|b| b.d).sum()
    }

    pub fn is_strictly_ordered(&self) -> bool {
        self.blocks.iter().all(|b| b.d >= 1 && !b.y.is_zero())
            && self.blocks.windows(2).all(|w| w[0].top() < w[1].top())
    }

    /// All `t^j y_i` with `j < d_i`.
    pub fn generators(&self) -> Vec<Poly> {
        self.blocks.iter().flat_map(|b| b.generators()).collect()
    }

    pub fn span(&self) -> Subspace {
        Subspace::span(&self.field, &self.generators()).expect("blocks share the field")
    }
}

fn step_check(decomp: &StrongDecomposition, prefix: &Subspace, step: usize) -> Result<()> {
    if !decomp.is_strictly_ordered() {
        return Err(Error::Invariant(format!("block ordering broken at step {step}")));
    }
    let span = decomp.span();
    if span.dim() != decomp.total_length() {
        return Err(Error::Invariant(format!("sum not direct at step {step}")));
    }
    if &span != prefix {
        return Err(Error::Invariant(format!("blocks do not span V_<=s at step {step}")));
    }
    Ok(())
}

/// Computes a strong decomposition of `v` of rank `weak_dim(v)`.
///
/// Fails only with [`Error::Invariant`], which signals a bug rather than a
/// property of the input.
pub fn decompose(v: &Subspace) -> Result<StrongDecomposition> {
    let field = v.field();
    let mut decomp = StrongDecomposition::from_blocks(field, Vec::new());

    for s in 0..v.dim() {
        let x_next = &v.basis()[s];
        let prefix = v.prefix(s + 1);
        let merged = match merge_candidate(&decomp, &prefix)? {
            Some((alpha, z)) => {
                absorb(&mut decomp, &alpha, &z)?;
                true
            }
            None => false,
        };
        if !merged {
            decomp.blocks.push(Block {
                d: 1,
                y: x_next.clone(),
            });
        }
        step_check(&decomp, &prefix, s + 1)?;
    }
    Ok(decomp)
}

/// Returns `(α, z)` with `z = Σ α_i t^{d_i} y_i` the monic generator of
/// `span{t^{d_i} y_i} ∩ V_{≤s+1}`, or `None` if the intersection is zero.
fn merge_candidate(
    decomp: &StrongDecomposition,
    prefix: &Subspace,
) -> Result<Option<(Vec<Elem>, Poly)>> {
    if decomp.blocks.is_empty() {
        return Ok(None);
    }
    let field = &decomp.field;
    let tops: Vec<Poly> = decomp.blocks.iter().map(|b| b.y.shift(b.d)).collect();
    let stacked: Vec<Poly> = tops.iter().chain(prefix.basis()).cloned().collect();
    let rels = relations(field, &stacked);
    match rels.len() {
        0 => Ok(None),
        1 => {
            let k = tops.len();
            let alpha = &rels[0][..k];
            let z = combine(field, alpha, &tops);
            if z.is_zero() {
                return Err(Error::Invariant("the elements t^{d_i} y_i are dependent".into()));
            }
            let inv = field.inv(z.lead())?;
            let alpha: Vec<Elem> = alpha.iter().map(|&a| field.mul(a, inv)).collect();
            Ok(Some((alpha, z.scale(inv))))
        }
        n => Err(Error::Invariant(format!(
            "merge intersection has dimension {n}, expected at most 1"
        ))),
    }
}

fn absorb(decomp: &mut StrongDecomposition, alpha: &[Elem], z: &Poly) -> Result<()> {
    let field = decomp.field.clone();
    // smallest d_i among blocks with α_i ≠ 0; first such index on ties
    let pick = alpha
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .min_by_key(|&(i, _)| (decomp.blocks[i].d, i))
        .map(|(i, _)| i)
        .ok_or_else(|| Error::Invariant("empty merge relation".into()))?;
    let base = decomp.blocks[pick].d;

    let mut y = Poly::zero(&field);
    for (block, &a) in decomp.blocks.iter().zip(alpha) {
        if a != 0 {
            y.add_scaled_shifted(a, &block.y, block.d - base);
        }
    }
    if &y.shift(base) != z {
        return Err(Error::Invariant("z is not t^d times the merged generator".into()));
    }
    let y = y.monic();
    decomp.blocks.remove(pick);
    decomp.blocks.push(Block { d: base + 1, y });
    Ok(())
}

/// Outcome of checking a candidate decomposition against a subspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Every block has `d ≥ 1`, `y ≠ 0`, and `d_i + deg y_i` strictly increases.
    pub ordering_strict: bool,
    /// `Σ d_i` equals the dimension of the span of all `t^j y_i`, `j < d_i`.
    pub sum_direct: bool,
    pub span_equal: bool,
    pub rank: usize,
    pub weak_dim: usize,
    /// `rank == weak_dim`.
    pub minimal: bool,
}

impl VerificationReport {
    /// The witness is a valid strong decomposition of `V`.
    pub fn valid(&self) -> bool {
        self.ordering_strict && self.sum_direct && self.span_equal
    }

    /// Valid and of the least possible rank.
    pub fn passed(&self) -> bool {
        self.valid() && self.minimal
    }
}

pub fn verify_decomposition(v: &Subspace, d: &StrongDecomposition) -> Result<VerificationReport> {
    if v.field() != d.field() || d.blocks.iter().any(|b| b.y.field() != v.field()) {
        return Err(Error::FieldMismatch);
    }
    let span = d.span();
    let weak_dim = v.weak_dim();
    Ok(VerificationReport {
        ordering_strict: d.is_strictly_ordered(),
        sum_direct: span.dim() == d.total_length(),
        span_equal: &span == v,
        rank: d.rank(),
        weak_dim,
        minimal: d.rank() == weak_dim,
    })
}

/// Checks that `{t^j y_i : 0 ≤ j ≤ d_i}` spans `V + tV` and has
/// `dim V + rank` members, i.e. is a basis of `V + tV`.
pub fn spanning_set_identity(v: &Subspace, d: &StrongDecomposition) -> bool {
    let set: Vec<Poly> = d
        .blocks
        .iter()
        .flat_map(|b| (0..=b.d).map(move |j| b.y.shift(j)))
        .collect();
    let Ok(span) = Subspace::span(v.field(), &set) else {
        return false;
    };
    set.len() == v.dim() + d.rank() && span.dim() == set.len() && span == v.plus_t_multiple()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn p(f: &Field, c: &[Elem]) -> Poly {
        Poly::new(f, c.to_vec()).unwrap()
    }

    fn mono(f: &Field, k: usize) -> Poly {
        Poly::monomial(f, k)
    }

    fn sp(f: &Field, gens: &[Poly]) -> Subspace {
        Subspace::span(f, gens).unwrap()
    }

    fn blocks(d: &StrongDecomposition) -> Vec<(usize, String)> {
        d.blocks().iter().map(|b| (b.d, b.y.to_string())).collect()
    }

    #[test]
    fn single_block_space() {
        let f = f2();
        let d = decompose(&Subspace::pol(&f, 3)).unwrap();
        assert_eq!(blocks(&d), [(3, "1".to_string())]);
    }

    #[test]
    fn merge_fires_on_second_step() {
        let f = f2();
        let v = sp(&f, &[mono(&f, 0), mono(&f, 1)]);
        let d = decompose(&v).unwrap();
        assert_eq!(blocks(&d), [(2, "1".to_string())]);
        assert_eq!(v.weak_dim(), 1);
    }

    #[test]
    fn two_blocks_after_two_merges() {
        let f = f2();
        let v = sp(&f, &[mono(&f, 0), mono(&f, 2), mono(&f, 3), mono(&f, 4)]);
        let d = decompose(&v).unwrap();
        assert_eq!(blocks(&d), [(1, "1".to_string()), (3, "0,0,1".to_string())]);
        assert_eq!(v.plus_t_multiple().dim(), 6);
        assert_eq!(v.weak_dim(), 2);
    }

    #[test]
    fn no_merge_possible() {
        let f = f2();
        let v = sp(&f, &[mono(&f, 0), mono(&f, 2)]);
        let d = decompose(&v).unwrap();
        assert_eq!(blocks(&d), [(1, "1".to_string()), (1, "0,0,1".to_string())]);
    }

    #[test]
    fn zero_space_has_no_blocks() {
        let f = f2();
        let d = decompose(&Subspace::zero(&f)).unwrap();
        assert_eq!(d.rank(), 0);
        let r = verify_decomposition(&Subspace::zero(&f), &d).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn verification_reports() {
        let f = f2();
        let pol2 = Subspace::pol(&f, 2);
        let one = Poly::one(&f);
        let t = mono(&f, 1);

        let good = StrongDecomposition::from_blocks(&f, vec![Block { d: 2, y: one.clone() }]);
        let r = verify_decomposition(&pol2, &good).unwrap();
        assert!(r.passed());
        assert_eq!(r.rank, 1);

        let loose = StrongDecomposition::from_blocks(
            &f,
            vec![Block { d: 1, y: one.clone() }, Block { d: 1, y: t.clone() }],
        );
        let r = verify_decomposition(&pol2, &loose).unwrap();
        assert!(r.valid());
        assert!(!r.minimal);
        assert_eq!((r.rank, r.weak_dim), (2, 1));

        let wrong = sp(&f, &[one.clone(), mono(&f, 2)]);
        let r = verify_decomposition(&wrong, &good).unwrap();
        assert!(!r.span_equal);
        assert!(r.ordering_strict && r.sum_direct);
    }

    #[test]
    fn verification_flags_disorder_and_overlap() {
        let f = f2();
        let one = Poly::one(&f);
        let t = mono(&f, 1);
        let v = Subspace::pol(&f, 3);
        // tops 2 then 1: out of order, but direct and spanning
        let disordered = StrongDecomposition::from_blocks(
            &f,
            vec![Block { d: 2, y: t.clone() }, Block { d: 1, y: one.clone() }],
        );
        let r = verify_decomposition(&v, &disordered).unwrap();
        assert!(!r.ordering_strict && r.sum_direct && r.span_equal);
        // Pol(2)·1 and Pol(2)·t overlap in t
        let overlapping = StrongDecomposition::from_blocks(
            &f,
            vec![Block { d: 2, y: one }, Block { d: 2, y: t }],
        );
        let r = verify_decomposition(&v, &overlapping).unwrap();
        assert!(!r.sum_direct && r.span_equal);
    }

    #[test]
    fn extension_field_decomposition() {
        let f = Field::new(2, 2, None).unwrap();
        // span{1 + θt, t + θt^2}: Pol(2)·(1 + θt)
        let y = p(&f, &[1, 2]);
        let v = sp(&f, &[y.clone(), y.shift(1)]);
        let d = decompose(&v).unwrap();
        assert_eq!(d.rank(), 1);
        assert_eq!(d.blocks()[0].d, 2);
        assert!(verify_decomposition(&v, &d).unwrap().passed());
        assert!(spanning_set_identity(&v, &d));
    }

    #[test]
    fn deterministic() {
        let f = Field::prime(3).unwrap();
        let v = sp(&f, &[p(&f, &[1, 2]), p(&f, &[0, 1, 2]), p(&f, &[2, 0, 1, 1])]);
        assert_eq!(decompose(&v).unwrap(), decompose(&v).unwrap());
    }
}
