use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::setops::PolySet;
use crate::structure::StrongDecomposition;
use crate::subspace::Subspace;

/// A generalised `F_q[t]`-progression `x_0 + Pol(n_1)·x_1 + … + Pol(n_d)·x_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Progression {
    field: Field,
    x0: Poly,
    terms: Vec<(usize, Poly)>,
}

impl Progression {
    pub fn new(x0: Poly, terms: Vec<(usize, Poly)>) -> Result<Self> {
        let field = x0.field().clone();
        for (n, x) in &terms {
            if *n == 0 {
                return Err(Error::InvalidArgument("progression lengths must be at least 1".into()));
            }
            if x.field() != &field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Progression { field, x0, terms })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn translate(&self) -> &Poly {
        &self.x0
    }

    pub fn terms(&self) -> &[(usize, Poly)] {
        &self.terms
    }

    pub fn rank(&self) -> usize {
        self.terms.len()
    }

    /// `q^{Σ n_i}`, the size when the progression is proper.
    pub fn size_bound(&self) -> Option<u128> {
        let total: usize = self.terms.iter().map(|(n, _)| n).sum();
        (self.field.order() as u128).checked_pow(total as u32)
    }

    /// The `F_q`-space `Pol(n_1)·x_1 + … + Pol(n_d)·x_d`, the image of the
    /// linear map `(a_1, …, a_d) ↦ Σ a_i x_i`.
    pub fn difference_space(&self) -> Subspace {
        let gens: Vec<Poly> = self
            .terms
            .iter()
            .flat_map(|(n, x)| (0..*n).map(move |j| x.shift(j)))
            .collect();
        Subspace::span(&self.field, &gens).expect("same field")
    }

    /// Lists every `x_0 + Σ a_i x_i` with `deg a_i < n_i`.
    pub fn enumerate(&self, cap: u128) -> Result<PolySet> {
        let bound = self.size_bound().unwrap_or(u128::MAX);
        if bound > cap {
            return Err(Error::cap("progression enumeration", bound, cap));
        }
        let q = self.field.order() as u128;
        let gens: Vec<Poly> = self
            .terms
            .iter()
            .flat_map(|(n, x)| (0..*n).map(move |j| x.shift(j)))
            .collect();
        let mut out = PolySet::new(&self.field);
        for mut idx in 0..bound {
            let mut acc = self.x0.clone();
            for g in &gens {
                acc.add_scaled_shifted((idx % q) as u32, g, 0);
                idx /= q;
            }
            out.insert(acc)?;
        }
        Ok(out)
    }

    /// Membership by solving the linear system for the coefficients of the `a_i`.
    pub fn contains(&self, x: &Poly) -> Result<bool> {
        let diff = x.checked_sub(&self.x0)?;
        self.difference_space().contains(&diff)
    }

    /// Whether all `q^{Σ n_i}` choices give distinct elements, which holds
    /// iff the generators `t^j x_i` are linearly independent.
    pub fn is_proper(&self) -> bool {
        let total: usize = self.terms.iter().map(|(n, _)| n).sum();
        self.difference_space().dim() == total
    }
}

/// Repackages a decomposition as the progression `x_0 + Σ Pol(d_i)·y_i`.
pub fn to_progression(d: &StrongDecomposition, x0: &Poly) -> Result<Progression> {
    if x0.field() != d.field() {
        return Err(Error::FieldMismatch);
    }
    Progression::new(
        x0.clone(),
        d.blocks().iter().map(|b| (b.d, b.y.clone())).collect(),
    )
}
