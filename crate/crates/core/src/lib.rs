//! Structure of finite `F_q`-subspaces of `F_q[t]` and sumset tools.
//!
//! The centre of the crate is [`structure::decompose`], which writes any
//! finite subspace `V` as a direct sum `Pol(d_1)·y_1 ⊕ … ⊕ Pol(d_k)·y_k`
//! with `d_i + deg y_i` strictly increasing and `k = log_q(|V+tV|/|V|)`.
//! Around it sit exact field and polynomial arithmetic, degree-echelon
//! subspace algebra, a brute-force oracle for the structural dimension,
//! sumset and entropy diagnostics for finite sets, and an exact model of
//! sets in `F_p[t, ξ]` with `ξ` transcendental.

pub mod campaign;
pub mod dilate;
pub mod entropy;
pub mod error;
pub mod field;
pub mod lattice;
pub mod poly;
pub mod setops;
pub mod structure;
pub mod subspace;
pub mod text;

pub use dilate::{dilate_example, growth_report, BiPoly, BiPolySet, GrowthReport, LogValue, Var};
pub use entropy::{entropic_distance, entropy, sum_distribution, uniform_entropy, Distribution};
pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use poly::Poly;
pub use setops::{DoublingStats, PolySet};
pub use structure::{
    decompose, struct_dim_oracle, to_progression, verify_decomposition, Block, OracleLimits,
    Progression, StrongDecomposition, VerificationReport,
};
pub use subspace::Subspace;
