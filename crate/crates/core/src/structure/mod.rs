//! Strong decompositions of subspaces and generalised progressions.

mod decompose;
mod oracle;
mod progression;

pub use decompose::{
    decompose, spanning_set_identity, verify_decomposition, Block, StrongDecomposition,
    VerificationReport,
};
pub use oracle::{max_block_length, strong_dim_oracle, struct_dim_oracle, OracleLimits};
pub use progression::{to_progression, Progression};
