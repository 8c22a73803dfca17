//! Transform matrices, scaling diagonals and exact fast schedules.

mod ops;
mod schedules;
mod spec;

pub use ops::{Counted, Field, OpCount, Ring, Tally};
pub use schedules::{
    fast_forward_exact, fast_forward_modified_rdct, fast_forward_pruned, EXACT_DCT_COST,
    MODIFIED_RDCT_COST, PRUNED_COST,
};
pub use spec::{
    build_exact_dct, build_modified_rdct, build_pruned_t, build_rdct, build_sdct, direct_apply,
    lookup, Entries, Family, InverseKind, Schedule, TransformSpec, REGISTRY_NAMES,
};

/// Eight input samples.
pub type Vector8<T = f64> = [T; 8];
/// Four pruned outputs.
pub type Vector4<T = f64> = [T; 4];
