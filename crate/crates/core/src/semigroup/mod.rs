//! Cayley tables, the isomorphism oracle, and the maps an isomorphism
//! induces on ranges and adjusted chains.

mod cayley;
mod oracle;
mod theta;

pub use cayley::{CayleyTable, ElementInfo, MulTable};
pub use oracle::{find_all_isos, find_iso, verify_iso, SearchOptions, SemigroupIso, DEFAULT_BUDGET};
pub use theta::{
    check_preservation, extend_theta_hat, extract_theta, AdjustedChainIso, BlockMatch, PreservationReport,
    RangeBijection,
};
