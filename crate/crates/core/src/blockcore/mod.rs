//! The modular block: standard vertices, good sets, the symmetry σ and exact certificates.

mod block;
mod goodsets;
mod labels;
mod verify;

pub use block::{build_block, separating_vector, standard_vertices, BlockDump, ModularBlock};
pub use goodsets::{all_pair_sequences, enumerate_core_sets, enumerate_good_sets, GoodSet};
pub use labels::{Letter, Pair, VertexLabelABC};
pub use verify::{adjacency_cycle, key_holds, verify_block, CertificateReport, CheckResult, Failure, Level, RatioSummary};
