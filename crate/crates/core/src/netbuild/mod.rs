//! Block networks over the Farey tessellation.

pub mod audit;
pub mod export;
pub mod labelling;
pub mod network;
pub mod rho;

pub use labelling::TauLabelling;
pub use network::{
    build_network, BlockInstance, CloudPoint, Location, Network, PsiApprox, PsiEntry, UnitWeights, VertexRecord,
    WeightFn,
};
pub use rho::{discontinuity_probe, edge_image, rho_apply, rho_vertex, ProbeReport, RepElement};
pub use audit::{audit_network, Check};
pub use export::{dump_network, export_cloud, Format, Projection, FORMAT_VERSION};
