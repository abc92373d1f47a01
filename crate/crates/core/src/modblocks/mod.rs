//! Weighted blocks: separators, warps, modified blocks and networks.

pub mod degenerate;
pub mod modified;
pub mod separator;
pub mod warp;
pub mod weighting;

pub use separator::{make_separator, shrink, shrink_vertices, PVert, PartialPrism, Separator};
pub use warp::{warp, warp_coords, warp_point, WarpedBlock};
pub use weighting::{coset_weighting, CosetTable, Weighting};
pub use modified::{
    build_modified_network, hausdorff2, limit_set_f, modified_block, separation_report, BlockKind, LimitSetF,
    ModifiedBlock, SeparationRow,
};
pub use degenerate::{
    degenerate, empty_pattern_limit, natural_embed, standard_rep, standard_rep_agrees, DegenerationReport,
    DegenerationStep, EmptyLimit, TerminalTrace, VertexTrace,
};
