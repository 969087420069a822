//! Integer-programming models built from a type graph, and decoders back to
//! witnesses on the original graph.

pub mod cds;
pub mod maxcut;
pub mod sumcol;

pub use cds::{build_cds_convex, build_cds_ilp, decode_cds, CdsSolution};
pub use maxcut::{build_maxqcut, decode_partition, Partition};
pub use sumcol::{
    build_sumcol_convex, build_sumcol_graver, build_sumcol_nfold, column_cost, decode_coloring,
    ColorClassCatalog, Coloring,
};
