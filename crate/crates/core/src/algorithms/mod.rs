//! Problem-level algorithms, brute-force oracles and witness checks.

pub mod cds;
pub mod matching;
pub mod oracle;

pub use cds::{capacity_reorder, cds_proximity_solve, cds_rounding_approx, ProximityBox};
pub use matching::{max_bipartite_matching, Matching};
pub use oracle::{cds_brute, check_cds, check_coloring, cut_value, maxqcut_brute, sumcol_brute};
