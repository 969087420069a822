//! Exact integer-programming toolkit for graphs of small neighborhood
//! diversity.
//!
//! A graph is compressed into its type graph (twin classes with weights,
//! clique/independent kinds and loops). Builders in [`models`] turn a type
//! graph into small integer programs for Capacitated Dominating Set, Sum
//! Coloring and Max-q-Cut; [`backends`] solves them exactly (boxed
//! branch-and-bound, n-fold augmentation), [`graver`] provides Graver bases
//! and Graver-best augmentation, and [`lp`] an exact rational simplex for
//! continuous relaxations. [`algorithms`] holds the proximity search, the
//! additive rounding scheme and the brute-force oracles every model is
//! checked against.
//!
//! ```
//! use ndip::graph::{Graph, TypeGraph};
//! use ndip::models::sumcol::build_sumcol_convex;
//! use ndip::backends::boxed::solve_boxed;
//!
//! let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
//! let types = TypeGraph::of(&path);
//! let model = build_sumcol_convex(&types).unwrap();
//! let solved = solve_boxed(&model).unwrap();
//! assert_eq!(solved.value(), Some(4));
//! ```

#![allow(clippy::needless_range_loop)]

pub mod algorithms;
pub mod backends;
pub mod error;
pub mod generate;
pub mod graph;
pub mod graver;
pub mod io;
pub mod ip;
pub mod lp;
pub mod matrix;
pub mod models;

pub use error::{Error, Result};
pub use graph::{Graph, TypeGraph, TypeKind, TypePartition};
pub use ip::{IpModel, ModelTag, Objective, Relation, Sense};
pub use matrix::IntMatrix;
