//! Spider's web graphs and the computations built on them: standard
//! geodesics and Gromov hyperbolicity, the centred Hardy–Littlewood maximal
//! operator with empirical weak-type constants, and the discretization of
//! hyperbolic metric spaces into spider's webs.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod discretize;
pub mod error;
pub mod format;
pub mod generators;
pub mod geodesics;
pub mod graph;
pub mod maximal;
pub mod oracle;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{RootedTree, SpiderWeb, VertexId};
