//! Exact graph algorithms parameterized by the iterated type partition.
//!
//! Repeatedly collapsing a graph's type classes (maximal sets of twins) into
//! metavertices yields a sequence of quotient graphs that ends in a *base
//! graph* with no twins. The size of that base graph, `itp(G)`, bounds the
//! exponential part of the solvers in [`fpt`]: dominating set, vertex
//! coloring (through weighted multicoloring) and vertex cover are solved on
//! the base graph and lifted back level by level.
//!
//! The crate also carries the equitable coloring solver parameterized by
//! neighborhood diversity ([`eqc`]), the bin-packing hardness gadgets
//! ([`gadgets`]), a small exact integer program solver ([`ilp`]) and
//! independent brute-force oracles ([`oracles`]).
//!
//! Everything here is `no_std` + `alloc`; parsing, file formats and the CLI
//! live in the `itp-tools` crate.
#![no_std]

extern crate alloc;

pub mod eqc;
pub mod error;
pub mod fpt;
pub mod gadgets;
pub mod graph;
pub mod ilp;
pub mod nodeset;
pub mod oracles;
pub mod typepart;
mod subsets;

pub use error::{Error, Result};
pub use graph::{ColoringAssignment, Graph};
pub use nodeset::NodeSet;
pub use typepart::{itp, nd, type_partition, type_sequence, ClassKind, TypePartition, TypeSequence};
