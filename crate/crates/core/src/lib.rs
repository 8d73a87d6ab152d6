//! Graph reductions and Coxeter-group encodings for the epimorphism order.
//!
//! The pipeline runs in two steps. [`graphs::f_reduce`] turns irreflexive
//! graphs into pointed reflexive graphs so that injective homomorphisms
//! become epimorphisms. [`construction::build_c`] then encodes a graph as a
//! Coxeter group built from `S_5` blocks, and [`reconstruction`] recovers the
//! graph from the group through conjugacy classes of `S_5` subgroups.
//! [`homomorphisms`] lifts graph epimorphisms to group epimorphisms and maps
//! them back.

pub mod construction;
pub mod coxeter;
pub mod error;
pub mod graphs;
pub mod homomorphisms;
pub mod parabolics;
pub mod reconstruction;

pub use error::{Error, Result};
