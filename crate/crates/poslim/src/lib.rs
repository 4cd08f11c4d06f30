//! Exact computation of higher colimits and limits of diagrams of finitely
//! generated abelian groups over finite posets, together with decision
//! procedures for the acyclicity criteria that control them: cofibrancy,
//! pseudo-projectivity, fibrancy, pseudo-injectivity, and (weak) Mackey
//! structure with quasi-units.
//!
//! The crate is organized bottom-up:
//!
//! - [`matrix`] — integer matrices and Smith normal form, the exact engine.
//! - [`abgrp`] — finitely generated abelian groups in presented form,
//!   homomorphisms, subgroups, kernels, images, quotients.
//! - [`poset`] — finite posets: rays, maxima, antichains, chains, meets,
//!   rank filtration.
//! - [`diagram`] — validated functors from a poset into abelian groups,
//!   covariant or contravariant.
//! - [`derived`] — the poset chain complex and the derived functors of
//!   colimit and limit.
//! - [`checks`] — the four acyclicity decision procedures, zero-class
//!   certificates, and the randomized cross-check harness.
//! - [`mackey`] — verification of (weak) Mackey data and quasi-units.
//! - [`spectral`] — E2 pages of graded diagrams and torsion-aware
//!   reassembly of total homology.
//! - [`groups`] — finite groups, subgroup posets, the augmentation-kernel
//!   functor, and the shipped case-study fixtures.
//! - [`io`] / [`cli`] — the JSON interchange format and command-line front end.
//!
//! Runnable walkthroughs live in `examples/`; start with
//! `cargo run --example higher_colimits`.

pub mod abgrp;
pub mod checks;
pub mod cli;
pub mod corpus;
pub mod derived;
pub mod diagram;
pub mod groups;
pub mod io;
pub mod mackey;
pub mod matrix;
pub mod oracle;
pub mod poset;
pub mod rng;
pub mod spectral;

pub use abgrp::{FgAbGroup, Hom, Ring, Subgroup};
pub use diagram::{Diagram, FormalSum, Variance};
pub use matrix::IntMat;
pub use poset::FinPoset;
