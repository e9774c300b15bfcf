//! Argumentation debates over scenarios, weighted ensembles of debates, and
//! snapshot estimators with their probabilistic guarantees.
//!
//! - [`lang`]: atoms and literals.
//! - [`agora`]: transcripts, attacks, labels and saturation of one debate.
//! - [`ensemble`]: weighted support, support classes and distinctness.
//! - [`estimate`]: estimators over snapshot sequences and dominance checks.
//! - [`stochastic`]: seeded simulations of new information after a snapshot.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod agora;
pub mod ensemble;
pub mod estimate;
pub mod exact;
pub mod lang;
pub mod rng;
pub mod stochastic;
