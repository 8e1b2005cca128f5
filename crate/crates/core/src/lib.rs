//! Quantum-style dynamics of the m-sentence Liar Paradox.
//!
//! A Liar configuration of `m` sentences is modelled in the product space
//! `C^(2m) ⊗ ... ⊗ C^(2m)`. Reasoning about the paradox visits `2m` basis
//! states in a fixed cycle; the unreasoned paradox is their equal-weight
//! superposition. Truth and falsehood measurements are diagonal projectors
//! on one sentence factor, one reasoning step is a permutation of the cycle
//! states, and its principal logarithm yields a Hamiltonian generating
//! continuous oscillations between truth and falsehood.
//!
//! ```
//! use liar_core::{build_evolution, build_initial_state, Configuration};
//!
//! let liar = Configuration::eight_liar();
//! let psi0 = build_initial_state(&liar)?;
//! assert_eq!(psi0.support_len(), 16);
//!
//! let evolution = build_evolution(&liar)?;
//! let later = evolution.propagate(&psi0, 0.37)?;
//! assert!(later.distance(&psi0) < 1e-12);
//! # Ok::<(), liar_core::Error>(())
//! ```
//!
//! The guide under `book/` walks through each piece; its code listings are
//! compiled and run as doc tests of this crate.

pub mod audit;
pub mod config;
mod error;
pub mod evolution;
pub mod index;
pub mod inference;
pub mod measure;
pub mod reference;
pub mod state;
pub mod trace;
pub mod verify;

pub use audit::{solve_constraints, verify_minimality, MinimalityReport, Solution, Witness};
pub use config::{count_paradoxical, enumerate_paradoxical, Configuration, Polarity};
pub use error::{Error, Result};
pub use evolution::{build_evolution, PiBranch, SubspaceEvolution};
pub use index::{kappa, kappa_inverse, EmbeddedIndex, TensorIndex};
pub use inference::{canonical_cycle, infer_next, reasoning_cycle, Hypothesis, ReasoningCycle, Truth};
pub use measure::{collapse, CollapseMode, ProjectorSpec};
pub use state::{build_initial_state, canonical_entry_cycle, cycle_states, interpret_entry, SparseState};
pub use trace::{probability_trace, TraceRow, TraceSpec};

// Each book chapter becomes a module so that `cargo test --doc` runs its
// listings and a failure points at the chapter it came from.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/configurations.md")]
    mod configurations {}
    #[doc = include_str!("../../../book/src/reasoning.md")]
    mod reasoning {}
    #[doc = include_str!("../../../book/src/state-space.md")]
    mod state_space {}
    #[doc = include_str!("../../../book/src/measurement.md")]
    mod measurement {}
    #[doc = include_str!("../../../book/src/evolution.md")]
    mod evolution {}
    #[doc = include_str!("../../../book/src/dimension-audit.md")]
    mod dimension_audit {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
