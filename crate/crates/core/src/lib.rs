//! Finite loops, Bol loops and twisted subgroups of permutation groups.
//!
//! Groups are enumerated exactly under an element cap; loops are Cayley
//! tables with identity `0`. Every structural claim a routine relies on is
//! checked on the instance and reported as [`Error::Violation`] when it
//! fails.

pub mod arith;
pub mod bolanalysis;
mod error;
pub mod loopcore;
pub mod permgroup;
pub mod transversal;
pub mod twisted;
pub mod verdict;

pub use error::{Error, Result};
pub use loopcore::{FiniteLoop, PropertyReport, Subloop};
pub use permgroup::{ElementSet, GroupPair, PermGroup, Permutation};
pub use twisted::{Automorphism, TwistedSubgroup};
pub use verdict::{Status, Verdict};

/// Resource limits shared by all computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of elements enumerated for any group.
    pub cap: usize,
    /// Maximum loop order for subloop-lattice scans.
    pub subloop_bound: usize,
}

impl Limits {
    pub const DEFAULT_CAP: usize = 2_000_000;
    pub const DEFAULT_SUBLOOP_BOUND: usize = 64;

    /// Cap for closures inside `G × G`.
    pub fn pair_cap(&self) -> usize {
        self.cap.saturating_mul(self.cap)
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits { cap: Self::DEFAULT_CAP, subloop_bound: Self::DEFAULT_SUBLOOP_BOUND }
    }
}
