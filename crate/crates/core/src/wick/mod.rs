//! Wick pairings of word-faces and the surfaces they glue into.
//!
//! Every word `w_i` is drawn as a polygonal face whose `|w_i|` edges carry the
//! letters. Between consecutive edges sit the *slots*: slot `l` of a face is
//! the matrix index shared by the letters at positions `l - 1` and `l`. An
//! admissible pairing matches edges with non-vanishing covariance, and each
//! matched pair identifies two slots with two others according to
//! [`MergeKind`]. The number `V` of slot classes then gives the weight
//! `N^{V - m/2}` of the pairing in the expectation of the product of traces.

mod dump;
mod enumerate;
mod expansion;
mod layout;
mod oracle;
mod rules;
mod surface;
mod uf;

use serde::{Deserialize, Serialize};

pub use dump::{pairing_from_json, pairing_to_json};
pub use enumerate::{enumerate_branch, enumerate_pairings, pairing_branches, PairingBranch, Pairings};
pub use expansion::{
    atom_free_expansion, atom_free_expansion_by_inclusion_exclusion, atom_free_expansion_with,
    bi_atomic_count, bi_atomic_count_with, genus_expansion, genus_expansion_with,
    nondegenerate_count, nondegenerate_count_with, sphere_count, spherical_counts, spherical_counts_with,
    SphericalCounts,
};
pub use layout::{merge_kind, MergeKind};
pub use oracle::{brute_force_wick_oracle, entrywise_wick_oracle, EntryModel};
pub use rules::spherical_rule_check;
pub use surface::{glue, GluedSurface, SurfaceComponent};

pub(crate) use layout::Layout;
pub(crate) use expansion::{one_face_sphere_count, two_face_sphere_count};
pub(crate) use surface::{resolve as resolve_pairing, slot_classes};

/// Default cap on the total number of letters handled by the enumerator.
pub const DEFAULT_MAX_LENGTH: usize = 24;

/// Largest total length the bitmask-based enumerator can represent.
pub const HARD_MAX_LENGTH: usize = 64;

/// Resource limits for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Maximum total word length; longer inputs fail with `TooLarge`.
    pub max_length: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_length: DEFAULT_MAX_LENGTH,
        }
    }
}

/// A slot (matrix index) of a face. `position` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SlotId {
    pub face: usize,
    pub position: usize,
}

/// The edge at `position` (1-based) of a face, running from slot `position`
/// to slot `position + 1` (cyclically).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId {
    pub face: usize,
    pub position: usize,
}

/// One matched pair of edges. `twist` is present exactly for GOE pairs and
/// selects which of the two covariance terms is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair {
    pub a: EdgeId,
    pub b: EdgeId,
    pub twist: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecoratedPairing {
    pub pairs: Vec<Pair>,
}
