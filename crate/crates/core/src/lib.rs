//! Decide, count and enumerate the L-fuzzy sets on a finite domain whose
//! family of cut sets equals a given family of subsets, for a finite
//! complete lattice `L`.
//!
//! The pieces, bottom up:
//!
//! * [`order`]: finite posets, order isomorphisms and automorphism groups.
//! * [`lattice`]: lattice validation, meets and joins, meet-closed subsets.
//! * [`fuzzy`]: fuzzy sets `μ : X → L`, cuts, `L^μ`, the map `φ` and the
//!   factorization `μ = ι ∘ ν`.
//! * [`representation`]: `S(L,F)`, witnesses, the classes `H`, `N(L,F)`,
//!   the counting formula and a brute-force oracle.
//! * [`io`], [`cli`] and [`selftest`]: text formats, the command line and
//!   the randomized cross-check.

pub mod caps;
pub mod cli;
pub mod error;
pub mod fuzzy;
pub mod io;
pub mod lattice;
pub mod order;
pub mod representation;
pub mod selftest;

pub use caps::Caps;
pub use error::{Error, Result};
pub use fuzzy::{DomainSet, FuzzySet, SetFamily};
pub use lattice::{validate_complete_lattice, Lattice, MeetClosedSet};
pub use order::{automorphisms, find_isomorphism, MapKind, OrderMap, Poset};
pub use representation::{analyze, RepresentationReport};
