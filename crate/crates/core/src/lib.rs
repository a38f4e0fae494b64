//! A workbench for the directed lower, upper, and convex powerspaces of
//! finite posets.
//!
//! Every finite T0 space is the Alexandroff space of its specialization
//! order, so finite directed spaces are just finite posets and continuity is
//! monotonicity: each directed subset contains its maximum, which witnesses
//! every limit. That collapse is what makes the constructions here fully
//! tabulable — powerspace carriers are canonical antichains, the convergence
//! relations are finite searches, and every theorem-shaped claim (semilattice
//! laws, the universal property of the free extensions, coincidence with the
//! classical Hoare/Smyth/Plotkin carriers, commutativity of the upper and
//! lower constructions) is checked exhaustively over all labeled posets at
//! desk scale by [`suites`].
//!
//! The collapse is a consequence of the definitions, not an assumption: the
//! literal directed-open sweep ([`topology::is_directed_space`]), the literal
//! convergence searches ([`convergence`]) and the exhaustive uniqueness
//! enumeration ([`freealg::verify_universal_property`]) stay in the codebase
//! as the oracles the shortcuts are checked against.

pub mod classic;
pub mod convergence;
pub mod distributive;
pub mod enumerate;
pub mod error;
pub mod freealg;
pub mod io;
pub mod ndsem;
pub mod poset;
pub mod powerspace;
pub mod semilattice;
pub mod suites;
pub mod topology;

pub use error::Error;
pub use poset::{validate_poset, Antichain, Direction, Extremal, Poset, Subset};
pub use powerspace::{build_powerspace, combine, compare, Elem, Powerspace, PsKind};
pub use semilattice::{check_semilattice, Kind, SemilatticeSpace};
pub use topology::{
    alexandroff_topology, check_monotone, is_directed_space, specialization_order, FiniteTopology,
    MonotoneMap,
};
