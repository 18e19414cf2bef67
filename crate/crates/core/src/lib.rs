//! Word problems around one-relator inverse monoids.
//!
//! The crate covers free inverse monoids (Munn trees), budgeted expansion of
//! word graphs for finitely presented inverse monoids, right-angled Artin
//! groups and their HNN extensions along induced subgraphs, free products
//! with an infinite cyclic group, and the reduction from submonoid
//! membership in a group to right invertibility in an inverse monoid.

pub mod construct;
pub mod error;
pub mod freeprod;
pub mod graph;
pub mod hnn;
pub mod munn;
pub mod oracle;
pub mod presentation;
pub mod raag;
pub mod stephen;
pub mod suite;
pub mod words;

pub use error::{Error, Result};
pub use graph::{fold, Edge, WordGraph};
pub use presentation::{GroupPresentation, InvPresentation, Relation};
pub use words::{Alphabet, Letter, Sign, Word};
