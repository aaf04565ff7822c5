//! Picture fuzzy subgroups of finite groups, in exact arithmetic.
//!
//! The crate is layered bottom-up:
//!
//! * [`degree`]: exact rationals in `[0, 1]`.
//! * [`group`], [`subset`], [`map`]: Cayley-table groups, crisp subsets and
//!   maps between groups.
//! * [`pfs`]: picture fuzzy sets, cuts, products, images and preimages.
//! * [`pfsg`]: subgroup and normality predicates, cosets, conjugation and
//!   samplers for valid instances.
//! * [`theorems`]: exhaustive checkers for the standard results relating
//!   these notions, and randomized campaigns over them.
//! * [`io`]: JSON file formats.
//! * [`examples`]: small instances with known behavior.

pub mod degree;
pub mod examples;
pub mod group;
pub mod io;
pub mod map;
pub mod pfs;
pub mod pfsg;
pub mod subset;
pub mod theorems;

pub use degree::{Degree, DegreeError};
pub use group::{Element, FiniteGroup, GroupError};
pub use map::{GroupMap, MapKind};
pub use pfs::{CutThreshold, PfsError, PictureFuzzySet, PictureTriple};
pub use subset::GroupSubset;
