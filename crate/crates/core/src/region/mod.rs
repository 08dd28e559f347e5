//! Exact calculus of compact planar sets built from points, segments,
//! circles and closed disks.
//!
//! Every predicate is decided with rational arithmetic on squared distances.
//! Pairs of primitives whose relation would need irrational comparisons are
//! reported as `UnsupportedConfiguration` instead of being approximated.
//!
//! Extending the vocabulary (annuli, polygons) means adding a [`Primitive`]
//! variant and covering it in the pairwise predicates `is_within`, `meets`,
//! `contains_point` and `samples`, plus [`classify_pair`]. The set-level
//! operations only go through those.

mod hull;
mod ops;
mod primitive;
mod set;

pub use hull::{check_pocetna, component_count, connected_hull, Hole, HullReport, PocetnaReport};
pub use ops::{
    accumulation, boundary, classify_pair, difference, interior, intersection, isolated_points,
    subset, union, union_all, RegionDifference, Relation,
};
pub use primitive::{OpenDisc, Primitive};
pub use set::{PlaneSet, SpectralRegion};
