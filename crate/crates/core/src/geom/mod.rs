//! Exact coordinates (rationals and real cyclotomic numbers) and the
//! geometric predicates built on them.

mod cyclo;
mod fixed;
mod placement;
mod point;
mod scalar;

pub use cyclo::{cyclo_field, CycloField, CycloReal};
pub use placement::{
    chords_generic, circle_point, cocircular_placement, regular_placement, Coords, Placement, PlacementMode,
};
pub use point::{
    cross, dot, orientation, point_disk, segment_disk, segment_meets_disk, segment_relation, DiskSide, Point, Segment,
    SegmentRelation,
};
pub use scalar::{dyadic, format_rat, int, parse_rat, rat, Rat, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("value does not fit the fixed-width cyclotomic representation")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("vertices {0} and {1} share a point")]
    DuplicatePoint(usize, usize),
    #[error("invalid order: {0}")]
    BadOrder(String),
    #[error("operation needs {expected} coordinates")]
    ModeMismatch { expected: &'static str },
}
