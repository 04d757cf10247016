//! Universal-cover balls, hyperplanes and halfspaces, geodesics, convex hulls
//! and the dual cube complex of a halfspace poset.

mod ball;
mod halfspace;
mod sageev;

use thiserror::Error;

use crate::cube::VertexId;

pub use ball::{universal_cover_ball, CoverBall};
pub use halfspace::{convex_hull, geodesics, is_convex, Halfspaces, Subcomplex};
pub use sageev::{
    ambient_orientation, complement, dual_to_ambient, halfspaces_meeting, sageev_dual, HalfspacePoset, SageevDual,
};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(VertexId),
    #[error("complex is not non-positively curved at vertex {0}")]
    NotNpc(VertexId),
    #[error("hyperplane sides are not well defined; complex is not simply connected")]
    NotSimplyConnected,
    #[error("query reaches distance {needed} from the center of a ball of radius {radius}")]
    TooCloseToBoundary { needed: usize, radius: usize },
    #[error("empty vertex set")]
    EmptySet,
    #[error("inclusion is not a partial order with order-reversing complement")]
    InconsistentPoset,
}

#[cfg(test)]
mod tests;
