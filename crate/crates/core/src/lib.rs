//! Stallings-style folding for cubical maps.
//!
//! Represents non-positively curved cube complexes and cubical maps between
//! them, completes a based map into a local isometry by folding, cube
//! identification and cube attachment, and uses the completion to decide
//! membership, power membership, normality and finite index for subgroups
//! whose completion is finite.

pub mod batch;
pub mod completion;
pub mod complex;
pub mod cube;
pub mod fixtures;
pub mod format;
pub mod geometry;
pub mod group;
pub mod hyperplane;
pub mod link;
pub mod map;
pub mod oracles;
pub mod word;

pub use complex::{CubeComplex, Edge, RawComplex};
pub use cube::{Cube, CubeId, DirectedEdge, EdgeId, Symmetry, VertexId};
pub use link::{check_npc, is_flag, link, LinkComplex, NpcReport};
pub use map::CubicalMap;
pub use word::CubicalWord;
