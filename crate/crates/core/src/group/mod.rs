//! Decision procedures for subgroups of fundamental groups of nonpositively
//! curved cube complexes.

mod decide;
mod presentation;
mod reduce;


use thiserror::Error;

use crate::completion::BouquetError;
use crate::geometry::GeometryError;

pub use decide::{
    core_graph, coset_enumeration, finite_index, is_normal, membership, normalized_by, power_membership,
    reduced_completion, CoreGraph, Decision, IndexVerdict, NormalityReport, NormalizerVerdict, Subgroup,
};
pub use presentation::{
    cubical_presentation, generator_loop, spanning_tree, word_to_cubical, CubicalPresentation, Relator, SpanningTree,
};
pub use reduce::{path_hull, reduced_form, reduced_forms, reduced_forms_in_ball, words_equal, PathHull, PATH_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("complex has no basepoint")]
    NoBasepoint,
    #[error("complex is disconnected")]
    Disconnected,
    #[error("word is not an edge path")]
    NotAPath,
    #[error("word is not a loop at the basepoint")]
    NotClosed,
    #[error("completion budget exceeded")]
    BudgetExceeded,
    #[error("subgroup completion did not finish")]
    Unfinished,
    #[error("word does not lift to the completion")]
    LiftFailed,
    #[error(transparent)]
    Geometry(GeometryError),
    #[error(transparent)]
    Bouquet(BouquetError),
}
