//! Homotopy theory internal to the category of finite undirected graphs.
//!
//! The library works with finite graphs that may carry loops but never
//! multi-edges. On top of the basic category (products, coproducts,
//! exponential graphs) it implements homotopy between graph morphisms as
//! looped walks in the exponential graph, spider-move decompositions,
//! folds and dismantling to the unique stiff pleat, homotopy-equivalence
//! testing, and the pruning-based fundamental groupoid, together with an
//! exhaustive small-graph verification harness for the theorems involved.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything can be shared and sent across threads freely.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

pub mod exp;
pub mod graph;
pub mod groupoid;
pub mod homotopy;
pub mod iso;
pub mod json;
pub mod map;
pub mod pleat;
mod search;
pub mod verify;
pub mod walk;

pub use exp::{
    curry, enumerate_homs, exp_edge, hom_graph, postcompose, precompose, realize_exponential,
    uncurry, ExponentialGraph, DEFAULT_REALIZE_CAP,
};
pub use graph::{
    complete_graph, coproduct, cycle_graph, enumerate_graphs, looped_path_graph, path_graph,
    product, Graph, GraphBuilder,
};
pub use groupoid::{
    arrow, arrows_equivalent, compose_arrows, fundamental_group_probe, identity_arrow,
    induced_functor, invert_arrow, natural_iso_component, GroupProbe, GroupoidArrow,
};
pub use homotopy::{
    are_homotopic, compose_homotopies, concat_homotopies, homotopies_equivalent,
    homotopies_equivalent_with, is_spider_pair, spider_decompose, Homotopy, SpiderMove,
};
pub use iso::{are_isomorphic, Isomorphism};
pub use map::VertexMap;
pub use pleat::{
    apply_fold, duplicate_vertex, find_folds, homotopy_equivalent, is_stiff, pleat,
    pleat_product_check, DuplicatedVertex, Fold, FoldPolicy, PleatResult,
};
pub use verify::{run_suite, FailureRecord, Suite, SuiteConfig, VerificationReport};
pub use walk::{walks_equivalent, walks_equivalent_with, Walk};

/// Errors produced by graph construction, operations, and searches.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("duplicate vertex '{0}'")]
    DuplicateVertex(String),
    #[error("edge {index} references undeclared vertex '{name}'")]
    UnknownEndpoint { index: usize, name: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph mismatch: {0}")]
    GraphMismatch(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("map is not a graph morphism: {0}")]
    NotAMorphism(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("empty graph not accepted: {0}")]
    EmptyGraph(String),
    #[error("size {required} exceeds the cap {cap}")]
    TooLarge { required: u128, cap: u128 },
    #[error("precondition violated: vertex '{0}' is isolated")]
    IsolatedVertex(String),
    #[error("maps are not adjacent in the exponential graph")]
    NotExpAdjacent,
    #[error("maps are not homotopic")]
    NotHomotopic,
    #[error("invalid fold: {0}")]
    InvalidFold(String),
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("walk is not prunable at index {0}")]
    NotPrunable(usize),
    #[error("search cancelled")]
    Cancelled,
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Outcome of a rel-endpoint equivalence search.
///
/// `NotEquivalent` is only ever returned when a parity argument certifies
/// the negative; a search that merely ran out of budget reports
/// `Inconclusive` instead of guessing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    NotEquivalent,
    Inconclusive,
}

impl Equivalence {
    pub fn is_equivalent(self) -> bool {
        self == Equivalence::Equivalent
    }

    pub fn is_inconclusive(self) -> bool {
        self == Equivalence::Inconclusive
    }
}

/// Default number of padding rounds for rel-endpoint searches.
pub const DEFAULT_PAD_BUDGET: usize = 4;
/// Default cap on visited states across the padding rounds of one query.
pub const DEFAULT_VISITED_CAP: usize = 10_000_000;

/// Cooperative cancellation handle, polled between BFS layers.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

/// Budgets for the rel-endpoint searches.
#[derive(Debug, Clone)]
pub struct SearchLimits {
    /// Extra padding rounds tried after the initial length equalization.
    pub pad_budget: usize,
    /// Total states visited across all rounds before giving up.
    pub visited_cap: usize,
    pub cancel: CancelToken,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            pad_budget: DEFAULT_PAD_BUDGET,
            visited_cap: DEFAULT_VISITED_CAP,
            cancel: CancelToken::new(),
        }
    }
}

impl SearchLimits {
    pub fn with_pad_budget(pad_budget: usize) -> Self {
        SearchLimits {
            pad_budget,
            ..SearchLimits::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_are_shareable_across_threads() {
        assert_send_sync::<Graph>();
        assert_send_sync::<VertexMap>();
        assert_send_sync::<Homotopy>();
        assert_send_sync::<Walk>();
        assert_send_sync::<GroupoidArrow>();
        assert_send_sync::<CancelToken>();
    }

    #[test]
    fn cancel_token_flips_once() {
        let token = CancelToken::new();
        assert!(!token.is_cancelled());
        token.cancel();
        assert!(token.is_cancelled());
        assert!(token.clone().is_cancelled());
    }
}
