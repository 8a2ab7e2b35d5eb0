//! Walks, pruning, and homotopy rel endpoints on walks.
//!
//! A walk is a vertex sequence with consecutive adjacency — a morphism out
//! of a path graph. Pruning deletes a backtrack pair v_i v_{i+1} whenever
//! v_i = v_{i+2}; repeated pruning reaches a unique non-prunable walk. The
//! Δ extension repeats the final edge, realizing the colimit identification
//! that lets walks of different lengths be compared. Walk parity is
//! preserved by pruning, by Δ, and by every rel-endpoint move, so a parity
//! mismatch is the one certified negative the equivalence check can give.

use std::sync::Arc;

use crate::graph::Graph;
use crate::search::{fixed_endpoint_bfs, SearchOutcome};
use crate::{Equivalence, Error, Result, SearchLimits};

/// A nonempty vertex sequence with consecutive adjacency.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    graph: Arc<Graph>,
    vertices: Vec<usize>,
}

impl Walk {
    pub fn new(graph: impl Into<Arc<Graph>>, vertices: Vec<usize>) -> Result<Walk> {
        let graph = graph.into();
        if vertices.is_empty() {
            return Err(Error::InvalidWalk(
                "a walk visits at least one vertex".into(),
            ));
        }
        if let Some(&bad) = vertices.iter().find(|&&v| v >= graph.vertex_count()) {
            return Err(Error::UnknownVertex(format!("#{bad}")));
        }
        for pair in vertices.windows(2) {
            if !graph.is_adjacent(pair[0], pair[1]) {
                return Err(Error::InvalidWalk(format!(
                    "'{}' and '{}' are not adjacent",
                    graph.name(pair[0]),
                    graph.name(pair[1])
                )));
            }
        }
        Ok(Walk { graph, vertices })
    }

    pub fn from_names(graph: impl Into<Arc<Graph>>, names: &[&str]) -> Result<Walk> {
        let graph = graph.into();
        let vertices = names
            .iter()
            .map(|n| graph.require_index(n))
            .collect::<Result<Vec<_>>>()?;
        Walk::new(graph, vertices)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    /// Length in edges; one less than the number of visited vertices.
    /// Length 0 is the constant walk, so there is no empty state.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_names(&self) -> Vec<&str> {
        self.vertices.iter().map(|&v| self.graph.name(v)).collect()
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().expect("walks are nonempty")
    }

    /// True when every visited vertex is looped — a looped walk.
    pub fn is_looped_walk(&self) -> bool {
        self.vertices.iter().all(|&v| self.graph.has_loop(v))
    }

    pub fn parity(&self) -> usize {
        self.len() % 2
    }

    pub fn concat(&self, other: &Walk) -> Result<Walk> {
        if self.graph != other.graph {
            return Err(Error::GraphMismatch(
                "concat: walks live in different graphs".to_string(),
            ));
        }
        if self.last() != other.first() {
            return Err(Error::EndpointMismatch(format!(
                "concat: '{}' != '{}'",
                self.graph.name(self.last()),
                self.graph.name(other.first())
            )));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        Ok(Walk {
            graph: self.graph.clone(),
            vertices,
        })
    }

    pub fn reversed(&self) -> Walk {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Walk {
            graph: self.graph.clone(),
            vertices,
        }
    }

    pub fn is_prunable_at(&self, i: usize) -> bool {
        i + 2 < self.vertices.len() && self.vertices[i] == self.vertices[i + 2]
    }

    pub fn prunable_indices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.is_prunable_at(i))
            .collect()
    }

    pub fn is_pruned(&self) -> bool {
        self.prunable_indices().is_empty()
    }

    /// Deletes positions i and i+1, given v_i = v_{i+2}.
    pub fn prune_once(&self, i: usize) -> Result<Walk> {
        if !self.is_prunable_at(i) {
            return Err(Error::NotPrunable(i));
        }
        let mut vertices = self.vertices.clone();
        vertices.drain(i..i + 2);
        Ok(Walk {
            graph: self.graph.clone(),
            vertices,
        })
    }

    /// Prunes at the lowest prunable index until none exists. The result
    /// is independent of the pruning order; the harness verifies this
    /// exhaustively rather than assuming it.
    pub fn prune_fully(&self) -> Walk {
        let mut current = self.clone();
        while let Some(&i) = current.prunable_indices().first() {
            current = current.prune_once(i).expect("index is prunable");
        }
        current
    }

    /// Appends (v_{n-1}, v_n): the Δ end-repetition. Undefined on constant
    /// walks, which are already canonical in the colimit.
    pub fn delta_extend(&self) -> Result<Walk> {
        if self.len() == 0 {
            return Err(Error::InvalidParameter(
                "delta_extend needs a walk of length >= 1".to_string(),
            ));
        }
        let mut vertices = self.vertices.clone();
        let n = vertices.len();
        vertices.push(self.vertices[n - 2]);
        vertices.push(self.vertices[n - 1]);
        Ok(Walk {
            graph: self.graph.clone(),
            vertices,
        })
    }
}

/// Rel-endpoint walk equivalence with the default budgets.
pub fn walks_equivalent(a: &Walk, b: &Walk, pad_budget: usize) -> Result<Equivalence> {
    walks_equivalent_with(a, b, &SearchLimits::with_pad_budget(pad_budget))
}

/// Decides whether two walks represent the same groupoid arrow: prune
/// both fully, reject on parity (the only certified negative), equalize
/// lengths by Δ extension, then search the fixed-endpoint walk space,
/// Δ-extending both sides up to the padding budget.
pub fn walks_equivalent_with(a: &Walk, b: &Walk, limits: &SearchLimits) -> Result<Equivalence> {
    if a.graph() != b.graph() {
        return Err(Error::GraphMismatch(
            "walks_equivalent: walks live in different graphs".to_string(),
        ));
    }
    if a.first() != b.first() || a.last() != b.last() {
        return Err(Error::EndpointMismatch(format!(
            "walks_equivalent: endpoints ({}, {}) vs ({}, {})",
            a.graph().name(a.first()),
            a.graph().name(a.last()),
            b.graph().name(b.first()),
            b.graph().name(b.last()),
        )));
    }

    let mut left = a.prune_fully();
    let mut right = b.prune_fully();
    if left == right {
        return Ok(Equivalence::Equivalent);
    }
    if left.parity() != right.parity() {
        return Ok(Equivalence::NotEquivalent);
    }

    while left.len() < right.len() {
        left = extend_for_search(&left)?;
    }
    while right.len() < left.len() {
        right = extend_for_search(&right)?;
    }

    let graph = a.graph();
    if graph.vertex_count() > u16::MAX as usize {
        return Err(Error::TooLarge {
            required: graph.vertex_count() as u128,
            cap: u16::MAX as u128,
        });
    }
    let mut visited_budget = limits.visited_cap;
    for round in 0..=limits.pad_budget {
        let start: Vec<u16> = left.vertices().iter().map(|&v| v as u16).collect();
        let goal: Vec<u16> = right.vertices().iter().map(|&v| v as u16).collect();
        // A move is a spider move on the walk: replace one interior vertex
        // by a common neighbor of its two current neighbors. The exponent
        // is an unlooped path, so there is no loop-edge condition.
        let outcome = fixed_endpoint_bfs(
            &start,
            &goal,
            graph.vertex_count() as u16,
            |state, pos, candidate| {
                graph.is_adjacent(state[pos - 1] as usize, candidate as usize)
                    && graph.is_adjacent(candidate as usize, state[pos + 1] as usize)
            },
            limits,
            &mut visited_budget,
        )?;
        match outcome {
            SearchOutcome::Found => return Ok(Equivalence::Equivalent),
            SearchOutcome::CapHit => return Ok(Equivalence::Inconclusive),
            SearchOutcome::Exhausted => {}
        }
        if round < limits.pad_budget {
            left = extend_for_search(&left)?;
            right = extend_for_search(&right)?;
        }
    }
    Ok(Equivalence::Inconclusive)
}

/// Δ extension, with the constant walk lifted through its lowest-order
/// neighbor: (x) becomes (x y x), a representative of the same class.
fn extend_for_search(w: &Walk) -> Result<Walk> {
    if w.len() > 0 {
        return w.delta_extend();
    }
    let x = w.first();
    let y = *w
        .graph()
        .neighbors(x)
        .first()
        .ok_or_else(|| Error::IsolatedVertex(w.graph().name(x).to_string()))?;
    Walk::new(w.graph().clone(), vec![x, y, x])
}
