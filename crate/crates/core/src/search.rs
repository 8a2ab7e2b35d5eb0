//! Budgeted BFS over an implicit space of fixed-endpoint sequences.
//!
//! States are sequences over `0..candidate_count` with the first and last
//! entries pinned. A move substitutes a single interior position, subject
//! to a caller-supplied validity predicate; by the spider-move
//! decomposition this reaches exactly the states connected under the full
//! exponential-graph edge relation. The visited budget is shared across
//! the padding rounds of one query and the cancel token is polled between
//! layers.

use std::collections::{HashSet, VecDeque};

use crate::{Error, Result, SearchLimits};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SearchOutcome {
    Found,
    Exhausted,
    CapHit,
}

pub(crate) fn fixed_endpoint_bfs(
    start: &[u16],
    goal: &[u16],
    candidate_count: u16,
    valid_move: impl Fn(&[u16], usize, u16) -> bool,
    limits: &SearchLimits,
    visited_budget: &mut usize,
) -> Result<SearchOutcome> {
    debug_assert_eq!(start.len(), goal.len());
    debug_assert_eq!(start.first(), goal.first());
    debug_assert_eq!(start.last(), goal.last());

    if start == goal {
        return Ok(SearchOutcome::Found);
    }
    if start.len() <= 2 {
        // No interior positions to move; distinct states stay distinct.
        return Ok(SearchOutcome::Exhausted);
    }

    let mut visited: HashSet<Box<[u16]>> = HashSet::new();
    visited.insert(start.into());
    let mut layer: VecDeque<Box<[u16]>> = VecDeque::new();
    layer.push_back(start.into());

    while !layer.is_empty() {
        if limits.cancel.is_cancelled() {
            return Err(Error::Cancelled);
        }
        let mut next_layer: VecDeque<Box<[u16]>> = VecDeque::new();
        for state in layer.drain(..) {
            for pos in 1..state.len() - 1 {
                for candidate in 0..candidate_count {
                    if candidate == state[pos] || !valid_move(&state, pos, candidate) {
                        continue;
                    }
                    let mut neighbor = state.clone();
                    neighbor[pos] = candidate;
                    if neighbor.as_ref() == goal {
                        return Ok(SearchOutcome::Found);
                    }
                    if visited.contains(&neighbor) {
                        continue;
                    }
                    if *visited_budget == 0 {
                        return Ok(SearchOutcome::CapHit);
                    }
                    *visited_budget -= 1;
                    visited.insert(neighbor.clone());
                    next_layer.push_back(neighbor);
                }
            }
        }
        layer = next_layer;
    }
    Ok(SearchOutcome::Exhausted)
}
