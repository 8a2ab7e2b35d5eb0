//! Homotopies between graph morphisms and their algebra.
//!
//! A homotopy from f to g is a looped walk in the exponential graph H^G
//! through morphisms: a nonempty frame sequence whose consecutive frames
//! are exponentially adjacent. Homotopies concatenate (walk concatenation)
//! and compose (g α * β f'), and two homotopies with the same endpoint
//! morphisms can be compared rel endpoints — the 2-cell equality of the
//! graph 2-category — by a budgeted search over frame sequences.

use std::collections::{HashMap, VecDeque};

use crate::exp::{enumerate_homs, exp_edge, postcompose, precompose};
use crate::map::VertexMap;
use crate::search::{fixed_endpoint_bfs, SearchOutcome};
use crate::{Equivalence, Error, Result, SearchLimits};

/// A looped walk in H^G: every frame is a morphism and consecutive frames
/// are adjacent in the exponential graph. The length n of the homotopy is
/// `frames() - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy {
    frames: Vec<VertexMap>,
}

impl Homotopy {
    pub fn new(frames: Vec<VertexMap>) -> Result<Homotopy> {
        let first = frames
            .first()
            .ok_or_else(|| Error::InvalidParameter("homotopy needs at least one frame".into()))?;
        for frame in &frames {
            if !frame.same_hom_set(first) {
                return Err(Error::GraphMismatch(
                    "homotopy frames must share source and target".to_string(),
                ));
            }
            if !frame.is_morphism() {
                return Err(Error::NotAMorphism(format!("frame {frame}")));
            }
        }
        for pair in frames.windows(2) {
            if !exp_edge(&pair[0], &pair[1])? {
                return Err(Error::NotExpAdjacent);
            }
        }
        Ok(Homotopy { frames })
    }

    /// The length-0 homotopy at a morphism.
    pub fn constant(f: VertexMap) -> Result<Homotopy> {
        Homotopy::new(vec![f])
    }

    /// The homotopy length n: one less than the frame count. Length 0 is
    /// the constant homotopy, so there is no empty state.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.frames.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.frames.len() == 1
    }

    pub fn frames(&self) -> &[VertexMap] {
        &self.frames
    }

    pub fn first(&self) -> &VertexMap {
        &self.frames[0]
    }

    pub fn last(&self) -> &VertexMap {
        self.frames.last().expect("frames are nonempty")
    }

    /// The reverse walk; valid because exponential adjacency is symmetric.
    pub fn reversed(&self) -> Homotopy {
        let mut frames = self.frames.clone();
        frames.reverse();
        Homotopy { frames }
    }
}

/// Shortest homotopy between two morphisms, or `None` when they lie in
/// different components of the hom graph. BFS over the hom-set with
/// deterministic neighbor order.
pub fn are_homotopic(f: &VertexMap, g: &VertexMap) -> Result<Option<Homotopy>> {
    if !f.same_hom_set(g) {
        return Err(Error::GraphMismatch(
            "are_homotopic: maps do not share source and target".to_string(),
        ));
    }
    for m in [f, g] {
        if !m.is_morphism() {
            return Err(Error::NotAMorphism(format!("{m}")));
        }
    }
    if f == g {
        return Ok(Some(Homotopy::constant(f.clone())?));
    }
    let homs = enumerate_homs(f.source(), f.target());
    let index: HashMap<&[usize], usize> = homs
        .iter()
        .enumerate()
        .map(|(i, m)| (m.images(), i))
        .collect();
    let start = index[f.images()];
    let goal = index[g.images()];

    let mut parent: Vec<Option<usize>> = vec![None; homs.len()];
    let mut seen = vec![false; homs.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(current) = queue.pop_front() {
        for (next, candidate) in homs.iter().enumerate() {
            if seen[next] || !exp_edge(&homs[current], candidate)? {
                continue;
            }
            seen[next] = true;
            parent[next] = Some(current);
            if next == goal {
                let mut path = vec![next];
                let mut at = next;
                while let Some(prev) = parent[at] {
                    path.push(prev);
                    at = prev;
                }
                path.reverse();
                let frames = path.into_iter().map(|i| homs[i].clone()).collect();
                return Ok(Some(Homotopy { frames }));
            }
            queue.push_back(next);
        }
    }
    Ok(None)
}

/// A single-vertex difference between two morphisms.
#[derive(Debug, Clone)]
pub struct SpiderMove {
    pub at: usize,
    pub before: VertexMap,
    pub after: VertexMap,
}

impl SpiderMove {
    pub fn at_name(&self) -> &str {
        self.before.source().name(self.at)
    }
}

/// Two morphisms form a spider pair when they differ at exactly one vertex
/// x, and — when x is looped — the two images of x are adjacent. Equal
/// maps differ at zero vertices and are not a spider pair.
pub fn is_spider_pair(f: &VertexMap, g: &VertexMap) -> Result<Option<SpiderMove>> {
    if !f.same_hom_set(g) {
        return Err(Error::GraphMismatch(
            "is_spider_pair: maps do not share source and target".to_string(),
        ));
    }
    for m in [f, g] {
        if !m.is_morphism() {
            return Err(Error::NotAMorphism(format!("{m}")));
        }
    }
    let diff = f.difference(g);
    if diff.len() != 1 {
        return Ok(None);
    }
    let at = diff[0];
    if f.source().has_loop(at) && !f.target().is_adjacent(f.apply(at), g.apply(at)) {
        return Ok(None);
    }
    Ok(Some(SpiderMove {
        at,
        before: f.clone(),
        after: g.clone(),
    }))
}

/// The Spider Lemma's constructive chain for an exponential edge f ~ g:
/// step k agrees with f on the leading vertices and with g on the rest,
/// moving one vertex at a time from the back. Consecutive entries are
/// spider pairs; stationary steps are dropped.
pub fn spider_decompose(f: &VertexMap, g: &VertexMap) -> Result<Vec<VertexMap>> {
    if !f.same_hom_set(g) {
        return Err(Error::GraphMismatch(
            "spider_decompose: maps do not share source and target".to_string(),
        ));
    }
    for m in [f, g] {
        if !m.is_morphism() {
            return Err(Error::NotAMorphism(format!("{m}")));
        }
    }
    if !exp_edge(f, g)? {
        return Err(Error::NotExpAdjacent);
    }
    let n = f.source().vertex_count();
    let mut chain = vec![f.clone()];
    for k in 1..=n {
        let boundary = n - k;
        let images: Vec<usize> = (0..n)
            .map(|i| if i < boundary { f.apply(i) } else { g.apply(i) })
            .collect();
        let step = VertexMap::new(f.source().clone(), f.target().clone(), images)?;
        debug_assert!(step.is_morphism());
        if &step != chain.last().expect("nonempty") {
            chain.push(step);
        }
    }
    Ok(chain)
}

/// Walk concatenation of homotopies; the shared frame is not duplicated.
pub fn concat_homotopies(a: &Homotopy, b: &Homotopy) -> Result<Homotopy> {
    if a.last() != b.first() {
        return Err(Error::EndpointMismatch(
            "concat_homotopies: first homotopy must end where the second starts".to_string(),
        ));
    }
    let mut frames = a.frames.clone();
    frames.extend_from_slice(&b.frames[1..]);
    Ok(Homotopy { frames })
}

/// Horizontal composition g α * β f' of α: f ≃ f' in (G,H) with
/// β: g ≃ g' in (H,K), yielding gf ≃ g'f'.
pub fn compose_homotopies(alpha: &Homotopy, beta: &Homotopy) -> Result<Homotopy> {
    if alpha.first().target() != beta.first().source() {
        return Err(Error::GraphMismatch(
            "compose_homotopies: middle graphs differ".to_string(),
        ));
    }
    let g = beta.first();
    let f_prime = alpha.last();
    let mut frames = Vec::with_capacity(alpha.frames.len() + beta.frames.len() - 1);
    for frame in &alpha.frames {
        frames.push(postcompose(g, frame)?);
    }
    for frame in &beta.frames[1..] {
        frames.push(precompose(f_prime, frame)?);
    }
    Ok(Homotopy { frames })
}

/// Rel-endpoint comparison of two homotopies with the default budgets.
pub fn homotopies_equivalent(a: &Homotopy, b: &Homotopy, pad_budget: usize) -> Result<Equivalence> {
    homotopies_equivalent_with(a, b, &SearchLimits::with_pad_budget(pad_budget))
}

/// Rel-endpoint comparison: pads the shorter homotopy with stationary
/// final frames, then searches the space of equal-length frame sequences
/// fixed at both ends, retrying with extra padding up to the budget.
/// There is no certified negative for looped walks, so a failed search
/// reports `Inconclusive`.
pub fn homotopies_equivalent_with(
    a: &Homotopy,
    b: &Homotopy,
    limits: &SearchLimits,
) -> Result<Equivalence> {
    if !a.first().same_hom_set(b.first()) {
        return Err(Error::GraphMismatch(
            "homotopies_equivalent: homotopies live in different hom sets".to_string(),
        ));
    }
    if a.first() != b.first() || a.last() != b.last() {
        return Err(Error::EndpointMismatch(
            "homotopies_equivalent: endpoint morphisms differ".to_string(),
        ));
    }
    if a.frames == b.frames {
        return Ok(Equivalence::Equivalent);
    }

    let homs = enumerate_homs(a.first().source(), a.first().target());
    if homs.len() > u16::MAX as usize {
        return Err(Error::TooLarge {
            required: homs.len() as u128,
            cap: u16::MAX as u128,
        });
    }
    let index: HashMap<&[usize], u16> = homs
        .iter()
        .enumerate()
        .map(|(i, m)| (m.images(), i as u16))
        .collect();
    let adj = AdjacencyMatrix::build(&homs)?;

    let to_ids =
        |h: &Homotopy| -> Vec<u16> { h.frames.iter().map(|f| index[f.images()]).collect() };
    let mut left = to_ids(a);
    let mut right = to_ids(b);
    // Stationary padding: a morphism is looped, so repeating the final
    // frame keeps the sequence a looped walk.
    while left.len() < right.len() {
        left.push(*left.last().expect("nonempty"));
    }
    while right.len() < left.len() {
        right.push(*right.last().expect("nonempty"));
    }

    let mut visited_budget = limits.visited_cap;
    for round in 0..=limits.pad_budget {
        // Moving one frame is a spider move in the exponential over the
        // looped interval: the new frame must be adjacent to both of its
        // neighbors and to the frame it replaces (the loop condition).
        let outcome = fixed_endpoint_bfs(
            &left,
            &right,
            homs.len() as u16,
            |state, pos, candidate| {
                adj.get(state[pos - 1], candidate)
                    && adj.get(candidate, state[pos + 1])
                    && adj.get(state[pos], candidate)
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
            left.push(*left.last().expect("nonempty"));
            right.push(*right.last().expect("nonempty"));
        }
    }
    Ok(Equivalence::Inconclusive)
}

/// Symmetric bit matrix of exponential adjacency over a hom-set.
struct AdjacencyMatrix {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl AdjacencyMatrix {
    fn build(homs: &[VertexMap]) -> Result<AdjacencyMatrix> {
        let n = homs.len();
        let words_per_row = n.div_ceil(64);
        let mut bits = vec![0u64; n * words_per_row];
        for i in 0..n {
            for j in i..n {
                if exp_edge(&homs[i], &homs[j])? {
                    bits[i * words_per_row + j / 64] |= 1 << (j % 64);
                    bits[j * words_per_row + i / 64] |= 1 << (i % 64);
                }
            }
        }
        Ok(AdjacencyMatrix {
            words_per_row,
            bits,
        })
    }

    fn get(&self, i: u16, j: u16) -> bool {
        let (i, j) = (i as usize, j as usize);
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }
}
