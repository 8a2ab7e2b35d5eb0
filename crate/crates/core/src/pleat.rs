//! Folds, stiffness, and dismantling to the pleat.
//!
//! A fold sends one vertex w onto a vertex v with N(w) ⊆ N(v) (a looped
//! vertex counts as its own neighbor) and fixes everything else; it is a
//! homotopy equivalence onto the graph minus w. Repeating folds until none
//! remain reaches a stiff graph — the pleat — unique up to isomorphism
//! regardless of fold order, which makes pleat isomorphism the decision
//! procedure for homotopy equivalence of graphs.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::iso::are_isomorphic;
use crate::map::VertexMap;
use crate::{Error, Result};

/// A fold of `graph`: `removed` is sent onto `into`, everything else stays.
#[derive(Debug, Clone)]
pub struct Fold {
    graph: Arc<Graph>,
    removed: usize,
    into: usize,
}

impl Fold {
    pub fn new(graph: impl Into<Arc<Graph>>, removed: &str, into: &str) -> Result<Fold> {
        let graph = graph.into();
        let removed = graph.require_index(removed)?;
        let into = graph.require_index(into)?;
        Fold::from_indices(graph, removed, into)
    }

    pub fn from_indices(graph: impl Into<Arc<Graph>>, removed: usize, into: usize) -> Result<Fold> {
        let graph = graph.into();
        if removed == into {
            return Err(Error::InvalidFold(
                "a fold moves a vertex onto a different vertex".to_string(),
            ));
        }
        if removed >= graph.vertex_count() || into >= graph.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{}", removed.max(into))));
        }
        if !neighborhood_subset(&graph, removed, into) {
            return Err(Error::InvalidFold(format!(
                "N({}) is not contained in N({})",
                graph.name(removed),
                graph.name(into)
            )));
        }
        Ok(Fold {
            graph,
            removed,
            into,
        })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn removed(&self) -> usize {
        self.removed
    }

    pub fn into_vertex(&self) -> usize {
        self.into
    }

    pub fn removed_name(&self) -> &str {
        self.graph.name(self.removed)
    }

    pub fn into_name(&self) -> &str {
        self.graph.name(self.into)
    }

    /// The fold as an endomorphism of its graph.
    pub fn as_endomorphism(&self) -> VertexMap {
        let images = (0..self.graph.vertex_count())
            .map(|v| if v == self.removed { self.into } else { v })
            .collect();
        VertexMap::new(self.graph.clone(), self.graph.clone(), images)
            .expect("fold images are in range")
    }
}

fn neighborhood_subset(g: &Graph, w: usize, v: usize) -> bool {
    // Sorted-list subset test: N(w) ⊆ N(v).
    let nv = g.neighbors(v);
    g.neighbors(w).iter().all(|u| nv.binary_search(u).is_ok())
}

/// All folds of g: ordered pairs (w, v) with w ≠ v and N(w) ⊆ N(v), in
/// vertex order on w then v.
pub fn find_folds(g: &Graph) -> Vec<Fold> {
    let shared = Arc::new(g.clone());
    let mut folds = Vec::new();
    for w in 0..g.vertex_count() {
        for v in 0..g.vertex_count() {
            if w != v && neighborhood_subset(g, w, v) {
                folds.push(Fold {
                    graph: shared.clone(),
                    removed: w,
                    into: v,
                });
            }
        }
    }
    folds
}

/// A graph is stiff when no two distinct vertices have nested
/// neighborhoods, i.e. it admits no fold.
pub fn is_stiff(g: &Graph) -> bool {
    for w in 0..g.vertex_count() {
        for v in 0..g.vertex_count() {
            if w != v && neighborhood_subset(g, w, v) {
                return false;
            }
        }
    }
    true
}

/// The image of a fold: the induced subgraph without the removed vertex.
pub fn apply_fold(g: &Graph, fold: &Fold) -> Result<Graph> {
    if fold.graph.as_ref() != g {
        return Err(Error::InvalidFold(
            "fold belongs to a different graph".to_string(),
        ));
    }
    let keep: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| v != fold.removed)
        .collect();
    g.induced_subgraph(&keep)
}

/// Order in which `pleat` picks among the available folds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldPolicy {
    /// Always the lowest-index (removed, into) pair: the canonical
    /// deterministic representative.
    First,
    /// Uniform choice at every step from a seeded generator, used to
    /// exercise the fold-order independence of the pleat.
    SeededRandom(u64),
}

/// A dismantling run: the stiff result, the folds taken, and the composed
/// retraction onto it.
#[derive(Debug, Clone)]
pub struct PleatResult {
    pub pleat: Graph,
    pub fold_sequence: Vec<Fold>,
    pub embedding: VertexMap,
}

/// Dismantles g to a stiff graph by repeatedly applying the policy-chosen
/// fold. The isomorphism class of the result is policy-independent; that
/// is a theorem the verification harness checks, not an assumption.
pub fn pleat(g: &Graph, policy: FoldPolicy) -> Result<PleatResult> {
    if g.is_empty() {
        return Err(Error::EmptyGraph("pleat".to_string()));
    }
    let mut rng = match policy {
        FoldPolicy::First => None,
        FoldPolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut current = g.clone();
    let mut fold_sequence = Vec::new();
    let mut embedding = VertexMap::identity(Arc::new(g.clone()));
    loop {
        let folds = find_folds(&current);
        if folds.is_empty() {
            break;
        }
        let chosen = match rng.as_mut() {
            None => folds.into_iter().next().expect("nonempty"),
            Some(rng) => {
                let k = rng.gen_range(0..folds.len());
                folds.into_iter().nth(k).expect("index in range")
            }
        };
        let next = apply_fold(&current, &chosen)?;
        // Step map current -> next: removed goes to into, others keep
        // their names.
        let next_arc = Arc::new(next.clone());
        let images = (0..current.vertex_count())
            .map(|v| {
                let name = if v == chosen.removed() {
                    current.name(chosen.into_vertex())
                } else {
                    current.name(v)
                };
                next_arc.require_index(name).expect("kept vertices persist")
            })
            .collect();
        let step = VertexMap::new(embedding.target().clone(), next_arc, images)?;
        embedding = embedding.compose(&step)?;
        fold_sequence.push(chosen);
        current = next;
    }
    Ok(PleatResult {
        pleat: current,
        fold_sequence,
        embedding,
    })
}

/// Homotopy equivalence of graphs, decided through pleat isomorphism.
/// On success returns the witness pair (G -> H, H -> G) assembled from the
/// retractions, the pleat isomorphism, and the inclusions.
pub fn homotopy_equivalent(g: &Graph, h: &Graph) -> Result<Option<(VertexMap, VertexMap)>> {
    if g.is_empty() || h.is_empty() {
        return Err(Error::EmptyGraph("homotopy_equivalent".to_string()));
    }
    let pg = pleat(g, FoldPolicy::First)?;
    let ph = pleat(h, FoldPolicy::First)?;
    let iso = match are_isomorphic(&pg.pleat, &ph.pleat) {
        Some(iso) => iso,
        None => return Ok(None),
    };
    let include = |pleat_of: &PleatResult, ambient: &Graph| -> Result<VertexMap> {
        let images = pleat_of
            .pleat
            .vertex_names()
            .iter()
            .map(|n| ambient.require_index(n))
            .collect::<Result<Vec<_>>>()?;
        VertexMap::new(
            Arc::new(pleat_of.pleat.clone()),
            Arc::new(ambient.clone()),
            images,
        )
    };
    // ι_H ∘ φ ∘ ρ_G and ι_G ∘ φ⁻¹ ∘ ρ_H.
    let phi = VertexMap::new(
        pg.embedding.target().clone(),
        iso.forward.target().clone(),
        iso.forward.images().to_vec(),
    )?;
    let phi_inv = VertexMap::new(
        ph.embedding.target().clone(),
        iso.backward.target().clone(),
        iso.backward.images().to_vec(),
    )?;
    let to_h = pg.embedding.compose(&phi)?.compose(&include(&ph, h)?)?;
    let to_g = ph.embedding.compose(&phi_inv)?.compose(&include(&pg, g)?)?;
    debug_assert!(to_h.is_morphism() && to_g.is_morphism());
    Ok(Some((to_h, to_g)))
}

/// The vertex-duplication construction: Ĝ adds a twin v* with the same
/// neighborhood as v (looped iff v is), the two inclusions that send v to
/// v or to v*, and the retraction folding v* back.
#[derive(Debug, Clone)]
pub struct DuplicatedVertex {
    pub graph: Graph,
    pub include_original: VertexMap,
    pub include_twin: VertexMap,
    pub retract: VertexMap,
}

pub fn duplicate_vertex(g: &Graph, v: &str) -> Result<DuplicatedVertex> {
    let vi = g.require_index(v)?;
    let mut twin = format!("{v}*");
    while g.index_of(&twin).is_some() {
        twin.push('*');
    }
    let mut builder = crate::graph::GraphBuilder::new();
    for name in g.vertex_names() {
        builder.add_vertex(name.clone())?;
    }
    let ti = builder.add_vertex(twin)?;
    for (u, w) in g.edges() {
        builder.add_edge_by_index(u, w)?;
    }
    for &u in g.neighbors(vi) {
        // v* picks up v's neighbors; v ~ v turns into both v* ~ v and
        // v* ~ v*.
        builder.add_edge_by_index(ti, u)?;
        if u == vi {
            builder.add_edge_by_index(ti, ti)?;
        }
    }
    let hat = Arc::new(builder.build());
    let g_arc = Arc::new(g.clone());

    let include_original =
        VertexMap::new(g_arc.clone(), hat.clone(), (0..g.vertex_count()).collect())?;
    let include_twin = VertexMap::new(
        g_arc.clone(),
        hat.clone(),
        (0..g.vertex_count())
            .map(|u| if u == vi { ti } else { u })
            .collect(),
    )?;
    let retract = VertexMap::new(
        hat.clone(),
        g_arc,
        (0..hat.vertex_count())
            .map(|u| if u == ti { vi } else { u })
            .collect(),
    )?;
    Ok(DuplicatedVertex {
        graph: hat.as_ref().clone(),
        include_original,
        include_twin,
        retract,
    })
}

/// Checks pleat(G × H) ≅ pleat(G) × pleat(H). The statement needs both
/// inputs free of isolated vertices; the product of the pleats is then
/// itself stiff, which is asserted along the way.
pub fn pleat_product_check(g: &Graph, h: &Graph) -> Result<bool> {
    for (graph, _label) in [(g, "left"), (h, "right")] {
        if let Some(&v) = graph.isolated_vertices().first() {
            return Err(Error::IsolatedVertex(graph.name(v).to_string()));
        }
    }
    let lhs = pleat(&crate::graph::product(g, h), FoldPolicy::First)?.pleat;
    let rhs = crate::graph::product(
        &pleat(g, FoldPolicy::First)?.pleat,
        &pleat(h, FoldPolicy::First)?.pleat,
    );
    if !is_stiff(&rhs) {
        return Ok(false);
    }
    Ok(are_isomorphic(&lhs, &rhs).is_some())
}
