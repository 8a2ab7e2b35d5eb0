//! The fundamental groupoid of a graph.
//!
//! Arrows are rel-endpoint homotopy classes of walks, represented by their
//! unique fully pruned walk; pruned forms of equivalent walks can still
//! differ by spider moves, so class equality is decided by the budgeted
//! walk search. Composition is concatenate-then-prune, the inverse is the
//! reversed walk, and a graph morphism pushes whole classes forward, giving
//! a functor; homotopic morphisms induce naturally isomorphic functors.

use std::sync::Arc;

use crate::graph::Graph;
use crate::homotopy::{are_homotopic, spider_decompose};
use crate::map::VertexMap;
use crate::walk::{walks_equivalent_with, Walk};
use crate::{Equivalence, Error, Result, SearchLimits};

/// A groupoid arrow: an equivalence class of walks, held as its fully
/// pruned representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidArrow {
    representative: Walk,
}

impl GroupoidArrow {
    pub fn representative(&self) -> &Walk {
        &self.representative
    }

    pub fn graph(&self) -> &Arc<Graph> {
        self.representative.graph()
    }

    pub fn source(&self) -> usize {
        self.representative.first()
    }

    pub fn target(&self) -> usize {
        self.representative.last()
    }

    pub fn source_name(&self) -> &str {
        self.graph().name(self.source())
    }

    pub fn target_name(&self) -> &str {
        self.graph().name(self.target())
    }

    pub fn is_identity(&self) -> bool {
        self.representative.is_constant()
    }
}

/// The class of a walk.
pub fn arrow(w: &Walk) -> GroupoidArrow {
    GroupoidArrow {
        representative: w.prune_fully(),
    }
}

/// The identity arrow at a vertex: the constant walk.
pub fn identity_arrow(g: &Graph, v: &str) -> Result<GroupoidArrow> {
    let vi = g.require_index(v)?;
    Ok(GroupoidArrow {
        representative: Walk::new(Arc::new(g.clone()), vec![vi])?,
    })
}

/// Concatenation followed by full pruning. Requires t(a) = s(b).
pub fn compose_arrows(a: &GroupoidArrow, b: &GroupoidArrow) -> Result<GroupoidArrow> {
    let joined = a.representative.concat(&b.representative)?;
    Ok(arrow(&joined))
}

/// The reversed representative; composing with it prunes to the identity.
pub fn invert_arrow(a: &GroupoidArrow) -> GroupoidArrow {
    GroupoidArrow {
        representative: a.representative.reversed(),
    }
}

/// Class equality of two arrows, up to the padding budget.
pub fn arrows_equivalent(
    a: &GroupoidArrow,
    b: &GroupoidArrow,
    pad_budget: usize,
) -> Result<Equivalence> {
    crate::walk::walks_equivalent(&a.representative, &b.representative, pad_budget)
}

/// The functor Π(phi) applied to one arrow: map the representative
/// pointwise, then prune.
pub fn induced_functor(phi: &VertexMap, a: &GroupoidArrow) -> Result<GroupoidArrow> {
    if !phi.is_morphism() {
        return Err(Error::NotAMorphism(format!("{phi}")));
    }
    if phi.source() != a.graph() {
        return Err(Error::GraphMismatch(
            "induced_functor: arrow lives in a different graph".to_string(),
        ));
    }
    let images: Vec<usize> = a
        .representative
        .vertices()
        .iter()
        .map(|&v| phi.apply(v))
        .collect();
    let mapped = Walk::new(phi.target().clone(), images)?;
    Ok(arrow(&mapped))
}

/// The natural-isomorphism component at v for a pair of homotopic
/// morphisms phi ≃ psi: G -> H without isolated vertices on either side.
///
/// For a single spider move at x the component is the identity away from
/// x; at x it is the two-step walk through the image of the lowest-order
/// neighbor of x (or through phi(x) itself when x is its own lowest
/// neighbor, i.e. looped). A longer homotopy composes the per-move
/// components along the spider chain.
pub fn natural_iso_component(phi: &VertexMap, psi: &VertexMap, v: &str) -> Result<GroupoidArrow> {
    if !phi.same_hom_set(psi) {
        return Err(Error::GraphMismatch(
            "natural_iso_component: maps do not share source and target".to_string(),
        ));
    }
    for (graph, side) in [(phi.source(), "source"), (phi.target(), "target")] {
        if let Some(&u) = graph.isolated_vertices().first() {
            let _ = side;
            return Err(Error::IsolatedVertex(graph.name(u).to_string()));
        }
    }
    let vi = phi.source().require_index(v)?;
    let witness = are_homotopic(phi, psi)?.ok_or(Error::NotHomotopic)?;

    // Expand the witness into one chain of spider moves.
    let mut chain: Vec<VertexMap> = vec![witness.first().clone()];
    for pair in witness.frames().windows(2) {
        for step in spider_decompose(&pair[0], &pair[1])?.into_iter().skip(1) {
            chain.push(step);
        }
    }

    let target = phi.target();
    let mut component = GroupoidArrow {
        representative: Walk::new(target.clone(), vec![phi.apply(vi)])?,
    };
    for pair in chain.windows(2) {
        let (before, after) = (&pair[0], &pair[1]);
        if before.apply(vi) == after.apply(vi) {
            continue;
        }
        // v is the moved vertex of this spider move.
        let witness_neighbor = *phi
            .source()
            .neighbors(vi)
            .first()
            .expect("no isolated vertices");
        let step_walk = if witness_neighbor == vi {
            Walk::new(
                target.clone(),
                vec![before.apply(vi), before.apply(vi), after.apply(vi)],
            )?
        } else {
            Walk::new(
                target.clone(),
                vec![
                    before.apply(vi),
                    before.apply(witness_neighbor),
                    after.apply(vi),
                ],
            )?
        };
        component = compose_arrows(&component, &arrow(&step_walk))?;
    }
    Ok(component)
}

/// Bounded probe of the isotropy group at a basepoint.
#[derive(Debug, Clone)]
pub struct GroupProbe {
    /// One fully pruned representative per discovered class, ordered by
    /// (length, vertex sequence).
    pub classes: Vec<GroupoidArrow>,
    /// True when every class already has a representative of length at
    /// most max_len - 2, i.e. raising the budget by one step discovered
    /// nothing new.
    pub saturated: bool,
    /// Pairs whose comparison exhausted its budget; such pairs are kept
    /// in distinct classes rather than merged.
    pub inconclusive_pairs: u64,
    /// Number of non-prunable closed walks enumerated.
    pub walks_considered: u64,
}

/// Enumerates the non-prunable closed walks at `base` up to `max_len` and
/// quotients them by rel-endpoint equivalence within the padding budget.
/// This is an explicitly bounded enumeration, not a presentation
/// algorithm; saturation is reported, never assumed.
pub fn fundamental_group_probe(
    g: &Graph,
    base: &str,
    max_len: usize,
    limits: &SearchLimits,
) -> Result<GroupProbe> {
    let b = g.require_index(base)?;
    let shared = Arc::new(g.clone());

    // Non-prunable walks never step back onto the vertex before last, so
    // enumerate with that constraint instead of filtering all walks.
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut path = vec![b];
    enumerate_nonprunable(g, b, max_len, &mut path, &mut found, limits.visited_cap)?;
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let walks: Vec<Walk> = found
        .iter()
        .map(|vs| Walk::new(shared.clone(), vs.clone()))
        .collect::<Result<Vec<_>>>()?;

    // Union-find quotient; inconclusive comparisons leave classes split.
    let mut class: Vec<usize> = (0..walks.len()).collect();
    fn find(class: &mut Vec<usize>, i: usize) -> usize {
        if class[i] != i {
            let root = find(class, class[i]);
            class[i] = root;
        }
        class[i]
    }
    let mut inconclusive = 0u64;
    for i in 0..walks.len() {
        for j in (i + 1)..walks.len() {
            if walks[i].parity() != walks[j].parity() {
                continue;
            }
            if find(&mut class, i) == find(&mut class, j) {
                continue;
            }
            match walks_equivalent_with(&walks[i], &walks[j], limits)? {
                Equivalence::Equivalent => {
                    let (ri, rj) = (find(&mut class, i), find(&mut class, j));
                    // Keep the earliest representative as the root.
                    class[ri.max(rj)] = ri.min(rj);
                }
                Equivalence::NotEquivalent => {}
                Equivalence::Inconclusive => inconclusive += 1,
            }
        }
    }

    let mut roots: Vec<usize> = (0..walks.len())
        .filter(|&i| find(&mut class, i) == i)
        .collect();
    roots.sort_unstable();
    let classes: Vec<GroupoidArrow> = roots
        .iter()
        .map(|&i| GroupoidArrow {
            representative: walks[i].clone(),
        })
        .collect();
    let saturated = classes
        .iter()
        .all(|c| c.representative.len() + 2 <= max_len);
    Ok(GroupProbe {
        classes,
        saturated,
        inconclusive_pairs: inconclusive,
        walks_considered: walks.len() as u64,
    })
}

fn enumerate_nonprunable(
    g: &Graph,
    base: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    if *path.last().expect("nonempty") == base {
        if found.len() >= cap {
            return Err(Error::TooLarge {
                required: found.len() as u128 + 1,
                cap: cap as u128,
            });
        }
        found.push(path.clone());
    }
    if path.len() > max_len {
        return Ok(());
    }
    let last = *path.last().expect("nonempty");
    for &next in g.neighbors(last) {
        if path.len() >= 2 && next == path[path.len() - 2] {
            continue;
        }
        path.push(next);
        enumerate_nonprunable(g, base, max_len, path, found, cap)?;
        path.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, Graph};
    use crate::pleat::{find_folds, FoldPolicy};
    use crate::walk::walks_equivalent;

    fn pendant_square() -> Graph {
        Graph::from_parts(
            ["d", "a", "e", "c", "b"],
            &[("d", "a"), ("a", "c"), ("c", "e"), ("e", "d"), ("c", "b")],
        )
        .unwrap()
    }

    #[test]
    fn an_arrow_cancels_with_its_inverse() {
        let g = pendant_square();
        let a = arrow(&Walk::from_names(g.clone(), &["a", "c", "b"]).unwrap());
        let id = compose_arrows(&a, &invert_arrow(&a)).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.source_name(), "a");
    }

    #[test]
    fn identities_are_neutral() {
        let g = pendant_square();
        let a = arrow(&Walk::from_names(g.clone(), &["a", "c", "e"]).unwrap());
        let id_a = identity_arrow(&g, "a").unwrap();
        let id_e = identity_arrow(&g, "e").unwrap();
        assert_eq!(compose_arrows(&id_a, &a).unwrap(), a);
        assert_eq!(compose_arrows(&a, &id_e).unwrap(), a);
        assert!(identity_arrow(&g, "nope").is_err());
    }

    #[test]
    fn c5_loops_compose_to_the_identity() {
        let c5 = cycle_graph(5).unwrap();
        let ccw = arrow(&Walk::from_names(c5.clone(), &["0", "4", "3", "2", "1", "0"]).unwrap());
        let cw = arrow(&Walk::from_names(c5, &["0", "1", "2", "3", "4", "0"]).unwrap());
        let composite = compose_arrows(&ccw, &cw).unwrap();
        assert!(composite.is_identity());
        assert_eq!(composite.source_name(), "0");
    }

    #[test]
    fn composition_needs_matching_endpoints() {
        let g = pendant_square();
        let a = arrow(&Walk::from_names(g.clone(), &["a", "c"]).unwrap());
        assert!(compose_arrows(&a, &a).is_err());
    }

    #[test]
    fn groupoid_axioms_hold_on_sampled_triples() {
        let g = pendant_square();
        let a = arrow(&Walk::from_names(g.clone(), &["a", "c", "b"]).unwrap());
        let b = arrow(&Walk::from_names(g.clone(), &["b", "c", "e"]).unwrap());
        let c = arrow(&Walk::from_names(g.clone(), &["e", "d", "a"]).unwrap());
        let left = compose_arrows(&compose_arrows(&a, &b).unwrap(), &c).unwrap();
        let right = compose_arrows(&a, &compose_arrows(&b, &c).unwrap()).unwrap();
        assert_eq!(
            arrows_equivalent(&left, &right, 4).unwrap(),
            Equivalence::Equivalent
        );
    }

    #[test]
    fn induced_functor_examples() {
        let g = pendant_square();
        let id = VertexMap::identity(Arc::new(g.clone()));
        let a = arrow(&Walk::from_names(g.clone(), &["a", "c", "b"]).unwrap());
        assert_eq!(induced_functor(&id, &a).unwrap(), a);

        // A fold collapses walks: push the 4-cycle loop of C_4 through
        // the fold endomorphism and watch it contract.
        let c4 = cycle_graph(4).unwrap();
        let fold = find_folds(&c4).into_iter().next().unwrap();
        let endo = fold.as_endomorphism();
        let around = arrow(&Walk::from_names(c4.clone(), &["0", "1", "2", "3", "0"]).unwrap());
        let collapsed = induced_functor(&endo, &around).unwrap();
        assert!(collapsed.is_identity());

        let not_morphism = VertexMap::constant(Arc::new(c4.clone()), Arc::new(c4), 0).unwrap();
        assert!(induced_functor(&not_morphism, &a).is_err());
    }

    #[test]
    fn induced_functor_respects_composition_and_structure() {
        let g = pendant_square();
        let pleat_run = crate::pleat::pleat(&g, FoldPolicy::First).unwrap();
        let rho = pleat_run.embedding.clone();
        let a = arrow(&Walk::from_names(g.clone(), &["a", "c", "b"]).unwrap());
        let b = arrow(&Walk::from_names(g.clone(), &["b", "c", "e"]).unwrap());
        // Functors preserve composition and identities.
        let lhs = induced_functor(&rho, &compose_arrows(&a, &b).unwrap()).unwrap();
        let rhs = compose_arrows(
            &induced_functor(&rho, &a).unwrap(),
            &induced_functor(&rho, &b).unwrap(),
        )
        .unwrap();
        assert_eq!(
            arrows_equivalent(&lhs, &rhs, 4).unwrap(),
            Equivalence::Equivalent
        );
        let id_arrow = identity_arrow(&g, "c").unwrap();
        assert!(induced_functor(&rho, &id_arrow).unwrap().is_identity());
        // Inverses map to inverses.
        let inv = induced_functor(&rho, &invert_arrow(&a)).unwrap();
        assert_eq!(inv, invert_arrow(&induced_functor(&rho, &a).unwrap()));
    }

    #[test]
    fn functor_composition_is_pointwise() {
        let c4 = cycle_graph(4).unwrap();
        let fold = find_folds(&c4).into_iter().next().unwrap();
        let endo = fold.as_endomorphism();
        let a = arrow(&Walk::from_names(c4, &["0", "1", "2"]).unwrap());
        let twice = endo.compose(&endo).unwrap();
        let composed = induced_functor(&twice, &a).unwrap();
        let stepwise = induced_functor(&endo, &induced_functor(&endo, &a).unwrap()).unwrap();
        assert_eq!(composed, stepwise);
    }

    #[test]
    fn natural_iso_component_of_the_identity_homotopy() {
        let g = pendant_square();
        let id = VertexMap::identity(Arc::new(g.clone()));
        for v in g.vertex_names() {
            let comp = natural_iso_component(&id, &id, v).unwrap();
            assert!(comp.is_identity());
        }
    }

    #[test]
    fn natural_iso_component_of_a_single_spider_move() {
        // id ≃ (aba) on the path a-b-c; the component at c runs through b.
        let p = Graph::from_parts(["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let id = VertexMap::identity(Arc::new(p.clone()));
        let aba =
            VertexMap::from_pairs(p.clone(), p.clone(), &[("a", "a"), ("b", "b"), ("c", "a")])
                .unwrap();
        let comp = natural_iso_component(&id, &aba, "c").unwrap();
        assert_eq!(comp.representative().vertex_names(), vec!["c", "b", "a"]);
        let untouched = natural_iso_component(&id, &aba, "a").unwrap();
        assert!(untouched.is_identity());
    }

    #[test]
    fn naturality_squares_commute() {
        let p = Graph::from_parts(["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let id = VertexMap::identity(Arc::new(p.clone()));
        let aba =
            VertexMap::from_pairs(p.clone(), p.clone(), &[("a", "a"), ("b", "b"), ("c", "a")])
                .unwrap();
        // Arrows of bounded length in the path.
        let arrows = [
            arrow(&Walk::from_names(p.clone(), &["a", "b"]).unwrap()),
            arrow(&Walk::from_names(p.clone(), &["a", "b", "c"]).unwrap()),
            arrow(&Walk::from_names(p.clone(), &["c", "b"]).unwrap()),
            arrow(&Walk::from_names(p.clone(), &["b", "c"]).unwrap()),
        ];
        for alpha in &arrows {
            let eta_u = natural_iso_component(&id, &aba, p.name(alpha.source())).unwrap();
            let eta_v = natural_iso_component(&id, &aba, p.name(alpha.target())).unwrap();
            let through_phi =
                compose_arrows(&induced_functor(&id, alpha).unwrap(), &eta_v).unwrap();
            let through_psi =
                compose_arrows(&eta_u, &induced_functor(&aba, alpha).unwrap()).unwrap();
            assert_eq!(
                walks_equivalent(
                    through_phi.representative(),
                    through_psi.representative(),
                    4
                )
                .unwrap(),
                Equivalence::Equivalent
            );
        }
    }

    #[test]
    fn natural_iso_components_compose_along_longer_homotopies() {
        // abc and cba are two spider moves apart on the path a-b-c; the
        // components still make every naturality square commute.
        let p = Graph::from_parts(["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let id = VertexMap::identity(Arc::new(p.clone()));
        let cba =
            VertexMap::from_pairs(p.clone(), p.clone(), &[("a", "c"), ("b", "b"), ("c", "a")])
                .unwrap();
        // Two vertices move, so the spider chain has at least two steps.
        assert_eq!(id.difference(&cba).len(), 2);
        assert!(crate::homotopy::are_homotopic(&id, &cba).unwrap().is_some());
        for v in p.vertex_names() {
            let comp = natural_iso_component(&id, &cba, v).unwrap();
            assert_eq!(comp.source(), id.apply(p.index_of(v).unwrap()));
            assert_eq!(comp.target(), cba.apply(p.index_of(v).unwrap()));
        }
        let arrows = [
            arrow(&Walk::from_names(p.clone(), &["a", "b", "c"]).unwrap()),
            arrow(&Walk::from_names(p.clone(), &["b", "a"]).unwrap()),
        ];
        for alpha in &arrows {
            let eta_u = natural_iso_component(&id, &cba, p.name(alpha.source())).unwrap();
            let eta_v = natural_iso_component(&id, &cba, p.name(alpha.target())).unwrap();
            let through_phi =
                compose_arrows(&induced_functor(&id, alpha).unwrap(), &eta_v).unwrap();
            let through_psi =
                compose_arrows(&eta_u, &induced_functor(&cba, alpha).unwrap()).unwrap();
            assert_eq!(
                walks_equivalent(
                    through_phi.representative(),
                    through_psi.representative(),
                    4
                )
                .unwrap(),
                Equivalence::Equivalent
            );
        }
    }

    #[test]
    fn natural_iso_component_validates_inputs() {
        let with_dust = Graph::from_parts(["a", "b", "x"], &[("a", "b")]).unwrap();
        let id = VertexMap::identity(Arc::new(with_dust.clone()));
        assert!(matches!(
            natural_iso_component(&id, &id, "a"),
            Err(Error::IsolatedVertex(_))
        ));

        let c5 = cycle_graph(5).unwrap();
        let id = VertexMap::identity(Arc::new(c5.clone()));
        let rotate = VertexMap::new(
            id.source().clone(),
            id.source().clone(),
            vec![1, 2, 3, 4, 0],
        )
        .unwrap();
        assert!(matches!(
            natural_iso_component(&id, &rotate, "0"),
            Err(Error::NotHomotopic)
        ));
    }

    #[test]
    fn probe_of_k2_finds_only_the_identity() {
        let k2 = complete_graph(2).unwrap();
        let probe = fundamental_group_probe(&k2, "0", 8, &SearchLimits::default()).unwrap();
        assert_eq!(probe.classes.len(), 1);
        assert!(probe.classes[0].is_identity());
        assert!(probe.saturated);
        assert_eq!(probe.inconclusive_pairs, 0);
    }

    #[test]
    fn probe_of_c5_sees_generator_and_inverse() {
        let c5 = cycle_graph(5).unwrap();
        let probe = fundamental_group_probe(&c5, "0", 10, &SearchLimits::default()).unwrap();
        assert!(probe.classes.len() >= 3);
        assert!(probe.classes.iter().any(|c| c.is_identity()));
        let names: Vec<Vec<&str>> = probe
            .classes
            .iter()
            .map(|c| c.representative().vertex_names())
            .collect();
        assert!(names.contains(&vec!["0", "1", "2", "3", "4", "0"]));
        assert!(names.contains(&vec!["0", "4", "3", "2", "1", "0"]));
        // The squares of the generators show up at length 10, so the
        // count is not saturated there.
        assert!(!probe.saturated);
    }

    #[test]
    fn probe_of_a_looped_point_splits_by_parity() {
        // The constant walk and the single loop step have different
        // parities, and parity survives pruning and Δ, so the loop class
        // is genuinely distinct from the identity class.
        let pt = crate::graph::looped_path_graph(0);
        let probe = fundamental_group_probe(&pt, "0", 6, &SearchLimits::default()).unwrap();
        assert_eq!(probe.classes.len(), 2);
        assert!(probe.classes[0].is_identity());
        assert_eq!(
            probe.classes[1].representative().vertex_names(),
            vec!["0", "0"]
        );
        assert_eq!(probe.inconclusive_pairs, 0);
    }

    #[test]
    fn probe_validates_the_basepoint() {
        let k2 = complete_graph(2).unwrap();
        assert!(fundamental_group_probe(&k2, "7", 4, &SearchLimits::default()).is_err());
    }
}
