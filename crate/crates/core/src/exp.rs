//! Exponential graphs H^G, hom-set enumeration, induced maps, and the
//! product–exponential adjunction.
//!
//! The exponential is implicit by default: `exp_edge` decides adjacency of
//! two set maps without materializing anything. `realize_exponential`
//! builds the explicit graph behind a hard cap, since |V(H)|^|V(G)| grows
//! violently. A set map is looped in H^G exactly when it is a morphism, so
//! the hom-set is the looped vertex set of the exponential.

use std::sync::Arc;

use crate::graph::{product, product_index, Graph, GraphBuilder};
use crate::map::VertexMap;
use crate::{Error, Result};

/// Default vertex cap for `realize_exponential`; everything at desk scale
/// fits comfortably under it.
pub const DEFAULT_REALIZE_CAP: usize = 1_000_000;

fn require_same_hom_set(f: &VertexMap, g: &VertexMap, what: &str) -> Result<()> {
    if !f.same_hom_set(g) {
        return Err(Error::GraphMismatch(format!(
            "{what}: maps do not share source and target"
        )));
    }
    Ok(())
}

fn exp_edge_raw(exponent: &Graph, base: &Graph, f: &[usize], g: &[usize]) -> bool {
    // f ~ g iff every exponent edge u~v (loops included) satisfies
    // f(u) ~ g(v); symmetry of the exponent edge forces the other order.
    exponent
        .edges()
        .all(|(u, v)| base.is_adjacent(f[u], g[v]) && base.is_adjacent(f[v], g[u]))
}

/// Adjacency of two set maps in the exponential graph, without
/// materializing it.
pub fn exp_edge(f: &VertexMap, g: &VertexMap) -> Result<bool> {
    require_same_hom_set(f, g, "exp_edge")?;
    Ok(exp_edge_raw(f.source(), f.target(), f.images(), g.images()))
}

/// An explicitly realized exponential graph base^exponent.
///
/// Vertex `i` of `graph()` is the set map with images `assignment(i)`;
/// vertices are ordered lexicographically in their assignments, with the
/// first exponent vertex most significant.
#[derive(Debug, Clone)]
pub struct ExponentialGraph {
    exponent: Arc<Graph>,
    base: Arc<Graph>,
    graph: Arc<Graph>,
    assignments: Vec<Vec<usize>>,
}

impl ExponentialGraph {
    pub fn exponent(&self) -> &Arc<Graph> {
        &self.exponent
    }

    pub fn base(&self) -> &Arc<Graph> {
        &self.base
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn assignment(&self, vertex: usize) -> &[usize] {
        &self.assignments[vertex]
    }

    /// The set map represented by a realized vertex.
    pub fn vertex_map(&self, vertex: usize) -> VertexMap {
        VertexMap::new(
            self.exponent.clone(),
            self.base.clone(),
            self.assignments[vertex].clone(),
        )
        .expect("assignments are valid by construction")
    }

    /// Realized vertex index of a set map exponent -> base.
    pub fn index_of_map(&self, map: &VertexMap) -> Result<usize> {
        if map.source() != &self.exponent || map.target() != &self.base {
            return Err(Error::GraphMismatch(
                "index_of_map: map does not live in this exponential".to_string(),
            ));
        }
        let radix = self.base.vertex_count();
        let mut index = 0usize;
        for &img in map.images() {
            index = index * radix + img;
        }
        Ok(index)
    }

    /// Indices of the looped vertices, i.e. the graph morphisms.
    pub fn looped_vertices(&self) -> Vec<usize> {
        (0..self.graph.vertex_count())
            .filter(|&v| self.graph.has_loop(v))
            .collect()
    }
}

fn assignment_name(base: &Graph, assignment: &[usize]) -> String {
    // Commas inside vertex names are escaped so the joined name stays an
    // injective encoding of the assignment.
    assignment
        .iter()
        .map(|&i| base.name(i).replace('\\', "\\\\").replace(',', "\\,"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Materializes base^exponent. Fails with the required size when
/// |V(base)|^|V(exponent)| exceeds `cap`.
pub fn realize_exponential(exponent: &Graph, base: &Graph, cap: usize) -> Result<ExponentialGraph> {
    let count = (base.vertex_count() as u128)
        .checked_pow(exponent.vertex_count() as u32)
        .unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::TooLarge {
            required: count,
            cap: cap as u128,
        });
    }
    let count = count as usize;

    let mut assignments = Vec::with_capacity(count);
    let mut current = vec![0usize; exponent.vertex_count()];
    for _ in 0..count {
        assignments.push(current.clone());
        // Odometer step, last exponent vertex fastest.
        for slot in current.iter_mut().rev() {
            *slot += 1;
            if *slot < base.vertex_count() {
                break;
            }
            *slot = 0;
        }
    }

    let mut builder = GraphBuilder::new();
    for a in &assignments {
        builder.add_vertex(assignment_name(base, a))?;
    }
    for i in 0..count {
        for j in i..count {
            if exp_edge_raw(exponent, base, &assignments[i], &assignments[j]) {
                builder.add_edge_by_index(i, j)?;
            }
        }
    }
    Ok(ExponentialGraph {
        exponent: Arc::new(exponent.clone()),
        base: Arc::new(base.clone()),
        graph: Arc::new(builder.build()),
        assignments,
    })
}

/// All graph morphisms g -> h, by backtracking in source vertex order with
/// forward checking against the adjacency of already-assigned neighbors.
/// Output order is lexicographic in the assignments.
pub fn enumerate_homs(g: &Graph, h: &Graph) -> Vec<VertexMap> {
    let source = Arc::new(g.clone());
    let target = Arc::new(h.clone());
    let mut found = Vec::new();
    let mut partial = vec![usize::MAX; g.vertex_count()];
    extend_hom(g, h, &mut partial, 0, &mut |images| {
        found.push(
            VertexMap::new(source.clone(), target.clone(), images.to_vec())
                .expect("backtracking produces valid images"),
        );
    });
    found
}

fn extend_hom(
    g: &Graph,
    h: &Graph,
    partial: &mut Vec<usize>,
    v: usize,
    emit: &mut impl FnMut(&[usize]),
) {
    if v == g.vertex_count() {
        emit(partial);
        return;
    }
    'candidates: for img in 0..h.vertex_count() {
        for &u in g.neighbors(v) {
            if u <= v {
                let assigned = if u == v { img } else { partial[u] };
                if !h.is_adjacent(assigned, img) {
                    continue 'candidates;
                }
            }
        }
        partial[v] = img;
        extend_hom(g, h, partial, v + 1, emit);
        partial[v] = usize::MAX;
    }
}

/// The subgraph of H^G induced by the graph morphisms; every vertex is
/// looped. Built directly from the hom-set so it stays reachable even when
/// the full exponential is not.
pub fn hom_graph(g: &Graph, h: &Graph) -> Graph {
    let homs = enumerate_homs(g, h);
    let mut builder = GraphBuilder::new();
    for f in &homs {
        builder
            .add_vertex(assignment_name(h, f.images()))
            .expect("hom assignments are distinct");
    }
    for i in 0..homs.len() {
        for j in i..homs.len() {
            if exp_edge_raw(g, h, homs[i].images(), homs[j].images()) {
                builder.add_edge_by_index(i, j).expect("in range");
            }
        }
    }
    builder.build()
}

/// phi ∘ f for a morphism phi: H -> K, the induced map H^G -> K^G applied
/// to one vertex. Preserves exponential adjacency.
pub fn postcompose(phi: &VertexMap, f: &VertexMap) -> Result<VertexMap> {
    if !phi.is_morphism() {
        return Err(Error::NotAMorphism(format!("postcompose by {phi}")));
    }
    if f.target() != phi.source() {
        return Err(Error::GraphMismatch(
            "postcompose: map target differs from morphism source".to_string(),
        ));
    }
    f.compose(phi)
}

/// f ∘ psi for a morphism psi: K -> G, the induced map H^G -> H^K applied
/// to one vertex.
pub fn precompose(psi: &VertexMap, f: &VertexMap) -> Result<VertexMap> {
    if !psi.is_morphism() {
        return Err(Error::NotAMorphism(format!("precompose by {psi}")));
    }
    if psi.target() != f.source() {
        return Err(Error::GraphMismatch(
            "precompose: morphism target differs from map source".to_string(),
        ));
    }
    psi.compose(f)
}

/// Transpose of a morphism f: left × right -> base across the cartesian
/// closure adjunction: the morphism left -> base^right sending v to the
/// assignment w -> f(v, w). `exp` must be the realized base^right.
pub fn curry(
    f: &VertexMap,
    left: &Graph,
    right: &Graph,
    exp: &ExponentialGraph,
) -> Result<VertexMap> {
    if exp.exponent().as_ref() != right || exp.base().as_ref() != f.target().as_ref() {
        return Err(Error::GraphMismatch(
            "curry: exponential does not match the factors".to_string(),
        ));
    }
    if f.source().as_ref() != &product(left, right) {
        return Err(Error::GraphMismatch(
            "curry: map source is not the product of the factors".to_string(),
        ));
    }
    if !f.is_morphism() {
        return Err(Error::NotAMorphism(format!("curry of {f}")));
    }
    let radix = exp.base().vertex_count();
    let mut images = Vec::with_capacity(left.vertex_count());
    for v in 0..left.vertex_count() {
        let mut index = 0usize;
        for w in 0..right.vertex_count() {
            index = index * radix + f.apply(product_index(right, v, w));
        }
        images.push(index);
    }
    let curried = VertexMap::new(left.clone(), exp.graph().clone(), images)?;
    debug_assert!(curried.is_morphism());
    Ok(curried)
}

/// Inverse transpose: from a morphism m: L -> base^right recover the
/// morphism L × right -> base.
pub fn uncurry(m: &VertexMap, right: &Graph, exp: &ExponentialGraph) -> Result<VertexMap> {
    if exp.exponent().as_ref() != right || m.target() != exp.graph() {
        return Err(Error::GraphMismatch(
            "uncurry: map does not land in the given exponential".to_string(),
        ));
    }
    if !m.is_morphism() {
        return Err(Error::NotAMorphism(format!("uncurry of {m}")));
    }
    let left = m.source().as_ref();
    let prod = product(left, right);
    let mut images = Vec::with_capacity(prod.vertex_count());
    for v in 0..left.vertex_count() {
        images.extend_from_slice(exp.assignment(m.apply(v)));
    }
    let uncurried = VertexMap::new(prod, exp.base().clone(), images)?;
    debug_assert!(uncurried.is_morphism());
    Ok(uncurried)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, enumerate_graphs, path_graph, Graph};

    pub(crate) fn example_g() -> Graph {
        Graph::from_parts(["0", "1"], &[("0", "0"), ("0", "1")]).unwrap()
    }

    pub(crate) fn example_h() -> Graph {
        Graph::from_parts(
            ["a", "b", "c"],
            &[("a", "a"), ("a", "b"), ("b", "c"), ("c", "c")],
        )
        .unwrap()
    }

    fn abc_path() -> Graph {
        Graph::from_parts(["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn map_string(m: &VertexMap) -> String {
        m.images().iter().map(|&i| m.target().name(i)).collect()
    }

    /// Oracle for hom-sets: filter every set map by the morphism predicate.
    fn homs_by_filtering(g: &Graph, h: &Graph) -> Vec<Vec<usize>> {
        let n = g.vertex_count();
        let radix = h.vertex_count();
        let count = radix.checked_pow(n as u32).unwrap_or(0);
        let mut result = Vec::new();
        for code in 0..count {
            let mut images = vec![0usize; n];
            let mut rest = code;
            for slot in images.iter_mut().rev() {
                *slot = rest % radix;
                rest /= radix;
            }
            let map = VertexMap::new(g.clone(), h.clone(), images.clone()).unwrap();
            if map.is_morphism() {
                result.push(images);
            }
        }
        result
    }

    #[test]
    fn spider_pair_maps_are_adjacent() {
        let g = example_g();
        let h = example_h();
        let f = VertexMap::from_pairs(g.clone(), h.clone(), &[("0", "a"), ("1", "b")]).unwrap();
        let k = VertexMap::from_pairs(g.clone(), h.clone(), &[("0", "a"), ("1", "a")]).unwrap();
        assert!(exp_edge(&f, &k).unwrap());
    }

    #[test]
    fn identity_is_looped_in_the_exponential() {
        let k2 = complete_graph(2).unwrap();
        let id = VertexMap::identity(k2);
        assert!(exp_edge(&id, &id).unwrap());
    }

    #[test]
    fn figure_one_edge_babc_bcba() {
        let c4 = cycle_graph(4).unwrap();
        let h = abc_path();
        let babc = VertexMap::from_pairs(
            c4.clone(),
            h.clone(),
            &[("0", "b"), ("1", "a"), ("2", "b"), ("3", "c")],
        )
        .unwrap();
        let bcba = VertexMap::from_pairs(
            c4.clone(),
            h.clone(),
            &[("0", "b"), ("1", "c"), ("2", "b"), ("3", "a")],
        )
        .unwrap();
        assert!(exp_edge(&babc, &bcba).unwrap());
    }

    #[test]
    fn exp_edge_rejects_mismatched_maps() {
        let f = VertexMap::identity(example_g());
        let g = VertexMap::identity(example_h());
        assert!(exp_edge(&f, &g).is_err());
    }

    #[test]
    fn realized_example_exponential_has_nine_vertices_four_loops() {
        let exp = realize_exponential(&example_g(), &example_h(), DEFAULT_REALIZE_CAP).unwrap();
        assert_eq!(exp.graph().vertex_count(), 9);
        assert_eq!(exp.graph().loop_count(), 4);
        let looped: Vec<String> = exp
            .looped_vertices()
            .iter()
            .map(|&v| exp.graph().name(v).to_string())
            .collect();
        assert_eq!(looped, vec!["a,a", "a,b", "c,b", "c,c"]);
    }

    #[test]
    fn exponential_over_single_looped_vertex() {
        let pt = crate::graph::looped_path_graph(0);
        let exp = realize_exponential(&pt, &pt, 100).unwrap();
        assert_eq!(exp.graph().vertex_count(), 1);
        assert!(exp.graph().has_loop(0));
    }

    #[test]
    fn exponential_with_edgeless_exponent_is_complete_and_looped() {
        let pt = path_graph(0);
        let h = example_h();
        let exp = realize_exponential(&pt, &h, 100).unwrap();
        let n = h.vertex_count();
        assert_eq!(exp.graph().vertex_count(), n);
        // No exponent edges: the adjacency condition is vacuous.
        for i in 0..n {
            for j in 0..n {
                assert!(exp.graph().is_adjacent(i, j));
            }
        }
    }

    #[test]
    fn realize_cap_reports_required_size() {
        let c4 = cycle_graph(4).unwrap();
        let h = example_h();
        match realize_exponential(&c4, &h, 10) {
            Err(Error::TooLarge { required, cap }) => {
                assert_eq!(required, 81);
                assert_eq!(cap, 10);
            }
            other => panic!("expected TooLarge, got {other:?}"),
        }
    }

    #[test]
    fn hom_enumeration_matches_figure_one() {
        let homs = enumerate_homs(&cycle_graph(4).unwrap(), &abc_path());
        let mut names: Vec<String> = homs.iter().map(map_string).collect();
        names.sort();
        let mut expected = vec![
            "babc", "baba", "bcbc", "bcba", "cbab", "abab", "cbcb", "abcb",
        ];
        expected.sort_unstable();
        assert_eq!(names, expected);
    }

    #[test]
    fn hom_enumeration_agrees_with_filtering_oracle() {
        // Frozen counts computed by the all-set-maps oracle.
        let ex = enumerate_homs(&example_g(), &example_h());
        assert_eq!(ex.len(), 4);
        let k23 = enumerate_homs(&complete_graph(2).unwrap(), &complete_graph(3).unwrap());
        assert_eq!(k23.len(), 6);

        for g in enumerate_graphs(2, true).unwrap() {
            for h in enumerate_graphs(2, true).unwrap() {
                let fast: Vec<Vec<usize>> = enumerate_homs(&g, &h)
                    .iter()
                    .map(|m| m.images().to_vec())
                    .collect();
                assert_eq!(
                    fast,
                    homs_by_filtering(&g, &h),
                    "hom sets differ for {g:?} -> {h:?}"
                );
            }
        }
    }

    /// Connected components by union-find, used as an oracle for the
    /// structure of hom graphs.
    pub(crate) fn component_sizes(g: &Graph) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            if parent[v] != v {
                let root = find(parent, parent[v]);
                parent[v] = root;
            }
            parent[v]
        }
        for (u, v) in g.edges() {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
        let mut sizes = std::collections::BTreeMap::new();
        for v in 0..g.vertex_count() {
            *sizes.entry(find(&mut parent, v)).or_insert(0usize) += 1;
        }
        let mut out: Vec<usize> = sizes.into_values().collect();
        out.sort_unstable();
        out
    }

    #[test]
    fn hom_graph_of_c4_p2_splits_into_two_squares() {
        let hg = hom_graph(&cycle_graph(4).unwrap(), &abc_path());
        assert_eq!(hg.vertex_count(), 8);
        assert_eq!(hg.loop_count(), 8);
        assert_eq!(component_sizes(&hg), vec![4, 4]);
    }

    #[test]
    fn hom_graph_into_looped_point_is_looped_point() {
        let pt = crate::graph::looped_path_graph(0);
        let hg = hom_graph(&example_h(), &pt);
        assert_eq!(hg.vertex_count(), 1);
        assert!(hg.has_loop(0));
    }

    #[test]
    fn hom_graph_of_k2_k2_is_two_isolated_looped_maps() {
        let k2 = complete_graph(2).unwrap();
        let hg = hom_graph(&k2, &k2);
        assert_eq!(hg.vertex_count(), 2);
        assert_eq!(hg.loop_count(), 2);
        assert_eq!(hg.edge_count(), 2); // just the two loops
    }

    #[test]
    fn looped_vertices_of_realized_exponential_are_the_homs() {
        for g in enumerate_graphs(2, true).unwrap() {
            for h in enumerate_graphs(2, true).unwrap() {
                let exp = realize_exponential(&g, &h, 10_000).unwrap();
                let looped: Vec<Vec<usize>> = exp
                    .looped_vertices()
                    .iter()
                    .map(|&v| exp.assignment(v).to_vec())
                    .collect();
                let homs: Vec<Vec<usize>> = enumerate_homs(&g, &h)
                    .iter()
                    .map(|m| m.images().to_vec())
                    .collect();
                assert_eq!(looped, homs);
            }
        }
    }

    #[test]
    fn induced_maps_preserve_exponential_edges() {
        // Lemmas on phi_* and psi^*, exercised exhaustively at 2 vertices.
        let graphs: Vec<Graph> = enumerate_graphs(2, true).unwrap().collect();
        for g in &graphs {
            for h in &graphs {
                let homs_gh = enumerate_homs(g, h);
                for k in &graphs {
                    for phi in enumerate_homs(h, k) {
                        for f in &homs_gh {
                            for gg in &homs_gh {
                                if exp_edge(f, gg).unwrap() {
                                    let pf = postcompose(&phi, f).unwrap();
                                    let pg = postcompose(&phi, gg).unwrap();
                                    assert!(exp_edge(&pf, &pg).unwrap());
                                }
                            }
                        }
                    }
                    for psi in enumerate_homs(k, g) {
                        for f in &homs_gh {
                            for gg in &homs_gh {
                                if exp_edge(f, gg).unwrap() {
                                    let pf = precompose(&psi, f).unwrap();
                                    let pg = precompose(&psi, gg).unwrap();
                                    assert!(exp_edge(&pf, &pg).unwrap());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn postcompose_identity_and_constant() {
        let g = example_g();
        let h = example_h();
        let f = VertexMap::from_pairs(g.clone(), h.clone(), &[("0", "a"), ("1", "b")]).unwrap();
        let id = VertexMap::identity(h.clone());
        assert_eq!(postcompose(&id, &f).unwrap(), f);

        let to_loop = VertexMap::constant(h.clone(), h.clone(), 0).unwrap();
        let squashed = postcompose(&to_loop, &f).unwrap();
        assert!(squashed.images().iter().all(|&i| i == 0));
        assert!(exp_edge(&squashed, &squashed).unwrap());

        let not_morphism =
            VertexMap::from_pairs(h.clone(), h.clone(), &[("a", "b"), ("b", "b"), ("c", "b")])
                .unwrap();
        assert!(postcompose(&not_morphism, &f).is_err());
    }

    #[test]
    fn precompose_restricts_along_inclusions() {
        let p1 = path_graph(1);
        let p2 = path_graph(2);
        let include =
            VertexMap::from_pairs(p1.clone(), p2.clone(), &[("0", "0"), ("1", "1")]).unwrap();
        assert!(include.is_morphism());
        let h = abc_path();
        for f in enumerate_homs(&p2, &h) {
            for g in enumerate_homs(&p2, &h) {
                if exp_edge(&f, &g).unwrap() {
                    let rf = precompose(&include, &f).unwrap();
                    let rg = precompose(&include, &g).unwrap();
                    assert!(exp_edge(&rf, &rg).unwrap());
                }
            }
        }
    }

    #[test]
    fn curry_uncurry_round_trip_and_adjunction_counts() {
        let graphs: Vec<Graph> = enumerate_graphs(2, true).unwrap().collect();
        for g in &graphs {
            for h in &graphs {
                let prod = product(g, h);
                for k in &graphs {
                    let exp = realize_exponential(h, k, 10_000).unwrap();
                    let direct = enumerate_homs(&prod, k);
                    let transposed = enumerate_homs(g, exp.graph());
                    // The adjunction bijection, on cardinalities first.
                    assert_eq!(direct.len(), transposed.len());
                    let mut seen = std::collections::HashSet::new();
                    for f in &direct {
                        let curried = curry(f, g, h, &exp).unwrap();
                        assert!(curried.is_morphism());
                        assert!(
                            seen.insert(curried.images().to_vec()),
                            "curry must be injective"
                        );
                        let back = uncurry(&curried, h, &exp).unwrap();
                        assert_eq!(&back, f);
                    }
                }
            }
        }
    }

    #[test]
    fn hostile_vertex_names_do_not_collide_in_exponentials() {
        let tricky = Graph::from_parts(["a,b", "a"], &[("a,b", "a")]).unwrap();
        let exp = realize_exponential(&path_graph(1), &tricky, 100).unwrap();
        assert_eq!(exp.graph().vertex_count(), 4);
        let hg = hom_graph(&path_graph(1), &tricky);
        assert_eq!(hg.vertex_count(), 2);
    }

    #[test]
    fn curry_of_projection_is_constant_at_identity_assignment() {
        let g = example_g();
        let h = example_h();
        let prod = product(&g, &h);
        let mut images = Vec::new();
        for _v in 0..g.vertex_count() {
            for w in 0..h.vertex_count() {
                images.push(w);
            }
        }
        let projection = VertexMap::new(prod, h.clone(), images).unwrap();
        assert!(projection.is_morphism());
        let exp = realize_exponential(&h, &h, 10_000).unwrap();
        let curried = curry(&projection, &g, &h, &exp).unwrap();
        let id_index = exp.index_of_map(&VertexMap::identity(h.clone())).unwrap();
        assert!(curried.images().iter().all(|&i| i == id_index));
    }

    #[test]
    fn curry_of_a_homotopy_is_the_looped_walk_of_its_frames() {
        // The length-1 homotopy from id to (aba) on the path a-b-c, curried
        // over the interval factor, picks out the walk (id, f) in G^G.
        let interval = crate::graph::looped_path_graph(1);
        let p = abc_path();
        let prod = product(&interval, &p);
        let f_images = [0usize, 1, 0]; // a, b, a
        let mut images = Vec::new();
        for k in 0..interval.vertex_count() {
            for (x, &fx) in f_images.iter().enumerate() {
                images.push(if k == 0 { x } else { fx });
            }
        }
        let lambda = VertexMap::new(prod, p.clone(), images).unwrap();
        assert!(lambda.is_morphism());
        let exp = realize_exponential(&p, &p, 10_000).unwrap();
        let curried = curry(&lambda, &interval, &p, &exp).unwrap();
        let id_index = exp.index_of_map(&VertexMap::identity(p.clone())).unwrap();
        let f_index = exp
            .index_of_map(&VertexMap::new(p.clone(), p.clone(), f_images.to_vec()).unwrap())
            .unwrap();
        assert_eq!(curried.images(), &[id_index, f_index]);
        // A looped walk: both frames are morphisms and they are adjacent.
        assert!(exp.graph().has_loop(id_index));
        assert!(exp.graph().has_loop(f_index));
        assert!(exp.graph().is_adjacent(id_index, f_index));
    }
}
