//! Finite undirected graphs with optional loops and at most one edge per
//! unordered vertex pair.
//!
//! Vertex order is insertion order and is stable; every enumeration and
//! tie-break in the crate cites this order so results are reproducible
//! bit for bit. A looped vertex counts as its own neighbor.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::{Error, Result};

/// An immutable finite undirected graph.
#[derive(Clone)]
pub struct Graph {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
    /// Sorted neighbor lists; `v` appears in its own list iff `v` is looped.
    neighbors: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.neighbors == other.neighbors
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.names.hash(state);
        self.neighbors.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ vertices: {:?}, edges: [", self.names)?;
        for (k, (u, v)) in self.edges().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}--{}", self.names[u], self.names[v])?;
        }
        write!(f, "] }}")
    }
}

impl Graph {
    /// The graph with no vertices. Permitted as a value; operations whose
    /// context assumes nonempty graphs reject it explicitly.
    pub fn empty() -> Graph {
        Graph {
            names: Vec::new(),
            lookup: HashMap::new(),
            neighbors: Vec::new(),
        }
    }

    pub fn from_parts<S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
        edges: &[(&str, &str)],
    ) -> Result<Graph> {
        let mut builder = GraphBuilder::new();
        for v in vertices {
            builder.add_vertex(v)?;
        }
        for (u, v) in edges {
            builder.add_edge(u, v)?;
        }
        Ok(builder.build())
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn require_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.is_adjacent(v, v)
    }

    /// N(v): sorted neighbor indices; contains `v` itself iff `v` is looped.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// N(v) by name.
    pub fn neighborhood(&self, v: &str) -> Result<Vec<&str>> {
        let i = self.require_index(v)?;
        Ok(self.neighbors[i].iter().map(|&u| self.name(u)).collect())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.neighbors[v].is_empty()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.is_isolated(v))
            .collect()
    }

    /// Edges as index pairs `(u, v)` with `u <= v`, in lexicographic order.
    /// Loops appear as `(v, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u <= v).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn loop_count(&self) -> usize {
        (0..self.vertex_count())
            .filter(|&v| self.has_loop(v))
            .count()
    }

    /// Restriction of the adjacency to the given vertices. The result keeps
    /// the original vertex order regardless of the order of `keep`.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Graph> {
        let mut chosen = BTreeSet::new();
        for &v in keep {
            if v >= self.vertex_count() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
            chosen.insert(v);
        }
        let mut builder = GraphBuilder::new();
        let mut relabel = HashMap::new();
        for &v in &chosen {
            relabel.insert(v, builder.add_vertex(self.names[v].clone())?);
        }
        for &v in &chosen {
            for &u in &self.neighbors[v] {
                if u >= v {
                    if let Some(&iu) = relabel.get(&u) {
                        builder.add_edge_by_index(relabel[&v], iu)?;
                    }
                }
            }
        }
        Ok(builder.build())
    }

    pub fn induced_subgraph_by_names(&self, keep: &[&str]) -> Result<Graph> {
        let idx = keep
            .iter()
            .map(|n| self.require_index(n))
            .collect::<Result<Vec<_>>>()?;
        self.induced_subgraph(&idx)
    }
}

/// Incremental construction; graphs are immutable once built.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex<S: Into<String>>(&mut self, name: S) -> Result<usize> {
        let name = name.into();
        if self.lookup.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = self.names.len();
        self.lookup.insert(name.clone(), id);
        self.names.push(name);
        Ok(id)
    }

    pub fn add_edge_by_index(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.names.len() {
            return Err(Error::UnknownVertex(format!("#{u}")));
        }
        if v >= self.names.len() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<()> {
        let ui = *self
            .lookup
            .get(u)
            .ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
        let vi = *self
            .lookup
            .get(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
        self.add_edge_by_index(ui, vi)
    }

    pub fn build(self) -> Graph {
        let mut neighbors = vec![Vec::new(); self.names.len()];
        for &(u, v) in &self.edges {
            neighbors[u].push(v);
            if u != v {
                neighbors[v].push(u);
            }
        }
        for ns in &mut neighbors {
            ns.sort_unstable();
        }
        Graph {
            names: self.names,
            lookup: self.lookup,
            neighbors,
        }
    }
}

/// The categorical product: pairs are adjacent iff both coordinates are.
/// Vertex order is lexicographic in the factor orders; a pair is looped
/// iff both coordinates are looped.
pub fn product(g: &Graph, h: &Graph) -> Graph {
    let mut builder = GraphBuilder::new();
    for v in 0..g.vertex_count() {
        for w in 0..h.vertex_count() {
            builder
                .add_vertex(format!("({},{})", g.name(v), h.name(w)))
                .expect("product names are unique");
        }
    }
    let pair = |v: usize, w: usize| v * h.vertex_count() + w;
    for v1 in 0..g.vertex_count() {
        for &v2 in g.neighbors(v1) {
            for w1 in 0..h.vertex_count() {
                for &w2 in h.neighbors(w1) {
                    builder
                        .add_edge_by_index(pair(v1, w1), pair(v2, w2))
                        .expect("product indices in range");
                }
            }
        }
    }
    builder.build()
}

/// Index of the product vertex `(v, w)` in `product(g, h)`.
pub fn product_index(h: &Graph, v: usize, w: usize) -> usize {
    v * h.vertex_count() + w
}

/// Disjoint union, with `L:`/`R:` prefixes to keep vertex names distinct.
pub fn coproduct(g: &Graph, h: &Graph) -> Graph {
    let mut builder = GraphBuilder::new();
    for v in 0..g.vertex_count() {
        builder
            .add_vertex(format!("L:{}", g.name(v)))
            .expect("prefixed names are unique");
    }
    for w in 0..h.vertex_count() {
        builder
            .add_vertex(format!("R:{}", h.name(w)))
            .expect("prefixed names are unique");
    }
    for (u, v) in g.edges() {
        builder.add_edge_by_index(u, v).expect("in range");
    }
    let offset = g.vertex_count();
    for (u, v) in h.edges() {
        builder
            .add_edge_by_index(offset + u, offset + v)
            .expect("in range");
    }
    builder.build()
}

/// P_n: the path graph on n+1 vertices `0..=n`.
pub fn path_graph(n: usize) -> Graph {
    let mut builder = GraphBuilder::new();
    for i in 0..=n {
        builder.add_vertex(i.to_string()).expect("unique");
    }
    for i in 0..n {
        builder.add_edge_by_index(i, i + 1).expect("in range");
    }
    builder.build()
}

/// I_n^l: the path graph on n+1 vertices with a loop at every vertex —
/// the homotopy interval.
pub fn looped_path_graph(n: usize) -> Graph {
    let mut builder = GraphBuilder::new();
    for i in 0..=n {
        builder.add_vertex(i.to_string()).expect("unique");
        builder.add_edge_by_index(i, i).expect("in range");
    }
    for i in 0..n {
        builder.add_edge_by_index(i, i + 1).expect("in range");
    }
    builder.build()
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle_graph requires n >= 3, got {n}"
        )));
    }
    let mut builder = GraphBuilder::new();
    for i in 0..n {
        builder.add_vertex(i.to_string())?;
    }
    for i in 0..n {
        builder.add_edge_by_index(i, (i + 1) % n)?;
    }
    Ok(builder.build())
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter(
            "complete_graph requires n >= 1".to_string(),
        ));
    }
    let mut builder = GraphBuilder::new();
    for i in 0..n {
        builder.add_vertex(i.to_string())?;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            builder.add_edge_by_index(i, j)?;
        }
    }
    Ok(builder.build())
}

/// Hard cap on `enumerate_graphs`; 2^(15+6) labeled graphs on 6 vertices
/// is already the edge of what the harness can grind through.
pub const MAX_ENUMERATED_VERTICES: usize = 6;

/// All labeled graphs on 1..=max_vertices vertices, in a fixed order:
/// vertex counts ascending, then edge bitmasks ascending, where the bit
/// slots are the unordered pairs in lexicographic order followed by the
/// loops (when `with_loops`).
pub fn enumerate_graphs(max_vertices: usize, with_loops: bool) -> Result<GraphEnumeration> {
    if max_vertices == 0 || max_vertices > MAX_ENUMERATED_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "enumerate_graphs supports 1..={MAX_ENUMERATED_VERTICES} vertices, got {max_vertices}"
        )));
    }
    Ok(GraphEnumeration {
        max_vertices,
        with_loops,
        n: 1,
        mask: 0,
        slots: slots(1, with_loops),
    })
}

fn slots(n: usize, with_loops: bool) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            slots.push((i, j));
        }
    }
    if with_loops {
        for i in 0..n {
            slots.push((i, i));
        }
    }
    slots
}

/// Deterministic stream of all labeled graphs up to a vertex cap.
pub struct GraphEnumeration {
    max_vertices: usize,
    with_loops: bool,
    n: usize,
    mask: u64,
    slots: Vec<(usize, usize)>,
}

impl Iterator for GraphEnumeration {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.n > self.max_vertices {
            return None;
        }
        let mut builder = GraphBuilder::new();
        for i in 0..self.n {
            builder.add_vertex(i.to_string()).expect("unique");
        }
        for (bit, &(u, v)) in self.slots.iter().enumerate() {
            if self.mask >> bit & 1 == 1 {
                builder.add_edge_by_index(u, v).expect("in range");
            }
        }
        self.mask += 1;
        if self.mask >> self.slots.len() == 1 {
            self.mask = 0;
            self.n += 1;
            self.slots = slots(self.n, self.with_loops);
        }
        Some(builder.build())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;
    use crate::map::VertexMap;

    /// The chain a(looped) - b - c(looped) used across the neighborhood
    /// and subgraph examples.
    fn example_h() -> Graph {
        Graph::from_parts(
            ["a", "b", "c"],
            &[("a", "a"), ("a", "b"), ("b", "c"), ("c", "c")],
        )
        .unwrap()
    }

    #[test]
    fn families_match_their_definitions() {
        let p1 = path_graph(1);
        assert_eq!(p1.vertex_count(), 2);
        assert_eq!(p1.edge_count(), 1);
        assert!(p1.is_adjacent(0, 1));

        let i0 = looped_path_graph(0);
        assert_eq!(i0.vertex_count(), 1);
        assert!(i0.has_loop(0));

        let i2 = looped_path_graph(2);
        assert_eq!(i2.vertex_count(), 3);
        let mut edges: Vec<_> = i2
            .edges()
            .map(|(u, v)| (i2.name(u).to_string(), i2.name(v).to_string()))
            .collect();
        edges.sort();
        assert_eq!(
            edges,
            vec![
                ("0".into(), "0".into()),
                ("0".into(), "1".into()),
                ("1".into(), "1".into()),
                ("1".into(), "2".into()),
                ("2".into(), "2".into()),
            ] as Vec<(String, String)>
        );

        assert!(cycle_graph(2).is_err());
        assert_eq!(cycle_graph(5).unwrap().edge_count(), 5);
        assert_eq!(complete_graph(4).unwrap().edge_count(), 6);
        assert!(complete_graph(0).is_err());
    }

    #[test]
    fn neighborhoods_follow_the_looped_convention() {
        let p2 = path_graph(2);
        // N(c) = {b} = N(a) in the fold example; here vertices are 0,1,2.
        assert_eq!(p2.neighborhood("2").unwrap(), vec!["1"]);
        assert_eq!(p2.neighborhood("0").unwrap(), vec!["1"]);

        let h = example_h();
        assert_eq!(h.neighborhood("a").unwrap(), vec!["a", "b"]);

        let lonely = Graph::from_parts(["x", "y"], &[("y", "y")]).unwrap();
        assert!(lonely.neighborhood("x").unwrap().is_empty());
        assert!(lonely.is_isolated(0));
        assert!(!lonely.is_isolated(1));
        assert!(lonely.neighborhood("z").is_err());
    }

    #[test]
    fn product_of_looped_pair_with_k2_is_a_four_cycle() {
        // Two adjacent looped vertices times K_2.
        let g = Graph::from_parts(["0", "1"], &[("0", "0"), ("1", "1"), ("0", "1")]).unwrap();
        let h = Graph::from_parts(["a", "b"], &[("a", "b")]).unwrap();
        let p = product(&g, &h);
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.edge_count(), 4);
        assert_eq!(p.loop_count(), 0);
        assert!(are_isomorphic(&p, &cycle_graph(4).unwrap()).is_some());
    }

    #[test]
    fn product_with_single_looped_vertex_is_identity_up_to_iso() {
        let g = example_h();
        let pt = looped_path_graph(0);
        let p = product(&g, &pt);
        assert!(are_isomorphic(&p, &g).is_some());
    }

    #[test]
    fn k2_times_k2_is_two_disjoint_edges() {
        let k2 = complete_graph(2).unwrap();
        let p = product(&k2, &k2);
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.loop_count(), 0);
        // Frozen from the definition: (0,0)-(1,1) and (0,1)-(1,0).
        let expected = [("(0,0)", "(1,1)"), ("(0,1)", "(1,0)")];
        let actual: Vec<_> = p
            .edges()
            .map(|(u, v)| (p.name(u).to_string(), p.name(v).to_string()))
            .collect();
        assert_eq!(actual.len(), 2);
        for (u, v) in expected {
            assert!(p.is_adjacent(p.index_of(u).unwrap(), p.index_of(v).unwrap()));
        }
    }

    #[test]
    fn coproduct_counts_and_unit() {
        let k2 = complete_graph(2).unwrap();
        let c = coproduct(&k2, &k2);
        assert_eq!(c.vertex_count(), 4);
        assert_eq!(c.edge_count(), 2);

        let empty = Graph::empty();
        let g = example_h();
        let c = coproduct(&empty, &g);
        assert!(are_isomorphic(&c, &g).is_some());

        let c = coproduct(&cycle_graph(5).unwrap(), &cycle_graph(6).unwrap());
        assert_eq!(c.vertex_count(), 11);
        assert_eq!(c.edge_count(), 11);
    }

    #[test]
    fn induced_subgraph_restricts_adjacency() {
        let g = example_h();
        let all: Vec<usize> = (0..g.vertex_count()).collect();
        assert_eq!(g.induced_subgraph(&all).unwrap(), g);
        assert_eq!(g.induced_subgraph(&[]).unwrap(), Graph::empty());

        let c4 = cycle_graph(4).unwrap();
        let minus_one = c4.induced_subgraph(&[0, 1, 3]).unwrap();
        assert!(are_isomorphic(&minus_one, &path_graph(2)).is_some());

        assert!(g.induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_graphs(1, true).unwrap().count(), 2);
        // Exactly two graphs on two vertices without loops, plus the single
        // one-vertex graph.
        let loopless: Vec<_> = enumerate_graphs(2, false).unwrap().collect();
        assert_eq!(loopless.iter().filter(|g| g.vertex_count() == 2).count(), 2);
        assert_eq!(loopless.len(), 3);
        // n=2 with loops alone contributes 2^3 = 8.
        let with_loops: Vec<_> = enumerate_graphs(2, true).unwrap().collect();
        assert_eq!(
            with_loops.iter().filter(|g| g.vertex_count() == 2).count(),
            8
        );
        assert!(enumerate_graphs(7, false).is_err());
        assert!(enumerate_graphs(0, false).is_err());
    }

    #[test]
    fn product_commutes_up_to_iso() {
        let graphs: Vec<Graph> = enumerate_graphs(3, true).unwrap().collect();
        for (i, g) in graphs.iter().enumerate() {
            for h in &graphs[i..] {
                let gh = product(g, h);
                let hg = product(h, g);
                assert!(
                    are_isomorphic(&gh, &hg).is_some(),
                    "product not commutative up to iso for {g:?} and {h:?}"
                );
            }
        }
    }

    #[test]
    fn product_associates_up_to_iso() {
        // Exhaustive over all triples with <= 3 vertices. The re-bracketing
        // bijection is the identity on indices, so check that concrete
        // witness everywhere and run the isomorphism search on a sample.
        let graphs: Vec<Graph> = enumerate_graphs(3, true).unwrap().collect();
        let mut sampled = 0usize;
        for (i, g) in graphs.iter().enumerate() {
            for (j, h) in graphs.iter().enumerate() {
                let gh = product(g, h);
                for (k, l) in graphs.iter().enumerate() {
                    let left = product(&gh, l);
                    let right = product(g, &product(h, l));
                    let witness = VertexMap::new(
                        left.clone(),
                        right.clone(),
                        (0..left.vertex_count()).collect(),
                    )
                    .unwrap();
                    assert!(
                        witness.is_morphism(),
                        "rebracketing fails for {g:?} {h:?} {l:?}"
                    );
                    let back = VertexMap::new(
                        right.clone(),
                        left.clone(),
                        (0..right.vertex_count()).collect(),
                    )
                    .unwrap();
                    assert!(back.is_morphism());
                    if ((i * graphs.len() + j) * graphs.len() + k).is_multiple_of(971) {
                        sampled += 1;
                        assert!(are_isomorphic(&left, &right).is_some());
                    }
                }
            }
        }
        assert!(sampled > 100);
    }

    #[test]
    fn looped_vertex_gives_product_inclusion() {
        // For every looped w in H, v -> (v, w) is an injective morphism.
        let graphs: Vec<Graph> = enumerate_graphs(3, true).unwrap().collect();
        for g in graphs.iter().step_by(7) {
            for h in graphs.iter().step_by(11) {
                let p = product(g, h);
                for w in 0..h.vertex_count() {
                    if !h.has_loop(w) {
                        continue;
                    }
                    let images: Vec<usize> = (0..g.vertex_count())
                        .map(|v| product_index(h, v, w))
                        .collect();
                    let inclusion = VertexMap::new(g.clone(), p.clone(), images.clone()).unwrap();
                    assert!(inclusion.is_morphism());
                    let mut sorted = images;
                    sorted.sort_unstable();
                    sorted.dedup();
                    assert_eq!(
                        sorted.len(),
                        g.vertex_count(),
                        "inclusion must be injective"
                    );
                }
            }
        }
    }
}
