//! Graph isomorphism with an explicit witness.
//!
//! Pleats are only unique up to isomorphism, so equality checks between
//! them go through here. The graphs involved are small (verification runs
//! stay under a handful of vertices), so degree/loop partition refinement
//! followed by backtracking is ample.

use std::collections::{BTreeMap, HashMap};

use crate::graph::Graph;
use crate::map::VertexMap;

/// A witness pair of mutually inverse edge-preserving bijections.
#[derive(Debug, Clone)]
pub struct Isomorphism {
    pub forward: VertexMap,
    pub backward: VertexMap,
}

/// Returns a witness isomorphism, or `None` when the graphs differ.
/// Loops must map to loops; the search assigns vertices of `g` in order,
/// trying candidates of `h` in order, so the witness is deterministic.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Option<Isomorphism> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() || g.loop_count() != h.loop_count()
    {
        return None;
    }
    if n == 0 {
        let forward = VertexMap::new(g.clone(), h.clone(), vec![]).expect("empty map");
        let backward = VertexMap::new(h.clone(), g.clone(), vec![]).expect("empty map");
        return Some(Isomorphism { forward, backward });
    }

    let (gc, hc) = refine_colors(g, h)?;

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !assign(g, h, &gc, &hc, &mut image, &mut used, 0) {
        return None;
    }

    let mut back = vec![usize::MAX; n];
    for (v, &img) in image.iter().enumerate() {
        back[img] = v;
    }
    let forward = VertexMap::new(g.clone(), h.clone(), image).expect("valid images");
    let backward = VertexMap::new(h.clone(), g.clone(), back).expect("valid images");
    debug_assert!(forward.is_morphism() && backward.is_morphism());
    Some(Isomorphism { forward, backward })
}

/// Iterated neighborhood-color refinement over both graphs at once, so the
/// color ids are comparable. Returns `None` when the color histograms
/// diverge, which already rules the pair out.
fn refine_colors(g: &Graph, h: &Graph) -> Option<(Vec<u64>, Vec<u64>)> {
    let n = g.vertex_count();
    let initial = |gr: &Graph, v: usize| (gr.degree(v) as u64) << 1 | gr.has_loop(v) as u64;
    let mut gc: Vec<u64> = (0..n).map(|v| initial(g, v)).collect();
    let mut hc: Vec<u64> = (0..n).map(|v| initial(h, v)).collect();

    for _ in 0..n {
        let mut table: BTreeMap<(u64, Vec<u64>), u64> = BTreeMap::new();
        let next =
            |gr: &Graph, colors: &[u64], v: usize, table: &mut BTreeMap<(u64, Vec<u64>), u64>| {
                let mut around: Vec<u64> = gr.neighbors(v).iter().map(|&u| colors[u]).collect();
                around.sort_unstable();
                let key = (colors[v], around);
                let fresh = table.len() as u64;
                *table.entry(key).or_insert(fresh)
            };
        let gnext: Vec<u64> = (0..n).map(|v| next(g, &gc, v, &mut table)).collect();
        let hnext: Vec<u64> = (0..n).map(|v| next(h, &hc, v, &mut table)).collect();

        let mut ghist: HashMap<u64, usize> = HashMap::new();
        let mut hhist: HashMap<u64, usize> = HashMap::new();
        for &c in &gnext {
            *ghist.entry(c).or_insert(0) += 1;
        }
        for &c in &hnext {
            *hhist.entry(c).or_insert(0) += 1;
        }
        if ghist != hhist {
            return None;
        }
        let stable = gnext == gc && hnext == hc;
        gc = gnext;
        hc = hnext;
        if stable {
            break;
        }
    }
    Some((gc, hc))
}

fn assign(
    g: &Graph,
    h: &Graph,
    gc: &[u64],
    hc: &[u64],
    image: &mut [usize],
    used: &mut [bool],
    v: usize,
) -> bool {
    if v == g.vertex_count() {
        return true;
    }
    'candidates: for w in 0..h.vertex_count() {
        if used[w] || gc[v] != hc[w] {
            continue;
        }
        for (u, &img) in image.iter().enumerate().take(v) {
            if g.is_adjacent(v, u) != h.is_adjacent(w, img) {
                continue 'candidates;
            }
        }
        if g.has_loop(v) != h.has_loop(w) {
            continue;
        }
        image[v] = w;
        used[w] = true;
        if assign(g, h, gc, hc, image, used, v + 1) {
            return true;
        }
        image[v] = usize::MAX;
        used[w] = false;
    }
    false
}
