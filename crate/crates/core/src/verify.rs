//! Exhaustive and seeded verification suites for the theorems behind the
//! library: pleat uniqueness, pleat/product and pleat/coproduct
//! interaction, the interchange law, the spider decomposition, the
//! loop/morphism correspondence, the groupoid axioms, and prune
//! confluence.
//!
//! Suites parallelize across instances; failures are keyed and sorted so
//! reports are order-independent, and every randomized suite echoes its
//! seed for replay. Budget exhaustion is counted separately from failure.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exp::{enumerate_homs, exp_edge, realize_exponential};
use crate::graph::{coproduct, enumerate_graphs, Graph};
use crate::groupoid::{arrow, arrows_equivalent, compose_arrows, identity_arrow, invert_arrow};
use crate::homotopy::{
    compose_homotopies, concat_homotopies, homotopies_equivalent_with, is_spider_pair,
    spider_decompose, Homotopy,
};
use crate::iso::are_isomorphic;
use crate::json::GraphDoc;
use crate::map::VertexMap;
use crate::pleat::{is_stiff, pleat, pleat_product_check, FoldPolicy};
use crate::walk::Walk;
use crate::{Equivalence, Error, Result, SearchLimits};

pub const DEFAULT_SEED: u64 = 1729;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    PleatConfluence,
    PleatProduct,
    PleatCoproduct,
    Interchange,
    Spider,
    HomLoop,
    GroupoidAxioms,
    PruneConfluence,
}

impl Suite {
    pub fn all() -> [Suite; 8] {
        [
            Suite::PleatConfluence,
            Suite::PleatProduct,
            Suite::PleatCoproduct,
            Suite::Interchange,
            Suite::Spider,
            Suite::HomLoop,
            Suite::GroupoidAxioms,
            Suite::PruneConfluence,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::PleatConfluence => "pleat-confluence",
            Suite::PleatProduct => "pleat-product",
            Suite::PleatCoproduct => "pleat-coproduct",
            Suite::Interchange => "interchange",
            Suite::Spider => "spider",
            Suite::HomLoop => "hom-loop",
            Suite::GroupoidAxioms => "groupoid-axioms",
            Suite::PruneConfluence => "prune-confluence",
        }
    }

    fn default_max_vertices(self) -> usize {
        match self {
            Suite::PleatConfluence | Suite::PleatProduct => 4,
            Suite::PleatCoproduct => 3,
            Suite::Interchange | Suite::Spider | Suite::HomLoop => 3,
            Suite::GroupoidAxioms | Suite::PruneConfluence => 4,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::all()
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Instance size cap; each suite has its own default when absent.
    pub max_vertices: Option<usize>,
    pub seed: u64,
    /// Sample count for the randomized suites.
    pub samples: usize,
    /// Random fold orders per graph in the pleat-confluence suite.
    pub fold_orders: usize,
    pub limits: SearchLimits,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_vertices: None,
            seed: DEFAULT_SEED,
            samples: 200,
            fold_orders: 10,
            limits: SearchLimits::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureRecord {
    pub instance: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub max_vertices: usize,
    pub seed: u64,
    pub instances: u64,
    pub failures: Vec<FailureRecord>,
    pub budget_exhausted: u64,
    /// Excluded from serialized output so identical runs emit identical
    /// bytes; shown in the human-readable summary instead.
    #[serde(skip)]
    pub wall_time_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{}: {} — {} instances, {} failures, {} budget-exhausted, seed {}, {} ms",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.instances,
            self.failures.len(),
            self.budget_exhausted,
            self.seed,
            self.wall_time_ms
        )
    }
}

struct Tally {
    instances: AtomicU64,
    budget_exhausted: AtomicU64,
    failures: Mutex<Vec<FailureRecord>>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            instances: AtomicU64::new(0),
            budget_exhausted: AtomicU64::new(0),
            failures: Mutex::new(Vec::new()),
        }
    }

    fn instance(&self) {
        self.instances.fetch_add(1, Ordering::Relaxed);
    }

    fn budget(&self) {
        self.budget_exhausted.fetch_add(1, Ordering::Relaxed);
    }

    fn fail(&self, instance: String, message: String) {
        self.failures
            .lock()
            .expect("tally lock")
            .push(FailureRecord { instance, message });
    }

    fn into_report(
        self,
        suite: Suite,
        cfg: &SuiteConfig,
        max_vertices: usize,
        started: Instant,
    ) -> VerificationReport {
        let mut failures = self.failures.into_inner().expect("tally lock");
        failures.sort_by(|a, b| {
            a.instance
                .cmp(&b.instance)
                .then_with(|| a.message.cmp(&b.message))
        });
        VerificationReport {
            suite: suite.name().to_string(),
            max_vertices,
            seed: cfg.seed,
            instances: self.instances.into_inner(),
            failures,
            budget_exhausted: self.budget_exhausted.into_inner(),
            wall_time_ms: started.elapsed().as_millis(),
        }
    }
}

fn mix(seed: u64, a: u64, b: u64) -> u64 {
    let mut x =
        seed ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x ^= x >> 30;
    x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^= x >> 31;
    x
}

fn graph_key(g: &Graph) -> String {
    serde_json::to_string(&GraphDoc::from_graph(g)).expect("graphs serialize")
}

/// Runs one suite and aggregates a report.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<VerificationReport> {
    let max_vertices = cfg
        .max_vertices
        .unwrap_or_else(|| suite.default_max_vertices());
    let started = Instant::now();
    let tally = Tally::new();
    match suite {
        Suite::PleatConfluence => pleat_confluence(cfg, max_vertices, &tally)?,
        Suite::PleatProduct => pleat_product(cfg, max_vertices, &tally)?,
        Suite::PleatCoproduct => pleat_coproduct(cfg, max_vertices, &tally)?,
        Suite::Interchange => interchange(cfg, max_vertices, &tally)?,
        Suite::Spider => spider(cfg, max_vertices, &tally)?,
        Suite::HomLoop => hom_loop(cfg, max_vertices, &tally)?,
        Suite::GroupoidAxioms => groupoid_axioms(cfg, max_vertices, &tally)?,
        Suite::PruneConfluence => prune_confluence(cfg, max_vertices, &tally)?,
    }
    Ok(tally.into_report(suite, cfg, max_vertices, started))
}

/// Theorem: every fold order dismantles to the same pleat up to
/// isomorphism. All loop patterns, `fold_orders` seeded orders per graph.
fn pleat_confluence(cfg: &SuiteConfig, max_vertices: usize, tally: &Tally) -> Result<()> {
    let graphs: Vec<Graph> = enumerate_graphs(max_vertices, true)?.collect();
    graphs.par_iter().enumerate().for_each(|(idx, g)| {
        tally.instance();
        let key = graph_key(g);
        let base = match pleat(g, FoldPolicy::First) {
            Ok(r) => r,
            Err(e) => {
                tally.fail(key, format!("pleat failed: {e}"));
                return;
            }
        };
        if !is_stiff(&base.pleat) {
            tally.fail(key.clone(), "pleat is not stiff".to_string());
        }
        for k in 0..cfg.fold_orders {
            let seed = mix(cfg.seed, idx as u64, k as u64);
            match pleat(g, FoldPolicy::SeededRandom(seed)) {
                Ok(random) => {
                    if are_isomorphic(&base.pleat, &random.pleat).is_none() {
                        tally.fail(
                            key.clone(),
                            format!("fold order with seed {seed} reached a different pleat"),
                        );
                    }
                }
                Err(e) => tally.fail(key.clone(), format!("random pleat failed: {e}")),
            }
        }
    });
    Ok(())
}

fn loopless_without_isolated(max_vertices: usize) -> Result<Vec<Graph>> {
    Ok(enumerate_graphs(max_vertices, false)?
        .filter(|g| !g.is_empty() && g.isolated_vertices().is_empty())
        .collect())
}

/// Theorem: pleat(G × H) ≅ pleat(G) × pleat(H) for graphs without
/// isolated vertices.
fn pleat_product(cfg: &SuiteConfig, max_vertices: usize, tally: &Tally) -> Result<()> {
    let _ = cfg;
    let graphs = loopless_without_isolated(max_vertices)?;
    let mut pairs = Vec::new();
    for i in 0..graphs.len() {
        for j in i..graphs.len() {
            pairs.push((i, j));
        }
    }
    pairs.par_iter().for_each(|&(i, j)| {
        tally.instance();
        let (g, h) = (&graphs[i], &graphs[j]);
        let key = format!("{} x {}", graph_key(g), graph_key(h));
        match pleat_product_check(g, h) {
            Ok(true) => {}
            Ok(false) => tally.fail(
                key,
                "pleat of product differs from product of pleats".into(),
            ),
            Err(e) => tally.fail(key, format!("check errored: {e}")),
        }
    });
    Ok(())
}

/// Observation: pleating distributes over disjoint union in the absence
/// of isolated vertices.
fn pleat_coproduct(cfg: &SuiteConfig, max_vertices: usize, tally: &Tally) -> Result<()> {
    let _ = cfg;
    let graphs: Vec<Graph> = enumerate_graphs(max_vertices, true)?
        .filter(|g| !g.is_empty() && g.isolated_vertices().is_empty())
        .collect();
    let mut pairs = Vec::new();
    for i in 0..graphs.len() {
        for j in i..graphs.len() {
            pairs.push((i, j));
        }
    }
    pairs.par_iter().for_each(|&(i, j)| {
        tally.instance();
        let (g, h) = (&graphs[i], &graphs[j]);
        let key = format!("{} + {}", graph_key(g), graph_key(h));
        let check = || -> Result<bool> {
            let lhs = pleat(&coproduct(g, h), FoldPolicy::First)?.pleat;
            let rhs = coproduct(
                &pleat(g, FoldPolicy::First)?.pleat,
                &pleat(h, FoldPolicy::First)?.pleat,
            );
            Ok(are_isomorphic(&lhs, &rhs).is_some())
        };
        match check() {
            Ok(true) => {}
            Ok(false) => tally.fail(
                key,
                "pleat of coproduct differs from coproduct of pleats".into(),
            ),
            Err(e) => tally.fail(key, format!("check errored: {e}")),
        }
    });
    Ok(())
}

/// A random looped walk through a hom-set, the raw material for sampled
/// homotopies.
fn random_homotopy(homs: &[VertexMap], rng: &mut ChaCha8Rng, max_len: usize) -> Result<Homotopy> {
    let mut frames = vec![homs.choose(rng).expect("nonempty hom set").clone()];
    let steps = rng.gen_range(0..=max_len);
    for _ in 0..steps {
        let current = frames.last().expect("nonempty");
        let neighbors: Vec<&VertexMap> = homs
            .iter()
            .filter(|candidate| exp_edge(current, candidate).unwrap_or(false))
            .collect();
        // Every morphism is its own exponential neighbor, so this is
        // never empty.
        frames.push((*neighbors.choose(rng).expect("loops exist")).clone());
    }
    Homotopy::new(frames)
}

/// Proposition: the two horizontal composites g α * β f' and β f * g' α
/// are homotopic rel endpoints.
fn interchange(cfg: &SuiteConfig, max_vertices: usize, tally: &Tally) -> Result<()> {
    let graphs: Vec<Graph> = enumerate_graphs(max_vertices, true)?.collect();
    (0..cfg.samples)
        .into_par_iter()
        .try_for_each(|sample| -> Result<()> {
            tally.instance();
            let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed, sample as u64, 0xA1));
            let mut found = None;
            for _attempt in 0..1000 {
                let g = graphs.choose(&mut rng).expect("pool nonempty");
                let h = graphs.choose(&mut rng).expect("pool nonempty");
                let k = graphs.choose(&mut rng).expect("pool nonempty");
                let homs_gh = enumerate_homs(g, h);
                let homs_hk = enumerate_homs(h, k);
                if homs_gh.is_empty() || homs_hk.is_empty() {
                    continue;
                }
                found = Some((homs_gh, homs_hk));
                break;
            }
            let Some((homs_gh, homs_hk)) = found else {
                tally.fail(
                    format!("sample {sample}"),
                    "sampler found no hom sets".into(),
                );
                return Ok(());
            };
            let alpha = random_homotopy(&homs_gh, &mut rng, 2)?;
            let beta = random_homotopy(&homs_hk, &mut rng, 2)?;

            let lhs = compose_homotopies(&alpha, &beta)?;
            let f = alpha.first();
            let g_prime = beta.last();
            let beta_f = Homotopy::new(
                beta.frames()
                    .iter()
                    .map(|frame| crate::exp::precompose(f, frame))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            let g_prime_alpha = Homotopy::new(
                alpha
                    .frames()
                    .iter()
                    .map(|frame| crate::exp::postcompose(g_prime, frame))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            let rhs = concat_homotopies(&beta_f, &g_prime_alpha)?;

            let key = format!("sample {sample}: alpha {alpha:?} beta {beta:?}");
            match homotopies_equivalent_with(&lhs, &rhs, &cfg.limits)? {
                Equivalence::Equivalent => {}
                Equivalence::NotEquivalent => {
                    tally.fail(key, "composites certified non-equivalent".into())
                }
                Equivalence::Inconclusive => tally.budget(),
            }
            Ok(())
        })
}

/// The Spider Lemma: every exponential edge between morphisms decomposes
/// into a chain of spider pairs, and conversely every chain step is
/// exponentially adjacent.
fn spider(cfg: &SuiteConfig, max_vertices: usize, tally: &Tally) -> Result<()> {
    let _ = cfg;
    let graphs: Vec<Graph> = enumerate_graphs(max_vertices, true)?.collect();
    let mut pairs = Vec::new();
    for i in 0..graphs.len() {
        for j in 0..graphs.len() {
            pairs.push((i, j));
        }
    }
    pairs.par_iter().try_for_each(|&(i, j)| -> Result<()> {
        let (g, h) = (&graphs[i], &graphs[j]);
        let homs = enumerate_homs(g, h);
        for f in &homs {
            for target in &homs {
                if !exp_edge(f, target)? {
                    continue;
                }
                tally.instance();
                let key = format!("{} -> {}: {f:?} ~ {target:?}", graph_key(g), graph_key(h));
                match spider_decompose(f, target) {
                    Ok(chain) => {
                        if chain.first() != Some(f) || chain.last() != Some(target) {
                            tally.fail(key.clone(), "chain endpoints are wrong".into());
                            continue;
                        }
                        for step in chain.windows(2) {
                            match is_spider_pair(&step[0], &step[1]) {
                                Ok(Some(_)) => {
                                    if !exp_edge(&step[0], &step[1])? {
                                        tally.fail(
                                            key.clone(),
                                            "spider pair not exponentially adjacent".into(),
                                        );
                                    }
                                }
                                Ok(None) => tally.fail(
                                    key.clone(),
                                    format!(
                                        "consecutive entries are not a spider pair: {:?} vs {:?}",
                                        step[0], step[1]
                                    ),
                                ),
                                Err(e) => tally.fail(key.clone(), format!("{e}")),
                            }
                        }
                    }
                    Err(e) => tally.fail(key, format!("decomposition failed: {e}")),
                }
            }
        }
        Ok(())
    })
}

/// Observation: a set map is looped in the realized exponential exactly
/// when it is a morphism, and the looped set is the enumerated hom-set.
fn hom_loop(cfg: &SuiteConfig, max_vertices: usize, tally: &Tally) -> Result<()> {
    let _ = cfg;
    let graphs: Vec<Graph> = enumerate_graphs(max_vertices, true)?.collect();
    let mut pairs = Vec::new();
    for i in 0..graphs.len() {
        for j in 0..graphs.len() {
            pairs.push((i, j));
        }
    }
    pairs.par_iter().try_for_each(|&(i, j)| -> Result<()> {
        tally.instance();
        let (g, h) = (&graphs[i], &graphs[j]);
        let key = format!("{} -> {}", graph_key(g), graph_key(h));
        let exp = realize_exponential(g, h, 1_000_000)?;
        for v in 0..exp.graph().vertex_count() {
            let map = exp.vertex_map(v);
            if exp.graph().has_loop(v) != map.is_morphism() {
                tally.fail(key.clone(), format!("loop/morphism mismatch at {map:?}"));
            }
        }
        let looped: Vec<Vec<usize>> = exp
            .looped_vertices()
            .iter()
            .map(|&v| exp.assignment(v).to_vec())
            .collect();
        let homs: Vec<Vec<usize>> = enumerate_homs(g, h)
            .iter()
            .map(|m| m.images().to_vec())
            .collect();
        if looped != homs {
            tally.fail(key, "looped set differs from enumerated hom set".into());
        }
        Ok(())
    })
}

fn random_walk(g: &Graph, start: usize, rng: &mut ChaCha8Rng, max_len: usize) -> Vec<usize> {
    let mut vertices = vec![start];
    let steps = rng.gen_range(0..=max_len);
    for _ in 0..steps {
        let last = *vertices.last().expect("nonempty");
        let neighbors = g.neighbors(last);
        if neighbors.is_empty() {
            break;
        }
        vertices.push(*neighbors.choose(rng).expect("nonempty"));
    }
    vertices
}

/// Theorem: Π(G) is a groupoid — associativity, identities, and inverses
/// on random composable triples, with class equality decided by the
/// rel-endpoint search.
fn groupoid_axioms(cfg: &SuiteConfig, max_vertices: usize, tally: &Tally) -> Result<()> {
    let graphs: Vec<Graph> = enumerate_graphs(max_vertices, true)?
        .filter(|g| g.edge_count() > 0)
        .collect();
    (0..cfg.samples)
        .into_par_iter()
        .try_for_each(|sample| -> Result<()> {
            tally.instance();
            let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed, sample as u64, 0xB2));
            let g = graphs.choose(&mut rng).expect("pool nonempty");
            let start = rng.gen_range(0..g.vertex_count());
            let a = Walk::new(g.clone(), random_walk(g, start, &mut rng, 4))?;
            let b = Walk::new(g.clone(), random_walk(g, a.last(), &mut rng, 4))?;
            let c = Walk::new(g.clone(), random_walk(g, b.last(), &mut rng, 4))?;
            let (a, b, c) = (arrow(&a), arrow(&b), arrow(&c));
            let key = format!(
                "sample {sample}: {} / {:?} {:?} {:?}",
                graph_key(g),
                a.representative().vertices(),
                b.representative().vertices(),
                c.representative().vertices()
            );

            let check = |label: &str,
                         x: &crate::groupoid::GroupoidArrow,
                         y: &crate::groupoid::GroupoidArrow| {
                match arrows_equivalent(x, y, cfg.limits.pad_budget) {
                    Ok(Equivalence::Equivalent) => {}
                    Ok(Equivalence::NotEquivalent) => {
                        tally.fail(key.clone(), format!("{label} failed"))
                    }
                    Ok(Equivalence::Inconclusive) => tally.budget(),
                    Err(e) => tally.fail(key.clone(), format!("{label} errored: {e}")),
                }
            };

            let ab_c = compose_arrows(&compose_arrows(&a, &b)?, &c)?;
            let a_bc = compose_arrows(&a, &compose_arrows(&b, &c)?)?;
            check("associativity", &ab_c, &a_bc);

            let id_source = identity_arrow(g, g.name(a.source()))?;
            let id_target = identity_arrow(g, g.name(a.target()))?;
            check("left identity", &compose_arrows(&id_source, &a)?, &a);
            check("right identity", &compose_arrows(&a, &id_target)?, &a);

            check(
                "right inverse",
                &compose_arrows(&a, &invert_arrow(&a))?,
                &id_source,
            );
            check(
                "left inverse",
                &compose_arrows(&invert_arrow(&a), &a)?,
                &id_target,
            );
            Ok(())
        })
}

/// Proposition: repeated pruning reaches a unique non-prunable walk, no
/// matter the order. Exhaustive over all walks of length <= 6.
fn prune_confluence(cfg: &SuiteConfig, max_vertices: usize, tally: &Tally) -> Result<()> {
    let _ = cfg;
    const MAX_WALK_LEN: usize = 6;
    let graphs: Vec<Graph> = enumerate_graphs(max_vertices, true)?.collect();
    graphs.par_iter().for_each(|g| {
        let key = graph_key(g);
        let mut memo: HashMap<Vec<usize>, Option<Vec<usize>>> = HashMap::new();
        let mut stack: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| vec![v]).collect();
        while let Some(path) = stack.pop() {
            tally.instance();
            match all_order_fixpoint(&path, &mut memo) {
                Some(unique) => {
                    let walk =
                        Walk::new(g.clone(), path.clone()).expect("enumerated walks are valid");
                    if walk.prune_fully().vertices() != unique.as_slice() {
                        tally.fail(
                            key.clone(),
                            format!("lowest-index pruning of {path:?} missed the unique fixpoint"),
                        );
                    }
                }
                None => tally.fail(key.clone(), format!("pruning of {path:?} diverged")),
            }
            if path.len() <= MAX_WALK_LEN {
                let last = *path.last().expect("nonempty");
                for &next in g.neighbors(last) {
                    let mut longer = path.clone();
                    longer.push(next);
                    stack.push(longer);
                }
            }
        }
    });
    Ok(())
}

/// The unique all-orders pruning fixpoint of a vertex sequence, or `None`
/// when two orders disagree.
fn all_order_fixpoint(
    vertices: &[usize],
    memo: &mut HashMap<Vec<usize>, Option<Vec<usize>>>,
) -> Option<Vec<usize>> {
    if let Some(cached) = memo.get(vertices) {
        return cached.clone();
    }
    let prunable: Vec<usize> = (0..vertices.len())
        .filter(|&i| i + 2 < vertices.len() && vertices[i] == vertices[i + 2])
        .collect();
    let result = if prunable.is_empty() {
        Some(vertices.to_vec())
    } else {
        let mut agreed: Option<Vec<usize>> = None;
        let mut diverged = false;
        for i in prunable {
            let mut child = vertices.to_vec();
            child.drain(i..i + 2);
            match all_order_fixpoint(&child, memo) {
                None => {
                    diverged = true;
                    break;
                }
                Some(r) => match &agreed {
                    None => agreed = Some(r),
                    Some(prev) if *prev != r => {
                        diverged = true;
                        break;
                    }
                    Some(_) => {}
                },
            }
        }
        if diverged {
            None
        } else {
            agreed
        }
    };
    memo.insert(vertices.to_vec(), result.clone());
    result
}
