//! The acceptance suite: nine exact checks, each with a time budget.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use epicox::construction::{build_c, build_l4, op_graph, verify_l4_is_s5, LabeledCoxeterSystem};
use epicox::coxeter::{CoxeterMatrix, CoxeterSystem, GeneratorSubset, GroupElement};
use epicox::graphs::{f_reduce, find_epimorphism, find_injective_hom, for_each_epimorphism, FiniteGraph, VertexMap};
use epicox::parabolics::KsGraph;
use epicox::reconstruction::{bounded_centralizer_check, commuting_witness};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{OutputFormat, RunConfig};
use crate::outcome::CliResult;
use crate::theorem::{check_prepared, prepare_all};

type Check = Result<String, String>;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub seconds: f64,
    pub budget_seconds: f64,
    pub detail: String,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AcceptanceReport {
    pub results: Vec<CriterionResult>,
}

impl AcceptanceReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn render(&self, format: OutputFormat) -> CliResult<String> {
        if format == OutputFormat::Json {
            return Ok(serde_json::to_string_pretty(self)? + "\n");
        }
        let mut out = String::new();
        for r in &self.results {
            for w in &r.warnings {
                let _ = writeln!(out, "warning: criterion {}: {w}", r.id);
            }
            let _ = writeln!(out, "{}", r.line());
        }
        let passed = self.results.iter().filter(|r| r.passed).count();
        let _ = writeln!(out, "{passed}/{} criteria passed", self.results.len());
        Ok(out)
    }
}

impl CriterionResult {
    /// `[PASS] 1 verify-l4 (0.05s, budget 5s): detail`
    pub fn line(&self) -> String {
        format!(
            "[{}] {} {} ({:.2}s, budget {}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.budget_seconds,
            self.detail
        )
    }
}

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    run: fn(&RunConfig, &mut Vec<String>) -> Check,
}

const CRITERIA: [Criterion; 9] = [
    Criterion { id: 1, name: "verify-l4", budget: Duration::from_secs(5), run: l4_is_s5 },
    Criterion { id: 2, name: "longest-element", budget: Duration::from_secs(5), run: longest_element },
    Criterion { id: 3, name: "reduction-equivalence", budget: Duration::from_secs(30), run: reduction_equivalence },
    Criterion { id: 4, name: "non-conjugacy", budget: Duration::from_secs(10), run: non_conjugacy },
    Criterion { id: 5, name: "commuting-involutions", budget: Duration::from_secs(30), run: commuting_involutions },
    Criterion { id: 6, name: "bounded-centralizer", budget: Duration::from_secs(120), run: bounded_centralizer },
    Criterion { id: 7, name: "reconstruction", budget: Duration::from_secs(60), run: reconstruction },
    Criterion { id: 8, name: "functor", budget: Duration::from_secs(120), run: functor },
    Criterion { id: 9, name: "engine-invariants", budget: Duration::from_secs(60), run: engine_invariants },
];

/// Number of criteria in the suite.
pub const CRITERION_COUNT: usize = CRITERIA.len();

/// Runs one criterion by number (1-based).
pub fn run_criterion(id: usize, config: &RunConfig) -> Option<CriterionResult> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let mut warnings = Vec::new();
    let start = Instant::now();
    let outcome = (c.run)(config, &mut warnings);
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && elapsed > c.budget {
        passed = false;
        detail = format!("over time budget; {detail}");
    }
    Some(CriterionResult {
        id: c.id,
        name: c.name,
        passed,
        seconds: elapsed.as_secs_f64(),
        budget_seconds: c.budget.as_secs_f64(),
        detail,
        warnings,
    })
}

/// Runs every criterion in order. Configuration errors are reported before
/// anything runs.
pub fn run_acceptance(config: &RunConfig) -> CliResult<AcceptanceReport> {
    config.validate()?;
    let results = (1..=CRITERION_COUNT).filter_map(|id| run_criterion(id, config)).collect();
    Ok(AcceptanceReport { results })
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn l4_is_s5(config: &RunConfig, _: &mut Vec<String>) -> Check {
    let r = verify_l4_is_s5(config.enum_cap).map_err(|e| e.to_string())?;
    Ok(format!("order {}, even subgroup of order {} is simple", r.order, r.even_order))
}

/// Breadth-first distances in the Cayley graph of `G(L_4)`.
fn cayley_distances(sys: &CoxeterSystem) -> HashMap<GroupElement, usize> {
    let mut dist = HashMap::from([(sys.identity(), 0)]);
    let mut queue = VecDeque::from([sys.identity()]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for i in 0..sys.rank() {
            let v = sys.mul_generator(&w, i);
            if !dist.contains_key(&v) {
                dist.insert(v.clone(), d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

fn longest_element(_: &RunConfig, _: &mut Vec<String>) -> Check {
    let sys = CoxeterSystem::new(build_l4());
    let full = GeneratorSubset::full(4);
    let w0 = sys.longest_element(&full).map_err(|e| e.to_string())?;
    let len = sys.length(&w0).map_err(|e| e.to_string())?;
    ensure(len == 10, || format!("length of w0 is {len}"))?;
    ensure((&w0 * &w0).is_identity(), || "w0 is not an involution".into())?;
    let dist = cayley_distances(&sys);
    ensure(dist.len() == 120, || format!("Cayley graph has {} vertices", dist.len()))?;
    for (w, &d) in &dist {
        let l = sys.length(w).map_err(|e| e.to_string())?;
        ensure(l == d, || format!("length {l} disagrees with distance {d}"))?;
    }
    let max = dist.values().copied().max().unwrap_or(0);
    let at_max: Vec<&GroupElement> = dist.iter().filter(|(_, &d)| d == max).map(|(w, _)| w).collect();
    ensure(max == 10 && at_max == [&w0], || format!("maximal distance {max} reached by {} elements", at_max.len()))?;
    Ok("w0 has length 10, squares to e, and is the unique farthest element".into())
}

fn all_maps(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..m.pow(n as u32)).map(move |code| (0..n).map(|v| code / m.pow(v as u32) % m).collect())
}

fn preserves_edges(map: &[usize], a: &FiniteGraph, b: &FiniteGraph) -> bool {
    (0..a.len()).all(|u| (0..a.len()).all(|v| !a.adjacent(u, v) || b.adjacent(map[u], map[v])))
}

fn brute_embeds(a: &FiniteGraph, b: &FiniteGraph) -> bool {
    all_maps(a.len(), b.len()).any(|m| {
        let mut seen = vec![false; b.len()];
        m.iter().all(|&t| !std::mem::replace(&mut seen[t], true)) && preserves_edges(&m, a, b)
    })
}

fn brute_onto(a: &FiniteGraph, b: &FiniteGraph) -> bool {
    all_maps(a.len(), b.len()).any(|m| (0..b.len()).all(|t| m.contains(&t)) && preserves_edges(&m, a, b))
}

fn reduction_equivalence(_: &RunConfig, _: &mut Vec<String>) -> Check {
    let graphs: Vec<FiniteGraph> =
        (0..=3).flat_map(|n| FiniteGraph::all_labelled(n, false)).filter(|g| !g.has_isolated_vertex()).collect();
    let reduced: Vec<_> = graphs.iter().map(|g| f_reduce(g).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    let mut positives = 0;
    for (i, a) in graphs.iter().enumerate() {
        for (j, b) in graphs.iter().enumerate() {
            let embeds = brute_embeds(a, b);
            let onto = brute_onto(reduced[j].graph(), reduced[i].graph());
            ensure(embeds == onto, || format!("graphs {i} and {j}: embedding {embeds}, epimorphism {onto}"))?;
            ensure(find_injective_hom(a, b).is_some() == embeds, || {
                format!("search disagrees on embedding {i} -> {j}")
            })?;
            ensure(find_epimorphism(reduced[j].graph(), reduced[i].graph()).is_some() == onto, || {
                format!("search disagrees on epimorphism F({j}) -> F({i})")
            })?;
            let (fa, fb) = (&reduced[i], &reduced[j]);
            let mut moved = None;
            for_each_epimorphism(fb.graph(), fa.graph(), None, |f| {
                if f.apply(fb.base()) == fa.base() {
                    ControlFlow::Continue(())
                } else {
                    moved = Some(f.image().to_vec());
                    ControlFlow::Break(())
                }
            });
            ensure(moved.is_none(), || format!("epimorphism {moved:?} from F({j}) moves the base"))?;
            positives += usize::from(embeds);
        }
    }
    let n = graphs.len();
    Ok(format!("{} ordered pairs agree ({positives} related); every epimorphism fixes the base", n * n))
}

fn non_conjugacy(_: &RunConfig, _: &mut Vec<String>) -> Check {
    let mut candidates = 0;
    for (name, graph) in [("K2", FiniteGraph::complete(2)), ("two isolated vertices", FiniteGraph::empty(2, false))] {
        let sys = build_c(&graph);
        let system = sys.system();
        let op = op_graph(sys.matrix());
        let ks = KsGraph::new(system);
        for v in 0..graph.len() {
            let block = sys.s5_generators(v).map_err(|e| e.to_string())?;
            for s in (0..sys.matrix().rank()).filter(|&s| !block.contains(s)) {
                let k = op.component(&block.with(s), s);
                ensure(!system.is_spherical(&k), || format!("{name}: K for block {v} and {s} is spherical"))?;
                candidates += 1;
            }
            let edges = ks.out_edges(&block).map_err(|e| e.to_string())?;
            ensure(edges.is_empty(), || format!("{name}: block {v} has {} outgoing edges", edges.len()))?;
            let class = ks.component(&block, 1000).map_err(|e| e.to_string())?;
            ensure(class.len() == 1, || format!("{name}: component of block {v} has {} members", class.len()))?;
        }
    }
    Ok(format!("4 blocks are singleton components; {candidates} candidate K are non-spherical"))
}

fn commuting_involutions(_: &RunConfig, _: &mut Vec<String>) -> Check {
    let graphs: Vec<FiniteGraph> = (0..=4).flat_map(|n| FiniteGraph::all_labelled(n, false)).collect();
    let pairs: Result<Vec<usize>, String> = graphs
        .par_iter()
        .map(|g| {
            let sys = build_c(g);
            let mut pairs = 0;
            for s in 0..g.len() {
                for t in (0..g.len()).filter(|&t| t != s) {
                    let commute = commuting_witness(&sys, s, t).map_err(|e| e.to_string())?.is_some();
                    ensure(commute == g.adjacent(s, t), || format!("pair ({s}, {t}) of {:?}", g.edges()))?;
                    pairs += 1;
                }
            }
            Ok(pairs)
        })
        .collect();
    Ok(format!("{} graphs, {} ordered pairs", graphs.len(), pairs?.iter().sum::<usize>()))
}

fn bounded_centralizer(config: &RunConfig, warnings: &mut Vec<String>) -> Check {
    if config.radius == 0 {
        warnings.push("radius 0 leaves only the identity in the ball; the check is vacuous".into());
    }
    let sys = build_c(&FiniteGraph::empty(2, false));
    let mut sizes = Vec::new();
    for (s, t) in [(0, 1), (1, 0)] {
        let check = bounded_centralizer_check(&sys, s, t, config.radius).map_err(|e| e.to_string())?;
        if let Some(v) = &check.violation {
            return Err(format!(
                "{} commutes with {}",
                v.element.display(sys.matrix()),
                v.involution.display(sys.matrix())
            ));
        }
        ensure(check.involutions == 15, || format!("A5({s}) has {} involutions", check.involutions))?;
        sizes.push(check.ball_size);
    }
    Ok(format!("radius {}: {} elements scanned per block, no violation", config.radius, sizes[0]))
}

fn reconstruction(config: &RunConfig, _: &mut Vec<String>) -> Check {
    let reconstructor = config.reconstructor();
    let graphs: Vec<FiniteGraph> = (0..=3).flat_map(|n| FiniteGraph::all_labelled(n, false)).collect();
    for g in &graphs {
        let map = reconstructor.verify_reconstruction(g).map_err(|e| e.to_string())?;
        ensure(map == VertexMap::identity(g.len()), || format!("unexpected isomorphism {:?}", map.image()))?;
    }
    Ok(format!("{} graphs reconstructed via v -> [S5(v)]", graphs.len()))
}

fn functor(config: &RunConfig, _: &mut Vec<String>) -> Check {
    let prepared = prepare_all(3, &config.reconstructor()).map_err(|e| e.to_string())?;
    let report = check_prepared(&prepared, 3, config.radius, false);
    if let Some(f) = report.first_failure() {
        return Err(serde_json::to_string(f).unwrap_or_else(|_| f.detail.clone()));
    }
    Ok(format!("{} pairs, {} epimorphisms", report.pairs.len(), report.epimorphisms()))
}

/// The Coxeter systems and finite parabolics enumerated by the other
/// criteria: `G(L_4)`, the spherical subsets of size at most 4 scanned when
/// classifying `S_5` classes of `C_Gamma` for every graph on at most 3
/// vertices, and the two-block subsystem of the centralizer check.
fn touched_parabolics() -> Vec<(CoxeterSystem, Vec<GeneratorSubset>)> {
    let mut out = vec![(CoxeterSystem::new(build_l4()), vec![GeneratorSubset::full(4)])];
    let mut seen: Vec<CoxeterMatrix> = Vec::new();
    for g in (0..=3).flat_map(|n| FiniteGraph::all_labelled(n, false)) {
        let sys: LabeledCoxeterSystem = build_c(&g);
        if seen.contains(sys.matrix()) {
            continue;
        }
        seen.push(sys.matrix().clone());
        let system = CoxeterSystem::new(sys.matrix().clone());
        let subsets =
            GeneratorSubset::all_up_to(system.rank(), 4).into_iter().filter(|s| system.is_spherical(s)).collect();
        out.push((system, subsets));
    }
    let two = build_c(&FiniteGraph::empty(2, false));
    let both = GeneratorSubset::full(8);
    let (matrix, _) = two.matrix().restrict(&both);
    out.push((
        CoxeterSystem::new(matrix),
        vec![GeneratorSubset::from_indices(0..4), GeneratorSubset::from_indices(4..8)],
    ));
    out
}

fn engine_invariants(config: &RunConfig, _: &mut Vec<String>) -> Check {
    let systems = touched_parabolics();
    let jobs: Vec<(&CoxeterSystem, &GeneratorSubset)> =
        systems.iter().flat_map(|(sys, subsets)| subsets.iter().map(move |s| (sys, s))).collect();
    let counts: Result<Vec<usize>, String> = jobs
        .par_iter()
        .map(|(sys, subset)| {
            let elements = sys.enumerate_parabolic(subset, config.enum_cap).map_err(|e| e.to_string())?;
            for w in &elements {
                ensure(sys.preserves_form(w), || format!("form not preserved in {:?}", subset))?;
                let word = sys.reduced_word(w).map_err(|e| e.to_string())?;
                let back = sys.evaluate(&word).map_err(|e| e.to_string())?;
                ensure(&back == w, || format!("reduced word does not round-trip in {:?}", subset))?;
            }
            Ok(elements.len())
        })
        .collect();
    let total: usize = counts?.iter().sum();
    Ok(format!("{} systems, {} parabolics, {total} elements", systems.len(), jobs.len()))
}
