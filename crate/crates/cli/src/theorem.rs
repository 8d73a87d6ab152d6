//! End-to-end check over all pairs of small pointed reflexive graphs: every
//! base-preserving epimorphism `f` lifts to a generator map `L(f)` that
//! respects the relators, hits every generator, and induces `f` again on
//! the reconstructed graphs.

use std::fmt::Write as _;

use epicox::construction::LabeledCoxeterSystem;
use epicox::graphs::{
    make_pointed, pointed_epimorphisms, FiniteGraph, GraphDocument, GraphJson, PointedReflexiveGraph, VertexMap,
};
use epicox::homomorphisms::{
    induced_k_map, is_onto_generators, lift_graph_epi, presentation_of, verify_relators, verify_relators_with,
    ClassVerdict, Presentation,
};
use epicox::reconstruction::{reconstruction_map, KGraph, Reconstructor};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{OutputFormat, RunConfig};
use crate::outcome::{CliError, CliResult};

/// One side of a pair, with its reconstruction precomputed.
pub struct Prepared {
    pub graph: FiniteGraph,
    pub pointed: PointedReflexiveGraph,
    pub system: LabeledCoxeterSystem,
    pub k: KGraph,
    /// `v -> [S_5(v)]` on non-base vertices.
    pub alpha: VertexMap,
}

impl Prepared {
    pub fn new(graph: FiniteGraph, reconstructor: &Reconstructor) -> CliResult<Self> {
        let pointed = make_pointed(&graph)?;
        let (system, k) = reconstructor.k_graph(&graph)?;
        let alpha = reconstruction_map(&graph, &system, &k)?;
        Ok(Self { graph, pointed, system, k, alpha })
    }
}

/// All labelled reflexive graphs on at most `max_vertices` vertices, with
/// reconstructions.
pub fn prepare_all(max_vertices: usize, reconstructor: &Reconstructor) -> CliResult<Vec<Prepared>> {
    let graphs: Vec<FiniteGraph> = (0..=max_vertices).flat_map(|n| FiniteGraph::all_labelled(n, true)).collect();
    graphs.into_par_iter().map(|g| Prepared::new(g, reconstructor)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Falsification {
    pub check: String,
    pub source: GraphJson,
    pub target: GraphJson,
    pub map: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub index: usize,
    pub source: usize,
    pub target: usize,
    pub epimorphisms: usize,
    pub failure: Option<Falsification>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub max_vertices: usize,
    pub graphs: Vec<GraphJson>,
    pub pairs: Vec<PairReport>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.failure.is_none())
    }

    pub fn epimorphisms(&self) -> usize {
        self.pairs.iter().map(|p| p.epimorphisms).sum()
    }

    pub fn first_failure(&self) -> Option<&Falsification> {
        self.pairs.iter().find_map(|p| p.failure.as_ref())
    }

    pub fn render(&self, format: OutputFormat) -> CliResult<String> {
        if format == OutputFormat::Json {
            return Ok(serde_json::to_string_pretty(self)? + "\n");
        }
        let mut out = String::new();
        for p in &self.pairs {
            let verdict = match &p.failure {
                None => "ok".to_string(),
                Some(f) => format!("FAILED {} under {:?}: {}", f.check, f.map, f.detail),
            };
            let _ = writeln!(
                out,
                "pair {}: G{} -> G{}: {} epimorphisms {verdict}",
                p.index, p.source, p.target, p.epimorphisms
            );
        }
        let _ = writeln!(
            out,
            "{} graphs, {} pairs, {} epimorphisms: {}",
            self.graphs.len(),
            self.pairs.len(),
            self.epimorphisms(),
            if self.passed() { "pass" } else { "FAIL" }
        );
        Ok(out)
    }
}

/// Presentation with every `(a b)^3` relator weakened to `(a b)^2`, used to
/// confirm that the check notices a wrong relator set.
pub fn corrupted_presentation(system: &LabeledCoxeterSystem) -> Presentation {
    let mut p = presentation_of(system.matrix());
    for r in p.relators_mut() {
        if r.len() == 6 {
            *r = r.letters()[..4].iter().copied().collect();
        }
    }
    p
}

/// Runs every check on one epimorphism, returning the name of the failed
/// check and a description.
fn check_epimorphism(
    a: &Prepared,
    b: &Prepared,
    f: &VertexMap,
    radius: usize,
    inject_fault: bool,
) -> Result<(), (String, String)> {
    let fail = |check: &str, detail: String| (check.to_string(), detail);
    let phi =
        lift_graph_epi(f, &a.pointed, &b.pointed, &a.system, &b.system).map_err(|e| fail("lift", e.to_string()))?;
    let relators_hold = if inject_fault {
        verify_relators_with(&phi, &corrupted_presentation(&a.system))
    } else {
        verify_relators(&phi)
    };
    if !relators_hold {
        return Err(fail("relators", "a relator does not map to the identity".into()));
    }
    if !is_onto_generators(&phi) {
        return Err(fail("onto-generators", "some target generator is missed".into()));
    }
    let induced = induced_k_map(&phi, (&a.system, &a.k), (&b.system, &b.k), radius)
        .map_err(|e| fail("induced-map", e.to_string()))?;
    for k in 0..a.graph.len() {
        let fk = f.apply(a.pointed.vertex_of_underlying(k));
        let expected = match b.pointed.underlying_index(fk) {
            None => ClassVerdict::Base,
            Some(k2) => ClassVerdict::Class(b.alpha.apply(k2)),
        };
        let found = induced.verdicts()[a.alpha.apply(k)];
        if found != expected {
            return Err(fail("functor", format!("vertex {k}: expected {expected:?}, found {found:?}")));
        }
    }
    Ok(())
}

fn check_pair(
    index: usize,
    ends: (usize, usize),
    prepared: &[Prepared],
    radius: usize,
    inject_fault: bool,
) -> PairReport {
    let (a, b) = (&prepared[ends.0], &prepared[ends.1]);
    let epis = pointed_epimorphisms(&a.pointed, &b.pointed);
    let failure = epis.iter().find_map(|f| {
        check_epimorphism(a, b, f, radius, inject_fault).err().map(|(check, detail)| Falsification {
            check,
            source: GraphDocument::pointed(&a.pointed).to_json(),
            target: GraphDocument::pointed(&b.pointed).to_json(),
            map: f.image().to_vec(),
            detail,
        })
    });
    PairReport { index, source: ends.0, target: ends.1, epimorphisms: epis.len(), failure }
}

/// Checks every ordered pair of pointed reflexive graphs with at most
/// `config.max_vertices` non-base vertices.
pub fn check_theorem(config: &RunConfig, inject_fault: bool) -> CliResult<TheoremReport> {
    config.validate()?;
    let prepared = prepare_all(config.max_vertices, &config.reconstructor())?;
    Ok(check_prepared(&prepared, config.max_vertices, config.radius, inject_fault))
}

/// Pair-level parallel check; pairs are reported in index order.
pub fn check_prepared(prepared: &[Prepared], max_vertices: usize, radius: usize, inject_fault: bool) -> TheoremReport {
    let n = prepared.len();
    let pairs = (0..n * n)
        .into_par_iter()
        .map(|index| check_pair(index, (index / n, index % n), prepared, radius, inject_fault))
        .collect();
    let graphs = prepared.iter().map(|p| GraphDocument::plain(p.graph.clone()).to_json()).collect();
    TheoremReport { max_vertices, graphs, pairs }
}

/// Maps a failed report to a falsification error carrying the first
/// falsifying instance as JSON.
pub fn require_pass(report: &TheoremReport) -> CliResult<()> {
    match report.first_failure() {
        None => Ok(()),
        Some(f) => Err(CliError::falsified(serde_json::to_string(f)?)),
    }
}
