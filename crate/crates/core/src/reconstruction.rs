//! Recovering a graph from `G(C_Gamma)`.
//!
//! Vertices of the reconstructed graph are the conjugacy classes of `S_5`
//! subgroups. Two classes are joined when involutions of their alternating
//! parts commute; for adjacent vertices `s, t` the pair `(s_1 s_3, t_1 t_3)`
//! witnesses this. For non-adjacent vertices no such pair exists, which is
//! corroborated here by a bounded search for elements commuting with an
//! involution of `A_5(s)` in the subgroup on the two blocks.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use indexmap::IndexSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construction::{build_c, LabeledCoxeterSystem};
use crate::coxeter::{CoxeterSystem, GeneratorSubset, GroupElement, Word};
use crate::error::{Error, Result};
use crate::graphs::{make_pointed, FiniteGraph, GraphJson, PointedReflexiveGraph, VertexMap};
use crate::parabolics::{classify_s5_classes, ConjugacyClass};

/// Default radius for the centralizer corroboration and conjugator searches.
pub const DEFAULT_RADIUS: usize = 6;

/// `(s_1 s_3, t_1 t_3)` if the two involutions commute.
pub fn commuting_witness(sys: &LabeledCoxeterSystem, s: usize, t: usize) -> Result<Option<(Word, Word)>> {
    if s == t {
        return Err(Error::Precondition("commuting witness needs distinct vertices".into()));
    }
    let (a_word, b_word) = (sys.alt_involution(s)?, sys.alt_involution(t)?);
    let a = sys.system().evaluate(&a_word)?;
    let b = sys.system().evaluate(&b_word)?;
    Ok(a.commutes_with(&b).then_some((a_word, b_word)))
}

/// An element outside `S_5(s)` commuting with an involution of `A_5(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerViolation {
    pub involution: Word,
    pub element: Word,
}

/// Result of [`bounded_centralizer_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerCheck {
    pub radius: usize,
    pub ball_size: usize,
    pub involutions: usize,
    pub violation: Option<CentralizerViolation>,
}

impl CentralizerCheck {
    /// No counterexample within the radius.
    pub fn is_clear(&self) -> bool {
        self.violation.is_none()
    }
}

/// Scans the ball of radius `radius` in `<block(s) + block(t)>` for elements
/// outside `S_5(s)` that commute with an involution of `A_5(s)`.
///
/// Words in the result use the generator indices of `sys`.
pub fn bounded_centralizer_check(
    sys: &LabeledCoxeterSystem,
    s: usize,
    t: usize,
    radius: usize,
) -> Result<CentralizerCheck> {
    let (sub, keep, s_block) = two_block_subsystem(sys, s, t)?;
    let local = centralizer_check_local(&sub, &s_block, radius)?;
    Ok(globalize(local, &keep))
}

fn two_block_subsystem(
    sys: &LabeledCoxeterSystem,
    s: usize,
    t: usize,
) -> Result<(CoxeterSystem, Vec<usize>, GeneratorSubset)> {
    if s == t {
        return Err(Error::Precondition("centralizer check needs distinct vertices".into()));
    }
    let block_s = sys.s5_generators(s)?;
    let both = block_s.union(&sys.s5_generators(t)?);
    let (matrix, keep) = sys.matrix().restrict(&both);
    let local_block = keep.iter().enumerate().filter(|(_, g)| block_s.contains(**g)).map(|(k, _)| k).collect();
    Ok((CoxeterSystem::new(matrix), keep, local_block))
}

fn globalize(mut check: CentralizerCheck, keep: &[usize]) -> CentralizerCheck {
    let map = |w: &Word| -> Word { w.letters().iter().map(|&k| keep[k]).collect() };
    if let Some(v) = check.violation.as_mut() {
        v.involution = map(&v.involution);
        v.element = map(&v.element);
    }
    check
}

/// Involutions of even length in a finite set of elements.
fn even_involutions(system: &CoxeterSystem, elements: &IndexSet<GroupElement>) -> Result<Vec<GroupElement>> {
    let mut out = Vec::new();
    for w in elements {
        if !w.is_identity() && (w * w).is_identity() && system.length(w)? % 2 == 0 {
            out.push(w.clone());
        }
    }
    Ok(out)
}

fn centralizer_check_local(
    system: &CoxeterSystem,
    s_block: &GeneratorSubset,
    radius: usize,
) -> Result<CentralizerCheck> {
    let s5 = system.enumerate_parabolic(s_block, 120)?;
    let involutions = even_involutions(system, &s5)?;
    let ball: Vec<GroupElement> =
        system.ball(&GeneratorSubset::full(system.rank()), radius)?.into_iter().flatten().collect();
    let hit = ball.par_iter().find_first(|h| !s5.contains(*h) && involutions.iter().any(|a| h.commutes_with(a)));
    let violation = match hit {
        Some(h) => {
            let a = involutions.iter().find(|a| h.commutes_with(a)).expect("found above");
            Some(CentralizerViolation { involution: system.reduced_word(a)?, element: system.reduced_word(h)? })
        }
        None => None,
    };
    Ok(CentralizerCheck { radius, ball_size: ball.len(), involutions: involutions.len(), violation })
}

/// The reconstructed graph `K(G(C_Gamma))`.
#[derive(Clone, Debug)]
pub struct KGraph {
    classes: Vec<ConjugacyClass>,
    adjacency: FiniteGraph,
    witnesses: BTreeMap<(usize, usize), (Word, Word)>,
}

impl KGraph {
    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    /// Reflexive graph on the classes.
    pub fn adjacency(&self) -> &FiniteGraph {
        &self.adjacency
    }

    /// Commuting involution pair for each off-diagonal edge `(i, j)`, `i < j`.
    pub fn witnesses(&self) -> &BTreeMap<(usize, usize), (Word, Word)> {
        &self.witnesses
    }

    /// Index of the class containing `subset`.
    pub fn class_of(&self, subset: &GeneratorSubset) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(subset))
    }

    /// Re-checks every witness: both words are even-length involutions and
    /// they commute.
    pub fn verify_witnesses(&self, sys: &LabeledCoxeterSystem) -> Result<bool> {
        let system = sys.system();
        for (a_word, b_word) in self.witnesses.values() {
            let a = system.evaluate(a_word)?;
            let b = system.evaluate(b_word)?;
            for (x, w) in [(&a, a_word), (&b, b_word)] {
                if x.is_identity() || !(x * x).is_identity() || system.length(x)? % 2 != 0 || w.len() % 2 != 0 {
                    return Ok(false);
                }
            }
            if !system.commutator(&a, &b)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self, sys: &LabeledCoxeterSystem) -> KGraphJson {
        let matrix = sys.matrix();
        KGraphJson {
            graph: GraphJson {
                n: self.adjacency.len(),
                edges: self.adjacency.edges().into_iter().map(|(u, v)| [u, v]).collect(),
                reflexive: true,
                base: None,
            },
            classes: self.classes.iter().map(|c| c.members().iter().map(|m| m.names(matrix)).collect()).collect(),
            witnesses: self
                .witnesses
                .iter()
                .map(|(&(i, j), (a, b))| WitnessJson {
                    edge: [i, j],
                    words: [a.display(matrix).to_string(), b.display(matrix).to_string()],
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGraphJson {
    #[serde(flatten)]
    pub graph: GraphJson,
    pub classes: Vec<Vec<Vec<String>>>,
    pub witnesses: Vec<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub edge: [usize; 2],
    pub words: [String; 2],
}

type CheckKey = (Vec<Option<u32>>, Vec<usize>, usize);

/// Computes reconstructions with a fixed radius and enumeration budget.
///
/// Centralizer checks depend only on the labels of the two-block subsystem,
/// so their results are memoized across calls.
pub struct Reconstructor {
    radius: usize,
    enum_cap: usize,
    cache: Mutex<HashMap<CheckKey, CentralizerCheck>>,
}

impl Default for Reconstructor {
    fn default() -> Self {
        Self::new(DEFAULT_RADIUS, crate::coxeter::DEFAULT_ENUM_CAP)
    }
}

impl Reconstructor {
    pub fn new(radius: usize, enum_cap: usize) -> Self {
        Self { radius, enum_cap, cache: Mutex::new(HashMap::new()) }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn enum_cap(&self) -> usize {
        self.enum_cap
    }

    /// [`bounded_centralizer_check`] at this reconstructor's radius, memoized.
    pub fn centralizer_check(&self, sys: &LabeledCoxeterSystem, s: usize, t: usize) -> Result<CentralizerCheck> {
        let (sub, keep, s_block) = two_block_subsystem(sys, s, t)?;
        let m = sub.matrix();
        let labels = (0..m.rank())
            .flat_map(|i| (0..m.rank()).map(move |j| (i, j)))
            .map(|(i, j)| m.label(i, j).order())
            .collect();
        let key = (labels, s_block.iter().collect(), self.radius);
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(globalize(hit.clone(), &keep));
        }
        let local = centralizer_check_local(&sub, &s_block, self.radius)?;
        self.cache.lock().unwrap().insert(key, local.clone());
        Ok(globalize(local, &keep))
    }

    pub fn k_graph(&self, graph: &FiniteGraph) -> Result<(LabeledCoxeterSystem, KGraph)> {
        let sys = build_c(graph);
        let kg = self.k_graph_of(&sys)?;
        Ok((sys, kg))
    }

    /// Builds `K(G(C))` for an already constructed system.
    pub fn k_graph_of(&self, sys: &LabeledCoxeterSystem) -> Result<KGraph> {
        let classes = classify_s5_classes(sys, self.enum_cap)?;
        let n = sys.vertex_count();
        let mut edges = Vec::new();
        let mut witnesses = BTreeMap::new();
        for s in 0..n {
            for t in (s + 1)..n {
                match commuting_witness(sys, s, t)? {
                    Some(pair) => {
                        edges.push((s, t));
                        witnesses.insert((s, t), pair);
                    }
                    None => {
                        for (a, b) in [(s, t), (t, s)] {
                            let check = self.centralizer_check(sys, a, b)?;
                            if let Some(v) = check.violation {
                                return Err(Error::Falsified(format!(
                                    "{} commutes with {} but lies outside S5({a})",
                                    v.element.display(sys.matrix()),
                                    v.involution.display(sys.matrix()),
                                )));
                            }
                        }
                    }
                }
            }
        }
        let adjacency = FiniteGraph::from_edges(n, &edges, true)?;
        Ok(KGraph { classes, adjacency, witnesses })
    }

    /// `K_c`: the reconstructed graph plus a dominating base vertex.
    pub fn k_pointed(&self, graph: &FiniteGraph) -> Result<PointedReflexiveGraph> {
        let (_, kg) = self.k_graph(graph)?;
        make_pointed(kg.adjacency())
    }

    /// The isomorphism `v -> [S_5(v)]` from `graph` (made reflexive) onto
    /// its reconstruction, checked edge by edge in both directions.
    pub fn verify_reconstruction(&self, graph: &FiniteGraph) -> Result<VertexMap> {
        let (sys, kg) = self.k_graph(graph)?;
        reconstruction_map(graph, &sys, &kg)
    }
}

/// `v -> [S_5(v)]`, verified to be an isomorphism.
pub fn reconstruction_map(graph: &FiniteGraph, sys: &LabeledCoxeterSystem, kg: &KGraph) -> Result<VertexMap> {
    let n = graph.len();
    let mut image = Vec::with_capacity(n);
    for v in 0..n {
        let class = kg
            .class_of(&sys.s5_generators(v)?)
            .ok_or_else(|| Error::Falsified(format!("no class contains S5({v})")))?;
        image.push(class);
    }
    let map = VertexMap::new(image, kg.classes().len())?;
    let mut hit = vec![false; kg.classes().len()];
    for &c in map.image() {
        if std::mem::replace(&mut hit[c], true) {
            return Err(Error::Falsified(format!("two vertices map to class {c}")));
        }
    }
    if hit.iter().any(|h| !h) {
        return Err(Error::Falsified("some class is not of the form [S5(v)]".into()));
    }
    let reflexive = graph.to_reflexive();
    for u in 0..n {
        for v in 0..n {
            if reflexive.adjacent(u, v) != kg.adjacency().adjacent(map.apply(u), map.apply(v)) {
                return Err(Error::Falsified(format!("adjacency of ({u}, {v}) not preserved")));
            }
        }
    }
    Ok(map)
}

pub fn k_graph(graph: &FiniteGraph) -> Result<KGraph> {
    Ok(Reconstructor::default().k_graph(graph)?.1)
}

pub fn k_pointed(graph: &FiniteGraph) -> Result<PointedReflexiveGraph> {
    Reconstructor::default().k_pointed(graph)
}

pub fn verify_reconstruction(graph: &FiniteGraph) -> Result<VertexMap> {
    Reconstructor::default().verify_reconstruction(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_for_adjacent_pair_only() {
        let k2 = build_c(&FiniteGraph::complete(2));
        let (a, b) = commuting_witness(&k2, 0, 1).unwrap().unwrap();
        assert_eq!(a, Word::new(vec![0, 2]));
        assert_eq!(b, Word::new(vec![4, 6]));
        let apart = build_c(&FiniteGraph::empty(2, false));
        assert!(commuting_witness(&apart, 0, 1).unwrap().is_none());
        assert!(commuting_witness(&apart, 1, 1).is_err());
    }

    #[test]
    fn centralizer_radius_zero_is_vacuous() {
        let sys = build_c(&FiniteGraph::empty(2, false));
        let check = bounded_centralizer_check(&sys, 0, 1, 0).unwrap();
        assert!(check.is_clear());
        assert_eq!(check.ball_size, 1);
        assert_eq!(check.involutions, 15);
    }

    #[test]
    fn centralizer_radius_four_for_isolated_pair() {
        let sys = build_c(&FiniteGraph::empty(2, false));
        let check = bounded_centralizer_check(&sys, 0, 1, 4).unwrap();
        assert!(check.is_clear(), "{check:?}");
        let reverse = bounded_centralizer_check(&sys, 1, 0, 4).unwrap();
        assert!(reverse.is_clear());
    }

    #[test]
    fn adjacent_pair_violates_centralizer_bound() {
        let sys = build_c(&FiniteGraph::complete(2));
        let check = bounded_centralizer_check(&sys, 0, 1, 2).unwrap();
        let v = check.violation.expect("t1 t3 commutes with s1 s3");
        let a = sys.system().evaluate(&v.involution).unwrap();
        let h = sys.system().evaluate(&v.element).unwrap();
        assert!(a.commutes_with(&h));
        assert!(v.element.letters().iter().any(|&g| g >= 4));
    }

    #[test]
    fn k_graph_examples() {
        let kg = k_graph(&FiniteGraph::complete(2)).unwrap();
        assert_eq!(kg.adjacency().edges(), vec![(0, 1)]);
        assert!(kg.adjacency().is_reflexive());
        let kg = k_graph(&FiniteGraph::empty(2, false)).unwrap();
        assert_eq!(kg.classes().len(), 2);
        assert!(kg.adjacency().edges().is_empty());
        let kg = k_graph(&FiniteGraph::path(3)).unwrap();
        assert_eq!(kg.adjacency().edges(), vec![(0, 1), (1, 2)]);
        assert!(kg.witnesses().contains_key(&(0, 1)));
    }

    #[test]
    fn k_pointed_examples() {
        let p = k_pointed(&FiniteGraph::complete(2)).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.graph().dominating_vertices(), vec![0, 1, 2]);
        assert_eq!(k_pointed(&FiniteGraph::empty(0, false)).unwrap().len(), 1);
        assert_eq!(k_pointed(&FiniteGraph::path(3)).unwrap().len(), 4);
    }

    #[test]
    fn reconstruction_of_triangle_and_empty() {
        let map = verify_reconstruction(&FiniteGraph::complete(3)).unwrap();
        assert_eq!(map, VertexMap::identity(3));
        assert_eq!(verify_reconstruction(&FiniteGraph::empty(0, false)).unwrap().source_len(), 0);
    }

    #[test]
    fn witnesses_verify_and_serialize() {
        let (sys, kg) = Reconstructor::default().k_graph(&FiniteGraph::complete(2)).unwrap();
        assert!(kg.verify_witnesses(&sys).unwrap());
        let json = serde_json::to_value(kg.to_json(&sys)).unwrap();
        assert_eq!(json["n"], 2);
        assert_eq!(json["witnesses"][0]["words"][0], "v0_1 v0_3");
        assert_eq!(json["classes"][1][0][3], "v1_4");
    }
}
