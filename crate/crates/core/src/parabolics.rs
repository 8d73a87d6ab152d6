//! Conjugacy of special subgroups through the graph `K_S`.
//!
//! For `I` a set of generators and `s` outside it, let `K` be the component
//! of `s` in the `op` graph restricted to `I + s`. When `<K>` is finite,
//! `nu(I, s) = w_{K - s} w_K` conjugates `<I>` onto `<J>` for a set `J` of
//! the same size; these moves are the edges of `K_S`, and two special
//! subgroups are conjugate exactly when their generating sets lie in the same
//! component.

use std::collections::{BTreeSet, VecDeque};

use crate::construction::{op_graph, LabeledCoxeterSystem, OpGraph};
use crate::coxeter::{CoxeterSystem, GeneratorSubset, GroupElement};
use crate::error::{Error, Result};

/// One edge `from --label--> to` of `K_S`, with its conjugator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KsEdge {
    pub from: GeneratorSubset,
    pub label: usize,
    pub nu: GroupElement,
    pub to: GeneratorSubset,
}

/// A component of `K_S`, i.e. one conjugacy class of special subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    members: BTreeSet<GeneratorSubset>,
}

impl ConjugacyClass {
    pub fn members(&self) -> &BTreeSet<GeneratorSubset> {
        &self.members
    }

    /// Least member in lexicographic order of index lists.
    pub fn representative(&self) -> &GeneratorSubset {
        self.members.first().expect("classes are nonempty")
    }

    pub fn contains(&self, subset: &GeneratorSubset) -> bool {
        self.members.contains(subset)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Lazy explorer of `K_S` for one Coxeter system.
pub struct KsGraph<'a> {
    system: &'a CoxeterSystem,
    op: OpGraph,
}

impl<'a> KsGraph<'a> {
    pub fn new(system: &'a CoxeterSystem) -> Self {
        Self { system, op: op_graph(system.matrix()) }
    }

    pub fn system(&self) -> &CoxeterSystem {
        self.system
    }

    /// The edge out of `subset` labelled `s`, or `None` when `nu(subset, s)`
    /// is undefined because the relevant component is not spherical.
    pub fn step(&self, subset: &GeneratorSubset, s: usize) -> Result<Option<KsEdge>> {
        let sys = self.system;
        sys.simple_reflection(s)?;
        if subset.contains(s) {
            return Err(Error::Precondition(format!("generator {s} already in the subset")));
        }
        let component = self.op.component(&subset.with(s), s);
        if !sys.is_spherical(&component) {
            return Ok(None);
        }
        let w_rest = sys.longest_element(&component.without(s))?;
        let w_full = sys.longest_element(&component)?;
        let nu = &w_rest * &w_full;
        // Both factors are involutions.
        let nu_inv = &w_full * &w_rest;

        let mut to = GeneratorSubset::new();
        for i in subset.iter() {
            let conjugate = &(&nu_inv * sys.simple_reflection(i)?) * &nu;
            if !component.contains(i) {
                if &conjugate != sys.simple_reflection(i)? {
                    return Err(Error::Falsified(format!(
                        "nu({subset:?}, {s}) does not centralize generator {i} outside its component"
                    )));
                }
                to.insert(i);
                continue;
            }
            let j = component.iter().find(|&j| sys.simple_reflection(j).ok() == Some(&conjugate)).ok_or_else(|| {
                Error::Falsified(format!("nu({subset:?}, {s}) conjugates generator {i} to a non-simple reflection"))
            })?;
            to.insert(j);
        }
        if to.len() != subset.len() {
            return Err(Error::Falsified(format!("nu({subset:?}, {s}) changed the subset size")));
        }
        Ok(Some(KsEdge { from: subset.clone(), label: s, nu, to }))
    }

    /// All edges leaving `subset`.
    pub fn out_edges(&self, subset: &GeneratorSubset) -> Result<Vec<KsEdge>> {
        let mut edges = Vec::new();
        for s in (0..self.system.rank()).filter(|&s| !subset.contains(s)) {
            if let Some(edge) = self.step(subset, s)? {
                edges.push(edge);
            }
        }
        Ok(edges)
    }

    /// Breadth-first closure of `seed` under `K_S` edges, with every edge
    /// traversed. Fails if the component grows beyond `cap` members.
    pub fn explore(&self, seed: &GeneratorSubset, cap: usize) -> Result<(ConjugacyClass, Vec<KsEdge>)> {
        if !self.system.is_spherical(seed) {
            return Err(Error::Precondition(format!("{seed:?} is not spherical")));
        }
        let mut members = BTreeSet::from([seed.clone()]);
        let mut queue = VecDeque::from([seed.clone()]);
        let mut edges = Vec::new();
        while let Some(subset) = queue.pop_front() {
            for edge in self.out_edges(&subset)? {
                if members.insert(edge.to.clone()) {
                    if members.len() > cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    queue.push_back(edge.to.clone());
                }
                edges.push(edge);
            }
        }
        Ok((ConjugacyClass { members }, edges))
    }

    pub fn component(&self, seed: &GeneratorSubset, cap: usize) -> Result<ConjugacyClass> {
        Ok(self.explore(seed, cap)?.0)
    }

    /// Whether `<a>` and `<b>` are conjugate.
    pub fn are_conjugate(&self, a: &GeneratorSubset, b: &GeneratorSubset, cap: usize) -> Result<bool> {
        if !self.system.is_spherical(b) {
            return Err(Error::Precondition(format!("{b:?} is not spherical")));
        }
        if a.len() != b.len() {
            self.component(a, cap)?;
            return Ok(false);
        }
        Ok(self.component(a, cap)?.contains(b))
    }

    /// Checks the conjugation invariant of an edge generator by generator.
    pub fn verify_edge(&self, edge: &KsEdge) -> Result<bool> {
        let sys = self.system;
        if edge.from.len() != edge.to.len() {
            return Ok(false);
        }
        let nu_inv = sys.invert(&edge.nu)?;
        let mut images = GeneratorSubset::new();
        for i in edge.from.iter() {
            let conjugate = &(&nu_inv * sys.simple_reflection(i)?) * &edge.nu;
            match (0..sys.rank()).find(|&j| sys.simple_reflection(j).ok() == Some(&conjugate)) {
                Some(j) => images.insert(j),
                None => return Ok(false),
            }
        }
        Ok(images == edge.to)
    }
}

/// Edges `I -> J` for which no edge `J -> I` was found. An empty result means
/// every explored edge can be walked back.
pub fn irreversible_edges(edges: &[KsEdge]) -> Vec<(GeneratorSubset, GeneratorSubset)> {
    let present: BTreeSet<(&GeneratorSubset, &GeneratorSubset)> = edges.iter().map(|e| (&e.from, &e.to)).collect();
    edges.iter().filter(|e| !present.contains(&(&e.to, &e.from))).map(|e| (e.from.clone(), e.to.clone())).collect()
}

pub fn ks_step(system: &CoxeterSystem, subset: &GeneratorSubset, s: usize) -> Result<Option<KsEdge>> {
    KsGraph::new(system).step(subset, s)
}

pub fn conjugacy_component(system: &CoxeterSystem, subset: &GeneratorSubset, cap: usize) -> Result<ConjugacyClass> {
    KsGraph::new(system).component(subset, cap)
}

pub fn are_special_conjugate(
    system: &CoxeterSystem,
    a: &GeneratorSubset,
    b: &GeneratorSubset,
    cap: usize,
) -> Result<bool> {
    KsGraph::new(system).are_conjugate(a, b, cap)
}

/// Whether a finite set of group elements contains a non-commuting pair of
/// the given generators.
fn generators_commute(system: &CoxeterSystem, subset: &GeneratorSubset) -> bool {
    let gens: Vec<&GroupElement> = subset.iter().map(|i| system.simple_reflection(i).unwrap()).collect();
    gens.iter().all(|a| gens.iter().all(|b| a.commutes_with(b)))
}

/// Conjugacy classes of special `S_5` subgroups of `G(C_Gamma)`, one per
/// vertex and in vertex order.
///
/// Every spherical set of at most four generators is scanned; those spanning
/// a nonabelian group of order 120 must be blocks, and the blocks must fall
/// into pairwise distinct singleton components of `K_S`. Any other outcome is
/// reported as [`Error::Falsified`].
pub fn classify_s5_classes(sys: &LabeledCoxeterSystem, cap: usize) -> Result<Vec<ConjugacyClass>> {
    let system = sys.system();
    let ks = KsGraph::new(system);
    let mut found = Vec::new();
    for subset in GeneratorSubset::all_up_to(system.rank(), 4) {
        if !system.is_spherical(&subset) {
            continue;
        }
        let order = system.enumerate_parabolic(&subset, cap)?.len();
        if order == 120 && !generators_commute(system, &subset) {
            found.push(subset);
        }
    }
    let blocks: Vec<GeneratorSubset> = (0..sys.vertex_count()).map(|v| sys.s5_generators(v)).collect::<Result<_>>()?;
    if let Some(odd) = found.iter().find(|t| !blocks.contains(t)) {
        return Err(Error::Falsified(format!(
            "spherical subset {} spans S5 but is not a block",
            odd.display(system.matrix())
        )));
    }
    let mut classes = Vec::with_capacity(blocks.len());
    for block in &blocks {
        if !found.contains(block) {
            return Err(Error::Falsified(format!("block {block:?} does not span S5")));
        }
        let class = ks.component(block, cap)?;
        if class.len() != 1 {
            return Err(Error::Falsified(format!("block {block:?} has a K_S component of size {}", class.len())));
        }
        classes.push(class);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_c, build_l4};
    use crate::coxeter::{Word, DEFAULT_ENUM_CAP};
    use crate::graphs::FiniteGraph;

    fn set(indices: &[usize]) -> GeneratorSubset {
        GeneratorSubset::from_indices(indices.iter().copied())
    }

    #[test]
    fn l4_step_from_s1_along_s2() {
        let sys = CoxeterSystem::new(build_l4());
        let edge = ks_step(&sys, &set(&[0]), 1).unwrap().unwrap();
        assert_eq!(edge.nu, sys.evaluate(&Word::new(vec![1, 0])).unwrap());
        assert_eq!(edge.to, set(&[1]));
        let conj = &(&sys.invert(&edge.nu).unwrap() * sys.simple_reflection(0).unwrap()) * &edge.nu;
        assert_eq!(&conj, sys.simple_reflection(1).unwrap());
        assert!(KsGraph::new(&sys).verify_edge(&edge).unwrap());
    }

    #[test]
    fn rank_one_step_from_empty_set() {
        let sys = CoxeterSystem::new(build_l4());
        for s in 0..4 {
            let edge = ks_step(&sys, &GeneratorSubset::new(), s).unwrap().unwrap();
            assert_eq!(&edge.nu, sys.simple_reflection(s).unwrap());
            assert!(edge.to.is_empty());
        }
        assert_eq!(conjugacy_component(&sys, &GeneratorSubset::new(), 10).unwrap().len(), 1);
    }

    #[test]
    fn step_rejects_member_label() {
        let sys = CoxeterSystem::new(build_l4());
        assert!(matches!(ks_step(&sys, &set(&[0]), 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn blocks_have_no_outgoing_edges() {
        for graph in [FiniteGraph::complete(2), FiniteGraph::empty(2, false)] {
            let c = build_c(&graph);
            let ks = KsGraph::new(c.system());
            for v in 0..2 {
                let block = c.s5_generators(v).unwrap();
                for x in (0..8).filter(|x| !block.contains(*x)) {
                    assert!(ks.step(&block, x).unwrap().is_none());
                }
                let class = ks.component(&block, 100).unwrap();
                assert_eq!(class.members().iter().collect::<Vec<_>>(), vec![&block]);
            }
            let (b0, b1) = (c.s5_generators(0).unwrap(), c.s5_generators(1).unwrap());
            assert!(!ks.are_conjugate(&b0, &b1, 100).unwrap());
            assert!(ks.are_conjugate(&b0, &b0, 100).unwrap());
        }
    }

    #[test]
    fn l4_reflections_form_one_class() {
        let sys = CoxeterSystem::new(build_l4());
        let ks = KsGraph::new(&sys);
        let (class, edges) = ks.explore(&set(&[0]), 100).unwrap();
        let expected: BTreeSet<GeneratorSubset> = (0..4).map(|i| set(&[i])).collect();
        assert_eq!(class.members(), &expected);
        assert_eq!(class.representative(), &set(&[0]));
        assert!(irreversible_edges(&edges).is_empty());
        for edge in &edges {
            assert!(ks.verify_edge(edge).unwrap());
        }
        assert!(are_special_conjugate(&sys, &set(&[0]), &set(&[3]), 100).unwrap());
        assert!(!are_special_conjugate(&sys, &set(&[0]), &set(&[0, 2]), 100).unwrap());
    }

    #[test]
    fn l4_rank_two_classes() {
        // In S_5: <s1,s2> ~ <s2,s3> ~ <s3,s4> (S_3 on three points), and
        // <s1,s3> ~ <s1,s4> ~ <s2,s4> (two disjoint transpositions).
        let sys = CoxeterSystem::new(build_l4());
        let ks = KsGraph::new(&sys);
        let a = ks.component(&set(&[0, 1]), 100).unwrap();
        let b = ks.component(&set(&[0, 2]), 100).unwrap();
        assert_eq!(a.members(), &[set(&[0, 1]), set(&[1, 2]), set(&[2, 3])].into_iter().collect());
        assert_eq!(b.members(), &[set(&[0, 2]), set(&[0, 3]), set(&[1, 3])].into_iter().collect());
    }

    #[test]
    fn explore_respects_cap_and_sphericity() {
        let sys = CoxeterSystem::new(build_l4());
        assert_eq!(conjugacy_component(&sys, &set(&[0]), 2), Err(Error::CapExceeded { cap: 2 }));
        let free =
            CoxeterSystem::new(crate::coxeter::CoxeterMatrix::free(crate::coxeter::CoxeterMatrix::default_names(2)));
        assert!(matches!(conjugacy_component(&free, &set(&[0, 1]), 10), Err(Error::Precondition(_))));
    }

    #[test]
    fn classify_counts() {
        for (graph, expected) in [
            (FiniteGraph::complete(2), 2),
            (FiniteGraph::empty(2, false), 2),
            (FiniteGraph::empty(0, false), 0),
            (FiniteGraph::empty(1, false), 1),
        ] {
            let c = build_c(&graph);
            let classes = classify_s5_classes(&c, DEFAULT_ENUM_CAP).unwrap();
            assert_eq!(classes.len(), expected);
            for (v, class) in classes.iter().enumerate() {
                assert_eq!(class.representative(), &c.s5_generators(v).unwrap());
            }
        }
    }
}
