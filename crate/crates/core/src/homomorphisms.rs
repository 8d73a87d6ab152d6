//! Coxeter presentations and homomorphisms that send each generator to a
//! generator or to the identity: the lift `L(f)` of a graph epimorphism,
//! the retraction onto two blocks, relator verification, and the induced
//! map on reconstructed graphs.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construction::{LabeledCoxeterSystem, BLOCK};
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, GeneratorSubset, GroupElement, Label, Word};
use crate::error::{Error, Result};
use crate::graphs::{is_homomorphism, PointedReflexiveGraph, VertexMap};
use crate::reconstruction::KGraph;

/// Closure budget when computing the image of an `S_5` block.
pub const IMAGE_CAP: usize = 240;

/// Generators and relators `(s_i s_j)^m` of a Coxeter group, including the
/// involution relators `s_i^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Self {
        Self { names, relators }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relators_mut(&mut self) -> &mut Vec<Word> {
        &mut self.relators
    }

    /// A `generators ...` line followed by one relator per line, written
    /// `a^2` for involutions and `(a b)^m` otherwise.
    pub fn to_text(&self) -> String {
        let mut out = String::from("generators");
        for name in &self.names {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        for r in &self.relators {
            let _ = writeln!(out, "{}", self.format_relator(r));
        }
        out
    }

    fn format_relator(&self, r: &Word) -> String {
        let letters = r.letters();
        match letters {
            [a, b] if a == b => format!("{}^2", self.names[*a]),
            [a, b, ..] if letters.len().is_multiple_of(2) && letters.chunks(2).all(|c| c == [*a, *b]) => {
                format!("({} {})^{}", self.names[*a], self.names[*b], letters.len() / 2)
            }
            _ => letters.iter().map(|&i| self.names[i].as_str()).collect::<Vec<_>>().join(" "),
        }
    }
}

pub fn presentation_of(matrix: &CoxeterMatrix) -> Presentation {
    let n = matrix.rank();
    let mut relators: Vec<Word> = (0..n).map(|i| Word::new(vec![i, i])).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if let Label::Finite(m) = matrix.label(i, j) {
                relators.push(Word::new(vec![i, j]).pow(m as usize));
            }
        }
    }
    Presentation::new(matrix.names().to_vec(), relators)
}

/// A map sending each source generator to a target generator (`Some`) or to
/// the identity (`None`).
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    source: Arc<CoxeterSystem>,
    target: Arc<CoxeterSystem>,
    images: Vec<Option<usize>>,
}

impl GeneratorMap {
    pub fn new(source: Arc<CoxeterSystem>, target: Arc<CoxeterSystem>, images: Vec<Option<usize>>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::SizeMismatch { expected: source.rank(), found: images.len() });
        }
        if let Some(&index) = images.iter().flatten().find(|&&j| j >= target.rank()) {
            return Err(Error::GeneratorOutOfRange { index, rank: target.rank() });
        }
        Ok(Self { source, target, images })
    }

    pub fn identity(system: Arc<CoxeterSystem>) -> Self {
        let images = (0..system.rank()).map(Some).collect();
        Self { source: Arc::clone(&system), target: system, images }
    }

    pub fn source(&self) -> &CoxeterSystem {
        &self.source
    }

    pub fn target(&self) -> &CoxeterSystem {
        &self.target
    }

    pub fn images(&self) -> &[Option<usize>] {
        &self.images
    }

    /// Image of a source word as a target word (identity letters dropped).
    pub fn map_word(&self, word: &Word) -> Word {
        word.letters().iter().filter_map(|&i| self.images[i]).collect()
    }

    /// Image of generator `i` as a target element.
    pub fn image_element(&self, i: usize) -> GroupElement {
        match self.images[i] {
            Some(j) => self.target.simple_reflection(j).expect("checked at construction").clone(),
            None => self.target.identity(),
        }
    }

    pub fn to_json(&self) -> GeneratorMapJson {
        let names = self.target.matrix();
        GeneratorMapJson {
            images: self
                .images
                .iter()
                .map(|g| g.map_or_else(|| "e".to_string(), |j| names.name(j).to_string()))
                .collect(),
        }
    }

    pub fn from_json(json: &GeneratorMapJson, source: Arc<CoxeterSystem>, target: Arc<CoxeterSystem>) -> Result<Self> {
        let images = json
            .images
            .iter()
            .map(|name| match name.as_str() {
                "e" => Ok(None),
                other => target
                    .matrix()
                    .index_of(other)
                    .map(Some)
                    .ok_or_else(|| Error::Precondition(format!("unknown target generator {other:?}"))),
            })
            .collect::<Result<_>>()?;
        Self::new(source, target, images)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMapJson {
    pub images: Vec<String>,
}

/// Substitutes the map into every relator of the source presentation and
/// checks that each image is the identity in the target.
pub fn verify_relators(phi: &GeneratorMap) -> bool {
    verify_relators_with(phi, &presentation_of(phi.source().matrix()))
}

/// [`verify_relators`] against an explicitly supplied source presentation.
pub fn verify_relators_with(phi: &GeneratorMap, presentation: &Presentation) -> bool {
    presentation.relators().par_iter().all(|r| {
        if r.letters().iter().any(|&i| i >= phi.images.len()) {
            return false;
        }
        phi.target().evaluate(&phi.map_word(r)).is_ok_and(|w| w.is_identity())
    })
}

/// Every target generator is the image of some source generator.
pub fn is_onto_generators(phi: &GeneratorMap) -> bool {
    let hit: HashSet<usize> = phi.images.iter().flatten().copied().collect();
    hit.len() == phi.target().rank()
}

/// `L(f)`: `s_i` goes to the identity when `f(s)` is the base of `delta_c`
/// and to `f(s)_i` otherwise. Vertex `k` of each system is the `k`-th
/// non-base vertex of the corresponding pointed graph.
pub fn lift_graph_epi(
    f: &VertexMap,
    gamma_c: &PointedReflexiveGraph,
    delta_c: &PointedReflexiveGraph,
    source: &LabeledCoxeterSystem,
    target: &LabeledCoxeterSystem,
) -> Result<GeneratorMap> {
    if f.source_len() != gamma_c.len() {
        return Err(Error::SizeMismatch { expected: gamma_c.len(), found: f.source_len() });
    }
    if f.target_len() != delta_c.len() {
        return Err(Error::SizeMismatch { expected: delta_c.len(), found: f.target_len() });
    }
    for (graph, sys) in [(gamma_c, source), (delta_c, target)] {
        if sys.vertex_count() + 1 != graph.len() {
            return Err(Error::SizeMismatch { expected: graph.len() - 1, found: sys.vertex_count() });
        }
    }
    if f.apply(gamma_c.base()) != delta_c.base() {
        return Err(Error::Precondition("graph map does not preserve the base".into()));
    }
    if !is_homomorphism(f, gamma_c.graph(), delta_c.graph())? {
        return Err(Error::Precondition("graph map is not a homomorphism".into()));
    }
    let mut images = Vec::with_capacity(source.matrix().rank());
    for k in 0..source.vertex_count() {
        let image = delta_c.underlying_index(f.apply(gamma_c.vertex_of_underlying(k)));
        for i in 1..=BLOCK {
            images.push(image.map(|k2| target.generator(k2, i)));
        }
    }
    GeneratorMap::new(source.shared(), target.shared(), images)
}

/// `rho`: identity on the blocks of `s` and `t`, identity element elsewhere.
pub fn retraction_rho(sys: &LabeledCoxeterSystem, s: usize, t: usize) -> Result<GeneratorMap> {
    if s == t {
        return Err(Error::Precondition("retraction needs distinct vertices".into()));
    }
    let kept = sys.s5_generators(s)?.union(&sys.s5_generators(t)?);
    let images = (0..sys.matrix().rank()).map(|g| kept.contains(g).then_some(g)).collect();
    let rho = GeneratorMap::new(sys.shared(), sys.shared(), images)?;
    if !verify_relators(&rho) {
        return Err(Error::Internal(format!("retraction onto blocks {s} and {t} breaks a relator")));
    }
    Ok(rho)
}

/// Where a source class goes under [`induced_k_map`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassVerdict {
    /// The image is conjugate to the `S_5` subgroup of this target class.
    Class(usize),
    /// The image has order at most 2.
    Base,
    /// Order 120 but no conjugator found within the search radius.
    Undetermined,
}

/// The map `K(phi)` on reconstructed pointed graphs, one verdict per source
/// class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedKMap {
    verdicts: Vec<ClassVerdict>,
    target_classes: usize,
}

impl InducedKMap {
    pub fn verdicts(&self) -> &[ClassVerdict] {
        &self.verdicts
    }

    pub fn is_resolved(&self) -> bool {
        !self.verdicts.contains(&ClassVerdict::Undetermined)
    }

    /// As a map between the pointed reconstructions (classes first, base
    /// last), if every verdict is resolved.
    pub fn to_vertex_map(&self) -> Option<VertexMap> {
        let base = self.target_classes;
        let mut image = Vec::with_capacity(self.verdicts.len() + 1);
        for v in &self.verdicts {
            image.push(match v {
                ClassVerdict::Class(c) => *c,
                ClassVerdict::Base => base,
                ClassVerdict::Undetermined => return None,
            });
        }
        image.push(base);
        Some(VertexMap::new(image, base + 1).expect("verdicts index target classes"))
    }
}

/// Computes `K(phi)`. Each source class is represented by its first member;
/// its image subgroup is enumerated (cap [`IMAGE_CAP`]). Order at most 2
/// goes to the base. Order 120 is matched against the target classes,
/// first syntactically and then by a conjugator search over the ball of
/// radius `radius`. Any other order is a falsification.
pub fn induced_k_map(
    phi: &GeneratorMap,
    source: (&LabeledCoxeterSystem, &KGraph),
    target: (&LabeledCoxeterSystem, &KGraph),
    radius: usize,
) -> Result<InducedKMap> {
    if !Arc::ptr_eq(&phi.source, &source.0.shared()) || !Arc::ptr_eq(&phi.target, &target.0.shared()) {
        return Err(Error::Precondition("generator map and labelled systems disagree".into()));
    }
    if !verify_relators(phi) {
        return Err(Error::Precondition("generator map does not respect the relators".into()));
    }
    let mut search = ConjugatorSearch::new(target.0, target.1, radius);
    let mut verdicts = Vec::with_capacity(source.1.classes().len());
    for class in source.1.classes() {
        let block = class.representative();
        let gens: Vec<GroupElement> = block.iter().map(|g| phi.image_element(g)).collect();
        let order = match phi.target().close(&gens, IMAGE_CAP) {
            Ok(set) => set.len(),
            Err(Error::CapExceeded { .. }) => {
                return Err(Error::Falsified(format!("image of an S5 subgroup exceeds {IMAGE_CAP} elements")))
            }
            Err(e) => return Err(e),
        };
        let verdict = match order {
            1 | 2 => ClassVerdict::Base,
            120 => {
                let images: Option<GeneratorSubset> = block.iter().map(|g| phi.images[g]).collect();
                match images.filter(|s| s.len() == BLOCK).and_then(|s| target.1.class_of(&s)) {
                    Some(c) => ClassVerdict::Class(c),
                    None => search.find(&gens)?,
                }
            }
            other => {
                return Err(Error::Falsified(format!(
                    "image of an S5 subgroup has order {other}, outside {{1, 2, 120}}"
                )))
            }
        };
        verdicts.push(verdict);
    }
    Ok(InducedKMap { verdicts, target_classes: target.1.classes().len() })
}

/// Looks for `w` with `w g w^-1` in a target block subgroup for every
/// generator `g` of an order-120 image, walking the ball sphere by sphere.
struct ConjugatorSearch<'a> {
    system: &'a CoxeterSystem,
    blocks: Vec<Option<HashSet<GroupElement>>>,
    representatives: Vec<GeneratorSubset>,
    radius: usize,
}

impl<'a> ConjugatorSearch<'a> {
    fn new(sys: &'a LabeledCoxeterSystem, k: &KGraph, radius: usize) -> Self {
        let representatives: Vec<_> = k.classes().iter().map(|c| c.representative().clone()).collect();
        Self { system: sys.system(), blocks: vec![None; representatives.len()], representatives, radius }
    }

    fn block(&mut self, c: usize) -> Result<&HashSet<GroupElement>> {
        if self.blocks[c].is_none() {
            let elements = self.system.enumerate_parabolic(&self.representatives[c], 120)?;
            self.blocks[c] = Some(elements.into_iter().collect());
        }
        Ok(self.blocks[c].as_ref().unwrap())
    }

    fn find(&mut self, gens: &[GroupElement]) -> Result<ClassVerdict> {
        let rank = self.system.rank();
        let mut seen = HashSet::new();
        seen.insert(self.system.identity());
        let mut sphere = vec![(self.system.identity(), self.system.identity())];
        for step in 0..=self.radius {
            for (w, w_inv) in &sphere {
                let conjugates: Vec<GroupElement> = gens.iter().map(|g| &(w * g) * w_inv).collect();
                for c in 0..self.representatives.len() {
                    let block = self.block(c)?;
                    if conjugates.iter().all(|x| block.contains(x)) {
                        return Ok(ClassVerdict::Class(c));
                    }
                }
            }
            if step == self.radius {
                break;
            }
            let mut next = Vec::new();
            for (w, w_inv) in &sphere {
                for i in 0..rank {
                    let v = self.system.mul_generator(w, i);
                    if seen.insert(v.clone()) {
                        next.push((v, self.system.generator_mul(i, w_inv)));
                    }
                }
            }
            sphere = next;
        }
        Ok(ClassVerdict::Undetermined)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_c, build_l4};
    use crate::graphs::{make_pointed, pointed_epimorphisms, FiniteGraph};
    use crate::reconstruction::Reconstructor;

    fn l4_system() -> Arc<CoxeterSystem> {
        Arc::new(CoxeterSystem::new(build_l4()))
    }

    #[test]
    fn presentation_counts() {
        assert_eq!(presentation_of(&build_l4()).relators().len(), 10);
        let mut inf = CoxeterMatrix::free(CoxeterMatrix::default_names(2));
        inf.set(0, 1, Label::Infinity).unwrap();
        assert_eq!(presentation_of(&inf).relators().len(), 2);
        let k2 = build_c(&FiniteGraph::complete(2));
        assert_eq!(presentation_of(k2.matrix()).relators().len(), 25);
        assert!(presentation_of(build_c(&FiniteGraph::empty(0, false)).matrix()).relators().is_empty());
    }

    #[test]
    fn presentation_text() {
        let text = presentation_of(&build_l4()).to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "generators s_1 s_2 s_3 s_4");
        assert_eq!(lines[1], "s_1^2");
        assert_eq!(lines[5], "(s_1 s_2)^3");
        assert_eq!(lines[6], "(s_1 s_3)^2");
        assert_eq!(lines.len(), 11);
    }

    #[test]
    fn relators_hold_in_own_system() {
        for g in [FiniteGraph::complete(2), FiniteGraph::path(3), FiniteGraph::empty(2, false)] {
            let sys = build_c(&g);
            assert!(verify_relators(&GeneratorMap::identity(sys.shared())));
        }
    }

    #[test]
    fn collapsing_two_generators_breaks_relators() {
        let l4 = l4_system();
        let phi = GeneratorMap::new(l4.clone(), l4, vec![Some(0), Some(1), Some(1), Some(3)]).unwrap();
        assert!(!verify_relators(&phi));
        assert!(!is_onto_generators(&phi));
    }

    #[test]
    fn generator_map_validation_and_json() {
        let l4 = l4_system();
        assert!(GeneratorMap::new(l4.clone(), l4.clone(), vec![Some(0)]).is_err());
        assert!(GeneratorMap::new(l4.clone(), l4.clone(), vec![Some(4), None, None, None]).is_err());
        let phi = GeneratorMap::new(l4.clone(), l4.clone(), vec![Some(0), None, Some(2), None]).unwrap();
        let json = phi.to_json();
        assert_eq!(json.images, vec!["s_1", "e", "s_3", "e"]);
        let back = GeneratorMap::from_json(&json, l4.clone(), l4).unwrap();
        assert_eq!(back.images(), phi.images());
    }

    #[test]
    fn lift_identity_and_collapse() {
        let k2 = FiniteGraph::complete(2);
        let gamma_c = make_pointed(&k2.to_reflexive()).unwrap();
        let sys = build_c(&k2);
        let id = lift_graph_epi(&VertexMap::identity(3), &gamma_c, &gamma_c, &sys, &sys).unwrap();
        assert_eq!(id.images(), GeneratorMap::identity(sys.shared()).images());

        let one = FiniteGraph::empty(1, true);
        let delta_c = make_pointed(&one).unwrap();
        let target = build_c(&one);
        let fold = VertexMap::new(vec![0, 0, 1], 2).unwrap();
        let phi = lift_graph_epi(&fold, &gamma_c, &delta_c, &sys, &target).unwrap();
        assert_eq!(phi.images(), &[Some(0), Some(1), Some(2), Some(3), Some(0), Some(1), Some(2), Some(3)]);
        assert!(verify_relators(&phi) && is_onto_generators(&phi));

        let squash = VertexMap::new(vec![0, 1, 1], 2).unwrap();
        let phi = lift_graph_epi(&squash, &gamma_c, &delta_c, &sys, &target).unwrap();
        assert_eq!(&phi.images()[4..], &[None; 4]);
        assert!(verify_relators(&phi));

        let moves_base = VertexMap::new(vec![1, 1, 0], 2).unwrap();
        assert!(lift_graph_epi(&moves_base, &gamma_c, &delta_c, &sys, &target).is_err());
    }

    #[test]
    fn retraction_kills_middle_block() {
        let p3 = build_c(&FiniteGraph::path(3));
        let rho = retraction_rho(&p3, 0, 2).unwrap();
        assert_eq!(&rho.images()[4..8], &[None; 4]);
        assert_eq!(rho.images()[8], Some(8));
        let k2 = build_c(&FiniteGraph::complete(2));
        assert_eq!(retraction_rho(&k2, 0, 1).unwrap().images(), GeneratorMap::identity(k2.shared()).images());
        assert!(retraction_rho(&k2, 1, 1).is_err());
    }

    #[test]
    fn induced_map_of_retraction_and_identity() {
        let r = Reconstructor::default();
        let (sys, kg) = r.k_graph(&FiniteGraph::path(3)).unwrap();
        let rho = retraction_rho(&sys, 0, 2).unwrap();
        let map = induced_k_map(&rho, (&sys, &kg), (&sys, &kg), 6).unwrap();
        assert_eq!(map.verdicts(), &[ClassVerdict::Class(0), ClassVerdict::Base, ClassVerdict::Class(2)]);
        assert_eq!(map.to_vertex_map().unwrap().image(), &[0, 3, 2, 3]);
        let id = GeneratorMap::identity(sys.shared());
        let map = induced_k_map(&id, (&sys, &kg), (&sys, &kg), 6).unwrap();
        assert_eq!(map.to_vertex_map().unwrap(), VertexMap::identity(4));
    }

    #[test]
    fn conjugator_search_identifies_conjugated_block() {
        let r = Reconstructor::default();
        let (sys, kg) = r.k_graph(&FiniteGraph::empty(2, false)).unwrap();
        let system = sys.system();
        let w = system.evaluate(&Word::new(vec![7, 6])).unwrap();
        let w_inv = system.invert(&w).unwrap();
        let gens: Vec<GroupElement> = (0..4).map(|g| &(&w * system.simple_reflection(g).unwrap()) * &w_inv).collect();
        let mut search = ConjugatorSearch::new(&sys, &kg, 2);
        assert_eq!(search.find(&gens).unwrap(), ClassVerdict::Class(0));
        let mut short = ConjugatorSearch::new(&sys, &kg, 1);
        assert_eq!(short.find(&gens).unwrap(), ClassVerdict::Undetermined);
    }

    #[test]
    fn lifts_of_small_epimorphisms_are_homomorphisms() {
        let r = Reconstructor::default();
        let graphs: Vec<FiniteGraph> = (0..=2).flat_map(|n| FiniteGraph::all_labelled(n, true)).collect();
        for g in &graphs {
            let gc = make_pointed(g).unwrap();
            let (gs, gk) = r.k_graph(g).unwrap();
            for d in &graphs {
                let dc = make_pointed(d).unwrap();
                let (ds, dk) = r.k_graph(d).unwrap();
                for f in pointed_epimorphisms(&gc, &dc) {
                    let phi = lift_graph_epi(&f, &gc, &dc, &gs, &ds).unwrap();
                    assert!(verify_relators(&phi));
                    assert!(is_onto_generators(&phi));
                    let induced = induced_k_map(&phi, (&gs, &gk), (&ds, &dk), 6).unwrap();
                    assert_eq!(induced.to_vertex_map().unwrap(), f);
                }
            }
        }
    }
}
