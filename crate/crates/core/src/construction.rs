//! The Coxeter graphs `L_4` and `C_Gamma`, the auxiliary graph `op`, and a
//! brute-force check that `G(L_4)` is `S_5`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::coxeter::{CoxeterMatrix, CoxeterSystem, GeneratorSubset, GroupElement, Label, Word};
use crate::error::{Error, Result};
use crate::graphs::FiniteGraph;

/// Generators per vertex block.
pub const BLOCK: usize = 4;

/// The Coxeter graph `L_4` (type `A_4`): labels 3 on consecutive generators,
/// 2 otherwise.
pub fn build_l4() -> CoxeterMatrix {
    CoxeterMatrix::from_fn(CoxeterMatrix::default_names(BLOCK), l4_label).expect("L4 labels are supported")
}

fn l4_label(i: usize, j: usize) -> Label {
    if i.abs_diff(j) == 1 {
        Label::Finite(3)
    } else {
        Label::Finite(2)
    }
}

/// `C_Gamma` together with the bookkeeping from generators back to
/// `(vertex, position)` pairs. Generator `4v + (i - 1)` is `v_i`.
#[derive(Clone, Debug)]
pub struct LabeledCoxeterSystem {
    system: Arc<CoxeterSystem>,
    vertices: usize,
}

impl LabeledCoxeterSystem {
    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    /// Shared handle to the engine, for maps between systems.
    pub fn shared(&self) -> Arc<CoxeterSystem> {
        Arc::clone(&self.system)
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        self.system.matrix()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Index of `v_position`, with `position` in `1..=4`.
    pub fn generator(&self, v: usize, position: usize) -> usize {
        debug_assert!((1..=BLOCK).contains(&position));
        BLOCK * v + position - 1
    }

    /// `(vertex, position)` of a generator.
    pub fn block_position(&self, generator: usize) -> (usize, usize) {
        (generator / BLOCK, generator % BLOCK + 1)
    }

    /// The generators `v_1, ..., v_4`, which span `S_5(v)`.
    pub fn s5_generators(&self, v: usize) -> Result<GeneratorSubset> {
        if v >= self.vertices {
            return Err(Error::UnknownVertex(v));
        }
        Ok((1..=BLOCK).map(|i| self.generator(v, i)).collect())
    }

    /// The word `v_1 v_3`, an involution in `A_5(v)`.
    pub fn alt_involution(&self, v: usize) -> Result<Word> {
        if v >= self.vertices {
            return Err(Error::UnknownVertex(v));
        }
        Ok(Word::new(vec![self.generator(v, 1), self.generator(v, 3)]))
    }
}

/// Builds `C_Gamma`. Each vertex becomes an `L_4` block; distinct blocks get
/// `m(s_4, t_4) = 2`, adjacent blocks additionally get label 2 on all of
/// `{s_1, s_3} x {t_1, t_3}`, and every other cross pair is left without a
/// relation (`inf`). Loops of a reflexive input are ignored.
pub fn build_c(graph: &FiniteGraph) -> LabeledCoxeterSystem {
    let n = graph.len();
    let names = (0..n).flat_map(|v| (1..=BLOCK).map(move |i| format!("v{v}_{i}"))).collect();
    let mut matrix = CoxeterMatrix::free(names);
    let two = Label::Finite(2);
    let set = |m: &mut CoxeterMatrix, i: usize, j: usize, l: Label| {
        m.set(i, j, l).expect("C_Gamma labels are supported");
    };
    for v in 0..n {
        for i in 0..BLOCK {
            for j in (i + 1)..BLOCK {
                set(&mut matrix, BLOCK * v + i, BLOCK * v + j, l4_label(i, j));
            }
        }
    }
    for s in 0..n {
        for t in (s + 1)..n {
            set(&mut matrix, BLOCK * s + 3, BLOCK * t + 3, two);
            if graph.adjacent(s, t) {
                for i in [0, 2] {
                    for j in [0, 2] {
                        set(&mut matrix, BLOCK * s + i, BLOCK * t + j, two);
                    }
                }
            }
        }
    }
    LabeledCoxeterSystem { system: Arc::new(CoxeterSystem::new(matrix)), vertices: n }
}

/// The graph on generators with an edge exactly where the label is 3 or
/// `inf`: label-2 edges are dropped, non-edges become `inf` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpGraph(FiniteGraph);

impl OpGraph {
    pub fn graph(&self) -> &FiniteGraph {
        &self.0
    }

    /// Connected component of `start` in the subgraph induced on `within`.
    pub fn component(&self, within: &GeneratorSubset, start: usize) -> GeneratorSubset {
        let mut component = GeneratorSubset::from_indices([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in within.iter() {
                if !component.contains(v) && self.0.adjacent(u, v) {
                    component.insert(v);
                    stack.push(v);
                }
            }
        }
        component
    }
}

pub fn op_graph(matrix: &CoxeterMatrix) -> OpGraph {
    let n = matrix.rank();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if matches!(matrix.label(i, j), Label::Finite(3) | Label::Infinity) {
                edges.push((i, j));
            }
        }
    }
    OpGraph(FiniteGraph::from_edges(n, &edges, false).expect("indices in range"))
}

/// Outcome of [`verify_l4_is_s5`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct L4Report {
    pub order: usize,
    pub nonabelian: bool,
    pub even_order: usize,
    pub even_is_subgroup: bool,
    pub even_is_simple: bool,
    pub longest_length: usize,
}

impl L4Report {
    pub fn passed(&self) -> bool {
        self.order == 120 && self.nonabelian && self.even_order == 60 && self.even_is_subgroup && self.even_is_simple
    }
}

/// Enumerates `G(L_4)` and checks it has the shape of `S_5`: order 120,
/// nonabelian, with the even-length elements forming a simple subgroup of
/// order 60.
pub fn verify_l4_is_s5(cap: usize) -> Result<L4Report> {
    let sys = CoxeterSystem::new(build_l4());
    let elements = sys.enumerate_parabolic(&GeneratorSubset::full(BLOCK), cap)?;
    let nonabelian = (0..BLOCK).any(|i| {
        (0..BLOCK).any(|j| {
            let (a, b) = (&sys.simple_reflection(i).unwrap(), &sys.simple_reflection(j).unwrap());
            !a.commutes_with(b)
        })
    });
    let mut even = Vec::new();
    let mut longest_length = 0;
    for w in &elements {
        let l = sys.length(w)?;
        longest_length = longest_length.max(l);
        if l % 2 == 0 {
            even.push(w.clone());
        }
    }
    let table = MultiplicationTable::new(&even);
    let report = L4Report {
        order: elements.len(),
        nonabelian,
        even_order: even.len(),
        even_is_subgroup: table.is_some(),
        even_is_simple: table.as_ref().is_some_and(MultiplicationTable::is_simple),
        longest_length,
    };
    if !report.passed() {
        return Err(Error::Falsified(format!("G(L4) does not look like S5: {report:?}")));
    }
    Ok(report)
}

/// Cayley table of a finite set of matrices closed under multiplication.
pub(crate) struct MultiplicationTable {
    product: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl MultiplicationTable {
    /// `None` if the set is not closed under products or lacks inverses.
    pub(crate) fn new(elements: &[GroupElement]) -> Option<Self> {
        let index: HashMap<&GroupElement, usize> = elements.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let identity = elements.iter().position(GroupElement::is_identity)?;
        let mut product = Vec::with_capacity(elements.len());
        for a in elements {
            let row: Option<Vec<usize>> = elements.iter().map(|b| index.get(&(a * b)).copied()).collect();
            product.push(row?);
        }
        let inverse: Option<Vec<usize>> = product.iter().map(|row| row.iter().position(|&p| p == identity)).collect();
        Some(Self { product, inverse: inverse?, identity })
    }

    pub(crate) fn order(&self) -> usize {
        self.product.len()
    }

    /// Subgroup generated by the conjugacy class of `x`.
    pub(crate) fn normal_closure(&self, x: usize) -> Vec<bool> {
        let n = self.order();
        let mut generators: Vec<usize> = (0..n).map(|g| self.product[self.product[g][x]][self.inverse[g]]).collect();
        generators.sort_unstable();
        generators.dedup();
        let mut member = vec![false; n];
        member[self.identity] = true;
        let mut queue = vec![self.identity];
        while let Some(a) = queue.pop() {
            for &g in &generators {
                let p = self.product[a][g];
                if !member[p] {
                    member[p] = true;
                    queue.push(p);
                }
            }
        }
        member
    }

    /// No proper nontrivial normal subgroup: every non-identity element's
    /// normal closure is the whole group.
    pub(crate) fn is_simple(&self) -> bool {
        self.order() > 1
            && (0..self.order()).filter(|&x| x != self.identity).all(|x| self.normal_closure(x).into_iter().all(|m| m))
    }
}
