//! Backtracking searches for homomorphisms between finite graphs.
//!
//! Source vertices are assigned in ascending index order and candidate images
//! are tried in ascending order, so the first witness found is the
//! lexicographically least one.

use std::ops::ControlFlow;

use super::{FiniteGraph, PointedReflexiveGraph, VertexMap};
use crate::error::{Error, Result};

/// How a pointed epimorphism search treats the base vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpiMode {
    /// Only maps sending the source base to the target base.
    BasePreserving,
    /// Any surjective homomorphism of the underlying reflexive graphs.
    Unrestricted,
}

struct Search<'a> {
    source: &'a FiniteGraph,
    target: &'a FiniteGraph,
    injective: bool,
    surjective: bool,
    /// Also require non-adjacent pairs to map to non-adjacent pairs.
    reflect: bool,
    pinned: Option<(usize, usize)>,
}

struct State {
    image: Vec<usize>,
    hits: Vec<usize>,
    uncovered: usize,
}

impl Search<'_> {
    fn run<F>(&self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let m = self.target.len();
        if self.surjective && self.source.len() < m {
            return ControlFlow::Continue(());
        }
        if self.injective && self.source.len() > m {
            return ControlFlow::Continue(());
        }
        let mut state = State { image: Vec::with_capacity(self.source.len()), hits: vec![0; m], uncovered: m };
        self.extend(&mut state, visit)
    }

    fn extend<F>(&self, state: &mut State, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let v = state.image.len();
        if v == self.source.len() {
            return if state.uncovered == 0 || !self.surjective {
                visit(&state.image)
            } else {
                ControlFlow::Continue(())
            };
        }
        let remaining = self.source.len() - v;
        let candidates = match self.pinned {
            Some((s, t)) if s == v => t..t + 1,
            _ => 0..self.target.len(),
        };
        for t in candidates {
            if self.injective && state.hits[t] > 0 {
                continue;
            }
            // Surjectivity: after this step the remaining sources must still
            // be able to cover every uncovered target.
            let uncovered_after = state.uncovered - usize::from(state.hits[t] == 0);
            if self.surjective && uncovered_after > remaining - 1 {
                continue;
            }
            if !self.compatible(&state.image, v, t) {
                continue;
            }
            state.image.push(t);
            state.hits[t] += 1;
            if state.hits[t] == 1 {
                state.uncovered -= 1;
            }
            let flow = self.extend(state, visit);
            state.hits[t] -= 1;
            if state.hits[t] == 0 {
                state.uncovered += 1;
            }
            state.image.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn compatible(&self, image: &[usize], v: usize, t: usize) -> bool {
        let (src, tgt) = (self.source, self.target);
        if src.adjacent(v, v) && !tgt.adjacent(t, t) {
            return false;
        }
        if self.reflect && !src.adjacent(v, v) && tgt.adjacent(t, t) {
            return false;
        }
        image.iter().enumerate().all(|(u, &tu)| {
            let a = src.adjacent(u, v);
            let b = tgt.adjacent(tu, t);
            if self.reflect {
                a == b
            } else {
                !a || b
            }
        })
    }

    fn first(&self) -> Option<VertexMap> {
        let mut found = None;
        let _ = self.run(&mut |image: &[usize]| {
            found = Some(image.to_vec());
            ControlFlow::Break(())
        });
        found.map(|image| VertexMap { target_len: self.target.len(), image })
    }
}

/// First injective homomorphism `source -> target`, if any.
pub fn find_injective_hom(source: &FiniteGraph, target: &FiniteGraph) -> Option<VertexMap> {
    Search { source, target, injective: true, surjective: false, reflect: false, pinned: None }.first()
}

/// First surjective homomorphism `source -> target`, if any.
pub fn find_epimorphism(source: &FiniteGraph, target: &FiniteGraph) -> Option<VertexMap> {
    Search { source, target, injective: false, surjective: true, reflect: false, pinned: None }.first()
}

/// First epimorphism between pointed graphs under the given base policy.
pub fn find_pointed_epimorphism(
    source: &PointedReflexiveGraph,
    target: &PointedReflexiveGraph,
    mode: EpiMode,
) -> Option<VertexMap> {
    let pinned = match mode {
        EpiMode::BasePreserving => Some((source.base(), target.base())),
        EpiMode::Unrestricted => None,
    };
    Search {
        source: source.graph(),
        target: target.graph(),
        injective: false,
        surjective: true,
        reflect: false,
        pinned,
    }
    .first()
}

/// Calls `visit` on every surjective homomorphism, in lexicographic order of
/// images, until it breaks. `pinned` fixes one source vertex's image.
pub fn for_each_epimorphism<F>(source: &FiniteGraph, target: &FiniteGraph, pinned: Option<(usize, usize)>, mut visit: F)
where
    F: FnMut(&VertexMap) -> ControlFlow<()>,
{
    let search = Search { source, target, injective: false, surjective: true, reflect: false, pinned };
    let target_len = target.len();
    let _ = search.run(&mut |image: &[usize]| visit(&VertexMap { target_len, image: image.to_vec() }));
}

/// All base-preserving epimorphisms between two pointed graphs.
pub fn pointed_epimorphisms(source: &PointedReflexiveGraph, target: &PointedReflexiveGraph) -> Vec<VertexMap> {
    let mut all = Vec::new();
    for_each_epimorphism(source.graph(), target.graph(), Some((source.base(), target.base())), |map| {
        all.push(map.clone());
        ControlFlow::Continue(())
    });
    all
}

/// Whether `map` sends every edge (loops included) of `source` to an edge of
/// `target`.
pub fn is_homomorphism(map: &VertexMap, source: &FiniteGraph, target: &FiniteGraph) -> Result<bool> {
    if map.source_len() != source.len() {
        return Err(Error::SizeMismatch { expected: source.len(), found: map.source_len() });
    }
    if map.target_len() != target.len() {
        return Err(Error::SizeMismatch { expected: target.len(), found: map.target_len() });
    }
    let n = source.len();
    Ok((0..n).all(|u| (u..n).all(|v| !source.adjacent(u, v) || target.adjacent(map.apply(u), map.apply(v)))))
}

pub fn is_surjective(map: &VertexMap) -> bool {
    let mut hit = vec![false; map.target_len()];
    for &t in map.image() {
        hit[t] = true;
    }
    hit.into_iter().all(|h| h)
}

/// A bijection preserving adjacency and non-adjacency, if one exists.
pub fn are_isomorphic(a: &FiniteGraph, b: &FiniteGraph) -> Option<VertexMap> {
    if a.len() != b.len() || a.edges().len() != b.edges().len() {
        return None;
    }
    Search { source: a, target: b, injective: true, surjective: true, reflect: true, pinned: None }.first()
}
