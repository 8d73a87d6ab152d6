use epicox::graphs::{f_reduce, find_epimorphism, find_injective_hom, FiniteGraph, VertexMap};

fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p: Vec<usize>| (0..m).map(move |t| [p.clone(), vec![t]].concat())).collect();
    }
    out
}

fn preserves_edges(map: &[usize], a: &FiniteGraph, b: &FiniteGraph) -> bool {
    (0..a.len()).all(|u| (0..a.len()).all(|v| !a.adjacent(u, v) || b.adjacent(map[u], map[v])))
}

fn brute_injective(a: &FiniteGraph, b: &FiniteGraph) -> bool {
    all_maps(a.len(), b.len()).iter().any(|m| {
        let mut seen = vec![false; b.len()];
        m.iter().all(|&t| !std::mem::replace(&mut seen[t], true)) && preserves_edges(m, a, b)
    })
}

fn brute_onto(a: &FiniteGraph, b: &FiniteGraph) -> bool {
    all_maps(a.len(), b.len()).iter().any(|m| {
        let mut seen = vec![false; b.len()];
        m.iter().for_each(|&t| seen[t] = true);
        seen.iter().all(|&s| s) && preserves_edges(m, a, b)
    })
}

fn candidates() -> Vec<FiniteGraph> {
    (0..=3).flat_map(|n| FiniteGraph::all_labelled(n, false)).filter(|g| !g.has_isolated_vertex()).collect()
}

#[test]
fn reduction_turns_embeddings_into_epimorphisms() {
    let graphs = candidates();
    assert_eq!(graphs.len(), 1 + 1 + 4);
    for a in &graphs {
        for b in &graphs {
            let (fa, fb) = (f_reduce(a).unwrap(), f_reduce(b).unwrap());
            let embeds = brute_injective(a, b);
            assert_eq!(embeds, brute_onto(fb.graph(), fa.graph()), "{a:?} vs {b:?}");
            assert_eq!(embeds, find_injective_hom(a, b).is_some());
            assert_eq!(embeds, find_epimorphism(fb.graph(), fa.graph()).is_some());
        }
    }
}

#[test]
fn epimorphism_witness_for_path_onto_edge() {
    let fp3 = f_reduce(&FiniteGraph::path(3)).unwrap();
    let fk2 = f_reduce(&FiniteGraph::complete(2)).unwrap();
    let map = find_epimorphism(fp3.graph(), fk2.graph()).unwrap();
    assert_eq!(map, VertexMap::new(vec![0, 1, 0, 2], 3).unwrap());
}
