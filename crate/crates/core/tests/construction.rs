use epicox::construction::{build_c, LabeledCoxeterSystem};
use epicox::coxeter::{GeneratorSubset, Label};
use epicox::graphs::FiniteGraph;
use epicox::Error;

fn graphs_up_to(n: usize) -> Vec<FiniteGraph> {
    (0..=n).flat_map(|k| FiniteGraph::all_labelled(k, false)).collect()
}

fn cross_labels(sys: &LabeledCoxeterSystem, s: usize, t: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for i in 1..=4 {
        for j in 1..=4 {
            out.push(sys.matrix().label(sys.generator(s, i), sys.generator(t, j)));
        }
    }
    out
}

#[test]
fn cross_block_labels_encode_adjacency() {
    for g in graphs_up_to(4) {
        let sys = build_c(&g);
        for s in 0..g.len() {
            for t in (s + 1)..g.len() {
                let labels = cross_labels(&sys, s, t);
                let twos = labels.iter().filter(|l| **l == Label::Finite(2)).count();
                let infs = labels.iter().filter(|l| **l == Label::Infinity).count();
                let expected = if g.adjacent(s, t) { 5 } else { 1 };
                assert_eq!(twos, expected, "pair ({s}, {t}) of {g:?}");
                assert_eq!(twos + infs, 16);
            }
        }
    }
}

#[test]
fn adjacent_alternating_involutions_span_elementary_abelian_group() {
    let sys = build_c(&FiniteGraph::complete(2));
    let subset = GeneratorSubset::from_indices([0, 2, 4, 6]);
    assert!(sys.system().is_spherical(&subset));
    let group = sys.system().enumerate_parabolic(&subset, 1000).unwrap();
    assert_eq!(group.len(), 16);
    assert!(group.iter().all(|w| (w * w).is_identity()));
}

#[test]
fn cliques_of_fourth_generators() {
    for g in graphs_up_to(3) {
        let sys = build_c(&g);
        let n = g.len();
        for mask in 0u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            let subset: GeneratorSubset = members.iter().map(|&v| sys.generator(v, 4)).collect();
            assert!(sys.system().is_spherical(&subset));
            assert_eq!(sys.system().enumerate_parabolic(&subset, 1000).unwrap().len(), 1 << members.len());
        }
    }
}

#[test]
fn non_adjacent_first_generators_are_not_spherical() {
    for g in graphs_up_to(3) {
        let sys = build_c(&g);
        for s in 0..g.len() {
            for t in (s + 1)..g.len() {
                let subset = GeneratorSubset::from_indices([sys.generator(s, 1), sys.generator(t, 1)]);
                assert_eq!(sys.system().is_spherical(&subset), g.adjacent(s, t));
            }
        }
    }
}

/// `T` lies inside `{x_1, x_3 : x in K}` or `{x_4 : x in K}` for a clique `K`,
/// or is a whole block.
fn census_shape(sys: &LabeledCoxeterSystem, g: &FiniteGraph, subset: &GeneratorSubset) -> bool {
    let cells: Vec<(usize, usize)> = subset.iter().map(|x| sys.block_position(x)).collect();
    let vertices: Vec<usize> = cells.iter().map(|c| c.0).collect();
    let clique = vertices.iter().all(|&u| vertices.iter().all(|&v| u == v || g.adjacent(u, v)));
    let odd = cells.iter().all(|c| c.1 == 1 || c.1 == 3);
    let fourth = cells.iter().all(|c| c.1 == 4);
    let block = vertices.first().is_some_and(|&v| sys.s5_generators(v).unwrap() == *subset);
    block || (clique && (odd || fourth))
}

#[test]
fn large_spherical_subsets_have_the_census_shape() {
    for g in graphs_up_to(3) {
        let sys = build_c(&g);
        let rank = sys.matrix().rank();
        let mut large = 0;
        for subset in GeneratorSubset::all_up_to(rank, rank) {
            if !sys.system().is_spherical(&subset) {
                continue;
            }
            match sys.system().enumerate_parabolic(&subset, 59) {
                Ok(_) => {}
                Err(Error::CapExceeded { .. }) => {
                    assert!(census_shape(&sys, &g, &subset), "{:?} in {g:?}", subset.names(sys.matrix()));
                    large += 1;
                }
                Err(e) => panic!("{e}"),
            }
        }
        let triangle = g.len() == 3 && g.edges().len() == 3;
        assert_eq!(large, g.len() + usize::from(triangle));
    }
}
