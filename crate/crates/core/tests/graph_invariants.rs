use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use solgraph::catalog::{build, GroupSpec};
use solgraph::graph::{
    are_isomorphic, build_graph, build_graph_direct, canonical_certificate, is_isomorphism, metrics,
    parse_edge_list, write_edge_list, BitMatrix, SolubilityGraph, DEFAULT_NODE_BUDGET,
};
use solgraph::solubility::{Limits, SolubilityContext};

fn context(spec: &str) -> SolubilityContext {
    let g = build(&GroupSpec::parse(spec).unwrap()).unwrap();
    SolubilityContext::new(g, Limits::default()).unwrap()
}

fn graph(spec: &str) -> SolubilityGraph {
    build_graph(&context(spec), 500).unwrap()
}

fn shuffle(g: &BitMatrix, rng: &mut ChaCha8Rng) -> (BitMatrix, Vec<usize>) {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    (g.relabel(&perm), perm)
}

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> BitMatrix {
    let mut m = BitMatrix::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                m.set_edge(i, j);
            }
        }
    }
    m
}

/// Isomorphism by trying all `n!` bijections.
fn brute_isomorphic(a: &BitMatrix, b: &BitMatrix) -> bool {
    fn extend(a: &BitMatrix, b: &BitMatrix, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.n() {
            return true;
        }
        for j in 0..b.n() {
            if used[j] || (0..i).any(|k| a.get(i, k) != b.get(j, map[k])) {
                continue;
            }
            used[j] = true;
            map.push(j);
            if extend(a, b, map, used) {
                return true;
            }
            map.pop();
            used[j] = false;
        }
        false
    }
    a.n() == b.n() && a.edge_count() == b.edge_count() && extend(a, b, &mut Vec::new(), &mut vec![false; b.n()])
}

fn bfs_distances(g: &BitMatrix, s: usize) -> Vec<Option<u32>> {
    let mut d = vec![None; g.n()];
    d[s] = Some(0);
    let mut frontier = vec![s];
    let mut k = 0;
    while !frontier.is_empty() {
        k += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            for w in g.neighbors(v) {
                if d[w].is_none() {
                    d[w] = Some(k);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    d
}

#[test]
fn certificate_is_relabeling_invariant_on_a5() {
    let g = graph("A5");
    let reference = canonical_certificate(g.adjacency(), DEFAULT_NODE_BUDGET).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..20 {
        let (h, _) = shuffle(g.adjacency(), &mut rng);
        let c = canonical_certificate(&h, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(c.encoding, reference.encoding);
        assert_eq!(c.sha256(), reference.sha256());
    }
}

#[test]
fn class_built_graph_matches_direct_pair_tests() {
    for spec in ["SL(2,5)", "A5 x C2", "PSL(2,7)"] {
        let ctx = context(spec);
        let a = build_graph(&ctx, 500).unwrap();
        let b = build_graph_direct(&ctx, 500).unwrap();
        assert_eq!(a.adjacency(), b.adjacency(), "{spec}");
        assert_eq!(a.vertex_ranks(), b.vertex_ranks(), "{spec}");
        assert_eq!(a.n() as u64, ctx.vertex_count(), "{spec}");
    }
}

#[test]
fn degrees_agree_with_solubilizer_counts() {
    for spec in ["A5", "S5", "SL(2,5)", "C3 x A5"] {
        let ctx = context(spec);
        let g = build_graph(&ctx, 500).unwrap();
        let m = metrics(g.adjacency());
        for (v, x) in g.vertex_elements().iter().enumerate() {
            assert_eq!(g.degree(v), ctx.vertex_degree(x).unwrap(), "{spec} {x}");
        }
        let d = ctx.degree_data().unwrap();
        assert_eq!(m.min_degree(), d.min_degree, "{spec}");
        assert_eq!(m.max_degree(), d.max_degree, "{spec}");
        let ps = ctx.solubility_degree();
        let formula = solgraph::solubility::edge_count_formula(ctx.order(), &ps, ctx.radical_order()).unwrap();
        assert_eq!(m.edge_count, formula, "{spec}");
    }
}

#[test]
fn a5_pattern_and_distances() {
    let g = graph("A5");
    let m = metrics(g.adjacency());
    let mut counts = std::collections::BTreeMap::new();
    for &d in &m.degree_sequence {
        *counts.entry(d).or_insert(0) += 1;
    }
    assert_eq!(counts.into_iter().collect::<Vec<_>>(), vec![(8, 24), (22, 20), (34, 15)]);
    let ecc = (0..g.n())
        .map(|s| bfs_distances(g.adjacency(), s).into_iter().map(|d| d.unwrap()).max().unwrap())
        .max()
        .unwrap();
    assert_eq!(m.diameter, Some(ecc));
    assert_eq!(m.diameter, Some(2));
    assert_eq!(m.girth, Some(3));
    let [a, b, c, d] = m.k4_witness.unwrap().map(|v| v as usize);
    for (i, j) in [(a, b), (a, c), (a, d), (b, c), (b, d), (c, d)] {
        assert!(g.adjacent(i, j));
    }
}

#[test]
fn sl25_and_a5_times_c2_are_isomorphic() {
    let a = graph("SL(2,5)");
    let b = graph("A5 x C2");
    let v = are_isomorphic(a.adjacency(), b.adjacency(), DEFAULT_NODE_BUDGET).unwrap();
    assert!(v.isomorphic);
    let map = v.bijection.unwrap();
    assert!(is_isomorphism(a.adjacency(), b.adjacency(), &map));
    let ca = canonical_certificate(a.adjacency(), DEFAULT_NODE_BUDGET).unwrap();
    let cb = canonical_certificate(b.adjacency(), DEFAULT_NODE_BUDGET).unwrap();
    assert_eq!(ca.encoding, cb.encoding);
}

#[test]
fn distinct_groups_get_distinct_certificates() {
    let a = graph("A5");
    let b = graph("PSL(2,7)");
    let s = graph("S5");
    let ca = canonical_certificate(a.adjacency(), DEFAULT_NODE_BUDGET).unwrap();
    let cb = canonical_certificate(b.adjacency(), DEFAULT_NODE_BUDGET).unwrap();
    let cs = canonical_certificate(s.adjacency(), DEFAULT_NODE_BUDGET).unwrap();
    assert_ne!(ca.encoding, cb.encoding);
    assert_ne!(ca.encoding, cs.encoding);
    assert!(!are_isomorphic(a.adjacency(), b.adjacency(), DEFAULT_NODE_BUDGET).unwrap().isomorphic);
}

#[test]
fn certificates_agree_with_brute_force_on_small_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let graphs: Vec<BitMatrix> = (0..60)
        .map(|i| random_graph(4 + i % 4, 0.5, &mut rng))
        .collect();
    let certs: Vec<Vec<u8>> = graphs
        .iter()
        .map(|g| canonical_certificate(g, DEFAULT_NODE_BUDGET).unwrap().encoding)
        .collect();
    let mut pairs_isomorphic = 0;
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            let oracle = brute_isomorphic(&graphs[i], &graphs[j]);
            assert_eq!(certs[i] == certs[j], oracle, "graphs {i} and {j}");
            pairs_isomorphic += oracle as u32;
        }
    }
    assert!(pairs_isomorphic > 0);
}

#[test]
fn edge_list_round_trip() {
    let g = graph("PSL(2,7)");
    let text = write_edge_list(g.adjacency());
    assert_eq!(&parse_edge_list(&text).unwrap(), g.adjacency());
}
