use kfe_core::analysis::independent_set_masks;
use kfe_core::enumerator::stream::{decode_binary, encode_binary, parse_text, write_text};
use kfe_core::enumerator::DiffSink;
use kfe_core::graph::to_edge_list;
use kfe_core::{
    count_only, enumerate_linear_space, enumerate_reference, parse_edge_list, replay_diffs, Engine, Graph,
    LinearOptions, SolutionDiff,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn linear_diffs(g: &Graph, limit: Option<usize>) -> Vec<SolutionDiff> {
    let mut sink = DiffSink { diffs: Vec::new(), limit };
    enumerate_linear_space(g, &mut sink, &LinearOptions::instrumented()).unwrap();
    sink.diffs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn count_matches_subset_oracle(g in graph(12)) {
        let expected = independent_set_masks(&g).unwrap().len() as u64;
        prop_assert_eq!(count_only(&g, Engine::Reference).unwrap(), expected);
        prop_assert_eq!(count_only(&g, Engine::Linear).unwrap(), expected);
    }

    #[test]
    fn disjoint_union_multiplies(a in graph(7), b in graph(7)) {
        let ab = a.disjoint_union(&b);
        let count = |g: &Graph| count_only(g, Engine::Linear).unwrap();
        prop_assert_eq!(count(&ab), count(&a) * count(&b));
    }

    #[test]
    fn adding_an_edge_never_adds_solutions(g in graph(10), u in 0usize..10, v in 0usize..10) {
        prop_assume!(u != v && u < g.n() && v < g.n() && !g.has_edge(u, v));
        let mut edges: Vec<_> = g.edges().collect();
        edges.push((u.min(v), u.max(v)));
        let h = Graph::from_edges(g.n(), edges).unwrap();
        prop_assert!(count_only(&h, Engine::Linear).unwrap() < count_only(&g, Engine::Linear).unwrap());
    }

    #[test]
    fn relabelling_keeps_the_count(g in graph(10), rot in 0usize..10) {
        let n = g.n();
        prop_assume!(n > 0);
        let h = Graph::from_edges(n, g.edges().map(|(u, v)| ((u + rot) % n, (v + rot) % n))).unwrap();
        prop_assert_eq!(count_only(&g, Engine::Linear).unwrap(), count_only(&h, Engine::Linear).unwrap());
    }

    #[test]
    fn stream_is_well_formed(g in graph(10)) {
        let diffs = linear_diffs(&g, None);
        prop_assert_eq!(diffs[0], SolutionDiff::EMPTY);
        prop_assert!(diffs[1..].iter().all(|d| d.push.is_some()));
        for s in replay_diffs(diffs).unwrap() {
            prop_assert!(g.is_independent(&s));
        }
    }

    #[test]
    fn limit_gives_a_prefix(g in graph(10), k in 1usize..40) {
        let full = linear_diffs(&g, None);
        let part = linear_diffs(&g, Some(k));
        prop_assert_eq!(&part[..], &full[..k.min(full.len())]);
        let mut reference = DiffSink { diffs: Vec::new(), limit: Some(k) };
        enumerate_reference(&g, &mut reference);
        prop_assert_eq!(reference.diffs, part);
    }

    #[test]
    fn stream_formats_roundtrip(g in graph(9)) {
        let diffs = linear_diffs(&g, None);
        let mut text = Vec::new();
        let mut bin = Vec::new();
        for &d in &diffs {
            write_text(&mut text, d).unwrap();
            encode_binary(&mut bin, d);
        }
        prop_assert_eq!(&parse_text(std::str::from_utf8(&text).unwrap()).unwrap(), &diffs);
        prop_assert_eq!(&decode_binary(&bin).unwrap(), &diffs);
    }

    #[test]
    fn edge_list_roundtrip(g in graph(12)) {
        prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }
}
