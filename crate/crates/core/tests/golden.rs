use kfe_core::enumerator::stream::{decode_binary, parse_text, write_text};
use kfe_core::enumerator::DiffSink;
use kfe_core::rle_matrix::RleMatrix;
use kfe_core::{enumerate_linear_space, Graph, LinearOptions, SolutionDiff};

fn c5() -> Graph {
    Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap()
}

#[test]
fn c5_dump_matches_hand_encoding() {
    // row i of C5 has ones at i-1 and i+1 (mod 5)
    let m = RleMatrix::build(&c5(), &[0, 1, 2, 3, 4]).unwrap();
    assert_eq!(m.dump(), include_str!("data/c5_identity.dump"));
}

#[test]
fn c5_stream() {
    // C5 has 1 + 5 + 5 independent sets: the empty set, singletons and the
    // five non-adjacent pairs. All degrees tie, so picks go by label.
    let mut sink = DiffSink::default();
    enumerate_linear_space(&c5(), &mut sink, &LinearOptions::instrumented()).unwrap();
    let mut text = Vec::new();
    for &d in &sink.diffs {
        write_text(&mut text, d).unwrap();
    }
    let text = String::from_utf8(text).unwrap();
    assert_eq!(sink.diffs.len(), 11);
    assert_eq!(parse_text(&text).unwrap(), sink.diffs);
    let d = |pop, push| SolutionDiff { pop, push: Some(push) };
    // {}, {0}, {0,2}, {0,3}, {1}, {1,3}, {1,4}, {2}, {2,4}, {3}, {4}
    let expected =
        [SolutionDiff::EMPTY, d(0, 0), d(0, 2), d(1, 3), d(2, 1), d(0, 3), d(1, 4), d(2, 2), d(0, 4), d(2, 3), d(1, 4)];
    assert_eq!(sink.diffs, expected);
}

#[test]
fn binary_rejects_truncation() {
    assert!(decode_binary(&[0]).is_err());
    assert!(decode_binary(&[0x80]).is_err());
}
