//! Graph corpus shared by the acceptance suite.

use kfe_core::{generate, Family, Graph};

pub const CORPUS_PROBS: [f64; 4] = [0.1, 0.3, 0.5, 0.8];

/// Random graphs per `(n, p)` cell of the corpus.
pub const SEEDS_PER_CELL: u64 = 200;

/// Every labelled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("valid edges")
    })
}

/// Exhaustive for `n <= 5`, then `G(n, p)` for `n` in `6..=10`.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 0..=5 {
        for (i, g) in all_graphs(n).enumerate() {
            out.push((format!("all:{n}#{i}"), g));
        }
    }
    for n in 6..=10 {
        for p in CORPUS_PROBS {
            for seed in 0..SEEDS_PER_CELL {
                let fam = Family::RandomGnp { n, p };
                out.push((format!("{fam}@{seed}"), generate(fam, seed).expect("valid family")));
            }
        }
    }
    out
}

/// Paths, stars, cliques, edgeless graphs and grids with at most `max_n`
/// vertices.
pub fn canonical_families(max_n: usize) -> Vec<Family> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend([Family::Path { n }, Family::Star { n }, Family::Complete { n }, Family::Empty { n }]);
    }
    for rows in 1..=max_n {
        for cols in rows..=max_n / rows {
            out.push(Family::Grid { rows, cols });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_sizes() {
        let counts: Vec<usize> = (0..=5).map(|n| all_graphs(n).count()).collect();
        assert_eq!(counts, [1, 1, 2, 8, 64, 1024]);
    }

    #[test]
    fn corpus_is_large_enough() {
        let c = corpus();
        assert!(c.len() >= 5000);
        assert!(c.iter().all(|(_, g)| g.n() <= 10));
    }
}
