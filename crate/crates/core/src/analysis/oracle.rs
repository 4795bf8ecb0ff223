use std::collections::BTreeSet;

use crate::error::OracleLimit;
use crate::graph::{Graph, Vertex};

/// Largest graph the subset oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 25;
/// Largest graph [`clique_number`] accepts.
pub const CLIQUE_LIMIT: usize = 512;

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect()
}

/// Bitmasks of all independent sets, ascending. Subset DP: a mask is
/// independent iff the mask without its lowest vertex is, and that vertex
/// has no neighbour in the mask.
pub fn independent_set_masks(g: &Graph) -> Result<Vec<u32>, OracleLimit> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(OracleLimit { n, limit: BRUTE_FORCE_LIMIT });
    }
    let adj = adjacency_masks(g);
    let total = 1usize << n;
    let mut ok = vec![false; total];
    ok[0] = true;
    let mut out = vec![0u32];
    for mask in 1..total {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        if ok[rest] && adj[low] & mask as u32 == 0 {
            ok[mask] = true;
            out.push(mask as u32);
        }
    }
    Ok(out)
}

/// Every independent set of `g` as a sorted vertex list.
pub fn brute_force_independent_sets(g: &Graph) -> Result<BTreeSet<Vec<Vertex>>, OracleLimit> {
    Ok(independent_set_masks(g)?.into_iter().map(|m| (0..g.n()).filter(|&v| m >> v & 1 == 1).collect()).collect())
}

/// Size of a largest clique, by branch and bound with a greedy colouring
/// bound.
pub fn clique_number(g: &Graph) -> Result<usize, OracleLimit> {
    let n = g.n();
    if n > CLIQUE_LIMIT {
        return Err(OracleLimit { n, limit: CLIQUE_LIMIT });
    }
    if n == 0 {
        return Ok(0);
    }
    let words = n.div_ceil(64);
    let adj: Vec<Vec<u64>> = (0..n)
        .map(|v| {
            let mut row = vec![0u64; words];
            for &w in g.neighbors(v) {
                row[w / 64] |= 1 << (w % 64);
            }
            row
        })
        .collect();
    let mut cand = vec![0u64; words];
    for v in 0..n {
        cand[v / 64] |= 1 << (v % 64);
    }
    let mut best = 1;
    expand(&adj, 0, cand, &mut best);
    Ok(best)
}

fn members(set: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &w) in set.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(i * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

fn expand(adj: &[Vec<u64>], size: usize, cand: Vec<u64>, best: &mut usize) {
    // greedy colouring of the candidates; colour classes are independent
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut uncoloured = cand.clone();
    let mut colour = 0;
    while uncoloured.iter().any(|&w| w != 0) {
        colour += 1;
        let mut avail = uncoloured.clone();
        while let Some(v) = members(&avail).first().copied() {
            order.push((v, colour));
            uncoloured[v / 64] &= !(1 << (v % 64));
            avail[v / 64] &= !(1 << (v % 64));
            for (a, r) in avail.iter_mut().zip(&adj[v]) {
                *a &= !r;
            }
        }
    }
    let mut cand = cand;
    for &(v, c) in order.iter().rev() {
        if size + c <= *best {
            return;
        }
        let next: Vec<u64> = cand.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
        if next.iter().all(|&w| w == 0) {
            *best = (*best).max(size + 1);
        } else {
            expand(adj, size + 1, next, best);
        }
        cand[v / 64] &= !(1 << (v % 64));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn brute_force_hand_cases() {
        let p3 = generate(Family::Path { n: 3 }, 0).unwrap();
        let expect: BTreeSet<Vec<Vertex>> = [vec![], vec![0], vec![1], vec![2], vec![0, 2]].into_iter().collect();
        assert_eq!(brute_force_independent_sets(&p3).unwrap(), expect);
        assert_eq!(brute_force_independent_sets(&generate(Family::Complete { n: 3 }, 0).unwrap()).unwrap().len(), 4);
        assert_eq!(brute_force_independent_sets(&Graph::empty(4)).unwrap().len(), 16);
        for n in 0..8 {
            let kn = generate(Family::Complete { n }, 0).unwrap();
            assert_eq!(independent_set_masks(&kn).unwrap().len(), n + 1);
            assert_eq!(independent_set_masks(&Graph::empty(n)).unwrap().len(), 1 << n);
        }
        assert!(independent_set_masks(&Graph::empty(26)).is_err());
    }

    #[test]
    fn brute_force_agrees_with_direct_check() {
        let g = generate(Family::RandomGnp { n: 10, p: 0.3 }, 1).unwrap();
        let masks = independent_set_masks(&g).unwrap();
        let direct: Vec<u32> = (0u32..1 << 10)
            .filter(|&m| g.is_independent(&(0..10).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>()))
            .collect();
        assert_eq!(masks, direct);
    }

    fn clique_by_subsets(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&m| {
                let vs: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
                vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&w| g.has_edge(u, w)))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn clique_number_cases() {
        assert_eq!(clique_number(&generate(Family::Complete { n: 4 }, 0).unwrap()).unwrap(), 4);
        assert_eq!(clique_number(&generate(Family::Path { n: 5 }, 0).unwrap()).unwrap(), 2);
        assert_eq!(clique_number(&Graph::empty(3)).unwrap(), 1);
        assert_eq!(clique_number(&Graph::empty(0)).unwrap(), 0);
        for seed in 0..40 {
            let g = generate(Family::RandomGnp { n: 12, p: 0.5 }, seed).unwrap();
            assert_eq!(clique_number(&g).unwrap(), clique_by_subsets(&g), "seed {seed}");
        }
        for seed in 0..10 {
            let g = generate(Family::RandomGnp { n: 15, p: 0.7 }, seed).unwrap();
            assert_eq!(clique_number(&g).unwrap(), clique_by_subsets(&g));
        }
        let big = generate(Family::RandomGnp { n: 130, p: 0.3 }, 3).unwrap();
        assert!(clique_number(&big).unwrap() >= 3);
    }
}
