//! Smallest-last orderings and the shift bookkeeping that lets a child
//! iteration keep only the difference between its ordering and the
//! parent's.
//!
//! A shift `(u, p)` moves `u` from position `j` to `j - p`; the vertices in
//! between slide one place to the right. A [`ShiftSeq`] is replayed left to
//! right on the partial ordering (the parent ordering with `N[v]` removed)
//! to obtain the child ordering, and undone right to left on backtrack.

use std::collections::{BTreeSet, HashMap};

use crate::error::OrderingError;
use crate::graph::{Graph, Vertex};
use crate::meter::Meter;

/// A vertex sequence with its inverse map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordering {
    seq: Vec<Vertex>,
    pos: HashMap<Vertex, usize>,
}

impl Ordering {
    pub fn new(seq: Vec<Vertex>) -> Result<Self, OrderingError> {
        let pos: HashMap<Vertex, usize> = seq.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if pos.len() != seq.len() {
            return Err(OrderingError::DifferentSets);
        }
        Ok(Ordering { seq, pos })
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.pos.get(&v).copied()
    }

    /// Applies one shift operation, returning the new ordering.
    pub fn apply_shift(&self, u: Vertex, p: usize) -> Result<Ordering, OrderingError> {
        let mut seq = self.seq.clone();
        shift_left(&mut seq, u, p, &mut Meter::default())?;
        Ordering::new(seq)
    }
}

/// Shift sequence `((u1, p1), ..., (ul, pl))`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShiftSeq {
    pub pairs: Vec<(Vertex, usize)>,
}

impl ShiftSeq {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Smallest-last ordering of `g`: repeatedly remove a vertex of minimum
/// degree in the remaining graph, ties going to the smallest label.
pub fn smallest_last(g: &Graph) -> Ordering {
    let labels: Vec<Vertex> = (0..g.n()).collect();
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
    let order = smallest_last_local(&labels, &adj, &mut Meter::default());
    Ordering::new(order.into_iter().map(|i| labels[i]).collect()).expect("permutation")
}

/// Smallest-last ordering of the subgraph of `g` induced by `vertices`.
pub fn smallest_last_induced(g: &Graph, vertices: &[Vertex]) -> Vec<Vertex> {
    let local: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> =
        vertices.iter().map(|&v| g.neighbors(v).iter().filter_map(|w| local.get(w).copied()).collect()).collect();
    smallest_last_local(vertices, &adj, &mut Meter::default()).into_iter().map(|i| vertices[i]).collect()
}

/// Core of every smallest-last computation in the crate.
///
/// `adj` is indexed by local vertex index; `labels[i]` is the label used
/// for tie-breaking. Returns local indices in removal order. Buckets keyed
/// by degree hold `(label, index)` so the minimum label of the minimum
/// bucket is found in `O(log n)`.
pub fn smallest_last_local(labels: &[Vertex], adj: &[Vec<usize>], meter: &mut Meter) -> Vec<usize> {
    let n = labels.len();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<BTreeSet<(Vertex, usize)>> = vec![BTreeSet::new(); max_deg + 1];
    for i in 0..n {
        buckets[deg[i]].insert((labels[i], i));
    }
    meter.add(n + adj.iter().map(Vec::len).sum::<usize>());
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut low = 0usize;
    while order.len() < n {
        while buckets[low].is_empty() {
            low += 1;
        }
        let (_, v) = buckets[low].pop_first().expect("non-empty bucket");
        removed[v] = true;
        order.push(v);
        for &w in &adj[v] {
            if !removed[w] {
                buckets[deg[w]].remove(&(labels[w], w));
                deg[w] -= 1;
                buckets[deg[w]].insert((labels[w], w));
            }
        }
        low = low.saturating_sub(1);
    }
    order
}

/// Largest degree a vertex has within the suffix of `order` it starts.
pub fn degeneracy_of(g: &Graph, order: &[Vertex]) -> usize {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().enumerate().map(|(i, &v)| g.neighbors(v).iter().filter(|&&w| pos[w] > i).count()).max().unwrap_or(0)
}

pub(crate) fn shift_left(seq: &mut [Vertex], u: Vertex, p: usize, meter: &mut Meter) -> Result<(), OrderingError> {
    let j = seq.iter().position(|&x| x == u).ok_or(OrderingError::MissingVertex(u))?;
    if p > j {
        return Err(OrderingError::ShiftOutOfRange { pos: j, shift: p });
    }
    seq[j - p..=j].rotate_right(1);
    meter.add(p + 1);
    Ok(())
}

fn shift_right(seq: &mut [Vertex], u: Vertex, p: usize, meter: &mut Meter) -> Result<(), OrderingError> {
    let j = seq.iter().position(|&x| x == u).ok_or(OrderingError::MissingVertex(u))?;
    if j + p >= seq.len() {
        return Err(OrderingError::ShiftOutOfRange { pos: j, shift: p });
    }
    seq[j..=j + p].rotate_left(1);
    meter.add(p + 1);
    Ok(())
}

/// Greedy left-to-right shift sequence turning `partial` into `target`:
/// for each target position, the vertex that belongs there is shifted
/// left into place if it is not already there.
pub fn compute_shift_diff(partial: &[Vertex], target: &[Vertex]) -> Result<ShiftSeq, OrderingError> {
    compute_shift_diff_metered(partial, target, &mut Meter::default())
}

pub(crate) fn compute_shift_diff_metered(
    partial: &[Vertex],
    target: &[Vertex],
    meter: &mut Meter,
) -> Result<ShiftSeq, OrderingError> {
    if partial.len() != target.len() {
        return Err(OrderingError::DifferentSets);
    }
    let (mut a, mut b) = (partial.to_vec(), target.to_vec());
    a.sort_unstable();
    b.sort_unstable();
    if a != b || a.windows(2).any(|w| w[0] == w[1]) {
        return Err(OrderingError::DifferentSets);
    }
    let mut cur = partial.to_vec();
    let mut pairs = Vec::new();
    for (k, &t) in target.iter().enumerate() {
        if cur[k] == t {
            meter.add(1);
            continue;
        }
        let j = k + cur[k..].iter().position(|&x| x == t).expect("same vertex set");
        cur[k..=j].rotate_right(1);
        meter.add(2 * (j - k) + 1);
        pairs.push((t, j - k));
    }
    Ok(ShiftSeq { pairs })
}

/// Replays `shifts` on `partial`.
pub fn replay_shifts(partial: &[Vertex], shifts: &ShiftSeq) -> Result<Vec<Vertex>, OrderingError> {
    let mut seq = partial.to_vec();
    for &(u, p) in &shifts.pairs {
        shift_left(&mut seq, u, p, &mut Meter::default())?;
    }
    Ok(seq)
}

/// Rebuilds the parent ordering from the child ordering: undoes `shifts`
/// right to left, then re-inserts the `removed` vertices at their recorded
/// parent positions.
pub fn restore_parent_ordering(
    child: &[Vertex],
    shifts: &ShiftSeq,
    removed: &[(Vertex, usize)],
) -> Result<Vec<Vertex>, OrderingError> {
    restore_parent_ordering_metered(child, shifts, removed, &mut Meter::default())
}

pub(crate) fn restore_parent_ordering_metered(
    child: &[Vertex],
    shifts: &ShiftSeq,
    removed: &[(Vertex, usize)],
    meter: &mut Meter,
) -> Result<Vec<Vertex>, OrderingError> {
    let mut partial = child.to_vec();
    for &(u, p) in shifts.pairs.iter().rev() {
        shift_right(&mut partial, u, p, meter)?;
    }
    let total = partial.len() + removed.len();
    let mut slots: Vec<Option<Vertex>> = vec![None; total];
    for &(u, at) in removed {
        match slots.get_mut(at) {
            Some(slot @ None) => *slot = Some(u),
            _ => return Err(OrderingError::PositionCollision(at)),
        }
    }
    let mut rest = partial.into_iter();
    let out = slots
        .into_iter()
        .map(|s| s.or_else(|| rest.next()))
        .collect::<Option<Vec<_>>>()
        .expect("slot count matches vertex count");
    meter.add(total);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use proptest::prelude::*;

    #[test]
    fn smallest_last_examples() {
        let p3 = generate(Family::Path { n: 3 }, 0).unwrap();
        assert_eq!(smallest_last(&p3).as_slice(), &[0, 1, 2]);
        let k4 = generate(Family::Complete { n: 4 }, 0).unwrap();
        assert_eq!(smallest_last(&k4).as_slice(), &[0, 1, 2, 3]);
        // after three leaves go, the centre ties with leaf 4 at degree 1
        let star = generate(Family::Star { n: 5 }, 0).unwrap();
        assert_eq!(smallest_last(&star).as_slice(), &[1, 2, 3, 0, 4]);
        assert!(smallest_last(&Graph::empty(0)).is_empty());
    }

    /// Minimum-degree extraction by full rescans; independent of the
    /// bucket structure.
    fn naive_smallest_last(g: &Graph) -> Vec<Vertex> {
        let mut alive: Vec<bool> = vec![true; g.n()];
        let mut out = Vec::new();
        for _ in 0..g.n() {
            let v = (0..g.n())
                .filter(|&v| alive[v])
                .min_by_key(|&v| (g.neighbors(v).iter().filter(|&&w| alive[w]).count(), v))
                .unwrap();
            alive[v] = false;
            out.push(v);
        }
        out
    }

    /// max over vertex subsets of the minimum degree of the induced subgraph
    fn brute_degeneracy(g: &Graph) -> usize {
        let n = g.n();
        (1u32..1 << n)
            .map(|mask| {
                (0..n)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| g.neighbors(v).iter().filter(|&&w| mask >> w & 1 == 1).count())
                    .min()
                    .unwrap()
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn matches_naive_and_is_degenerate() {
        for seed in 0..60 {
            let g = generate(Family::RandomGnp { n: 11, p: [0.2, 0.4, 0.7][seed as usize % 3] }, seed).unwrap();
            let sl = smallest_last(&g);
            assert_eq!(sl.as_slice(), naive_smallest_last(&g).as_slice());
            assert_eq!(degeneracy_of(&g, sl.as_slice()), brute_degeneracy(&g));
            let sub: Vec<Vertex> = (0..g.n()).filter(|v| v % 3 != 1).collect();
            let induced = smallest_last_induced(&g, &sub);
            let mut sorted = induced.clone();
            sorted.sort();
            assert_eq!(sorted, sub);
        }
    }

    #[test]
    fn shift_examples() {
        let o = Ordering::new(vec![10, 11, 12, 13]).unwrap();
        assert_eq!(o.apply_shift(13, 2).unwrap().as_slice(), &[10, 13, 11, 12]);
        assert_eq!(o.apply_shift(12, 0).unwrap(), o);
        assert!(matches!(o.apply_shift(11, 2), Err(OrderingError::ShiftOutOfRange { .. })));
        assert!(matches!(o.apply_shift(99, 1), Err(OrderingError::MissingVertex(99))));
    }

    #[test]
    fn shift_diff_examples() {
        assert!(compute_shift_diff(&[1, 2, 3], &[1, 2, 3]).unwrap().is_empty());
        let q = compute_shift_diff(&[0, 1, 2], &[2, 0, 1]).unwrap();
        assert_eq!(q.pairs, vec![(2, 2)]);
        assert_eq!(replay_shifts(&[0, 1, 2], &q).unwrap(), vec![2, 0, 1]);
        assert!(compute_shift_diff(&[0, 1], &[0, 2]).is_err());
        assert!(compute_shift_diff(&[0, 0], &[0, 0]).is_err());
    }

    #[test]
    fn restore_examples() {
        assert_eq!(restore_parent_ordering(&[], &ShiftSeq::default(), &[]).unwrap(), Vec::<Vertex>::new());
        // P3 descend at v = 0: SL(X) = (0,1,2), partial = (2) = SL(Y).
        let back = restore_parent_ordering(&[2], &ShiftSeq::default(), &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(back, vec![0, 1, 2]);
        assert!(matches!(
            restore_parent_ordering(&[2], &ShiftSeq::default(), &[(0, 0), (1, 0)]),
            Err(OrderingError::PositionCollision(0))
        ));
    }

    proptest! {
        #[test]
        fn shift_diff_replays(perm in Just((0..10usize).collect::<Vec<_>>()).prop_shuffle(),
                              target in Just((0..10usize).collect::<Vec<_>>()).prop_shuffle(),
                              keep in 0usize..=10) {
            let a: Vec<Vertex> = perm[..keep].to_vec();
            let mut b: Vec<Vertex> = target.iter().copied().filter(|x| a.contains(x)).collect();
            if b.len() != a.len() { b = a.clone(); }
            let q = compute_shift_diff(&a, &b).unwrap();
            prop_assert!(q.pairs.iter().all(|&(_, p)| p >= 1));
            prop_assert_eq!(replay_shifts(&a, &q).unwrap(), b.clone());
            // undo with no removals returns the partial ordering
            prop_assert_eq!(restore_parent_ordering(&b, &q, &[]).unwrap(), a);
        }
    }
}
