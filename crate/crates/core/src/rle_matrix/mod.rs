//! Run-length encoded adjacency matrix of the current induced subgraph.
//!
//! Rows and columns follow the current smallest-last ordering; every row
//! carries its original vertex label. Removing a closed neighbourhood
//! produces a [`RestoreRecord`] from which the parent matrix is rebuilt
//! exactly, working on runs rather than decoded bits.

mod seq;

pub use seq::{decode_runs, is_canonical, RleBuilder, RleSeq};
pub(crate) use seq::{interleave, split_by_mask};

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::RleError;
use crate::graph::{Graph, Vertex};
use crate::meter::Meter;
use crate::ordering::{smallest_last_local, ShiftSeq};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRow {
    pub label: Vertex,
    pub seq: RleSeq,
}

/// Square symmetric 0-1 matrix with zero diagonal, stored row-wise as
/// run-length sequences.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RleMatrix {
    rows: Vec<MatrixRow>,
}

/// Row of a vertex of `N[v]`, removed whole on descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovedRow {
    pub label: Vertex,
    /// Position in the parent ordering.
    pub position: usize,
    pub seq: RleSeq,
}

/// Everything needed to undo one [`RleMatrix::remove_closed_neighborhood`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestoreRecord {
    pub picked_vertex: Vertex,
    /// Rows of `N[v]` in parent order, the picked vertex included.
    pub removed_rows: Vec<RemovedRow>,
    /// Index of the picked vertex within `removed_rows`.
    pub picked_index: usize,
    /// For each surviving vertex `u` adjacent to at least one neighbour of
    /// `v`: the bits of `u`'s parent row under the 1s of the picked row.
    /// Kept in parent order; absent entries are all zero.
    pub r_structures: Vec<(Vertex, RleSeq)>,
    /// Shift sequence from the partial parent ordering to the child's own
    /// smallest-last ordering. Filled in by the enumerator.
    pub ordering_shifts: ShiftSeq,
}

impl RestoreRecord {
    pub fn picked_row(&self) -> &RleSeq {
        &self.removed_rows[self.picked_index].seq
    }

    pub fn picked_position(&self) -> usize {
        self.removed_rows[self.picked_index].position
    }

    pub fn removed_positions(&self) -> Vec<(Vertex, usize)> {
        self.removed_rows.iter().map(|r| (r.label, r.position)).collect()
    }

    /// Stored run entries, shift pairs (two words each) and positions.
    pub fn stored_words(&self) -> usize {
        self.removed_rows.iter().map(|r| r.seq.run_count() + 1).sum::<usize>()
            + self.r_structures.iter().map(|(_, s)| s.run_count() + 1).sum::<usize>()
            + 2 * self.ordering_shifts.len()
    }
}

impl RleMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    /// Encodes `g`'s adjacency with rows and columns in `ordering`.
    pub fn build(g: &Graph, ordering: &[Vertex]) -> Result<Self, RleError> {
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in ordering.iter().enumerate() {
            if v >= g.n() || pos[v] != usize::MAX {
                return Err(RleError::NotPermutation);
            }
            pos[v] = i;
        }
        if ordering.len() != g.n() {
            return Err(RleError::NotPermutation);
        }
        Ok(Self::build_induced(g, ordering))
    }

    /// Matrix of the subgraph of `g` induced by `vertices`, in that order.
    pub fn build_induced(g: &Graph, vertices: &[Vertex]) -> Self {
        let local: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let rows = vertices
            .iter()
            .map(|&v| {
                let mut ones: Vec<usize> = g.neighbors(v).iter().filter_map(|w| local.get(w).copied()).collect();
                ones.sort_unstable();
                MatrixRow { label: v, seq: RleSeq::from_ones(vertices.len(), &ones) }
            })
            .collect();
        RleMatrix { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[MatrixRow] {
        &self.rows
    }

    pub fn labels(&self) -> Vec<Vertex> {
        self.rows.iter().map(|r| r.label).collect()
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.rows.iter().position(|r| r.label == v)
    }

    /// Total stored run entries.
    pub fn stored_runs(&self) -> usize {
        self.rows.iter().map(|r| r.seq.run_count()).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.seq.count_ones()).sum::<usize>() / 2
    }

    pub fn degree_at(&self, i: usize) -> usize {
        self.rows[i].seq.count_ones()
    }

    /// Local adjacency lists (indices into the current ordering).
    pub fn local_adjacency(&self, meter: &mut Meter) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|r| {
                meter.add(r.seq.run_count());
                r.seq.ones().collect()
            })
            .collect()
    }

    /// Smallest-last ordering of the matrix's graph, as labels.
    pub fn smallest_last(&self, meter: &mut Meter) -> Vec<Vertex> {
        let labels = self.labels();
        let adj = self.local_adjacency(meter);
        smallest_last_local(&labels, &adj, meter).into_iter().map(|i| labels[i]).collect()
    }

    /// Square, symmetric and zero-diagonal. Decodes every row; for tests
    /// and debug checks only.
    pub fn check_invariants(&self) -> Result<(), RleError> {
        let n = self.rows.len();
        let dense: Vec<Vec<bool>> = self.rows.iter().map(|r| r.seq.decode()).collect();
        for (i, row) in dense.iter().enumerate() {
            if row.len() != n {
                return Err(RleError::Corrupt(format!("row {i} has length {} in a {n}x{n} matrix", row.len())));
            }
            if row[i] {
                return Err(RleError::Corrupt(format!("diagonal entry {i} set")));
            }
            if let Some(j) = (0..n).find(|&j| row[j] != dense[j][i]) {
                return Err(RleError::Corrupt(format!("entry ({i},{j}) not symmetric")));
            }
        }
        Ok(())
    }

    /// One row per line, `label: a1 b1 a2 b2 ...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            write!(out, "{}:", r.label).unwrap();
            for x in r.seq.runs() {
                write!(out, " {x}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Removes `N[v]` for the vertex at position `pos`; `self` becomes the
    /// child matrix with columns still in parent order.
    pub fn remove_closed_neighborhood(&mut self, pos: usize) -> Result<RestoreRecord, RleError> {
        self.remove_closed_neighborhood_metered(pos, &mut Meter::default())
    }

    pub fn remove_closed_neighborhood_metered(
        &mut self,
        pos: usize,
        meter: &mut Meter,
    ) -> Result<RestoreRecord, RleError> {
        let n = self.rows.len();
        if pos >= n {
            return Err(RleError::MissingVertex(pos));
        }
        let mask = self.rows[pos].seq.clone();
        // Scan the picked row once to mark the closed neighbourhood.
        let mut in_nbhd = vec![false; n];
        in_nbhd[pos] = true;
        for j in mask.ones() {
            in_nbhd[j] = true;
        }
        meter.add(n + mask.run_count());

        let mut removed_rows = Vec::new();
        let mut picked_index = 0;
        let mut r_structures = Vec::new();
        let mut child = Vec::with_capacity(n - mask.count_ones() - 1);
        for (j, row) in std::mem::take(&mut self.rows).into_iter().enumerate() {
            if in_nbhd[j] {
                if j == pos {
                    picked_index = removed_rows.len();
                }
                removed_rows.push(RemovedRow { label: row.label, position: j, seq: row.seq });
                continue;
            }
            let (kept, cut) = split_by_mask(&row.seq, &mask, pos, meter);
            if cut.count_ones() > 0 {
                r_structures.push((row.label, cut));
            }
            child.push(MatrixRow { label: row.label, seq: kept });
        }
        self.rows = child;
        Ok(RestoreRecord {
            picked_vertex: removed_rows[picked_index].label,
            removed_rows,
            picked_index,
            r_structures,
            ordering_shifts: ShiftSeq::default(),
        })
    }

    /// Drops the first row and the first column. Constant work per row.
    pub fn remove_first_vertex(&mut self) -> Result<MatrixRow, RleError> {
        self.remove_first_vertex_metered(&mut Meter::default())
    }

    pub fn remove_first_vertex_metered(&mut self, meter: &mut Meter) -> Result<MatrixRow, RleError> {
        if self.rows.is_empty() {
            return Err(RleError::Empty);
        }
        let first = self.rows.remove(0);
        for r in &mut self.rows {
            r.seq.pop_front_bit();
        }
        meter.add(self.rows.len() + 1);
        Ok(first)
    }

    /// Inverse of [`remove_first_vertex`](Self::remove_first_vertex): puts
    /// `row` back as the first row, taking the new first column from it.
    pub fn prepend_vertex(&mut self, row: MatrixRow, meter: &mut Meter) -> Result<(), RleError> {
        if row.seq.len() != self.rows.len() + 1 {
            return Err(RleError::Corrupt(format!(
                "prepended row of length {} onto {} rows",
                row.seq.len(),
                self.rows.len()
            )));
        }
        let bits = row.seq.runs().enumerate().flat_map(|(i, r)| std::iter::repeat_n(i % 2 == 1, r as usize));
        // skip the diagonal entry
        for (r, bit) in self.rows.iter_mut().zip(bits.skip(1)) {
            r.seq.push_front_bit(bit);
        }
        meter.add(self.rows.len() + row.seq.run_count());
        self.rows.insert(0, row);
        Ok(())
    }

    /// Permutes rows and columns into `order` (a permutation of the
    /// current labels).
    pub fn reorder(&mut self, order: &[Vertex], meter: &mut Meter) -> Result<(), RleError> {
        let n = self.rows.len();
        if order.len() != n {
            return Err(RleError::NotPermutation);
        }
        if self.rows.iter().zip(order).all(|(r, &v)| r.label == v) {
            meter.add(n);
            return Ok(());
        }
        let mut by_label: Vec<(Vertex, usize)> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        by_label.sort_unstable();
        let mut new_index = Vec::with_capacity(n);
        for r in &self.rows {
            let k = by_label.binary_search_by_key(&r.label, |&(v, _)| v).map_err(|_| RleError::NotPermutation)?;
            new_index.push(by_label[k].1);
        }
        let mut slots: Vec<Option<MatrixRow>> = vec![None; n];
        for (old, row) in std::mem::take(&mut self.rows).into_iter().enumerate() {
            let mut ones: Vec<usize> = row.seq.ones().map(|j| new_index[j]).collect();
            ones.sort_unstable();
            meter.add(row.seq.run_count() + 2 * ones.len() + 1);
            let seq = RleSeq::from_ones(n, &ones);
            if slots[new_index[old]].replace(MatrixRow { label: row.label, seq }).is_some() {
                return Err(RleError::NotPermutation);
            }
        }
        self.rows = slots.into_iter().collect::<Option<Vec<_>>>().ok_or(RleError::NotPermutation)?;
        Ok(())
    }

    /// Rebuilds the parent matrix from this child matrix and `rec`.
    ///
    /// `parent_ordering` is the parent's ordering, already restored. The
    /// child is first permuted back into the partial parent ordering;
    /// each surviving row is then rebuilt by walking the picked row's runs,
    /// taking bits under its 1-runs from the row's R structure and bits
    /// under its 0-runs from the child row.
    pub fn restore(&mut self, rec: RestoreRecord, parent_ordering: &[Vertex]) -> Result<(), RleError> {
        self.restore_metered(rec, parent_ordering, &mut Meter::default())
    }

    pub fn restore_metered(
        &mut self,
        rec: RestoreRecord,
        parent_ordering: &[Vertex],
        meter: &mut Meter,
    ) -> Result<(), RleError> {
        let n_parent = parent_ordering.len();
        if n_parent != self.rows.len() + rec.removed_rows.len() {
            return Err(RleError::Corrupt(format!(
                "parent ordering has {n_parent} vertices, child {} plus {} removed",
                self.rows.len(),
                rec.removed_rows.len()
            )));
        }
        let mut is_removed = vec![false; n_parent];
        for r in &rec.removed_rows {
            if r.position >= n_parent || parent_ordering[r.position] != r.label {
                return Err(RleError::Corrupt(format!("removed vertex {} not at position {}", r.label, r.position)));
            }
            is_removed[r.position] = true;
        }
        let partial: Vec<Vertex> =
            parent_ordering.iter().zip(&is_removed).filter(|(_, &gone)| !gone).map(|(&v, _)| v).collect();
        meter.add(n_parent);
        self.reorder(&partial, meter)?;

        let picked_pos = rec.picked_position();
        let mask = rec.picked_row();
        if mask.len() != n_parent {
            return Err(RleError::Corrupt("picked row length differs from parent size".into()));
        }
        let cut_len = mask.count_ones();
        let all_zero = RleSeq::zeros(cut_len);
        let mut cuts = rec.r_structures.iter().peekable();
        let mut survivors = Vec::with_capacity(self.rows.len());
        for row in std::mem::take(&mut self.rows) {
            let cut = match cuts.peek() {
                Some((label, seq)) if *label == row.label => {
                    cuts.next();
                    seq
                }
                _ => &all_zero,
            };
            let seq = interleave(mask, picked_pos, cut, &row.seq, meter)
                .ok_or_else(|| RleError::Corrupt(format!("row {} does not fit the picked row", row.label)))?;
            survivors.push(MatrixRow { label: row.label, seq });
        }
        if cuts.next().is_some() {
            return Err(RleError::Corrupt("unused R structures (order mismatch)".into()));
        }

        let mut removed = rec.removed_rows.into_iter().peekable();
        let mut rest = survivors.into_iter();
        let mut rows = Vec::with_capacity(n_parent);
        for at in 0..n_parent {
            match removed.peek() {
                Some(r) if r.position == at => {
                    let r = removed.next().unwrap();
                    rows.push(MatrixRow { label: r.label, seq: r.seq });
                }
                _ => rows.push(rest.next().expect("counts checked above")),
            }
        }
        meter.add(n_parent);
        self.rows = rows;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::ordering::smallest_last;

    fn p3() -> Graph {
        generate(Family::Path { n: 3 }, 0).unwrap()
    }

    fn runs(m: &RleMatrix) -> Vec<(Vertex, Vec<u32>)> {
        m.rows().iter().map(|r| (r.label, r.seq.to_runs())).collect()
    }

    #[test]
    fn build_examples() {
        let m = RleMatrix::build(&p3(), &[0, 1, 2]).unwrap();
        assert_eq!(runs(&m), vec![(0, vec![1, 1, 1, 0]), (1, vec![0, 1, 1, 1]), (2, vec![1, 1, 1, 0])]);
        let k2 = generate(Family::Complete { n: 2 }, 0).unwrap();
        let m = RleMatrix::build(&k2, &[0, 1]).unwrap();
        assert_eq!(runs(&m), vec![(0, vec![1, 1]), (1, vec![0, 1, 1, 0])]);
        let m = RleMatrix::build(&Graph::empty(3), &[2, 0, 1]).unwrap();
        assert!(m.rows().iter().all(|r| r.seq.to_runs() == vec![3, 0]));
        assert!(RleMatrix::build(&p3(), &[0, 0, 1]).is_err());
        assert!(RleMatrix::build(&p3(), &[0, 1]).is_err());
    }

    #[test]
    fn dump_format() {
        let m = RleMatrix::build(&p3(), &[0, 1, 2]).unwrap();
        assert_eq!(m.dump(), "0: 1 1 1 0\n1: 0 1 1 1\n2: 1 1 1 0\n");
    }

    #[test]
    fn remove_closed_neighborhood_p3() {
        let parent = RleMatrix::build(&p3(), &[0, 1, 2]).unwrap();
        let mut m = parent.clone();
        let rec = m.remove_closed_neighborhood(0).unwrap();
        assert_eq!(runs(&m), vec![(2, vec![1, 0])]);
        assert_eq!(rec.picked_vertex, 0);
        assert_eq!(rec.removed_rows.iter().map(|r| (r.label, r.position)).collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);
        // 2 sees the removed neighbour 1
        assert_eq!(rec.r_structures, vec![(2, RleSeq::encode(&[true]))]);
        m.restore(rec, &[0, 1, 2]).unwrap();
        assert_eq!(m, parent);
    }

    #[test]
    fn remove_closed_neighborhood_degenerate() {
        let k5 = generate(Family::Complete { n: 5 }, 0).unwrap();
        let parent = RleMatrix::build(&k5, &[0, 1, 2, 3, 4]).unwrap();
        let mut m = parent.clone();
        let rec = m.remove_closed_neighborhood(2).unwrap();
        assert!(m.is_empty());
        assert_eq!(rec.removed_rows.len(), 5);
        m.restore(rec, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(m, parent);

        let mut m = RleMatrix::build(&Graph::empty(4), &[0, 1, 2, 3]).unwrap();
        m.remove_closed_neighborhood(0).unwrap();
        assert_eq!(runs(&m), vec![(1, vec![3, 0]), (2, vec![3, 0]), (3, vec![3, 0])]);
        assert!(m.remove_closed_neighborhood(7).is_err());
    }

    #[test]
    fn r_structures_skip_all_zero_rows() {
        // v = 0 adjacent to 1; 2 adjacent to 1; 3 isolated from N(0).
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut m = RleMatrix::build(&g, &[0, 1, 2, 3]).unwrap();
        let rec = m.remove_closed_neighborhood(0).unwrap();
        assert_eq!(rec.r_structures.len(), 1);
        assert_eq!(rec.r_structures[0].0, 2);
        assert_eq!(rec.r_structures[0].1.decode(), vec![true]);
        assert_eq!(rec.r_structures[0].1.len(), rec.picked_row().count_ones());
    }

    #[test]
    fn remove_first_vertex_examples() {
        let mut m = RleMatrix::build(&p3(), &[0, 1, 2]).unwrap();
        let first = m.remove_first_vertex().unwrap();
        assert_eq!(first.label, 0);
        assert_eq!(runs(&m), vec![(1, vec![1, 1]), (2, vec![0, 1, 1, 0])]);
        assert_eq!(m, RleMatrix::build_induced(&p3(), &[1, 2]));

        let mut one = RleMatrix::build(&Graph::empty(1), &[0]).unwrap();
        one.remove_first_vertex().unwrap();
        assert!(one.is_empty());
        assert!(matches!(one.remove_first_vertex(), Err(RleError::Empty)));

        let mut e = RleMatrix::build(&Graph::empty(3), &[0, 1, 2]).unwrap();
        e.remove_first_vertex().unwrap();
        assert!(e.rows().iter().all(|r| r.seq.to_runs() == vec![2, 0]));
    }

    #[test]
    fn restore_interleave_shape() {
        // Picked row at position 2 (a zero of its own row); 1-runs of the
        // mask draw from R, 0-runs from the child row.
        let mask = RleSeq::encode(&[true, true, false, true, false, true, true, false, false, false, false]);
        let r = RleSeq::encode(&[true, false, true, true, false]);
        let child = RleSeq::encode(&[false, true, false, true, true]);
        let out = interleave(&mask, 2, &r, &child, &mut Meter::default()).unwrap();
        let expect = [true, false, false, true, false, true, false, true, false, true, true];
        assert_eq!(out.decode(), expect);

        // Without a skipped position every mask 0 draws from the child:
        // parent = (x1, x2, y1, x3, y2, x4, x5, y3, y4, y5, y6).
        let x = [true, false, false, true, true];
        let y = [false, true, true, false, true, false];
        let out = interleave(&mask, usize::MAX, &RleSeq::encode(&x), &RleSeq::encode(&y), &mut Meter::default());
        let expect = [x[0], x[1], y[0], x[2], y[1], x[3], x[4], y[2], y[3], y[4], y[5]];
        assert_eq!(out.unwrap().decode(), expect);
    }

    #[test]
    fn random_roundtrips_and_inherited_ordering() {
        for seed in 0..1000u64 {
            let p = [0.15, 0.3, 0.5, 0.8][seed as usize % 4];
            let g = generate(Family::RandomGnp { n: 12, p }, seed).unwrap();
            let order = smallest_last(&g).into_vec();
            let parent = RleMatrix::build(&g, &order).unwrap();
            parent.check_invariants().unwrap();
            for pos in 0..g.n() {
                let mut m = parent.clone();
                let rec = m.remove_closed_neighborhood(pos).unwrap();
                m.check_invariants().unwrap();
                let survivors: Vec<Vertex> = m.labels();
                assert_eq!(m, RleMatrix::build_induced(&g, &survivors));
                m.restore(rec, &order).unwrap();
                assert_eq!(m, parent, "seed {seed} pos {pos}");
            }
            let mut m = parent.clone();
            m.remove_first_vertex().unwrap();
            assert_eq!(m, RleMatrix::build_induced(&g, &order[1..]));
        }
    }

    #[test]
    fn reorder_then_restore() {
        let g = generate(Family::RandomGnp { n: 10, p: 0.35 }, 4).unwrap();
        let order = smallest_last(&g).into_vec();
        let parent = RleMatrix::build(&g, &order).unwrap();
        let mut m = parent.clone();
        let rec = m.remove_closed_neighborhood(0).unwrap();
        let mut shuffled = m.labels();
        shuffled.reverse();
        m.reorder(&shuffled, &mut Meter::default()).unwrap();
        assert_eq!(m, RleMatrix::build_induced(&g, &shuffled));
        m.restore(rec, &order).unwrap();
        assert_eq!(m, parent);
    }

    #[test]
    fn restore_detects_corruption() {
        let parent = RleMatrix::build(&p3(), &[0, 1, 2]).unwrap();
        let mut m = parent.clone();
        let rec = m.remove_closed_neighborhood(0).unwrap();
        assert!(matches!(m.clone().restore(rec.clone(), &[0, 1]), Err(RleError::Corrupt(_))));
        assert!(matches!(m.restore(rec, &[1, 0, 2]), Err(RleError::Corrupt(_))));
    }

    #[test]
    fn prepend_inverts_remove_first() {
        let g = generate(Family::RandomGnp { n: 9, p: 0.5 }, 11).unwrap();
        let order = smallest_last(&g).into_vec();
        let parent = RleMatrix::build(&g, &order).unwrap();
        let mut m = parent.clone();
        let mut dropped = Vec::new();
        while !m.is_empty() {
            dropped.push(m.remove_first_vertex().unwrap());
        }
        let mut meter = Meter::default();
        for row in dropped.into_iter().rev() {
            m.prepend_vertex(row, &mut meter).unwrap();
        }
        assert_eq!(m, parent);
    }
}
