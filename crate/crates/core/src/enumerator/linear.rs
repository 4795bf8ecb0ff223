//! Linear-space engine.
//!
//! A single [`RleMatrix`] holds the graph of the iteration on top of the
//! stack, rows in that iteration's smallest-last order, so the vertex to
//! pick is always row 0. Descending removes `N[v]` and keeps a
//! [`RestoreRecord`]; moving to the next sibling drops row 0 and keeps
//! that row in the frame. When an iteration finishes its dropped rows are
//! prepended back, which yields its full input matrix again, and the
//! parent's record turns it into the parent's matrix.

use std::ops::ControlFlow;

use super::{Sink, SolutionDiff};
use crate::analysis::stats::{IterationStats, PickStats, RunStats};
use crate::error::EnumError;
use crate::graph::{Graph, Vertex};
use crate::meter::Meter;
use crate::ordering::{
    compute_shift_diff_metered, restore_parent_ordering_metered, smallest_last_induced, smallest_last_local,
};
use crate::rle_matrix::{MatrixRow, RestoreRecord, RleMatrix, RleSeq};

/// Name of the environment variable that switches on structural checks.
pub const DEBUG_CHECKS_ENV: &str = "KFE_DEBUG_CHECKS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOptions {
    /// Compare every descent, restore and rebuild with a fresh rebuild
    /// from the input graph and check the run-length bounds. Expensive.
    pub debug_checks: bool,
    /// Keep one [`IterationStats`] per iteration and one [`PickStats`]
    /// per pick.
    pub collect_stats: bool,
}

impl Default for LinearOptions {
    fn default() -> Self {
        LinearOptions { debug_checks: cfg!(debug_assertions) || debug_checks_from_env(), collect_stats: false }
    }
}

impl LinearOptions {
    pub fn release() -> Self {
        LinearOptions { debug_checks: false, collect_stats: false }
    }

    pub fn instrumented() -> Self {
        LinearOptions { debug_checks: true, collect_stats: true }
    }
}

pub fn debug_checks_from_env() -> bool {
    std::env::var(DEBUG_CHECKS_ENV).is_ok_and(|v| v == "1")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRun {
    pub count: u64,
    /// True if the sink stopped the run early.
    pub aborted: bool,
    pub stats: RunStats,
}

struct Frame {
    /// How this iteration was reached from its parent; `None` at the root.
    rec: Option<RestoreRecord>,
    /// Rows removed by the sibling step, in pick order.
    dropped: Vec<MatrixRow>,
    /// Live words held by `rec` and `dropped`.
    words: usize,
    stat: u32,
}

struct Engine<'g> {
    g: &'g Graph,
    opts: LinearOptions,
    meter: Meter,
    matrix: RleMatrix,
    frames: Vec<Frame>,
    stack_words: usize,
    path_shifts: usize,
    ops_mark: u64,
    stats: RunStats,
}

/// Enumerates every independent set of `g` in `O(n + m)` live space.
///
/// Emits exactly the diff stream of
/// [`enumerate_reference`](super::enumerate_reference).
pub fn enumerate_linear_space<S: Sink + ?Sized>(
    g: &Graph,
    sink: &mut S,
    opts: &LinearOptions,
) -> Result<LinearRun, EnumError> {
    let mut e = Engine {
        g,
        opts: opts.clone(),
        meter: Meter::default(),
        matrix: RleMatrix::new(),
        frames: Vec::new(),
        stack_words: 0,
        path_shifts: 0,
        ops_mark: 0,
        stats: RunStats::default(),
    };
    let aborted = e.run(sink)?;
    e.charge_top();
    e.stats.ops = e.meter.ops;
    Ok(LinearRun { count: e.stats.solutions, aborted, stats: e.stats })
}

fn mismatch(depth: usize, what: impl Into<String>) -> EnumError {
    EnumError::RollbackMismatch { depth, what: what.into() }
}

impl Engine<'_> {
    fn run<S: Sink + ?Sized>(&mut self, sink: &mut S) -> Result<bool, EnumError> {
        let labels: Vec<Vertex> = (0..self.g.n()).collect();
        let adj: Vec<Vec<usize>> = labels.iter().map(|&v| self.g.neighbors(v).to_vec()).collect();
        let root_order: Vec<Vertex> = smallest_last_local(&labels, &adj, &mut self.meter);
        self.matrix = RleMatrix::build_induced(self.g, &root_order);
        self.meter.add(self.g.n() + 2 * self.g.m());

        self.stats.solutions = 1;
        if sink.emit(SolutionDiff::EMPTY).is_break() {
            return Ok(true);
        }
        self.enter(None);
        let mut pending_pops = 0;
        loop {
            if !self.matrix.is_empty() {
                let v = self.descend()?;
                self.stats.solutions += 1;
                let diff = SolutionDiff { pop: pending_pops, push: Some(v) };
                pending_pops = 0;
                if let ControlFlow::Break(()) = sink.emit(diff) {
                    return Ok(true);
                }
            } else if self.backtrack()? {
                pending_pops += 1;
            } else {
                return Ok(false);
            }
        }
    }

    fn depth(&self) -> usize {
        self.frames.len()
    }

    /// Attributes operations since the last switch to the top frame.
    /// Work done before the root frame exists is charged to the root.
    fn charge_top(&mut self) {
        let Some(top) = self.frames.last() else {
            return;
        };
        if self.opts.collect_stats {
            self.stats.iterations[top.stat as usize].measured_ops += self.meter.ops - self.ops_mark;
        }
        self.ops_mark = self.meter.ops;
    }

    fn live_words(&self) -> usize {
        self.matrix.stored_runs() + self.matrix.len() + self.stack_words
    }

    fn enter(&mut self, rec: Option<RestoreRecord>) {
        self.charge_top();
        let words = rec.as_ref().map_or(0, RestoreRecord::stored_words);
        self.stack_words += words;
        let live = self.live_words() as u64;
        self.stats.peak_space = self.stats.peak_space.max(live);
        let without = live - 2 * self.path_shifts as u64;
        self.stats.peak_space_without_shifts = self.stats.peak_space_without_shifts.max(without);
        let stat = self.stats.iterations.len() as u32;
        if self.opts.collect_stats {
            let parent = self.frames.last().map(|f| f.stat);
            if let Some(p) = parent {
                self.stats.iterations[p as usize].child_count += 1;
            }
            self.stats.iterations.push(IterationStats {
                parent,
                n: self.matrix.len() as u32,
                child_count: 0,
                measured_ops: 0,
                live_space: live,
            });
        }
        if self.opts.debug_checks {
            self.check_matrix_bounds();
        }
        self.frames.push(Frame { rec, dropped: Vec::new(), words, stat });
    }

    /// Picks row 0, builds the child's matrix in the child's own
    /// smallest-last order and pushes its frame.
    fn descend(&mut self) -> Result<Vertex, EnumError> {
        let v = self.matrix.rows()[0].label;
        let n = self.matrix.len();
        let degree = self.matrix.degree_at(0);
        if self.opts.collect_stats {
            self.stats.picks.push(PickStats { n: n as u32, degree: degree as u32 });
        }
        if self.opts.debug_checks {
            self.check_pick_bounds(n, degree);
        }
        let mut rec = self.matrix.remove_closed_neighborhood_metered(0, &mut self.meter)?;
        let partial = self.matrix.labels();
        let target = self.matrix.smallest_last(&mut self.meter);
        rec.ordering_shifts = compute_shift_diff_metered(&partial, &target, &mut self.meter)?;
        self.matrix.reorder(&target, &mut self.meter)?;
        self.path_shifts += rec.ordering_shifts.len();
        self.stats.max_path_shifts = self.stats.max_path_shifts.max(self.path_shifts as u64);
        if self.opts.debug_checks {
            for (_, cut) in &rec.r_structures {
                self.check_seq(cut);
            }
            self.check_against_graph(&target, "descent")?;
        }
        self.enter(Some(rec));
        Ok(v)
    }

    /// Finishes the top iteration. Returns false when the root is done.
    fn backtrack(&mut self) -> Result<bool, EnumError> {
        self.charge_top();
        let frame = self.frames.pop().expect("backtrack with a live frame");
        self.stack_words -= frame.words;
        for row in frame.dropped.into_iter().rev() {
            self.matrix.prepend_vertex(row, &mut self.meter)?;
        }
        let child_order = self.matrix.labels();
        if self.opts.debug_checks {
            let fresh = smallest_last_induced(self.g, &child_order);
            if fresh != child_order {
                return Err(mismatch(self.depth(), "rebuilt iteration ordering differs from smallest-last"));
            }
            self.check_against_graph(&child_order, "sibling rebuild")?;
        }
        let Some(rec) = frame.rec else {
            if self.opts.collect_stats {
                self.stats.iterations[frame.stat as usize].measured_ops += self.meter.ops - self.ops_mark;
            }
            self.ops_mark = self.meter.ops;
            return Ok(false);
        };
        self.path_shifts -= rec.ordering_shifts.len();
        let parent_order = restore_parent_ordering_metered(
            &child_order,
            &rec.ordering_shifts,
            &rec.removed_positions(),
            &mut self.meter,
        )?;
        self.matrix.restore_metered(rec, &parent_order, &mut self.meter)?;
        if self.opts.debug_checks {
            let fresh = smallest_last_induced(self.g, &parent_order);
            if fresh != parent_order {
                return Err(mismatch(self.depth(), "restored ordering differs from smallest-last"));
            }
            self.check_against_graph(&parent_order, "restore")?;
        }
        // G <- G \ {v}
        let row = self.matrix.remove_first_vertex_metered(&mut self.meter)?;
        let top = self.frames.last_mut().expect("parent frame");
        let w = row.seq.run_count() + 1;
        top.words += w;
        self.stack_words += w;
        top.dropped.push(row);
        Ok(true)
    }

    fn check_seq(&mut self, s: &RleSeq) {
        self.stats.checks.seqs_checked += 1;
        if !s.within_run_bound() {
            self.stats.checks.seq_bound_violations += 1;
        }
    }

    fn check_matrix_bounds(&mut self) {
        let rows: Vec<RleSeq> = self.matrix.rows().iter().map(|r| r.seq.clone()).collect();
        for s in &rows {
            self.check_seq(s);
        }
        let n = self.matrix.len();
        let m = self.matrix.edge_count();
        self.stats.checks.matrices_checked += 1;
        if self.matrix.stored_runs() > 2 * n + 4 * m + 2 * n {
            self.stats.checks.matrix_bound_violations += 1;
        }
    }

    fn check_pick_bounds(&mut self, n: usize, degree: usize) {
        let outside = (n - 1 - degree) as i64;
        let worst = self.matrix.rows().iter().map(|r| r.seq.run_count() as i64).max().unwrap_or(0);
        let c = &mut self.stats.checks;
        c.picks_checked += 1;
        if worst > 2 * outside + 2 {
            c.pick_row_bound_violations += 1;
        }
        if worst > 2 * outside + 4 {
            c.pick_row_bound_diag_violations += 1;
        }
        let excess = worst - 2 * outside;
        if c.picks_checked == 1 || excess > c.pick_row_worst_excess {
            c.pick_row_worst_excess = excess;
        }
    }

    /// The live matrix must equal a fresh encoding of the induced subgraph
    /// in `order`.
    fn check_against_graph(&mut self, order: &[Vertex], what: &str) -> Result<(), EnumError> {
        self.stats.checks.rollback_checks += 1;
        let fresh = RleMatrix::build_induced(self.g, order);
        if fresh != self.matrix {
            return Err(mismatch(self.depth(), format!("{what}: matrix differs from fresh rebuild")));
        }
        Ok(())
    }
}
