use serde::Serialize;

/// Per-iteration record of an instrumented run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IterationStats {
    /// Index of the parent iteration; `None` for the root.
    pub parent: Option<u32>,
    /// Vertex count of the iteration's input graph.
    pub n: u32,
    pub child_count: u32,
    /// Operations charged while this iteration was on top of the stack,
    /// including building its children's inputs and restoring afterwards.
    pub measured_ops: u64,
    /// Accounted live words at iteration entry.
    pub live_space: u64,
}

impl IterationStats {
    /// Unit-free cost model `n^2`.
    pub fn cost_model(&self) -> u64 {
        let n = u64::from(self.n);
        n * n
    }
}

/// One vertex pick: size of the current graph and the picked degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PickStats {
    pub n: u32,
    pub degree: u32,
}

/// Results of the structural checks run in debug-check mode.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckCounters {
    /// Sequences inspected against `|runs| <= min(2 x0, 2 x1) + 2`.
    pub seqs_checked: u64,
    pub seq_bound_violations: u64,
    /// Matrices inspected against `sum |runs| <= 2n + 4m + 2n`.
    pub matrices_checked: u64,
    pub matrix_bound_violations: u64,
    /// Picks where some row exceeds `2 |V \ N[v]| + 2` runs.
    pub picks_checked: u64,
    pub pick_row_bound_violations: u64,
    /// Same, against `2 |V \ N[v]| + 4`, which accounts for the zero
    /// diagonal entry of each row.
    pub pick_row_bound_diag_violations: u64,
    /// Largest `|runs| - 2 |V \ N[v]|` seen at a pick.
    pub pick_row_worst_excess: i64,
    /// Descents, restores and sibling rebuilds compared against a fresh
    /// rebuild from the input graph.
    pub rollback_checks: u64,
}

/// Everything an instrumented linear-space run records.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunStats {
    pub solutions: u64,
    pub ops: u64,
    pub peak_space: u64,
    /// Same peak with the words held by stored shift pairs left out.
    pub peak_space_without_shifts: u64,
    /// Largest sum of shift-sequence lengths along one root-to-leaf path.
    pub max_path_shifts: u64,
    pub iterations: Vec<IterationStats>,
    pub picks: Vec<PickStats>,
    pub checks: CheckCounters,
}
