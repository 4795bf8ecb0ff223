//! Oracles, run statistics and the checks applied to them: the
//! min-degree bound for `K_q`-free graphs, the push-out condition on the
//! recursion tree, amortized cost and live space.
//!
//! `q` always denotes the smallest clique size the graph does not contain,
//! i.e. `omega + 1`. All inequalities are evaluated in integers.

pub mod oracle;
pub mod stats;

use serde::Serialize;

pub use oracle::{brute_force_independent_sets, clique_number, independent_set_masks};
pub use stats::{CheckCounters, IterationStats, PickStats, RunStats};

/// Default multiplier of `n + m` for the live-space bound.
pub const SPACE_CONSTANT: u64 = 32;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TuranReport {
    pub q: u64,
    pub picks_checked: u64,
    pub violations: u64,
    /// `(n, degree)` of the first violating pick.
    pub first_violation: Option<(u32, u32)>,
}

/// Checks `d(v) <= n (q-1)/q` at every recorded pick.
pub fn turan_degree_bound_check(picks: &[PickStats], q: u64) -> TuranReport {
    let mut report = TuranReport { q, picks_checked: 0, violations: 0, first_violation: None };
    for p in picks {
        report.picks_checked += 1;
        if q * u64::from(p.degree) > u64::from(p.n) * q.saturating_sub(1) {
            report.violations += 1;
            report.first_violation.get_or_insert((p.n, p.degree));
        }
    }
    report
}

/// Constants of the push-out condition `Tbar >= alpha T - beta (|ch|+1) T*`
/// with `T* = t_star_coeff * q`. `alpha` is `alpha_num / alpha_den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PoConfig {
    pub alpha_num: u64,
    pub alpha_den: u64,
    pub beta: u64,
    pub t_star_coeff: u64,
    pub q: u64,
}

impl PoConfig {
    /// `alpha = 3/2`, `beta = 6`, `T* = q`.
    pub fn standard(q: u64) -> Self {
        PoConfig { alpha_num: 3, alpha_den: 2, beta: 6, t_star_coeff: 1, q: q.max(2) }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PoReport {
    pub q: u64,
    /// Internal iterations with `n > 2q`.
    pub qualifying: u64,
    /// Children-cost lower bound `Tbar > n(n+1)(n+2)/(6q^2) - q/6 - 1`.
    pub lower_bound_pass: u64,
    pub lower_bound_fail: u64,
    /// Push-out condition.
    pub po_pass: u64,
    pub po_fail: u64,
    /// Smallest `Tbar - (alpha T - beta (|ch|+1) T*)` over qualifying
    /// iterations, in model units.
    pub worst_margin: Option<f64>,
}

/// Evaluates both inequalities over a recorded recursion tree under the
/// cost model `T(X) = n_X^2`, `Tbar(X) = sum over children of n_Y^2`.
pub fn po_condition_check(iterations: &[IterationStats], cfg: &PoConfig) -> PoReport {
    let mut tbar = vec![0i128; iterations.len()];
    for it in iterations {
        if let Some(p) = it.parent {
            tbar[p as usize] += i128::from(it.cost_model());
        }
    }
    let q = i128::from(cfg.q);
    let (an, ad) = (i128::from(cfg.alpha_num), i128::from(cfg.alpha_den));
    let beta_t = i128::from(cfg.beta) * i128::from(cfg.t_star_coeff) * q;
    let mut r = PoReport {
        q: cfg.q,
        qualifying: 0,
        lower_bound_pass: 0,
        lower_bound_fail: 0,
        po_pass: 0,
        po_fail: 0,
        worst_margin: None,
    };
    let mut worst: Option<i128> = None;
    for (it, &tb) in iterations.iter().zip(&tbar) {
        let n = i128::from(it.n);
        if it.child_count == 0 || n <= 2 * q {
            continue;
        }
        r.qualifying += 1;
        // 6 q^2 Tbar > n(n+1)(n+2) - q^3 - 6 q^2
        if 6 * q * q * tb > n * (n + 1) * (n + 2) - q * q * q - 6 * q * q {
            r.lower_bound_pass += 1;
        } else {
            r.lower_bound_fail += 1;
        }
        // ad * (Tbar - alpha T + beta (|ch|+1) T*), scaled to stay integral
        let scaled = ad * tb - an * n * n + ad * beta_t * (i128::from(it.child_count) + 1);
        if scaled >= 0 {
            r.po_pass += 1;
        } else {
            r.po_fail += 1;
        }
        worst = Some(worst.map_or(scaled, |w| w.min(scaled)));
    }
    r.worst_margin = worst.map(|w| w as f64 / ad as f64);
    r
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct AmortizedReport {
    pub solutions: u64,
    pub ops: u64,
    pub ops_per_solution: f64,
    /// Operations charged to iterations with `n <= 2q` and `n > 2q`.
    pub small_regime_ops: u64,
    pub large_regime_ops: u64,
    pub q: u64,
    /// `ops_per_solution / q`.
    pub per_q: f64,
}

pub fn amortized_cost_report(stats: &RunStats, q: u64) -> AmortizedReport {
    let (mut small, mut large) = (0, 0);
    for it in &stats.iterations {
        if u64::from(it.n) <= 2 * q {
            small += it.measured_ops;
        } else {
            large += it.measured_ops;
        }
    }
    let ops_per_solution = stats.ops as f64 / stats.solutions.max(1) as f64;
    AmortizedReport {
        solutions: stats.solutions,
        ops: stats.ops,
        ops_per_solution,
        small_regime_ops: small,
        large_regime_ops: large,
        q,
        per_q: ops_per_solution / q.max(1) as f64,
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SpaceReport {
    pub peak_space: u64,
    pub bound: u64,
    pub within_bound: bool,
    pub max_path_shifts: u64,
    pub m: u64,
    pub shifts_within_m: bool,
}

/// Peak live words against `c (n + m)` and path shift totals against `m`.
pub fn space_report(stats: &RunStats, n: usize, m: usize, c: u64) -> SpaceReport {
    let bound = c * (n + m) as u64;
    SpaceReport {
        peak_space: stats.peak_space,
        bound,
        within_bound: stats.peak_space <= bound,
        max_path_shifts: stats.max_path_shifts,
        m: m as u64,
        shifts_within_m: stats.max_path_shifts <= m as u64,
    }
}

/// The JSON report printed by `kfe --mode stats`.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct StatsReport {
    pub solutions: u64,
    pub ops: u64,
    pub ops_per_solution: f64,
    pub peak_space: u64,
    pub q: Option<u64>,
    pub omega: Option<u64>,
    pub po_pass: u64,
    pub po_fail: u64,
    pub worst_margin: Option<f64>,
    pub lower_bound_pass: u64,
    pub lower_bound_fail: u64,
    pub turan_violations: u64,
    pub space_bound: u64,
    pub peak_space_without_shifts: u64,
    pub max_path_shifts: u64,
    pub m: u64,
    pub n: u64,
    pub aborted: bool,
}

impl StatsReport {
    /// `omega` is `None` when the graph is too large for the clique oracle;
    /// the `q`-dependent checks are then skipped.
    pub fn build(stats: &RunStats, n: usize, m: usize, omega: Option<usize>, aborted: bool) -> Self {
        let q = omega.map(|w| w as u64 + 1);
        let po = q.map(|q| po_condition_check(&stats.iterations, &PoConfig::standard(q)));
        let turan = q.map(|q| turan_degree_bound_check(&stats.picks, q));
        let space = space_report(stats, n, m, SPACE_CONSTANT);
        StatsReport {
            solutions: stats.solutions,
            ops: stats.ops,
            ops_per_solution: stats.ops as f64 / stats.solutions.max(1) as f64,
            peak_space: stats.peak_space,
            q,
            omega: omega.map(|w| w as u64),
            po_pass: po.as_ref().map_or(0, |p| p.po_pass),
            po_fail: po.as_ref().map_or(0, |p| p.po_fail),
            worst_margin: po.as_ref().and_then(|p| p.worst_margin),
            lower_bound_pass: po.as_ref().map_or(0, |p| p.lower_bound_pass),
            lower_bound_fail: po.as_ref().map_or(0, |p| p.lower_bound_fail),
            turan_violations: turan.map_or(0, |t| t.violations),
            space_bound: space.bound,
            peak_space_without_shifts: stats.peak_space_without_shifts,
            max_path_shifts: space.max_path_shifts,
            m: m as u64,
            n: n as u64,
            aborted,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::{enumerate_linear_space, DiffSink, LinearOptions};
    use crate::graph::{generate, Family, Graph};

    fn run(g: &Graph) -> RunStats {
        enumerate_linear_space(g, &mut DiffSink::default(), &LinearOptions::instrumented()).unwrap().stats
    }

    #[test]
    fn turan_arithmetic() {
        // K_{q-1}: degree q-2 with n = q-1
        let picks = [PickStats { n: 4, degree: 3 }];
        assert_eq!(turan_degree_bound_check(&picks, 5).violations, 0);
        assert_eq!(turan_degree_bound_check(&[PickStats { n: 9, degree: 0 }], 2).violations, 0);
        // K3 is not K2-free: 2 * 2 > 3 * 1
        let r = turan_degree_bound_check(&[PickStats { n: 3, degree: 2 }], 2);
        assert_eq!((r.violations, r.first_violation), (1, Some((3, 2))));
        assert_eq!(turan_degree_bound_check(&[PickStats { n: 3, degree: 2 }], 3).violations, 0);
    }

    #[test]
    fn turan_on_bipartite_run() {
        let g = generate(Family::RandomBipartite { left: 7, right: 7, p: 0.4 }, 2).unwrap();
        let stats = run(&g);
        let q = clique_number(&g).unwrap() as u64 + 1;
        assert!(q <= 3);
        let r = turan_degree_bound_check(&stats.picks, q);
        assert_eq!(r.picks_checked, stats.solutions - 1);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn po_on_path() {
        let g = generate(Family::Path { n: 20 }, 0).unwrap();
        let stats = run(&g);
        let r = po_condition_check(&stats.iterations, &PoConfig::standard(3));
        assert!(r.qualifying > 0);
        assert_eq!((r.po_fail, r.lower_bound_fail), (0, 0));
    }

    #[test]
    fn po_trivially_passes_when_nothing_qualifies() {
        let g = generate(Family::Complete { n: 6 }, 0).unwrap();
        let r = po_condition_check(&run(&g).iterations, &PoConfig::standard(7));
        assert_eq!(r.qualifying, 0);
        assert_eq!(r.worst_margin, None);
    }

    #[test]
    fn po_margin_is_exact() {
        // Root with n = 7 and seven children of size 1: Tbar = 7.
        let mut its = vec![IterationStats { parent: None, n: 7, child_count: 7, measured_ops: 0, live_space: 0 }];
        its.extend((0..7).map(|_| IterationStats {
            parent: Some(0),
            n: 1,
            child_count: 0,
            measured_ops: 0,
            live_space: 0,
        }));
        let r = po_condition_check(&its, &PoConfig::standard(3));
        // 7 - (1.5 * 49 - 6 * 8 * 3) = 7 - 73.5 + 144
        assert_eq!(r.worst_margin, Some(77.5));
        assert_eq!(r.po_pass, 1);
    }

    #[test]
    fn space_and_amortized_reports() {
        let g = generate(Family::Star { n: 9 }, 0).unwrap();
        let stats = run(&g);
        let s = space_report(&stats, g.n(), g.m(), SPACE_CONSTANT);
        assert!(s.within_bound && s.shifts_within_m);
        let e = Graph::empty(8);
        let es = run(&e);
        assert!(space_report(&es, 8, 0, SPACE_CONSTANT).within_bound);
        let a = amortized_cost_report(&es, 2);
        assert_eq!(a.small_regime_ops + a.large_regime_ops, a.ops);
        assert_eq!(a.solutions, 256);
    }

    #[test]
    fn stats_report_json_keys() {
        let g = generate(Family::Path { n: 6 }, 0).unwrap();
        let stats = run(&g);
        let report = StatsReport::build(&stats, g.n(), g.m(), Some(2), false);
        let v = serde_json::to_value(&report).unwrap();
        for key in
            ["solutions", "ops", "ops_per_solution", "peak_space", "q", "omega", "po_pass", "po_fail", "worst_margin"]
        {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["solutions"], 21);
        assert_eq!(v["q"], 3);
    }
}
