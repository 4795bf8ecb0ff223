//! Binary-partition enumeration of all independent sets.
//!
//! An iteration outputs its solution `S`, then for each vertex `v` of its
//! graph in smallest-last order recurses on `G \ N[v]` with `S + v` and
//! afterwards deletes `v` from `G`. Solutions leave the engines as a
//! stream of [`SolutionDiff`]s in DFS pre-order.

mod linear;
mod reference;
pub mod stream;

use std::ops::ControlFlow;

pub use linear::{debug_checks_from_env, enumerate_linear_space, LinearOptions, LinearRun, DEBUG_CHECKS_ENV};
pub use reference::enumerate_reference;

use crate::error::{EnumError, StreamError};
use crate::graph::{Graph, Vertex};

/// Delta from the previous emitted solution: drop `pop` vertices from the
/// tail, then append `push` if present. The first diff of every stream is
/// `(0, None)`, the empty set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SolutionDiff {
    pub pop: usize,
    pub push: Option<Vertex>,
}

impl SolutionDiff {
    pub const EMPTY: SolutionDiff = SolutionDiff { pop: 0, push: None };
}

/// Receiver of the diff stream. Returning `Break` stops the enumeration.
pub trait Sink {
    fn emit(&mut self, diff: SolutionDiff) -> ControlFlow<()>;
}

impl<F: FnMut(SolutionDiff) -> ControlFlow<()>> Sink for F {
    fn emit(&mut self, diff: SolutionDiff) -> ControlFlow<()> {
        self(diff)
    }
}

/// Counts solutions, optionally stopping after `limit`.
#[derive(Debug, Default)]
pub struct CountSink {
    pub count: u64,
    pub limit: Option<u64>,
}

impl Sink for CountSink {
    fn emit(&mut self, _: SolutionDiff) -> ControlFlow<()> {
        self.count += 1;
        match self.limit {
            Some(l) if self.count >= l => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    }
}

/// Records the raw diff stream.
#[derive(Debug, Default)]
pub struct DiffSink {
    pub diffs: Vec<SolutionDiff>,
    pub limit: Option<usize>,
}

impl Sink for DiffSink {
    fn emit(&mut self, diff: SolutionDiff) -> ControlFlow<()> {
        self.diffs.push(diff);
        match self.limit {
            Some(l) if self.diffs.len() >= l => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    }
}

/// Materializes every solution as an explicit vertex list (push order).
#[derive(Debug, Default)]
pub struct CollectSink {
    current: Vec<Vertex>,
    pub solutions: Vec<Vec<Vertex>>,
}

impl Sink for CollectSink {
    fn emit(&mut self, diff: SolutionDiff) -> ControlFlow<()> {
        let keep = self.current.len().saturating_sub(diff.pop);
        self.current.truncate(keep);
        self.current.extend(diff.push);
        self.solutions.push(self.current.clone());
        ControlFlow::Continue(())
    }
}

/// Turns a diff stream back into explicit solutions.
///
/// The stream must start with the empty set `(0, None)`. Cost is linear
/// in the stream length plus the total size of the solutions produced.
pub fn replay_diffs<I>(diffs: I) -> Result<Vec<Vec<Vertex>>, StreamError>
where
    I: IntoIterator<Item = SolutionDiff>,
{
    let mut out = Vec::new();
    let mut cur: Vec<Vertex> = Vec::new();
    for (index, d) in diffs.into_iter().enumerate() {
        if index == 0 && d != SolutionDiff::EMPTY {
            return Err(StreamError::MissingEmptySet);
        }
        if d.pop > cur.len() {
            return Err(StreamError::PopTooLarge { index, pop: d.pop, size: cur.len() });
        }
        cur.truncate(cur.len() - d.pop);
        cur.extend(d.push);
        out.push(cur.clone());
    }
    if out.is_empty() {
        return Err(StreamError::MissingEmptySet);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Reference,
    Linear,
}

/// Number of independent sets of `g`.
pub fn count_only(g: &Graph, engine: Engine) -> Result<u64, EnumError> {
    let mut sink = CountSink::default();
    match engine {
        Engine::Reference => {
            enumerate_reference(g, &mut sink);
        }
        Engine::Linear => {
            enumerate_linear_space(g, &mut sink, &LinearOptions::default())?;
        }
    }
    Ok(sink.count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(pop: usize, push: Vertex) -> SolutionDiff {
        SolutionDiff { pop, push: Some(push) }
    }

    #[test]
    fn replay_k2_stream() {
        let sets = replay_diffs([SolutionDiff::EMPTY, d(0, 0), d(1, 1)]).unwrap();
        assert_eq!(sets, vec![vec![], vec![0], vec![1]]);
    }

    #[test]
    fn replay_validation() {
        assert_eq!(replay_diffs([]), Err(StreamError::MissingEmptySet));
        assert_eq!(replay_diffs([d(0, 3)]), Err(StreamError::MissingEmptySet));
        assert!(matches!(
            replay_diffs([SolutionDiff::EMPTY, d(2, 1)]),
            Err(StreamError::PopTooLarge { index: 1, pop: 2, size: 0 })
        ));
        let sets = replay_diffs([SolutionDiff::EMPTY, d(0, 4)]).unwrap();
        assert_eq!(sets, vec![vec![], vec![4]]);
    }

    #[test]
    fn count_sink_limit() {
        let mut s = CountSink { count: 0, limit: Some(2) };
        assert_eq!(s.emit(SolutionDiff::EMPTY), ControlFlow::Continue(()));
        assert_eq!(s.emit(d(0, 1)), ControlFlow::Break(()));
    }
}
