use std::ops::ControlFlow;

use super::{Sink, SolutionDiff};
use crate::graph::{Graph, Vertex};
use crate::ordering::{smallest_last, smallest_last_induced};

struct Frame {
    /// Smallest-last ordering of the iteration's graph.
    order: Vec<Vertex>,
    next: usize,
}

/// Straightforward engine: each iteration owns a copy of its vertex set
/// and recomputes the induced subgraph from `g`. Quadratic space; kept as
/// the correctness baseline for the linear-space engine.
pub fn enumerate_reference<S: Sink + ?Sized>(g: &Graph, sink: &mut S) -> u64 {
    let mut count = 1;
    if sink.emit(SolutionDiff::EMPTY).is_break() {
        return count;
    }
    let mut stack = vec![Frame { order: smallest_last(g).into_vec(), next: 0 }];
    let mut pending_pops = 0;
    while let Some(top) = stack.last_mut() {
        if top.next == top.order.len() {
            stack.pop();
            pending_pops += 1;
            continue;
        }
        let v = top.order[top.next];
        top.next += 1;
        // G_i minus N[v]: later vertices of the ordering not adjacent to v.
        let rest: Vec<Vertex> = top.order[top.next..].iter().copied().filter(|&u| !g.has_edge(u, v)).collect();
        let child = smallest_last_induced(g, &rest);
        count += 1;
        let diff = SolutionDiff { pop: pending_pops, push: Some(v) };
        pending_pops = 0;
        stack.push(Frame { order: child, next: 0 });
        if let ControlFlow::Break(()) = sink.emit(diff) {
            break;
        }
    }
    count
}
