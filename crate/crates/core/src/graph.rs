//! Simple undirected graphs, text parsers and deterministic generators.
//!
//! Vertices are labeled `0..n`. Labels are stable: every induced subgraph
//! built during enumeration keeps referring to the original labels.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;

pub type Vertex = usize;

/// Immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<Vertex>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

impl Graph {
    /// Builds a graph from an edge iterator. Duplicate edges are merged,
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let adj: Vec<Vec<Vertex>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph { n, m, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, m: 0, adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// True if no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let edges = self.edges().chain(other.edges().map(|(u, v)| (u + off, v + off)));
        Graph::from_edges(self.n + other.n, edges).expect("union of valid graphs is valid")
    }

    /// Checks symmetry, absence of loops and duplicates, and the degree sum.
    pub fn validate(&self) -> Result<(), GraphError> {
        let mut deg_sum = 0;
        for (u, ns) in self.adj.iter().enumerate() {
            deg_sum += ns.len();
            if ns.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GraphError::Invariant(format!("adjacency of {u} not strictly sorted")));
            }
            for &v in ns {
                if v == u {
                    return Err(GraphError::SelfLoop { vertex: u });
                }
                if !self.has_edge(v, u) {
                    return Err(GraphError::Invariant(format!("edge {u}-{v} not symmetric")));
                }
            }
        }
        if deg_sum != 2 * self.m {
            return Err(GraphError::Invariant("degree sum differs from 2m".into()));
        }
        Ok(())
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_num(tok: &str, line: usize) -> Result<usize, GraphError> {
    tok.parse::<usize>()
        .map_err(|_| GraphError::Parse { line, msg: format!("expected a non-negative integer, got {tok:?}") })
}

/// Parses the whitespace-separated edge-list format.
///
/// One edge `u v` per line; `#` starts a comment; blank lines are ignored.
/// An optional header line `n <count>` fixes the vertex count, otherwise
/// it is one more than the largest label seen.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["n", count] => {
                if declared_n.is_some() || !edges.is_empty() {
                    return Err(GraphError::Parse {
                        line: line_no,
                        msg: "header `n <count>` must come before any edge".into(),
                    });
                }
                declared_n = Some(parse_num(count, line_no)?);
            }
            [u, v] => {
                let (u, v) = (parse_num(u, line_no)?, parse_num(v, line_no)?);
                if u == v {
                    return Err(GraphError::SelfLoop { vertex: u });
                }
                edges.push((u, v));
            }
            _ => return Err(GraphError::Parse { line: line_no, msg: format!("expected `u v`, got {:?}", raw.trim()) }),
        }
    }
    let max_label = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared_n {
        Some(n) if n < max_label => return Err(GraphError::VertexOutOfRange { vertex: max_label - 1, n }),
        Some(n) => n,
        None => max_label,
    };
    Graph::from_edges(n, edges)
}

/// Result of [`parse_dimacs`]: the graph plus non-fatal warnings.
#[derive(Debug, Clone)]
pub struct DimacsGraph {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

/// Parses DIMACS `p edge n m` files with 1-indexed `e u v` lines.
///
/// `c` lines are comments. A mismatch between the declared and the
/// actual number of distinct edges is reported as a warning.
pub fn parse_dimacs(text: &str) -> Result<DimacsGraph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut lines_seen = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["c", ..] => {}
            ["p", "edge", n, m] | ["p", "col", n, m] => {
                if header.is_some() {
                    return Err(GraphError::Parse { line: line_no, msg: "duplicate `p` line".into() });
                }
                header = Some((parse_num(n, line_no)?, parse_num(m, line_no)?));
            }
            ["e", u, v] => {
                let Some((n, _)) = header else {
                    return Err(GraphError::MissingHeader);
                };
                let (u, v) = (parse_num(u, line_no)?, parse_num(v, line_no)?);
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(GraphError::VertexOutOfRange { vertex: w, n });
                    }
                }
                if u == v {
                    return Err(GraphError::SelfLoop { vertex: u - 1 });
                }
                edges.push((u - 1, v - 1));
                lines_seen += 1;
            }
            _ => {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: format!("unrecognized DIMACS line {:?}", raw.trim()),
                })
            }
        }
    }
    let (n, declared_m) = header.ok_or(GraphError::MissingHeader)?;
    let graph = Graph::from_edges(n, edges)?;
    let mut warnings = Vec::new();
    if declared_m != graph.m() {
        warnings
            .push(format!("header declares {declared_m} edges, found {} distinct ({lines_seen} `e` lines)", graph.m()));
    }
    Ok(DimacsGraph { graph, warnings })
}

/// Writes the edge-list format with an explicit `n` header.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Graph families understood by [`generate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Empty {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Path {
        n: usize,
    },
    /// Center 0 joined to leaves `1..n`.
    Star {
        n: usize,
    },
    Grid {
        rows: usize,
        cols: usize,
    },
    RandomGnp {
        n: usize,
        p: f64,
    },
    /// Left side `0..left`, right side `left..left+right`.
    RandomBipartite {
        left: usize,
        right: usize,
        p: f64,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Empty { .. } => "empty",
            Family::Complete { .. } => "complete",
            Family::Path { .. } => "path",
            Family::Star { .. } => "star",
            Family::Grid { .. } => "grid",
            Family::RandomGnp { .. } => "gnp",
            Family::RandomBipartite { .. } => "bipartite",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Empty { n } => write!(f, "empty:{n}"),
            Family::Complete { n } => write!(f, "complete:{n}"),
            Family::Path { n } => write!(f, "path:{n}"),
            Family::Star { n } => write!(f, "star:{n}"),
            Family::Grid { rows, cols } => write!(f, "grid:{rows}x{cols}"),
            Family::RandomGnp { n, p } => write!(f, "gnp:{n}:{p}"),
            Family::RandomBipartite { left, right, p } => write!(f, "bipartite:{left}:{right}:{p}"),
        }
    }
}

impl FromStr for Family {
    type Err = GraphError;

    /// Parses `empty:N`, `complete:N`, `path:N`, `star:N`, `grid:RxC`,
    /// `gnp:N:P` and `bipartite:L:R:P`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::InvalidParams(format!("bad generator spec {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let int = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let prob = |t: &str| t.parse::<f64>().map_err(|_| bad());
        let fam = match parts.as_slice() {
            ["empty", n] => Family::Empty { n: int(n)? },
            ["complete", n] => Family::Complete { n: int(n)? },
            ["path", n] => Family::Path { n: int(n)? },
            ["star", n] => Family::Star { n: int(n)? },
            ["grid", dims] => {
                let (r, c) = dims.split_once('x').ok_or_else(bad)?;
                Family::Grid { rows: int(r)?, cols: int(c)? }
            }
            ["gnp", n, p] => Family::RandomGnp { n: int(n)?, p: prob(p)? },
            ["bipartite", l, r, p] => Family::RandomBipartite { left: int(l)?, right: int(r)?, p: prob(p)? },
            _ => return Err(bad()),
        };
        fam.check()?;
        Ok(fam)
    }
}

impl Family {
    fn check(&self) -> Result<(), GraphError> {
        let p = match *self {
            Family::RandomGnp { p, .. } | Family::RandomBipartite { p, .. } => p,
            _ => return Ok(()),
        };
        if !(0.0..=1.0).contains(&p) {
            return Err(GraphError::InvalidParams(format!("probability {p} outside [0, 1]")));
        }
        Ok(())
    }
}

/// Bernoulli(p) edge source used by the random families.
///
/// The stream is ChaCha8 keyed with the 32-byte seed whose first eight
/// bytes are `seed` in little-endian order and whose remaining bytes are
/// zero. Each candidate pair consumes one `u64` word; the edge is present
/// iff the word is below `floor(p * 2^64)` (always present when `p == 1`).
struct EdgeCoin {
    rng: ChaCha8Rng,
    threshold: Option<u64>,
}

impl EdgeCoin {
    fn new(seed: u64, p: f64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let threshold = if p >= 1.0 { None } else { Some((p * 18_446_744_073_709_551_616.0) as u64) };
        EdgeCoin { rng: ChaCha8Rng::from_seed(key), threshold }
    }

    fn flip(&mut self) -> bool {
        let word = self.rng.next_u64();
        match self.threshold {
            None => true,
            Some(t) => word < t,
        }
    }
}

/// Deterministic graph generator. Random families enumerate candidate
/// pairs `(u, v)`, `u < v`, in lexicographic order and draw one coin each.
pub fn generate(family: Family, seed: u64) -> Result<Graph, GraphError> {
    family.check()?;
    let mut edges = Vec::new();
    let n = match family {
        Family::Empty { n } => n,
        Family::Complete { n } => {
            for u in 0..n {
                edges.extend((u + 1..n).map(|v| (u, v)));
            }
            n
        }
        Family::Path { n } => {
            edges.extend((1..n).map(|v| (v - 1, v)));
            n
        }
        Family::Star { n } => {
            edges.extend((1..n).map(|v| (0, v)));
            n
        }
        Family::Grid { rows, cols } => {
            let id = |r: usize, c: usize| r * cols + c;
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < rows {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            rows * cols
        }
        Family::RandomGnp { n, p } => {
            let mut coin = EdgeCoin::new(seed, p);
            for u in 0..n {
                for v in u + 1..n {
                    if coin.flip() {
                        edges.push((u, v));
                    }
                }
            }
            n
        }
        Family::RandomBipartite { left, right, p } => {
            let mut coin = EdgeCoin::new(seed, p);
            for u in 0..left {
                for v in left..left + right {
                    if coin.flip() {
                        edges.push((u, v));
                    }
                }
            }
            left + right
        }
    };
    Graph::from_edges(n, edges)
}
