//! Immutable undirected simple graph in compressed adjacency form.
//!
//! ```text
//! offsets[v] .. offsets[v + 1]   indexes the neighbors of v in `targets`
//! neighbors(v)                   sorted ascending, no self-loops, no duplicates
//! sum of degrees                 = 2 * edge_count
//! ```

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node identifier; always in `0..node_count`.
pub type Node = usize;

const UNSEEN: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Node>,
    edge_count: usize,
}

/// A shortest unit-weight path. `length` is the number of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathResult {
    pub nodes: Vec<Node>,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub mean: f64,
    pub median: f64,
    pub mode: usize,
    pub max: usize,
    pub histogram: BTreeMap<usize, usize>,
}

/// Builds a simple graph from an edge list.
///
/// Self-loops are dropped and parallel edges collapsed. When `node_count` is
/// `None` it is inferred as `max id + 1` (and at least 1).
pub fn build_graph(edges: &[(Node, Node)], node_count: Option<usize>) -> Result<Graph> {
    let inferred = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(1);
    let n = match node_count {
        Some(n) => {
            if n == 0 {
                return Err(Error::InvalidParams("node_count must be >= 1".into()));
            }
            if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= n || b >= n) {
                return Err(Error::InvalidEdge(a as i64, b as i64));
            }
            n
        }
        None => inferred,
    };

    let mut degree = vec![0usize; n];
    for &(a, b) in edges {
        if a != b {
            degree[a] += 1;
            degree[b] += 1;
        }
    }
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    for d in &degree {
        offsets.push(offsets.last().unwrap() + d);
    }
    let mut fill = offsets[..n].to_vec();
    let mut raw = vec![0; *offsets.last().unwrap()];
    for &(a, b) in edges {
        if a != b {
            raw[fill[a]] = b;
            fill[a] += 1;
            raw[fill[b]] = a;
            fill[b] += 1;
        }
    }

    // sort + dedup each row, then compact
    let mut targets = Vec::with_capacity(raw.len());
    let mut compact = Vec::with_capacity(n + 1);
    compact.push(0);
    for v in 0..n {
        let row = &mut raw[offsets[v]..offsets[v + 1]];
        row.sort_unstable();
        let start = targets.len();
        for &w in row.iter() {
            if targets.len() == start || *targets.last().unwrap() != w {
                targets.push(w);
            }
        }
        compact.push(targets.len());
    }
    let edge_count = targets.len() / 2;
    Ok(Graph {
        offsets: compact,
        targets,
        edge_count,
    })
}

impl Graph {
    pub fn from_edges(edges: &[(Node, Node)], node_count: usize) -> Result<Self> {
        build_graph(edges, Some(node_count))
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: Node) -> &[Node] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: Node) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, a: Node, b: Node) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Each undirected edge once, as `(lo, hi)` in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Node, Node)> + '_ {
        (0..self.node_count()).flat_map(move |v| {
            self.neighbors(v)
                .iter()
                .filter(move |&&w| w > v)
                .map(move |&w| (v, w))
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.node_count()).map(|v| self.degree(v)).collect()
    }

    pub fn check_node(&self, v: Node) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "node {v} out of range (node_count = {})",
                self.node_count()
            )))
        }
    }

    /// Unit-weight distances from `s`; `None` for unreachable nodes.
    pub fn bfs_distances(&self, s: Node) -> Vec<Option<usize>> {
        let mut dist = vec![UNSEEN; self.node_count()];
        self.bfs_fill(s, &mut dist, &mut VecDeque::new());
        dist.into_iter()
            .map(|d| (d != UNSEEN).then_some(d))
            .collect()
    }

    fn bfs_fill(&self, s: Node, dist: &mut [usize], queue: &mut VecDeque<Node>) -> usize {
        dist.fill(UNSEEN);
        queue.clear();
        dist[s] = 0;
        queue.push_back(s);
        let mut far = 0;
        while let Some(v) = queue.pop_front() {
            let d = dist[v];
            far = d;
            for &w in self.neighbors(v) {
                if dist[w] == UNSEEN {
                    dist[w] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        far
    }

    /// Shortest unit-weight path from `s` to `t`. Neighbors are expanded in
    /// ascending id order and each node keeps its first discoverer as parent.
    pub fn bfs_path(&self, s: Node, t: Node) -> Result<PathResult> {
        self.check_node(s)?;
        self.check_node(t)?;
        if s == t {
            return Ok(PathResult {
                nodes: vec![s],
                length: 0,
            });
        }
        let mut parent = vec![UNSEEN; self.node_count()];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        'search: while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if parent[w] == UNSEEN {
                    parent[w] = v;
                    if w == t {
                        break 'search;
                    }
                    queue.push_back(w);
                }
            }
        }
        if parent[t] == UNSEEN {
            return Err(Error::Disconnected(format!("{t} unreachable from {s}")));
        }
        let mut nodes = vec![t];
        let mut v = t;
        while v != s {
            v = parent[v];
            nodes.push(v);
        }
        nodes.reverse();
        let length = nodes.len() - 1;
        Ok(PathResult { nodes, length })
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Exact diameter by all-pairs BFS.
    pub fn diameter(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected("diameter of a disconnected graph".into()));
        }
        let n = self.node_count();
        let d = (0..n)
            .into_par_iter()
            .map_init(
                || (vec![UNSEEN; n], VecDeque::new()),
                |(dist, queue), s| self.bfs_fill(s, dist, queue),
            )
            .max()
            .unwrap_or(0);
        Ok(d)
    }

    /// `H = ceil(D / 2)`.
    pub fn half_diameter(&self) -> Result<usize> {
        Ok(self.diameter()?.div_ceil(2))
    }

    /// Component label per node, labels numbered by smallest contained id.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut label = vec![UNSEEN; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for root in 0..n {
            if label[root] != UNSEEN {
                continue;
            }
            label[root] = count;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if label[w] == UNSEEN {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Induced subgraph on the largest component plus the old→new id map.
    /// Ties go to the component containing the smallest original id.
    pub fn largest_component(&self) -> (Graph, Vec<Option<Node>>) {
        let (label, count) = self.components();
        let mut sizes = vec![0usize; count];
        for &l in &label {
            sizes[l] += 1;
        }
        // labels are ordered by smallest member, so the first max wins ties
        let best = (0..count).fold(0, |b, l| if sizes[l] > sizes[b] { l } else { b });
        let mut mapping = vec![None; self.node_count()];
        let mut next = 0;
        for v in 0..self.node_count() {
            if label[v] == best {
                mapping[v] = Some(next);
                next += 1;
            }
        }
        let edges: Vec<(Node, Node)> = self
            .edges()
            .filter_map(|(a, b)| Some((mapping[a]?, mapping[b]?)))
            .collect();
        let sub = build_graph(&edges, Some(next.max(1))).expect("ids are in range by construction");
        (sub, mapping)
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count + 1 == self.node_count() && self.is_connected()
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let mut degrees = self.degrees();
        degrees.sort_unstable();
        let n = degrees.len();
        let mut histogram = BTreeMap::new();
        for &d in &degrees {
            *histogram.entry(d).or_insert(0) += 1;
        }
        // most frequent; smallest degree on ties
        let mode = histogram
            .iter()
            .fold((0, 0), |(bd, bc), (&d, &c)| if c > bc { (d, c) } else { (bd, bc) })
            .0;
        DegreeStats {
            mean: 2.0 * self.edge_count as f64 / n as f64,
            median: degrees[(n - 1) / 2] as f64,
            mode,
            max: *degrees.last().unwrap(),
            histogram,
        }
    }
}
