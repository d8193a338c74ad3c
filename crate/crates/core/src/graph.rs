//! Graph ingestion, hop distances and degree statistics.

use std::collections::{HashMap, HashSet, VecDeque};
use std::io::Read;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph6;
use crate::par::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Graph6,
}

/// A finite, simple, connected, undirected graph on the dense vertex set `0..n`.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: DMatrix<f64>,
    neighbors: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a graph with labels `"0".."n-1"`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Builds a graph whose vertex `i` is reported as `labels[i]`.
    pub fn with_labels(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n < 2 {
            return Err(Error::TooSmall);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adjacency = DMatrix::zeros(n, n);
        let mut neighbors = vec![Vec::new(); n];
        let mut norm_edges = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            assert!(a < n && b < n, "edge ({a}, {b}) out of range for order {n}");
            let key = (a.min(b), a.max(b));
            if a == b || !seen.insert(key) {
                return Err(Error::LoopOrMultiEdge {
                    u: labels[a].clone(),
                    v: labels[b].clone(),
                });
            }
            adjacency[(a, b)] = 1.0;
            adjacency[(b, a)] = 1.0;
            neighbors[a].push(b);
            neighbors[b].push(a);
            norm_edges.push(key);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        norm_edges.sort_unstable();

        let g = Graph {
            n,
            edges: norm_edges,
            adjacency,
            neighbors,
            labels,
        };
        let components = g.component_count();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(g)
    }

    fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.neighbors[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> &DMatrix<f64> {
        &self.adjacency
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    /// Looks a vertex up by its external label.
    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = self.neighbors.iter().map(Vec::len).collect();
        let is_regular = degrees.windows(2).all(|w| w[0] == w[1]);
        DegreeProfile {
            degrees,
            is_regular,
        }
    }

    pub fn distance_data(&self) -> DistanceData {
        self.distance_data_with(Exec::default())
    }

    /// BFS from every vertex.
    pub fn distance_data_with(&self, exec: Exec) -> DistanceData {
        let n = self.n;
        let rows = exec.map(n, |s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.neighbors[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            dist
        });

        let ecc: Vec<usize> = rows.iter().map(|r| *r.iter().max().unwrap()).collect();
        let diameter = *ecc.iter().max().unwrap();
        let spheres: Vec<Vec<Vec<usize>>> = rows
            .iter()
            .zip(&ecc)
            .map(|(row, &e)| {
                let mut s = vec![Vec::new(); e + 1];
                for (v, &d) in row.iter().enumerate() {
                    s[d].push(v);
                }
                s
            })
            .collect();
        let dist: Vec<usize> = rows.into_iter().flatten().collect();
        let matrices = (0..=diameter)
            .map(|i| DMatrix::from_fn(n, n, |u, v| f64::from(u8::from(dist[u * n + v] == i))))
            .collect();

        DistanceData {
            n,
            dist,
            ecc,
            diameter,
            spheres,
            matrices,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub is_regular: bool,
}

/// Hop distances with the derived distance partition.
#[derive(Clone, Debug)]
pub struct DistanceData {
    n: usize,
    dist: Vec<usize>,
    ecc: Vec<usize>,
    diameter: usize,
    spheres: Vec<Vec<Vec<usize>>>,
    matrices: Vec<DMatrix<f64>>,
}

impl DistanceData {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.n + v]
    }

    pub fn eccentricity(&self, u: usize) -> usize {
        self.ecc[u]
    }

    pub fn eccentricities(&self) -> &[usize] {
        &self.ecc
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    /// Vertices at distance exactly `i` from `u` (empty beyond the eccentricity).
    pub fn sphere(&self, u: usize, i: usize) -> &[usize] {
        self.spheres[u].get(i).map_or(&[], Vec::as_slice)
    }

    /// Vertices at distance at most `i` from `u`, in increasing distance order.
    pub fn ball(&self, u: usize, i: usize) -> Vec<usize> {
        self.spheres[u]
            .iter()
            .take(i + 1)
            .flatten()
            .copied()
            .collect()
    }

    /// The 0/1 distance-`i` matrix; all zeros when `i` exceeds the diameter.
    pub fn distance_matrix(&self, i: usize) -> DMatrix<f64> {
        self.matrices
            .get(i)
            .cloned()
            .unwrap_or_else(|| DMatrix::zeros(self.n, self.n))
    }

    pub fn distance_matrices(&self) -> &[DMatrix<f64>] {
        &self.matrices
    }
}

/// Reads a graph in the given format.
pub fn load_graph<R: Read>(mut source: R, format: Format) -> Result<Graph> {
    let mut text = String::new();
    source.read_to_string(&mut text).map_err(|e| match e.kind() {
        std::io::ErrorKind::InvalidData => Error::Parse {
            line: 0,
            msg: "input is not valid UTF-8".into(),
        },
        _ => Error::Io(e),
    })?;
    match format {
        Format::EdgeList => parse_edgelist(&text),
        Format::Graph6 => {
            let (n, edges) = graph6::decode(&text)?;
            Graph::from_edges(n, &edges)
        }
    }
}

/// Parses whitespace-separated `u v` lines; `#` starts a comment line.
///
/// Labels that are all non-negative integers are ordered numerically, so
/// dense `0..n-1` input keeps its ids. Otherwise labels are numbered in order
/// of first appearance.
pub fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut raw = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("expected two vertex ids, found {}", tokens.len()),
            });
        }
        raw.push((tokens[0], tokens[1]));
    }
    if raw.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no edges".into(),
        });
    }

    let mut order: Vec<&str> = Vec::new();
    let mut known = HashSet::new();
    for &(a, b) in &raw {
        for t in [a, b] {
            if known.insert(t) {
                order.push(t);
            }
        }
    }
    let numeric: Option<Vec<usize>> = order.iter().map(|t| t.parse().ok()).collect();
    if let Some(mut ids) = numeric {
        // "01" and "1" would collide after sorting numerically.
        ids.sort_unstable();
        ids.dedup();
        if ids.len() == order.len() {
            order = Vec::new();
            let by_id: HashMap<usize, &str> = known
                .iter()
                .map(|&t| (t.parse::<usize>().unwrap(), t))
                .collect();
            order.extend(ids.iter().map(|id| by_id[id]));
        }
    }

    let index: HashMap<&str, usize> = order.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let edges: Vec<(usize, usize)> = raw.iter().map(|&(a, b)| (index[a], index[b])).collect();
    let labels = order.into_iter().map(String::from).collect();
    Graph::with_labels(labels, &edges)
}

/// Writes `u v` lines for every edge, sorted, using vertex indices.
pub fn to_edgelist(g: &Graph) -> String {
    let mut out = String::new();
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
