//! Named fixture graphs and random connected graph generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("fixture graphs are connected and simple")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    build(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &edges)
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    build(n, &edges)
}

/// `K_{a,b}` with the `a` side numbered first.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a)
        .flat_map(|i| (a..a + b).map(move |j| (i, j)))
        .collect();
    build(a + b, &edges)
}

/// Star `K_{1,k}` with the center at 0.
pub fn star(k: usize) -> Graph {
    complete_bipartite(1, k)
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    build(10, &edges)
}

/// Circulant graph on `Z_n` joining `i` and `i ± s` for every jump `s`.
pub fn circulant(n: usize, jumps: &[usize]) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for &s in jumps {
            let j = (i + s) % n;
            let e = (i.min(j), i.max(j));
            if i != j && !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    build(n, &edges)
}

/// The bundled fixture set as `(file stem, graph)` pairs, in a fixed order.
pub fn bundled() -> Vec<(&'static str, Graph)> {
    let mut out = vec![
        ("k23", complete_bipartite(2, 3)),
        ("petersen", petersen()),
        ("p3", path(3)),
    ];
    for (name, n) in [("c4", 4), ("c5", 5), ("c6", 6), ("c7", 7), ("c8", 8)] {
        out.push((name, cycle(n)));
    }
    for (name, n) in [("k2", 2), ("k3", 3), ("k4", 4), ("k5", 5)] {
        out.push((name, complete(n)));
    }
    out.push(("c8_1_2", circulant(8, &[1, 2])));
    out
}

/// The distance-regular members of [`bundled`].
pub fn distance_regular() -> Vec<(&'static str, Graph)> {
    bundled()
        .into_iter()
        .filter(|(name, _)| !matches!(*name, "k23" | "p3" | "c8_1_2"))
        .collect()
}

/// Erdős–Rényi `G(n, p)` conditioned on connectivity by rejection.
pub fn random_connected_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    assert!(n >= 2 && p > 0.0);
    loop {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        if let Ok(g) = Graph::from_edges(n, &edges) {
            return g;
        }
    }
}

/// Uniform random labelled tree via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 2);
    if n == 2 {
        return build(2, &[(0, 1)]);
    }
    let prufer: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &prufer {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &prufer {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    build(n, &edges)
}

/// Relabels `g` by a uniformly random permutation; returns the graph and
/// the map `old -> new`.
pub fn random_relabel<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> (Graph, Vec<usize>) {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    (build(g.n(), &edges), perm)
}
