#![allow(dead_code)]

use netfield::{EdgeId, EdgeSpec, EuclideanGraph, GraphPoint, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i:03}")).collect()
}

/// Random tree: vertex `i` hangs off a uniformly chosen earlier vertex.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> EuclideanGraph {
    let edges = (1..n)
        .map(|i| {
            let parent = rng.random_range(0..i);
            EdgeSpec::new(format!("e{i}"), format!("v{parent:03}"), format!("v{i:03}"), rng.random_range(0.1..2.0))
        })
        .collect();
    EuclideanGraph::new(names(n), edges).unwrap()
}

/// Random connected graph with at least one cycle. Vertices are placed in
/// the unit square and edges carry their Euclidean length, which makes the
/// distance-consistency condition hold automatically.
pub fn random_cyclic_graph(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> EuclideanGraph {
    assert!(n >= 3);
    let xy: Vec<(f64, f64)> = (0..n).map(|_| (rng.random::<f64>(), rng.random::<f64>())).collect();
    let dist = |a: usize, b: usize| {
        let (dx, dy) = (xy[a].0 - xy[b].0, xy[a].1 - xy[b].1);
        (dx * dx + dy * dy).sqrt().max(1e-3)
    };
    let mut pairs = std::collections::BTreeSet::new();
    for i in 1..n {
        pairs.insert((rng.random_range(0..i), i));
    }
    let target = n - 1 + extra.max(1);
    while pairs.len() < target.min(n * (n - 1) / 2) {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b {
            pairs.insert((a.min(b), a.max(b)));
        }
    }
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| EdgeSpec::new(format!("e{k}"), format!("v{a:03}"), format!("v{b:03}"), dist(a, b)))
        .collect();
    EuclideanGraph::new(names(n), edges).unwrap()
}

/// Random 1-sum of cycles and trees: pendant edges and cycles glued at
/// single existing vertices.
pub fn random_cactus(rng: &mut ChaCha8Rng, pieces: usize) -> EuclideanGraph {
    let mut n = 1usize;
    let mut edges = Vec::new();
    for _ in 0..pieces {
        let anchor = rng.random_range(0..n);
        if rng.random_bool(0.4) {
            edges.push(EdgeSpec::new(
                format!("e{}", edges.len()),
                format!("v{anchor:03}"),
                format!("v{n:03}"),
                rng.random_range(0.2..1.5),
            ));
            n += 1;
        } else {
            // lengths in [0.6, 1.0] keep each edge below half the circumference
            let k = rng.random_range(3..=6);
            let mut ring = vec![anchor];
            ring.extend(n..n + k - 1);
            n += k - 1;
            for i in 0..k {
                let (a, b) = (ring[i], ring[(i + 1) % k]);
                edges.push(EdgeSpec::new(
                    format!("e{}", edges.len()),
                    format!("v{a:03}"),
                    format!("v{b:03}"),
                    rng.random_range(0.6..1.0),
                ));
            }
        }
    }
    EuclideanGraph::new(names(n), edges).unwrap()
}

/// Up to `k` distinct points: vertices with probability 0.2, otherwise
/// interior edge points.
pub fn random_points(rng: &mut ChaCha8Rng, g: &EuclideanGraph, k: usize) -> Vec<GraphPoint> {
    let mut out: Vec<GraphPoint> = Vec::with_capacity(k);
    let mut attempts = 0;
    while out.len() < k && attempts < 50 * k {
        attempts += 1;
        let p = if rng.random_bool(0.2) {
            GraphPoint::Vertex(VertexId(rng.random_range(0..g.n_vertices())))
        } else {
            let e = EdgeId(rng.random_range(0..g.n_edges()));
            let len = g.edge(e).length;
            g.point_on_edge(e, len * rng.random_range(0.02..0.98)).unwrap()
        };
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Same location expressed on the graph produced by `g.split_edge(edge, at)`.
pub fn remap_after_split(g: &EuclideanGraph, h: &EuclideanGraph, edge: EdgeId, at: f64, new_vertex: VertexId, p: GraphPoint) -> GraphPoint {
    match p {
        GraphPoint::Vertex(v) => GraphPoint::Vertex(h.vertex_id(g.label(v)).unwrap()),
        GraphPoint::Edge { edge: e, offset } if e == edge => {
            let id = &g.edge(e).id;
            if offset == at {
                GraphPoint::Vertex(new_vertex)
            } else if offset < at {
                h.point_on_edge(h.edge_id(&format!("{id}.a")).unwrap(), offset).unwrap()
            } else {
                h.point_on_edge(h.edge_id(&format!("{id}.b")).unwrap(), offset - at).unwrap()
            }
        }
        GraphPoint::Edge { edge: e, offset } => h.point_on_edge(h.edge_id(&g.edge(e).id).unwrap(), offset).unwrap(),
    }
}

pub fn graph(vertices: &[&str], edges: &[(&str, &str, &str, f64)]) -> EuclideanGraph {
    EuclideanGraph::new(
        vertices.iter().map(|s| s.to_string()).collect(),
        edges.iter().map(|&(id, u, v, l)| EdgeSpec::new(id, u, v, l)).collect(),
    )
    .unwrap()
}

pub fn unit_edge() -> EuclideanGraph {
    graph(&["0", "1"], &[("e1", "0", "1", 1.0)])
}

pub fn unit_square() -> EuclideanGraph {
    graph(
        &["A", "B", "C", "D"],
        &[("ab", "A", "B", 1.0), ("bc", "B", "C", 1.0), ("cd", "C", "D", 1.0), ("da", "D", "A", 1.0)],
    )
}

pub fn figure_eight() -> EuclideanGraph {
    graph(
        &["X", "A", "B", "C", "D"],
        &[
            ("xa", "X", "A", 1.0),
            ("ab", "A", "B", 1.0),
            ("bx", "B", "X", 1.0),
            ("xc", "X", "C", 1.5),
            ("cd", "C", "D", 1.5),
            ("dx", "D", "X", 1.5),
        ],
    )
}

pub fn edge_point(g: &EuclideanGraph, edge: &str, offset: f64) -> GraphPoint {
    g.point_on_edge(g.edge_id(edge).unwrap(), offset).unwrap()
}

pub fn vertex(g: &EuclideanGraph, label: &str) -> GraphPoint {
    GraphPoint::Vertex(g.vertex_id(label).unwrap())
}
