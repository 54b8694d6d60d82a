//! Biconnected-component decomposition and the structural test that decides
//! whether isotropic kernels of the geodesic metric are safe on a graph.

use serde::Serialize;

use crate::graph::{EdgeId, EuclideanGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockKind {
    /// A single edge.
    Bridge,
    /// A ring: as many edges as vertices.
    Cycle,
    /// More edges than vertices; contains three internally disjoint paths
    /// between some pair of points.
    Complex,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
    pub kind: BlockKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub articulation_vertices: Vec<VertexId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GeodesicClass {
    SafeForGeodesic,
    ForbiddenForGeodesic,
}

impl Block {
    fn classify(edges: Vec<EdgeId>, mut vertices: Vec<VertexId>) -> Block {
        vertices.sort();
        vertices.dedup();
        let kind = match edges.len() {
            1 => BlockKind::Bridge,
            m if m == vertices.len() => BlockKind::Cycle,
            _ => BlockKind::Complex,
        };
        Block {
            edges,
            vertices,
            kind,
        }
    }
}

/// Splits the edge set into blocks (Tarjan's lowpoint algorithm, iterative).
pub fn block_decomposition(g: &EuclideanGraph) -> BlockDecomposition {
    let n = g.n_vertices();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_articulation = vec![false; n];
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut blocks = Vec::new();
    let mut clock = 0usize;

    // (vertex, edge used to enter it, next adjacency slot)
    let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();
    for root in g.vertices() {
        if disc[root.0] != usize::MAX {
            continue;
        }
        disc[root.0] = clock;
        low[root.0] = clock;
        clock += 1;
        let mut root_children = 0;
        stack.push((root, None, 0));

        while let Some(&mut (v, via, ref mut slot)) = stack.last_mut() {
            if let Some(&e) = g.incident(v).get(*slot) {
                *slot += 1;
                if Some(e) == via {
                    continue;
                }
                let w = g.edge(e).other(v);
                if disc[w.0] == usize::MAX {
                    edge_stack.push(e);
                    disc[w.0] = clock;
                    low[w.0] = clock;
                    clock += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, Some(e), 0));
                } else if disc[w.0] < disc[v.0] {
                    edge_stack.push(e);
                    low[v.0] = low[v.0].min(disc[w.0]);
                }
                continue;
            }

            stack.pop();
            let (Some(tree_edge), Some(&(parent, _, _))) = (via, stack.last()) else {
                continue;
            };
            low[parent.0] = low[parent.0].min(low[v.0]);
            if low[v.0] >= disc[parent.0] {
                if parent != root {
                    is_articulation[parent.0] = true;
                }
                let mut edges = Vec::new();
                let mut verts = Vec::new();
                while let Some(e) = edge_stack.pop() {
                    edges.push(e);
                    verts.push(g.edge(e).u);
                    verts.push(g.edge(e).v);
                    if e == tree_edge {
                        break;
                    }
                }
                edges.sort();
                blocks.push(Block::classify(edges, verts));
            }
        }
        if root_children > 1 {
            is_articulation[root.0] = true;
        }
    }

    BlockDecomposition {
        blocks,
        articulation_vertices: (0..n).filter(|&i| is_articulation[i]).map(VertexId).collect(),
    }
}

impl BlockDecomposition {
    pub fn geodesic_class(&self) -> GeodesicClass {
        if self.blocks.iter().any(|b| b.kind == BlockKind::Complex) {
            GeodesicClass::ForbiddenForGeodesic
        } else {
            GeodesicClass::SafeForGeodesic
        }
    }
}

/// Safe iff the graph is a 1-sum of cycles and trees, i.e. every block is a
/// bridge or a cycle.
pub fn geodesic_validity_class(g: &EuclideanGraph) -> GeodesicClass {
    block_decomposition(g).geodesic_class()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSpec;

    fn graph(vertices: &[&str], edges: &[(&str, &str, &str, f64)]) -> EuclideanGraph {
        EuclideanGraph::new(
            vertices.iter().map(|s| s.to_string()).collect(),
            edges.iter().map(|&(id, u, v, l)| EdgeSpec::new(id, u, v, l)).collect(),
        )
        .unwrap()
    }

    fn kinds(d: &BlockDecomposition) -> Vec<BlockKind> {
        d.blocks.iter().map(|b| b.kind).collect()
    }

    #[test]
    fn tree_edges_are_bridges() {
        let g = graph(
            &["A", "B", "C", "D"],
            &[("ab", "A", "B", 1.0), ("bc", "B", "C", 1.0), ("bd", "B", "D", 2.0)],
        );
        let d = block_decomposition(&g);
        assert_eq!(kinds(&d), vec![BlockKind::Bridge; 3]);
        assert_eq!(d.articulation_vertices, vec![g.vertex_id("B").unwrap()]);
        assert_eq!(d.geodesic_class(), GeodesicClass::SafeForGeodesic);
    }

    #[test]
    fn figure_eight_has_two_cycles() {
        let g = graph(
            &["X", "A", "B", "C", "D"],
            &[
                ("xa", "X", "A", 1.0),
                ("ab", "A", "B", 1.0),
                ("bx", "B", "X", 1.0),
                ("xc", "X", "C", 1.0),
                ("cd", "C", "D", 1.0),
                ("dx", "D", "X", 1.0),
            ],
        );
        let d = block_decomposition(&g);
        assert_eq!(kinds(&d), vec![BlockKind::Cycle; 2]);
        assert_eq!(d.articulation_vertices, vec![g.vertex_id("X").unwrap()]);
        assert_eq!(geodesic_validity_class(&g), GeodesicClass::SafeForGeodesic);
    }

    #[test]
    fn theta_graph_is_one_complex_block() {
        let g = graph(
            &["S", "T", "P", "Q", "R"],
            &[
                ("sp", "S", "P", 1.0),
                ("pt", "P", "T", 1.0),
                ("sq", "S", "Q", 1.0),
                ("qt", "Q", "T", 1.0),
                ("sr", "S", "R", 1.0),
                ("rt", "R", "T", 1.0),
            ],
        );
        let d = block_decomposition(&g);
        assert_eq!(kinds(&d), vec![BlockKind::Complex]);
        assert!(d.articulation_vertices.is_empty());
        assert_eq!(geodesic_validity_class(&g), GeodesicClass::ForbiddenForGeodesic);
    }

    #[test]
    fn mixed_blocks_partition_edges() {
        // triangle A-B-C, pendant C-D, square D-E-F-G
        let g = graph(
            &["A", "B", "C", "D", "E", "F", "G"],
            &[
                ("ab", "A", "B", 1.0),
                ("bc", "B", "C", 1.0),
                ("ca", "C", "A", 1.0),
                ("cd", "C", "D", 1.0),
                ("de", "D", "E", 1.0),
                ("ef", "E", "F", 1.0),
                ("fg", "F", "G", 1.0),
                ("gd", "G", "D", 1.0),
            ],
        );
        let d = block_decomposition(&g);
        let mut all: Vec<EdgeId> = d.blocks.iter().flat_map(|b| b.edges.clone()).collect();
        all.sort();
        assert_eq!(all, (0..8).map(EdgeId).collect::<Vec<_>>());
        let mut k = kinds(&d);
        k.sort_by_key(|k| *k as u8);
        assert_eq!(k, vec![BlockKind::Bridge, BlockKind::Cycle, BlockKind::Cycle]);
        let mut arts: Vec<&str> = d.articulation_vertices.iter().map(|&v| g.label(v)).collect();
        arts.sort();
        assert_eq!(arts, vec!["C", "D"]);
    }
}
