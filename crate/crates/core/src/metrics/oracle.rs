use nalgebra::{DMatrix, DVector};

use crate::graph::{EuclideanGraph, GraphPoint};

/// Classical effective resistance between two points, computed from the
/// Moore-Penrose pseudoinverse of the combinatorial Laplacian of the network
/// with edges subdivided at `p` and `q`.
///
/// Kept independent of [`super::ResistanceContext`]: no origin, no
/// interpolation, no bridge terms. Used to certify the continuum metric.
pub fn oracle_effective_resistance(g: &EuclideanGraph, p: GraphPoint, q: GraphPoint) -> f64 {
    if p == q {
        return 0.0;
    }
    let n = g.n_vertices();
    let node_of = |pt: GraphPoint, extra: &mut Vec<(usize, f64)>| -> usize {
        match pt {
            GraphPoint::Vertex(v) => v.0,
            GraphPoint::Edge { edge, offset } => {
                if let Some(k) = extra.iter().position(|&(e, o)| e == edge.0 && o == offset) {
                    n + k
                } else {
                    extra.push((edge.0, offset));
                    n + extra.len() - 1
                }
            }
        }
    };
    let mut extra = Vec::new();
    let np = node_of(p, &mut extra);
    let nq = node_of(q, &mut extra);
    let size = n + extra.len();

    let mut lap = DMatrix::<f64>::zeros(size, size);
    let mut resistor = |a: usize, b: usize, length: f64| {
        let c = 1.0 / length;
        lap[(a, a)] += c;
        lap[(b, b)] += c;
        lap[(a, b)] -= c;
        lap[(b, a)] -= c;
    };
    for (idx, e) in g.edges().iter().enumerate() {
        let mut stops: Vec<(f64, usize)> = extra
            .iter()
            .enumerate()
            .filter(|(_, &(ei, _))| ei == idx)
            .map(|(k, &(_, o))| (o, n + k))
            .collect();
        stops.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut prev = (0.0, e.u.0);
        for &(o, node) in &stops {
            resistor(prev.1, node, o - prev.0);
            prev = (o, node);
        }
        resistor(prev.1, e.v.0, e.length - prev.0);
    }

    let eig = lap.symmetric_eigen();
    let top = eig.eigenvalues.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let cutoff = 1e-12 * top;
    let mut diff = DVector::zeros(size);
    diff[np] = 1.0;
    diff[nq] -= 1.0;
    let mut total = 0.0;
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() > cutoff {
            let proj = eig.eigenvectors.column(k).dot(&diff);
            total += proj * proj / lambda;
        }
    }
    total
}
