use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::GraphError;

/// Parameters of the extremal graph `G_{n,k}`: order `n`, factor degree `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GnkParams {
    pub n: usize,
    pub k: usize,
}

impl GnkParams {
    pub fn new(n: usize, k: usize) -> Result<Self, GraphError> {
        if k < 2 {
            return Err(GraphError::Params(format!("k must be at least 2, got {k}")));
        }
        if n < 3 * k {
            return Err(GraphError::Params(format!(
                "n must be at least 3k = {}, got {n}",
                3 * k
            )));
        }
        Ok(GnkParams { n, k })
    }

    pub fn layout(&self) -> GnkLayout {
        GnkLayout {
            n: self.n,
            k: self.k,
        }
    }

    /// `C(k,2) + k(n-k) + C(n-1-2k,2) + (k-1)`.
    pub fn edge_count(&self) -> usize {
        let GnkParams { n, k } = *self;
        super::choose2(k) + k * (n - k) + super::choose2(n - 1 - 2 * k) + (k - 1)
    }
}

/// Fixed vertex labeling of `G_{n,k}` and the Claim-2 family: the `k` join
/// vertices first, then the `k+1` independent vertices, then the clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GnkLayout {
    pub n: usize,
    pub k: usize,
}

impl GnkLayout {
    pub fn s_block(&self) -> std::ops::Range<usize> {
        0..self.k
    }

    pub fn u_block(&self) -> std::ops::Range<usize> {
        self.k..2 * self.k + 1
    }

    pub fn c_block(&self) -> std::ops::Range<usize> {
        2 * self.k + 1..self.n
    }

    #[inline]
    pub fn u(&self, i: usize) -> usize {
        self.k + i
    }

    #[inline]
    pub fn c(&self, j: usize) -> usize {
        2 * self.k + 1 + j
    }

    pub fn c_len(&self) -> usize {
        self.n - 1 - 2 * self.k
    }
}

/// `K_k ∨ (K̄_{k+1} ∪ K_{n-1-2k})` in the fixed layout.
fn base(p: GnkParams) -> Graph {
    let GnkParams { n, k } = p;
    let s = Graph::complete(k).expect("k >= 2");
    let rest = Graph::disjoint_union(
        &Graph::empty(k + 1).expect("small"),
        &Graph::complete(n - 1 - 2 * k).expect("n >= 3k leaves a nonempty clique"),
    )
    .expect("order within cap");
    Graph::join(&s, &rest).expect("order within cap")
}

/// Builds `G_{n,k}`: the base graph with `U[0]` joined to `C[0..k-1]`.
pub fn build_gnk(p: GnkParams) -> Result<Graph, GraphError> {
    let p = GnkParams::new(p.n, p.k)?;
    let attachments: Vec<_> = (0..p.k - 1).map(|j| (0, j)).collect();
    build_base_family_member(p.n, p.k, &attachments)
}

/// Base graph plus `k-1` edges between the independent block and the clique,
/// given as `(U-index, C-index)` pairs.
pub fn build_base_family_member(
    n: usize,
    k: usize,
    attachments: &[(usize, usize)],
) -> Result<Graph, GraphError> {
    let p = GnkParams::new(n, k)?;
    let layout = p.layout();
    if attachments.len() != k - 1 {
        return Err(GraphError::Params(format!(
            "expected {} attachment edges, got {}",
            k - 1,
            attachments.len()
        )));
    }
    let mut g = base(p);
    for &(ui, cj) in attachments {
        if ui > k || cj >= layout.c_len() {
            return Err(GraphError::Params(format!(
                "attachment ({ui}, {cj}) out of range"
            )));
        }
        g = g
            .add_edge(layout.u(ui), layout.c(cj))
            .map_err(|e| match e {
                GraphError::EdgeExists(..) => {
                    GraphError::Params(format!("duplicate attachment ({ui}, {cj})"))
                }
                other => other,
            })?;
    }
    Ok(g)
}
