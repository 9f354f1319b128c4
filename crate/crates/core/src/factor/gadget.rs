use crate::error::FactorError;
use crate::graph::Graph;

/// Tutte's reduction of k-factor existence to perfect matching.
///
/// Every vertex `v` becomes `d(v)` external nodes (one per incident edge) and
/// `d(v) − k` internal nodes, with every internal node adjacent to every
/// external node of the same vertex. Each original edge `uv` becomes a single
/// cross edge between its external node at `u` and its external node at `v`.
/// In a perfect matching the internal nodes of `v` absorb `d(v) − k` of its
/// external nodes, so exactly `k` cross edges are matched at every vertex and
/// the matched cross edges form a k-factor.
#[derive(Debug, Clone)]
pub struct TutteGadget {
    /// Auxiliary graph as neighbor lists.
    pub aux: Vec<Vec<usize>>,
    /// `(external node at u, external node at v, (u, v))` per original edge.
    pub cross: Vec<(usize, usize, (usize, usize))>,
    /// First auxiliary node owned by each original vertex.
    pub offsets: Vec<usize>,
}

impl TutteGadget {
    pub fn node_count(&self) -> usize {
        self.aux.len()
    }

    pub fn edge_count(&self) -> usize {
        self.aux.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// A matching of the gadget built from a greedy partial k-factor: chosen
    /// edges take their cross edge, every other external node is paired with
    /// an internal node while any remain. Only `Σ (k − f(v))` nodes stay
    /// free, where `f(v)` is the greedy degree.
    pub fn initial_matching(&self, g: &Graph, k: usize) -> Vec<Option<usize>> {
        let n = g.order();
        let mut mate = vec![None; self.aux.len()];
        let mut f = vec![0usize; n];
        let mut order: Vec<usize> = (0..self.cross.len()).collect();
        // edges between low-degree vertices first
        order.sort_by_key(|&i| {
            let (u, v) = self.cross[i].2;
            g.degree(u) + g.degree(v)
        });
        for i in order {
            let (a, b, (u, v)) = self.cross[i];
            if f[u] < k && f[v] < k {
                f[u] += 1;
                f[v] += 1;
                mate[a] = Some(b);
                mate[b] = Some(a);
            }
        }
        for v in 0..n {
            let d = g.degree(v);
            let start = self.offsets[v];
            let mut internal = start + d..start + 2 * d - k;
            for a in start..start + d {
                if mate[a].is_none() {
                    match internal.next() {
                        Some(b) => {
                            mate[a] = Some(b);
                            mate[b] = Some(a);
                        }
                        None => break,
                    }
                }
            }
        }
        mate
    }

    /// Original edges whose cross edge is matched under `mate`.
    pub fn factor_edges(&self, mate: &[Option<usize>]) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = self
            .cross
            .iter()
            .filter(|&&(a, b, _)| mate[a] == Some(b))
            .map(|&(_, _, e)| e)
            .collect();
        edges.sort_unstable();
        edges
    }
}

/// Builds the gadget graph. Requires `k <= δ(g)`.
pub fn tutte_gadget(g: &Graph, k: usize) -> Result<TutteGadget, FactorError> {
    let min_degree = g.min_degree();
    if k > min_degree {
        return Err(FactorError::BelowMinDegree { min_degree, k });
    }
    let n = g.order();
    let adj = g.adjacency_lists();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut total = 0;
    for nbrs in &adj {
        offsets.push(total);
        total += 2 * nbrs.len() - k;
    }
    offsets.push(total);

    let mut aux = vec![Vec::new(); total];
    for (v, nbrs) in adj.iter().enumerate() {
        let d = nbrs.len();
        let ext = offsets[v]..offsets[v] + d;
        let int = offsets[v] + d..offsets[v + 1];
        for a in ext.clone() {
            aux[a].extend(int.clone());
        }
        for b in int {
            aux[b].extend(ext.clone());
        }
    }
    let mut cross = Vec::with_capacity(g.edge_count());
    for (u, nbrs) in adj.iter().enumerate() {
        for (i, &v) in nbrs.iter().enumerate() {
            if u < v {
                let j = adj[v].binary_search(&u).expect("symmetric adjacency");
                let (a, b) = (offsets[u] + i, offsets[v] + j);
                aux[a].push(b);
                aux[b].push(a);
                cross.push((a, b, (u, v)));
            }
        }
    }
    offsets.pop();
    Ok(TutteGadget {
        aux,
        cross,
        offsets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::matching::maximum_matching;
    use crate::graph::{build_gnk, GnkParams};

    fn perfect(mate: &[Option<usize>]) -> bool {
        mate.iter().all(Option::is_some)
    }

    #[test]
    fn regular_graph_uses_every_cross_edge() {
        let p = Graph::petersen();
        let gadget = tutte_gadget(&p, 3).unwrap();
        assert_eq!(gadget.node_count(), 30);
        assert_eq!(gadget.edge_count(), 15);
        let mate = maximum_matching(&gadget.aux);
        assert!(perfect(&mate));
        assert_eq!(gadget.factor_edges(&mate), p.edges().collect::<Vec<_>>());
    }

    #[test]
    fn k4_one_factor() {
        let k4 = Graph::complete(4).unwrap();
        let gadget = tutte_gadget(&k4, 1).unwrap();
        let mate = maximum_matching(&gadget.aux);
        assert!(perfect(&mate));
        let f = gadget.factor_edges(&mate);
        assert_eq!(f.len(), 2);
        let mut covered: Vec<_> = f.iter().flat_map(|&(u, v)| [u, v]).collect();
        covered.sort_unstable();
        assert_eq!(covered, vec![0, 1, 2, 3]);
    }

    #[test]
    fn gnk_has_no_perfect_matching() {
        let g = build_gnk(GnkParams { n: 9, k: 2 }).unwrap();
        let gadget = tutte_gadget(&g, 2).unwrap();
        assert!(!perfect(&maximum_matching(&gadget.aux)));
    }

    #[test]
    fn seeded_matching_is_maximum() {
        use crate::factor::matching::maximum_matching_from;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 200 {
            let n = rng.random_range(4..=16);
            let p = rng.random_range(0.3..0.95);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(p))
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let k = rng.random_range(1..=3);
            if g.min_degree() < k {
                continue;
            }
            checked += 1;
            let gadget = tutte_gadget(&g, k).unwrap();
            let init = gadget.initial_matching(&g, k);
            for (a, m) in init.iter().enumerate() {
                if let Some(b) = *m {
                    assert_eq!(init[b], Some(a));
                    assert!(gadget.aux[a].contains(&b));
                }
            }
            let size = |m: &[Option<usize>]| m.iter().filter(|x| x.is_some()).count();
            assert_eq!(
                size(&maximum_matching_from(&gadget.aux, &init)),
                size(&maximum_matching(&gadget.aux))
            );
        }
    }

    #[test]
    fn rejects_k_above_min_degree() {
        let g = Graph::path(4).unwrap();
        assert_eq!(
            tutte_gadget(&g, 2).unwrap_err(),
            FactorError::BelowMinDegree {
                min_degree: 1,
                k: 2
            }
        );
    }
}
