//! Membership tests for the two graph classes used in the extremal argument.

use serde::{Deserialize, Serialize};

use super::search::{bits, components, masks, DEFAULT_EXHAUSTIVE_CAP, MASK_LIMIT};
use crate::error::FactorError;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    /// A `(k+1)`-set `B` with `Σ_{u∈B} d(u) ≤ k² + 2k − 1`.
    BSet,
    /// Disjoint `(S, T)` with `Σ_{u∈T} d_{G−S}(u) ≤ k|T| − k|S| − 2 + q(S,T)`.
    StPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassWitness {
    pub kind: ClassKind,
    /// The set `B` (empty for [`ClassKind::StPair`]).
    pub b: Vec<usize>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    /// Margin by which the defining inequality holds (`>= 0`).
    pub slack: i64,
}

impl ClassWitness {
    /// Re-evaluates the defining inequality from the stored sets.
    pub fn recheck(&self, g: &Graph, k: usize) -> Option<i64> {
        let k = k as i64;
        match self.kind {
            ClassKind::BSet => {
                if self.b.len() as i64 != k + 1 {
                    return None;
                }
                let sum: i64 = self.b.iter().map(|&v| g.degree(v) as i64).sum();
                Some(k * k + 2 * k - 1 - sum)
            }
            ClassKind::StPair => {
                let n = g.order();
                let mut s_mask = vec![false; n];
                self.s.iter().for_each(|&v| s_mask[v] = true);
                if self.t.iter().any(|&v| s_mask[v]) {
                    return None;
                }
                let t_sum: i64 = self
                    .t
                    .iter()
                    .map(|&u| g.neighbors(u).filter(|&w| !s_mask[w]).count() as i64)
                    .sum();
                let removed: Vec<usize> = self.s.iter().chain(&self.t).copied().collect();
                let keep: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
                let q = g.induced(&keep).components().len() as i64;
                Some(k * self.t.len() as i64 - k * self.s.len() as i64 - 2 + q - t_sum)
            }
        }
    }
}

/// Membership in the class of graphs with `δ ≥ k` having `k+1` vertices of
/// total degree at most `k² + 2k − 1`. The `k+1` smallest degrees minimize
/// the sum, so only that set is examined.
pub fn in_class_gkn(g: &Graph, k: usize) -> Result<Option<ClassWitness>, FactorError> {
    let n = g.order();
    if k == 0 || n < 3 * k {
        return Err(FactorError::Params(format!(
            "need k >= 1 and n >= 3k, got n={n}, k={k}"
        )));
    }
    let min_degree = g.min_degree();
    if min_degree < k {
        return Err(FactorError::BelowMinDegree { min_degree, k });
    }
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    let mut b: Vec<usize> = by_degree[..=k].to_vec();
    b.sort_unstable();
    let sum: usize = b.iter().map(|&v| g.degree(v)).sum();
    let limit = k * k + 2 * k - 1;
    Ok((sum <= limit).then(|| ClassWitness {
        kind: ClassKind::BSet,
        b,
        s: Vec::new(),
        t: Vec::new(),
        slack: (limit - sum) as i64,
    }))
}

/// Membership in the class of graphs with `δ ≥ k` admitting disjoint `(S, T)`
/// with `Σ_{u∈T} d_{G−S}(u) ≤ k|T| − k|S| − 2 + q(S,T)`, by exhaustive scan.
/// Reports the pair of largest slack (ties: smallest `|S ∪ T|`, then
/// lexicographic).
pub fn in_class_gnk_big(g: &Graph, k: usize) -> Result<Option<ClassWitness>, FactorError> {
    in_class_gnk_big_capped(g, k, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn in_class_gnk_big_capped(
    g: &Graph,
    k: usize,
    cap: usize,
) -> Result<Option<ClassWitness>, FactorError> {
    let n = g.order();
    let cap = cap.min(MASK_LIMIT);
    if n > cap {
        return Err(FactorError::CapExceeded { n, cap });
    }
    let min_degree = g.min_degree();
    if min_degree < k {
        return Err(FactorError::BelowMinDegree { min_degree, k });
    }
    let adj = masks(g);
    let all = (1u64 << n) - 1;
    let k = k as i64;
    let mut best: Option<(i64, u64, u64)> = None;
    // enumerate S, then T within the complement
    let mut s = 0u64;
    loop {
        let rest = all & !s;
        let deg_out: Vec<i64> = (0..n)
            .map(|v| (adj[v] & rest).count_ones() as i64)
            .collect();
        let mut t = 0u64;
        loop {
            let q = components(&adj, rest & !t).len() as i64;
            let t_sum: i64 = bits(t).iter().map(|&v| deg_out[v]).sum();
            let slack = k * t.count_ones() as i64 - k * s.count_ones() as i64 - 2 + q - t_sum;
            if slack >= 0 {
                let key =
                    |(sl, s, t): (i64, u64, u64)| (-sl, (s | t).count_ones(), bits(s), bits(t));
                if best.is_none_or(|b| key((slack, s, t)) < key(b)) {
                    best = Some((slack, s, t));
                }
            }
            if t == rest {
                break;
            }
            t = (t.wrapping_sub(rest)) & rest;
        }
        if s == all {
            break;
        }
        s = (s.wrapping_sub(all)) & all;
    }
    Ok(best.map(|(slack, s, t)| ClassWitness {
        kind: ClassKind::StPair,
        b: Vec::new(),
        s: bits(s),
        t: bits(t),
        slack,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::search_certificate;
    use crate::graph::{build_gnk, GnkParams};

    #[test]
    fn gkn_examples() {
        let p = GnkParams { n: 7, k: 2 };
        let g = build_gnk(p).unwrap();
        let w = in_class_gkn(&g, 2).unwrap().unwrap();
        assert_eq!(w.b, p.layout().u_block().collect::<Vec<_>>());
        assert_eq!(w.slack, 0);
        assert_eq!(w.recheck(&g, 2), Some(0));
        for n in 6..12 {
            assert_eq!(in_class_gkn(&Graph::complete(n).unwrap(), 2).unwrap(), None);
        }
        assert!(matches!(
            in_class_gkn(&Graph::cycle(9).unwrap(), 3),
            Err(FactorError::BelowMinDegree { .. })
        ));
    }

    #[test]
    fn gnk_big_examples() {
        let p = GnkParams { n: 7, k: 2 };
        let g = build_gnk(p).unwrap();
        let w = in_class_gnk_big(&g, 2).unwrap().expect("member");
        assert!(w.slack >= 0);
        assert_eq!(w.recheck(&g, 2), Some(w.slack));
        let canonical = ClassWitness {
            kind: ClassKind::StPair,
            b: vec![],
            s: p.layout().s_block().collect(),
            t: p.layout().u_block().collect(),
            slack: 0,
        };
        assert_eq!(canonical.recheck(&g, 2), Some(0));

        assert_eq!(
            in_class_gnk_big(&Graph::complete(6).unwrap(), 2).unwrap(),
            None
        );
    }

    #[test]
    fn no_factor_with_even_kn_implies_membership() {
        for (n, k) in [(6, 2), (8, 2), (10, 3), (12, 4)] {
            let g = build_gnk(GnkParams { n, k }).unwrap();
            let w = search_certificate(&g, k).unwrap().unwrap();
            assert!(w.delta >= 2);
            let as_class = ClassWitness {
                kind: ClassKind::StPair,
                b: vec![],
                s: w.s,
                t: w.t,
                slack: 0,
            };
            assert!(as_class.recheck(&g, k).unwrap() >= 0);
            assert!(in_class_gnk_big(&g, k).unwrap().is_some());
        }
    }
}
