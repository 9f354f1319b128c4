use serde::{Deserialize, Serialize};

use crate::error::FactorError;
use crate::graph::Graph;

/// A pair of disjoint vertex sets `(S, T)` together with the terms of the
/// k-factor deficiency
///
/// `δ(S,T) = τ(S,T) + k|T| − k|S| − Σ_{u∈T} d_{G−S}(u)`,
///
/// where `τ` counts the components `C` of `G − (S ∪ T)` with
/// `e(C, T) + k|C|` odd and `q` counts all of them. A positive `delta`
/// certifies that no k-factor exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyWitness {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub k: usize,
    pub tau: usize,
    pub q: usize,
    pub delta: i64,
}

impl DeficiencyWitness {
    /// `|S ∪ T|`.
    pub fn size(&self) -> usize {
        self.s.len() + self.t.len()
    }
}

fn check_sets(g: &Graph, s: &[usize], t: &[usize]) -> Result<(Vec<bool>, Vec<bool>), FactorError> {
    let n = g.order();
    let mut in_s = vec![false; n];
    let mut in_t = vec![false; n];
    for &v in s {
        if v >= n {
            return Err(FactorError::VertexOutOfRange { v, n });
        }
        in_s[v] = true;
    }
    for &v in t {
        if v >= n {
            return Err(FactorError::VertexOutOfRange { v, n });
        }
        if in_s[v] {
            return Err(FactorError::Overlap(v));
        }
        in_t[v] = true;
    }
    Ok((in_s, in_t))
}

/// Evaluates `δ_G(S, T)` for target degree `k >= 2`.
pub fn deficiency(
    g: &Graph,
    s: &[usize],
    t: &[usize],
    k: usize,
) -> Result<DeficiencyWitness, FactorError> {
    if k < 2 {
        return Err(FactorError::DegreeTooSmall { k, min: 2 });
    }
    evaluate(g, s, t, k)
}

/// Same formula without the `k >= 2` restriction; `k = 1` is Tutte's
/// perfect-matching case of the f-factor condition.
pub(crate) fn evaluate(
    g: &Graph,
    s: &[usize],
    t: &[usize],
    k: usize,
) -> Result<DeficiencyWitness, FactorError> {
    let (in_s, in_t) = check_sets(g, s, t)?;
    let n = g.order();
    let ki = k as i64;

    let t_degree_sum: i64 = t
        .iter()
        .map(|&u| g.neighbors(u).filter(|&w| !in_s[w]).count() as i64)
        .sum();

    let mut seen: Vec<bool> = (0..n).map(|v| in_s[v] || in_t[v]).collect();
    let mut tau = 0;
    let mut q = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        q += 1;
        seen[start] = true;
        stack.push(start);
        let mut size = 0i64;
        let mut to_t = 0i64;
        while let Some(u) = stack.pop() {
            size += 1;
            for w in g.neighbors(u) {
                if in_t[w] {
                    to_t += 1;
                } else if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if (to_t + ki * size) % 2 == 1 {
            tau += 1;
        }
    }

    let mut s_sorted = s.to_vec();
    let mut t_sorted = t.to_vec();
    s_sorted.sort_unstable();
    s_sorted.dedup();
    t_sorted.sort_unstable();
    t_sorted.dedup();
    let delta = tau as i64 + ki * t_sorted.len() as i64 - ki * s_sorted.len() as i64 - t_degree_sum;
    assert_eq!(
        (delta - ki * n as i64).rem_euclid(2),
        0,
        "deficiency parity violated for S={s_sorted:?}, T={t_sorted:?}"
    );
    Ok(DeficiencyWitness {
        s: s_sorted,
        t: t_sorted,
        k,
        tau,
        q,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_gnk, GnkParams};

    #[test]
    fn gnk_canonical_pair() {
        let p = GnkParams { n: 7, k: 2 };
        let g = build_gnk(p).unwrap();
        let l = p.layout();
        let s: Vec<_> = l.s_block().collect();
        let t: Vec<_> = l.u_block().collect();
        let w = deficiency(&g, &s, &t, 2).unwrap();
        assert_eq!((w.tau, w.q, w.delta), (1, 1, 2));
    }

    #[test]
    fn empty_sets_count_odd_components() {
        let k6 = Graph::complete(6).unwrap();
        assert_eq!(deficiency(&k6, &[], &[], 2).unwrap().delta, 0);
        // three odd components, k = 3 -> each k|C| is odd
        let g = Graph::disjoint_union(
            &Graph::complete(3).unwrap(),
            &Graph::disjoint_union(&Graph::complete(1).unwrap(), &Graph::complete(4).unwrap())
                .unwrap(),
        )
        .unwrap();
        let w = deficiency(&g, &[], &[], 3).unwrap();
        assert_eq!((w.q, w.tau, w.delta), (3, 2, 2));
    }

    #[test]
    fn errors() {
        let g = Graph::complete(4).unwrap();
        assert_eq!(
            deficiency(&g, &[0, 1], &[1], 2),
            Err(FactorError::Overlap(1))
        );
        assert_eq!(
            deficiency(&g, &[], &[], 1),
            Err(FactorError::DegreeTooSmall { k: 1, min: 2 })
        );
        assert!(matches!(
            deficiency(&g, &[7], &[], 2),
            Err(FactorError::VertexOutOfRange { .. })
        ));
        assert!(evaluate(&g, &[], &[], 1).is_ok());
    }
}
