//! k-factor decisions, two ways: deficiency certificates over vertex-set
//! pairs, and Tutte's gadget reduction to perfect matching.

mod classes;
mod deficiency;
mod gadget;
pub mod matching;
mod search;

pub use classes::{in_class_gkn, in_class_gnk_big, ClassKind, ClassWitness};
pub use deficiency::{deficiency, DeficiencyWitness};
pub use gadget::{tutte_gadget, TutteGadget};
pub use matching::max_matching;
pub use search::{
    search_certificate, search_certificate_with, SearchOptions, SearchStats, TieBreak,
    DEFAULT_EXHAUSTIVE_CAP,
};

use serde::{Deserialize, Serialize};

use crate::error::FactorError;
use crate::graph::Graph;

/// How a negative answer is certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoFactorReason {
    /// `k > δ(G)`; the witness is `S = ∅, T = {a minimum-degree vertex}`.
    MinDegree,
    /// A positive-deficiency pair from the exhaustive search.
    Deficiency,
    /// The gadget graph has no perfect matching; no set witness attached.
    MatchingOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FactorOutcome {
    Factor {
        edges: Vec<(usize, usize)>,
    },
    NoFactor {
        witness: Option<DeficiencyWitness>,
        reason: NoFactorReason,
    },
}

impl FactorOutcome {
    pub fn has_factor(&self) -> bool {
        matches!(self, FactorOutcome::Factor { .. })
    }

    pub fn witness(&self) -> Option<&DeficiencyWitness> {
        match self {
            FactorOutcome::NoFactor { witness, .. } => witness.as_ref(),
            FactorOutcome::Factor { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FactorOptions {
    pub search: SearchOptions,
}

/// True when `edges` is a set of edges of `g` covering every vertex exactly
/// `k` times.
pub fn is_k_factor(g: &Graph, k: usize, edges: &[(usize, usize)]) -> bool {
    let mut deg = vec![0usize; g.order()];
    let mut sorted = edges.to_vec();
    sorted
        .iter_mut()
        .for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    for &(u, v) in &sorted {
        if u >= g.order() || v >= g.order() || u == v || !g.has_edge(u, v) {
            return false;
        }
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.iter().all(|&d| d == k)
}

/// Decides k-factor existence through the gadget and blossom matching only.
/// Returns the factor's edges if one exists.
pub fn factor_by_matching(g: &Graph, k: usize) -> Result<Option<Vec<(usize, usize)>>, FactorError> {
    if k == 0 {
        return Err(FactorError::DegreeTooSmall { k, min: 1 });
    }
    if k > g.min_degree() {
        return Ok(None);
    }
    if k == 1 {
        let m = max_matching(g);
        return Ok((2 * m.len() == g.order()).then_some(m));
    }
    let gadget = tutte_gadget(g, k)?;
    let mate = matching::maximum_matching_from(&gadget.aux, &gadget.initial_matching(g, k));
    if mate.iter().all(Option::is_some) {
        Ok(Some(gadget.factor_edges(&mate)))
    } else {
        Ok(None)
    }
}

pub fn has_k_factor(g: &Graph, k: usize) -> Result<FactorOutcome, FactorError> {
    has_k_factor_with(g, k, &FactorOptions::default())
}

/// Finds a k-factor or explains why none exists.
///
/// The gadget/matching route decides; for a negative answer on graphs within
/// the exhaustive cap the deficiency search supplies a witness. `k = 1` is
/// decided by matching alone.
pub fn has_k_factor_with(
    g: &Graph,
    k: usize,
    opts: &FactorOptions,
) -> Result<FactorOutcome, FactorError> {
    if k == 0 {
        return Err(FactorError::DegreeTooSmall { k, min: 1 });
    }
    let n = g.order();
    let min_degree = g.min_degree();
    if k > min_degree {
        let v = (0..n)
            .find(|&v| g.degree(v) == min_degree)
            .expect("nonempty graph");
        let witness = deficiency::evaluate(g, &[], &[v], k)?;
        return Ok(FactorOutcome::NoFactor {
            witness: Some(witness),
            reason: NoFactorReason::MinDegree,
        });
    }
    if let Some(edges) = factor_by_matching(g, k)? {
        debug_assert!(is_k_factor(g, k, &edges));
        return Ok(FactorOutcome::Factor { edges });
    }
    if k == 1 || n > opts.search.cap.min(search::MASK_LIMIT) {
        return Ok(FactorOutcome::NoFactor {
            witness: None,
            reason: NoFactorReason::MatchingOnly,
        });
    }
    match search_certificate_with(g, k, &opts.search)?.0 {
        Some(w) => Ok(FactorOutcome::NoFactor {
            witness: Some(w),
            reason: NoFactorReason::Deficiency,
        }),
        None => Err(FactorError::Inconsistent(format!(
            "no perfect matching in the gadget but no positive deficiency for k={k} on {g:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_gnk, GnkParams};

    #[test]
    fn gnk_has_no_factor() {
        for (n, k) in [(7, 2), (9, 2), (10, 3), (13, 4)] {
            let g = build_gnk(GnkParams { n, k }).unwrap();
            let out = has_k_factor(&g, k).unwrap();
            let w = out.witness().expect("witness within cap");
            assert!(w.delta > 0);
            assert_eq!(deficiency(&g, &w.s, &w.t, k).unwrap(), *w);
        }
    }

    #[test]
    fn complete_graph_has_factor() {
        let k6 = Graph::complete(6).unwrap();
        match has_k_factor(&k6, 3).unwrap() {
            FactorOutcome::Factor { edges } => assert!(is_k_factor(&k6, 3, &edges)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn regular_graph_is_its_own_factor() {
        let p = Graph::petersen();
        assert_eq!(
            has_k_factor(&p, 3).unwrap(),
            FactorOutcome::Factor {
                edges: p.edges().collect()
            }
        );
        let c = Graph::cycle(9).unwrap();
        assert_eq!(
            has_k_factor(&c, 2).unwrap(),
            FactorOutcome::Factor {
                edges: c.edges().collect()
            }
        );
    }

    #[test]
    fn min_degree_refusal() {
        let g = Graph::path(5).unwrap();
        let out = has_k_factor(&g, 2).unwrap();
        match out {
            FactorOutcome::NoFactor {
                witness: Some(w),
                reason: NoFactorReason::MinDegree,
            } => {
                assert!(w.s.is_empty());
                assert_eq!(w.t, vec![0]);
                assert!(w.delta > 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn one_factor_by_matching() {
        assert!(has_k_factor(&Graph::complete(4).unwrap(), 1)
            .unwrap()
            .has_factor());
        assert_eq!(
            has_k_factor(&Graph::complete(5).unwrap(), 1).unwrap(),
            FactorOutcome::NoFactor {
                witness: None,
                reason: NoFactorReason::MatchingOnly
            }
        );
    }

    #[test]
    fn above_cap_reports_matching_only() {
        let g = build_gnk(GnkParams { n: 20, k: 3 }).unwrap();
        assert_eq!(
            has_k_factor(&g, 3).unwrap(),
            FactorOutcome::NoFactor {
                witness: None,
                reason: NoFactorReason::MatchingOnly
            }
        );
    }

    #[test]
    fn factor_validation() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(is_k_factor(&c4, 2, &[(0, 1), (1, 2), (2, 3), (0, 3)]));
        assert!(!is_k_factor(&c4, 2, &[(0, 1), (1, 2), (2, 3), (0, 2)]));
        assert!(!is_k_factor(&c4, 1, &[(0, 1), (1, 0)]));
        assert!(is_k_factor(&c4, 1, &[(0, 1), (2, 3)]));
    }
}
