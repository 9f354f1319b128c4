mod common;

use common::{gnk_reference, graphs8, spectral_oracle};
use kfs_core::graph::graph6;
use kfs_core::spectral::{power_enclosure, rho, DEFAULT_TOL};
use kfs_core::{build_gnk, GnkParams};

#[test]
fn gnk_matches_reference_table() {
    let rows = gnk_reference();
    assert_eq!(
        rows.len(),
        (6..=80).count() + (9..=80).count() + (12..=80).count() + (15..=80).count()
    );
    for row in rows {
        let p = GnkParams { n: row.n, k: row.k };
        let g = build_gnk(p).unwrap();
        assert_eq!(g.edge_count(), row.m, "({}, {})", row.n, row.k);
        assert_eq!(p.edge_count(), row.m);
        assert_eq!(g.sorted_degrees(), row.degrees, "({}, {})", row.n, row.k);
        let est = rho(&g, DEFAULT_TOL).unwrap();
        // the reference value carries dense-solver rounding of a few ulps
        let slack = 64.0 * f64::EPSILON * row.rho;
        assert!(
            est.lo - slack <= row.rho && row.rho <= est.hi + slack,
            "({}, {}): {est:?}",
            row.n,
            row.k
        );
    }
}

#[test]
fn enclosures_contain_high_precision_radius() {
    let oracle = spectral_oracle();
    assert_eq!(oracle.len(), 1000);
    for (g6, value) in oracle {
        let g = graph6::decode(g6.as_bytes()).unwrap();
        for est in [
            rho(&g, DEFAULT_TOL).unwrap(),
            power_enclosure(&g, DEFAULT_TOL).unwrap(),
        ] {
            assert!(
                est.lo <= value && value <= est.hi,
                "{g6}: {value} not in [{}, {}]",
                est.lo,
                est.hi
            );
            assert!(est.width() <= DEFAULT_TOL, "{g6}: width {}", est.width());
            let mu: f64 = {
                let x = &est.vector;
                g.edges().map(|(u, v)| 2.0 * x[u] * x[v]).sum()
            };
            assert!(
                est.lo <= mu + 1e-12 && mu <= est.hi + 1e-12,
                "{g6}: Rayleigh quotient {mu}"
            );
        }
    }
}

#[test]
fn all_graphs_on_eight_vertices_round_trip() {
    let lines = graphs8();
    assert_eq!(lines.len(), 12346);
    let mut edge_histogram = [0usize; 29];
    for line in &lines {
        let g = graph6::decode(line.as_bytes()).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(&graph6::encode(&g), line);
        edge_histogram[g.edge_count()] += 1;
    }
    // graphs on 8 vertices by edge count are symmetric under complement
    for m in 0..=28 {
        assert_eq!(edge_histogram[m], edge_histogram[28 - m]);
    }
    assert_eq!(&edge_histogram[..4], &[1, 1, 2, 5]);
}
