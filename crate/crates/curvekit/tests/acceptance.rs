//! The release gate: ten end-to-end checks with pinned expected values,
//! explicit tolerances, and wall-clock budgets. Each check prints one
//! PASS/FAIL line (visible under --nocapture) and fails the build when a
//! value or its budget is missed. Numbered names keep the harness output
//! in gate order.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use curvekit::cloud::{scalar_estimate, scalar_field, RadiiSpec};
use curvekit::community::{
    delete_negative_communities, flow_threshold, surgery, Recompute,
};
use curvekit::complex::SimplicialComplex;
use curvekit::curvature::{
    bakry_emery, edge_resistances, forman_graph, forman_simplex_unweighted,
    haantjes_path, haantjes_ricci, menger_triangle, ollivier_edge,
    resistance_vertex_curvatures, sectional_triple,
};
use curvekit::flow::ricci_flow;
use curvekit::generators::{
    bridged_cliques, complete_graph, cycle_graph, grid_points,
    random_connected_graph, random_tree, sample_sphere, sphere_geodesic_matrix,
    with_random_weights,
};
use curvekit::graph::Graph;
use curvekit::transport::lazy_measure;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Runs one gate check, prints its verdict with timing, and enforces the
/// wall-clock budget.
fn gate<F: FnOnce()>(label: &str, budget_secs: f64, body: F) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed().as_secs_f64();
    let ok = outcome.is_ok() && elapsed <= budget_secs;
    println!(
        "{}: {} ({elapsed:.2}s of {budget_secs:.0}s budget)",
        label,
        if ok { "PASS" } else { "FAIL" }
    );
    if let Err(panic) = outcome {
        std::panic::resume_unwind(panic);
    }
    assert!(elapsed <= budget_secs, "{label} blew its {budget_secs}s budget");
}

/// Two pairs of tetrahedra, each pair glued along a shared triangle, and
/// a strip of five triangles running from one pair's shared edge to the
/// other's. The strip ends sit on edges with three more triangles over
/// them; the middle sits on edges with one.
fn strip_between_tetrahedra() -> (SimplicialComplex, [Vec<u32>; 5]) {
    let mut text = String::new();
    for c in ["p", "q"] {
        for (u, v) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (1, 5), (2, 5), (3, 5)] {
            text.push_str(&format!("{c}{u} {c}{v}\n"));
        }
    }
    text.push_str("p1 s1\np2 s1\np2 s2\ns1 s2\ns1 s3\ns2 s3\ns2 q2\ns3 q2\ns3 q1\n");
    let g = Graph::from_edge_list(&text).unwrap();
    let k = SimplicialComplex::clique_complex(&g, 3).unwrap();
    let tri = |ids: [&str; 3]| {
        let mut t: Vec<u32> = ids.iter().map(|s| g.vertex(s).unwrap()).collect();
        t.sort_unstable();
        t
    };
    let strip = [
        tri(["p1", "p2", "s1"]),
        tri(["p2", "s1", "s2"]),
        tri(["s1", "s2", "s3"]),
        tri(["s2", "s3", "q2"]),
        tri(["s3", "q2", "q1"]),
    ];
    (k, strip)
}

#[test]
fn gate_01_simplicial_forman_on_the_triangle_strip() {
    gate("01 simplicial strip", 1.0, || {
        let (k, strip) = strip_between_tetrahedra();
        // Four tetrahedra and their fourteen triangles, plus the strip.
        assert_eq!(k.simplex_count(3), 4);
        assert_eq!(k.simplex_count(2), 19);
        let expected = [-1.0, 1.0, 1.0, 1.0, -1.0];
        for (triangle, want) in strip.iter().zip(expected) {
            let got = forman_simplex_unweighted(&k, triangle).unwrap();
            assert_eq!(got, want, "triangle {triangle:?}");
        }
    });
}

#[test]
fn gate_02_forman_degree_identity() {
    gate("02 forman identity", 5.0, || {
        for seed in 0..200u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(2..=200);
            let p = rng.random_range(0.05..0.9);
            let g = random_connected_graph(n, p, seed);
            let kappa = forman_graph(&g);
            for (e, edge) in g.edges().iter().enumerate() {
                let want = 4.0 - g.degree(edge.u) as f64 - g.degree(edge.v) as f64;
                assert_eq!(kappa[e], want, "seed {seed} edge {e}");
            }
        }
    });
}

#[test]
fn gate_03_transport_curvature_and_lp_oracle() {
    gate("03 transport vs dense LP", 60.0, || {
        let g = complete_graph(5);
        let d = g.shortest_paths().unwrap();
        for e in 0..g.edge_count() as u32 {
            let kappa = ollivier_edge(&g, &d, e, 0.5).unwrap();
            assert!((kappa - 0.625).abs() <= 1e-9, "K5 edge {e}: {kappa}");
        }
        for seed in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(3..=8);
            let p = rng.random_range(0.3..0.8);
            let g = random_connected_graph(n, p, seed ^ 0x5EED);
            let g = if seed % 2 == 0 {
                with_random_weights(&g, 0.25, 4.0, seed)
            } else {
                g
            };
            let alpha = rng.random_range(0.0..1.0);
            let d = g.shortest_paths().unwrap();
            for edge in g.edges() {
                let fast = ollivier_edge(&g, &d, g.edge(edge.u, edge.v).unwrap(), alpha)
                    .unwrap();
                let mu = lazy_measure(&g, edge.u, alpha).unwrap();
                let nu = lazy_measure(&g, edge.v, alpha).unwrap();
                let (costs, a, b) = common::support_costs(&mu, &nu, &d);
                let slow = 1.0 - common::transport_lp(&costs, &a, &b) / d.get(edge.u, edge.v);
                assert!(
                    (fast - slow).abs() <= 1e-8,
                    "seed {seed} edge {}-{}: {fast} vs {slow}",
                    g.id(edge.u),
                    g.id(edge.v)
                );
            }
        }
    });
}

#[test]
fn gate_04_sectional_band_trees_and_cliques() {
    gate("04 sectional bounds", 30.0, || {
        for seed in 0..100u64 {
            let n = 3 + (seed as usize * 7) % 13;
            let g = random_tree(n, seed);
            let d = g.shortest_paths().unwrap();
            for a in 0..n as u32 {
                for b in (a + 1)..n as u32 {
                    for c in (b + 1)..n as u32 {
                        assert_eq!(sectional_triple(&d, (a, b, c)).unwrap(), 1.0);
                    }
                }
            }
        }
        for n in 3..=8usize {
            let g = complete_graph(n);
            let d = g.shortest_paths().unwrap();
            for a in 0..n as u32 {
                for b in (a + 1)..n as u32 {
                    for c in (b + 1)..n as u32 {
                        assert_eq!(sectional_triple(&d, (a, b, c)).unwrap(), 2.0);
                    }
                }
            }
        }
        let mut checked = 0usize;
        for seed in 0..100u64 {
            let g = random_connected_graph(16, 0.15 + (seed % 8) as f64 * 0.05, seed);
            let g = if seed % 2 == 0 {
                with_random_weights(&g, 0.25, 4.0, seed)
            } else {
                g
            };
            let d = g.shortest_paths().unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7417);
            for _ in 0..100 {
                let (a, b, c) = loop {
                    let a = rng.random_range(0..16u32);
                    let b = rng.random_range(0..16u32);
                    let c = rng.random_range(0..16u32);
                    if a != b && b != c && a != c {
                        break (a, b, c);
                    }
                };
                let rho = sectional_triple(&d, (a, b, c)).unwrap();
                assert!(
                    (1.0 - 1e-9..=2.0 + 1e-9).contains(&rho),
                    "seed {seed} triple ({a},{b},{c}): {rho}"
                );
                checked += 1;
            }
        }
        assert_eq!(checked, 10_000);
    });
}

#[test]
fn gate_05_resistance_pendant_and_foster() {
    gate("05 resistance vertex values", 30.0, || {
        let g = Graph::from_edge_list("a b\nb c\nc a\nc d\n").unwrap();
        let p = resistance_vertex_curvatures(&g).unwrap();
        let expected = [1.0 / 3.0, 1.0 / 3.0, -1.0 / 6.0, 0.5];
        let oracle = common::spanning_tree_vertex_curvatures(&g);
        for v in 0..4 {
            assert!((p[v] - expected[v]).abs() <= 1e-9, "vertex {v}: {}", p[v]);
            assert!((p[v] - oracle[v]).abs() <= 1e-9, "vertex {v} vs oracle");
        }
        for seed in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(3..=20);
            let g = random_connected_graph(n, rng.random_range(0.2..0.8), seed);
            let g = if seed % 2 == 0 {
                with_random_weights(&g, 0.3, 3.0, seed)
            } else {
                g
            };
            let omega = edge_resistances(&g).unwrap();
            let total: f64 = g
                .edges()
                .iter()
                .zip(&omega)
                .map(|(e, r)| e.weight * r)
                .sum();
            assert!(
                (total - (n as f64 - 1.0)).abs() <= 1e-8,
                "seed {seed}: sum {total} for n = {n}"
            );
        }
    });
}

#[test]
fn gate_06_bakry_emery_endpoints_and_bisection() {
    gate("06 bakry-emery", 60.0, || {
        let k2 = complete_graph(2);
        for v in 0..2 {
            let got = bakry_emery(&k2, v).unwrap();
            assert!((got - 2.0).abs() <= 1e-6, "K2 vertex {v}: {got}");
        }
        for seed in 0..50u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(4..=12);
            let g = random_connected_graph(n, rng.random_range(0.25..0.75), seed);
            let g = if seed % 2 == 0 {
                with_random_weights(&g, 0.5, 2.0, seed)
            } else {
                g
            };
            for v in 0..n as u32 {
                let fast = bakry_emery(&g, v).unwrap();
                let slow = common::bakry_emery_bisection(&g, v);
                assert!(
                    (fast - slow).abs() <= 1e-6 * slow.abs().max(1.0),
                    "seed {seed} vertex {v}: {fast} vs {slow}"
                );
            }
        }
        let (barbell, a, b) = bridged_cliques(4);
        assert!(bakry_emery(&barbell, a).unwrap() < 0.0);
        assert!(bakry_emery(&barbell, b).unwrap() < 0.0);
    });
}

#[test]
fn gate_07_menger_and_haantjes_closed_forms() {
    gate("07 menger/haantjes closed forms", 1.0, || {
        let unit = menger_triangle(1.0, 1.0, 1.0).unwrap();
        assert!((unit - 3.0f64.sqrt()).abs() <= 1e-12);

        // A chorded path: n unit hops between endpoints one apart.
        for n in 2..=6usize {
            let mut text = String::new();
            for i in 0..n {
                text.push_str(&format!("v{i} v{}\n", i + 1));
            }
            text.push_str(&format!("v0 v{n}\n"));
            let g = Graph::from_edge_list(&text).unwrap();
            let d = g.shortest_paths().unwrap();
            let path: Vec<u32> = (0..=n).map(|i| g.vertex(&format!("v{i}")).unwrap()).collect();
            let got = haantjes_path(&g, &d, &path).unwrap();
            assert!(
                (got - ((n - 1) as f64).sqrt()).abs() <= 1e-12,
                "{n}-hop path: {got}"
            );
        }

        let c4 = cycle_graph(4);
        let d = c4.shortest_paths().unwrap();
        let e = c4.edge(0, 1).unwrap();
        let got = haantjes_ricci(&c4, &d, e, 3).unwrap();
        assert!((got - 2.0f64.sqrt()).abs() <= 1e-12, "C4 edge: {got}");
    });
}

#[test]
fn gate_08_barbell_community_recovery() {
    gate("08 barbell communities", 30.0, || {
        let (g, _, _) = bridged_cliques(10);
        let expected: Vec<u32> = (0..20).map(|v| u32::from(v >= 10)).collect();

        let mut deletion_runs = Vec::new();
        for _ in 0..2 {
            let exact = delete_negative_communities(&g, 0.5, Recompute::Exact).unwrap();
            let local = delete_negative_communities(&g, 0.5, Recompute::TwoHop).unwrap();
            assert_eq!(exact.labels, expected);
            assert_eq!(local.labels, expected);
            deletion_runs.push((exact.labels, exact.removed, local.labels));
        }
        assert_eq!(deletion_runs[0], deletion_runs[1]);

        let mut flow_runs = Vec::new();
        for _ in 0..2 {
            let state = ricci_flow(&g, 20, 0.5).unwrap();
            let labels =
                surgery(&g, &state.weights, flow_threshold(&state.weights).unwrap())
                    .unwrap();
            assert_eq!(labels, expected);
            flow_runs.push((state.weights, labels));
        }
        assert_eq!(flow_runs[0], flow_runs[1]);
    });
}

#[test]
fn gate_09_scalar_estimates_on_spheres_and_grid() {
    gate("09 point-cloud scalar", 120.0, || {
        // Two tight rung clusters keep per-point quadratic fits stable;
        // see the guide chapter on point clouds for the reasoning.
        let ladder: Vec<f64> = (0..12)
            .map(|i| 1.05 + 0.015 * i as f64)
            .chain((0..12).map(|i| 2.10 + 0.015 * i as f64))
            .collect();

        let cloud = sample_sphere(2000, 1.0, 15);
        let d = sphere_geodesic_matrix(&cloud, 1.0).unwrap();
        let field = scalar_field(&d, 2, &RadiiSpec::Fixed(ladder.clone())).unwrap();
        let inside = field.iter().filter(|s| (1.5..=2.5).contains(*s)).count();
        assert!(
            inside * 10 >= field.len() * 9,
            "unit sphere: only {inside}/{} in [1.5, 2.5]",
            field.len()
        );

        let doubled: Vec<f64> = ladder.iter().map(|r| 2.0 * r).collect();
        let cloud2 = sample_sphere(2000, 2.0, 19);
        let d2 = sphere_geodesic_matrix(&cloud2, 2.0).unwrap();
        let field2 = scalar_field(&d2, 2, &RadiiSpec::Fixed(doubled)).unwrap();
        let mean2 = field2.iter().sum::<f64>() / field2.len() as f64;
        assert!((0.35..=0.65).contains(&mean2), "radius-2 mean {mean2}");
        let inside2 = field2.iter().filter(|s| (0.35..=0.65).contains(*s)).count();
        assert!(
            inside2 * 10 >= field2.len() * 9,
            "radius-2 sphere: only {inside2}/{} in [0.35, 0.65]",
            field2.len()
        );

        let grid = grid_points(50, 50, 1.0);
        let dg = grid.distance_matrix();
        let radii: Vec<f64> =
            (0..8).map(|i| 6.0 * 2.0f64.powf(i as f64 / 7.0)).collect();
        for row in 12..=37u32 {
            for col in 12..=37u32 {
                let s = scalar_estimate(&dg, row * 50 + col, &radii, 2).unwrap();
                assert!(s.abs() <= 0.1, "grid point ({row}, {col}): {s}");
            }
        }
    });
}

#[test]
fn gate_10_cli_byte_determinism() {
    gate("10 cli determinism", 30.0, || {
        let dir = tempfile::tempdir().unwrap();
        let graph = dir.path().join("g.txt");
        std::fs::write(&graph, "a b\nb c\nc a\nx y\ny z\nz x\na x\n").unwrap();
        let cloud = dir.path().join("c.csv");
        let mut rows = String::new();
        for i in 0..40 {
            rows.push_str(&format!("{},{}\n", i % 8, i / 8));
        }
        std::fs::write(&cloud, rows).unwrap();
        let g = graph.to_str().unwrap();
        let c = cloud.to_str().unwrap();

        let commands: Vec<Vec<&str>> = vec![
            vec!["curvature", g],
            vec!["curvature", g, "--model", "ollivier,forman", "--alpha", "0.3"],
            vec!["curvature", g, "--model", "sectional", "--seed", "11", "--format", "json"],
            vec!["communities", g, "--method", "delete-negative"],
            vec!["communities", g, "--method", "ricci-flow", "--threshold", "sweep"],
            vec!["flow", g, "--iters", "5", "--alpha", "0.5"],
            vec!["scalar-cloud", c, "--dimension", "2", "--radii", "2.0,2.5,3.0,3.5"],
            vec!["complex", g, "--max-dim", "3"],
            vec!["complex", c, "--input-kind", "points", "--eps", "1.5", "--format", "json"],
        ];
        for args in commands {
            let run = || {
                Command::new(env!("CARGO_BIN_EXE_curvekit"))
                    .args(&args)
                    .output()
                    .expect("binary runs")
            };
            let first = run();
            let second = run();
            assert!(first.status.success(), "{args:?}: {first:?}");
            assert_eq!(first.stdout, second.stdout, "stdout differs: {args:?}");
            assert_eq!(first.stderr, second.stderr, "stderr differs: {args:?}");
        }
    });
}
