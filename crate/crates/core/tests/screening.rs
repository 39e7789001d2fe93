mod common;

use common::*;
use plap::generate::{complete, cycle, hypercube, path, star};
use plap::linear::linear_baselines;
use plap::screening::{lambda_max_signless, parse_grid, star_lambda};
use plap::{criterion_sweep, PParam, SignedGraph, Verdict};
use rand::Rng;

fn p(x: f64) -> PParam {
    PParam::new(x).unwrap()
}

#[test]
fn subgraphs_never_exceed_their_host() {
    for seed in 0..30 {
        let g = plain_connected(seed, 3, 14);
        let mut r = rng(1000 + seed);
        let keep: Vec<usize> = (0..g.num_edges()).filter(|_| r.random_bool(0.6)).collect();
        let gp = g.edge_subgraph(&keep);
        for q in [1.5, 2.0, 3.0, 4.0] {
            let host = lambda_max_signless(&g, p(q)).unwrap();
            let sub = lambda_max_signless(&gp, p(q)).unwrap();
            assert!(sub <= host + 1e-9, "seed {seed} p {q}: {sub} > {host}");
        }
    }
}

#[test]
fn star_one_past_max_degree_is_screened_out() {
    let petersen = SignedGraph::unweighted(
        10,
        &[
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ],
    )
    .unwrap();
    let fixtures = [cycle(6).unwrap(), hypercube(3).unwrap(), petersen, path(5).unwrap(), complete(5).unwrap(), hypercube(4).unwrap()];
    let descending = parse_grid("1.5,1.4,1.3,1.2,1.1,1.05,1.02").unwrap();
    for g in &fixtures {
        let d = g.max_degree();
        let over = criterion_sweep(g, &star(d + 1).unwrap(), &descending).unwrap();
        assert_eq!(over.verdict, Verdict::NotSubgraph, "max degree {d}");
        assert!(over.witnesses.iter().any(|&w| w <= 1.2));
        let fits = criterion_sweep(g, &star(d).unwrap(), &[1.02, 1.1, 1.5, 2.0, 3.0]).unwrap();
        assert_eq!(fits.verdict, Verdict::Inconclusive, "max degree {d}");
    }
}

#[test]
fn signless_baseline_is_the_linear_solve() {
    for seed in 0..20 {
        let g = plain_connected(50 + seed, 2, 25);
        let q = linear_baselines(&g).signless;
        let lam = lambda_max_signless(&g, p(2.0)).unwrap();
        assert!((q - lam).abs() <= 1e-8 * q);
        assert!((q - signless_matrix_lambda_max(&g)).abs() <= 1e-8 * q);
    }
}

#[test]
fn star_closed_form_cross_check() {
    for d in 1..=10 {
        for q in [1.3, 1.5, 2.0, 10.0 / 3.0, 4.0, 6.0] {
            let exact = star_lambda(d, p(q));
            let lam = lambda_max_signless(&star(d).unwrap(), p(q)).unwrap();
            assert!((lam - exact).abs() <= 1e-8 * exact, "d {d} p {q}");
        }
    }
    // d = 4, p = 1.2: (1 + 4^5)^{1/5} = 1025^{0.2}
    assert!((star_lambda(4, p(1.2)) - 1025f64.powf(0.2)).abs() < 1e-14);
    assert!((star_lambda(4, p(1.2)) - 4.000781).abs() < 1e-6);
}
