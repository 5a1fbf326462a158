//! Named graph families with known transfer behaviour.

use std::f64::consts::FRAC_PI_2;

use pairwalk_core::nalgebra::DMatrix;
use pairwalk_core::coherent::{extract_permutation, is_walk_regular, s_pair_transfer, PERMUTATION_TOL};
use pairwalk_core::construct::{
    blow_up, cartesian, complete_minus_cycle, complete_minus_matching, edge_corona, join, neighborhood_corona,
    sequential_join, vertex_corona, CoronaIndex,
};
use pairwalk_core::oracle::expm_series;
use pairwalk_core::transfer::{check_pst_at, find_pst, strong_cospectral, PgstTracker, SearchOptions, EXACT_TOL};
use pairwalk_core::{Complex64, HamiltonianModel, RealPureState, WeightedGraph};

use super::{dec, pair, Builder, Settings};

const MODELS: [HamiltonianModel; 3] = HamiltonianModel::ALL;

pub(super) fn matching_removal(b: &mut Builder, s: &Settings) {
    let tol = s.tol_or(EXACT_TOL);
    for n in [4, 5, 6] {
        let g = complete_minus_matching(n, 2).expect("n >= 4");
        for m in MODELS {
            b.pst_at(
                format!("{m}: K{n} minus a 2-matching, pair (0,2) -> (1,3)"),
                &dec(&g, m),
                &pair(n, 0, 2),
                &pair(n, 1, 3),
                FRAC_PI_2,
                tol,
            );
        }
    }
}

pub(super) fn edge_deleted(b: &mut Builder, _s: &Settings) {
    for n in 4..=8 {
        let g = complete_minus_matching(n, 1).expect("n >= 2");
        let d = dec(&g, HamiltonianModel::Laplacian);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let (mut sc, mut pst, mut total) = (0, 0, 0);
        let mut example = None;
        for (i, &(a, c)) in pairs.iter().enumerate() {
            for &(p, q) in &pairs[i + 1..] {
                let (x, y) = (pair(n, a, c), pair(n, p, q));
                total += 1;
                if strong_cospectral(&d, &x, &y).expect("valid").is_some() {
                    sc += 1;
                }
                let found = find_pst(&d, &x, &y, &SearchOptions::default()).expect("valid");
                if let Some(cert) = found.iter().find(|c| c.is_pst()) {
                    pst += 1;
                    example.get_or_insert(format!("({a},{c}) -> ({p},{q}) at {:.9}", cert.tau.unwrap_or(f64::NAN)));
                }
            }
        }
        b.push(
            format!("L: K{n} minus the edge (0,1), all {total} pairs of pair states"),
            "no strongly cospectral pair states",
            format!(
                "{sc} strongly cospectral, {pst} PST{}",
                example.map_or(String::new(), |e| format!(", e.g. {e}"))
            ),
            sc as f64,
            sc == 0 && pst == 0,
        );
    }
}

pub(super) fn cycle_removal(b: &mut Builder, s: &Settings) {
    for n in [8, 10] {
        let g = complete_minus_cycle(n, 3).expect("n >= 8");
        let (x, y) = (pair(n, 0, 1), pair(n, 4, 5));
        for m in MODELS {
            let mut tracker = PgstTracker::new(&dec(&g, m), &x, &y, s.seed).expect("valid");
            let first = tracker.extend(1e4, 1_000_000);
            let doubled = tracker.extend(2e4, 1_000_000);
            b.push(
                format!("{m}: K{n} minus C8, pair (0,1) -> (4,5), 1e6 samples per 1e4 time units"),
                "sup fidelity > 0.9 by T = 1e4, nondecreasing to T = 2e4",
                format!(
                    "sup {:.9} at T = 1e4 (t = {:.6}), {:.9} at T = 2e4",
                    first.sup_fidelity,
                    first.achieving_times.first().copied().unwrap_or(f64::NAN),
                    doubled.sup_fidelity
                ),
                1.0 - doubled.sup_fidelity,
                first.strongly_cospectral && first.sup_fidelity > 0.9 && doubled.sup_fidelity >= first.sup_fidelity,
            );
        }
    }
}

pub(super) fn permutations(b: &mut Builder, s: &Settings) {
    let tol = s.tol_or(PERMUTATION_TOL);
    let c4 = WeightedGraph::cycle(4);
    let walk_regular = is_walk_regular(&c4).expect("unweighted");
    b.push("C4 walk-regularity", "walk-regular", walk_regular.to_string(), 0.0, walk_regular);
    for m in MODELS {
        let d = dec(&c4, m);
        let Some(cert) = extract_permutation(&d, FRAC_PI_2, tol).expect("positive time") else {
            b.push(format!("{m}: C4 at pi/2"), "scaled permutation", "none", 1.0, false);
            continue;
        };
        let series = expm_series(&c4.matrix(m), FRAC_PI_2);
        let mut scaled = DMatrix::from_element(4, 4, Complex64::new(0.0, 0.0));
        for (j, &i) in cert.perm.iter().enumerate() {
            scaled[(i, j)] = cert.gamma;
        }
        let oracle = series.iter().zip(scaled.iter()).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        b.push(
            format!("{m}: C4 at pi/2 against the series exponential"),
            "antipodal fixed-point-free involution",
            format!(
                "perm {:?}, gamma {:.9}{:+.9}i, order2 {}, fixed-point-free {}",
                cert.perm, cert.gamma.re, cert.gamma.im, cert.order2, cert.fixed_point_free
            ),
            oracle,
            cert.perm == [2, 3, 0, 1] && cert.order2 && cert.fixed_point_free && oracle <= tol,
        );
        for coef in [1.0, -1.0, 2.0, -2.0, 0.5, 3.0] {
            let (x, y) = s_pair_transfer(&cert, 0, 1, coef).expect("0 and 1 are not swapped");
            let c = check_pst_at(&d, &x, &y, FRAC_PI_2, EXACT_TOL).expect("valid");
            b.push(
                format!("{m}: C4 s-pair (0,1) -> (2,3), s = {coef}"),
                "PST at 1.570796327 with the permutation phase",
                format!("{}, gamma {:.9}{:+.9}i", c.verdict.as_str(), c.gamma.re, c.gamma.im),
                c.residual.max((c.gamma - cert.gamma).norm()),
                c.is_pst() && (c.gamma - cert.gamma).norm() <= 1e-8,
            );
        }
    }
}

fn with_pendants(first: WeightedGraph, len: usize) -> WeightedGraph {
    let mut parts = vec![first];
    parts.extend(std::iter::repeat_with(|| WeightedGraph::empty(1)).take(len));
    sequential_join(&parts).expect("non-empty")
}

pub(super) fn sequential_joins(b: &mut Builder, s: &Settings) {
    let tol = s.tol_or(EXACT_TOL);
    for len in 1..=6 {
        let g = with_pendants(WeightedGraph::cycle(4), len);
        let n = g.order();
        for m in MODELS {
            b.pst_at(
                format!("{m}: C4 then {len} K1 joined in sequence, pair (0,1) -> (3,2)"),
                &dec(&g, m),
                &pair(n, 0, 1),
                &pair(n, 3, 2),
                FRAC_PI_2,
                tol,
            );
        }
    }
    for len in 1..=6 {
        let g = with_pendants(WeightedGraph::path(3), len);
        let n = g.order();
        b.pst_at(
            format!("L: P3 then {len} K1 joined in sequence, pair (0,1) -> (2,1)"),
            &dec(&g, HamiltonianModel::Laplacian),
            &pair(n, 0, 1),
            &pair(n, 2, 1),
            FRAC_PI_2,
            tol,
        );
    }

    let c4 = WeightedGraph::cycle(4);
    let perm = [2, 3, 0, 1];
    let outers = [
        ("K1", WeightedGraph::empty(1)),
        ("K2 complement", WeightedGraph::empty(2)),
        ("K2", WeightedGraph::complete(2)),
    ];
    for (name, outer) in &outers {
        let g = join(&c4, outer);
        let n = g.order();
        for m in MODELS {
            let d = dec(&g, m);
            let mut worst = 0.0f64;
            let mut all = true;
            for (a, c) in [(0, 1), (0, 3), (1, 2), (2, 3)] {
                let cert = check_pst_at(&d, &pair(n, a, c), &pair(n, perm[a], perm[c]), FRAC_PI_2, tol).expect("valid");
                worst = worst.max(cert.residual);
                all &= cert.is_pst();
            }
            b.push(
                format!("{m}: C4 joined with {name}, pairs (a,b) -> (Pa,Pb) for non-antipodal a,b"),
                "PST at 1.570796327 for every such pair",
                if all { "PST".to_string() } else { "missing PST".to_string() },
                worst,
                all,
            );
        }
    }
}

pub(super) fn products(b: &mut Builder, s: &Settings) {
    let tol = s.tol_or(EXACT_TOL);
    let k2 = WeightedGraph::complete(2);
    let (w1, w2) = (RealPureState::vertex(2, 0).expect("n = 2"), RealPureState::vertex(2, 1).expect("n = 2"));
    for len in 1..=2 {
        let base = with_pendants(WeightedGraph::cycle(4), len);
        let g = cartesian(&base, &k2);
        let nb = base.order();
        for m in MODELS {
            b.pst_at(
                format!("{m}: (C4 then {len} K1) x K2, (0,1)(x)w1 -> (3,2)(x)w2"),
                &dec(&g, m),
                &pair(nb, 0, 1).tensor(&w1),
                &pair(nb, 3, 2).tensor(&w2),
                FRAC_PI_2,
                tol,
            );
        }
    }
    let base = sequential_join(&[WeightedGraph::complete(2), WeightedGraph::empty(1), WeightedGraph::empty(1)])
        .expect("non-empty");
    b.pst_at(
        "L: (K2 v K1 v K1) x K2, (0,3)(x)w1 -> (1,3)(x)w2",
        &dec(&cartesian(&base, &k2), HamiltonianModel::Laplacian),
        &pair(4, 0, 3).tensor(&w1),
        &pair(4, 1, 3).tensor(&w2),
        FRAC_PI_2,
        tol,
    );

    let (c4, e4, p3) = (WeightedGraph::cycle(4), WeightedGraph::empty(4), WeightedGraph::path(3));
    let (x, y) = (pair(4, 0, 1), pair(4, 3, 2));
    let idx = CoronaIndex {
        base: 3,
        copy_size: 4,
    };
    let coronas = [
        ("vertex corona P3 o C4", vertex_corona(&p3, &c4), 3),
        ("edge corona of P3 with C4", edge_corona(&p3, &c4), 2),
        ("neighborhood corona of P3 with C4", neighborhood_corona(&p3, &c4), 3),
    ];
    for (name, g, copies) in &coronas {
        for m in MODELS {
            let d = dec(g, m);
            for copy in 0..*copies {
                let members = idx.copy_vertices(copy);
                b.pst_at(
                    format!("{m}: {name}, copy {copy}"),
                    &d,
                    &x.lift(g.order(), &members).expect("copy size 4"),
                    &y.lift(g.order(), &members).expect("copy size 4"),
                    FRAC_PI_2,
                    tol,
                );
            }
        }
    }
    let blown = blow_up(&p3, 4, &[c4.clone(), e4.clone(), e4]).expect("one inner graph per vertex");
    for m in MODELS {
        b.pst_at(
            format!("{m}: 4-fold blow-up of P3 with C4 on the first vertex"),
            &dec(&blown, m),
            &x.lift(12, &[0, 1, 2, 3]).expect("copy size 4"),
            &y.lift(12, &[0, 1, 2, 3]).expect("copy size 4"),
            FRAC_PI_2,
            tol,
        );
    }
}
