//! Randomized suites: the cluster identity, the complement identity, and the
//! transfer equivalences they imply.

use std::f64::consts::FRAC_PI_2;

use pairwalk_core::nalgebra::DVector;
use pairwalk_core::construct::{attach, complement, complement_phase_rate, AttachmentPlan};
use pairwalk_core::oracle::evolve_series;
use pairwalk_core::random::{
    random_balanced_state, random_base_with_cluster, random_cluster_instance, random_inner,
};
use pairwalk_core::spectral::fidelity;
use pairwalk_core::transfer::{check_pst_at, cluster_phase, find_pst, is_periodic, strong_cospectral, SearchOptions, EXACT_TOL};
use pairwalk_core::{Cluster, Complex64, HamiltonianModel, RealPureState, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{dec, pair, Builder, Settings};

const MODELS: [HamiltonianModel; 3] = HamiltonianModel::ALL;

fn max_diff(a: &DVector<Complex64>, b: &DVector<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
}

pub(super) fn cluster_lemma(b: &mut Builder, s: &Settings) {
    let tol = s.tol_or(1e-8);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    for k in 0..50 {
        let model = MODELS[k % 3];
        let inst = random_cluster_instance(&mut rng, model, true);
        let x = random_balanced_state(&mut rng, inst.cluster.size());
        let xt = inst.lift(&x);
        let (mg, mh) = (inst.attached.matrix(model), inst.inner.matrix(model));
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let t = rng.random_range(-10.0..10.0);
            let inner = evolve_series(&mh, t, &x);
            let phase = Complex64::from_polar(1.0, f64::from(model.delta()) * t * inst.shift());
            let mut expected = DVector::from_element(inst.attached.order(), Complex64::new(0.0, 0.0));
            for (i, &v) in inst.cluster.members.iter().enumerate() {
                expected[v] = phase * inner[i];
            }
            worst = worst.max(max_diff(&evolve_series(&mg, t, &xt), &expected));
        }
        b.push(
            format!(
                "{model}: G(H) on {} vertices, cluster of {}, 1'z = {:.9}",
                inst.attached.order(),
                inst.cluster.size(),
                inst.shift()
            ),
            "U(t)x~ = exp(i delta t 1'z) [U_H(t)x; 0] at 20 times",
            format!("max deviation {worst:.3e}"),
            worst,
            worst <= tol,
        );
    }
}

pub(super) fn complement_lemma(b: &mut Builder, s: &Settings) {
    let tol = s.tol_or(1e-8);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    for k in 0..50 {
        let model = MODELS[k % 3];
        let c = rng.random_range(2..=8);
        let h = random_inner(&mut rng, c, model, false);
        let hc = complement(&h).expect("unweighted");
        let x = random_balanced_state(&mut rng, c);
        let rate = complement_phase_rate(model, c);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let t = rng.random_range(-10.0..10.0);
            let lhs = evolve_series(&hc.matrix(model), t, &x);
            let rhs = evolve_series(&h.matrix(model), -t, &x).map(|z| z * Complex64::from_polar(1.0, rate * t));
            worst = worst.max(max_diff(&lhs, &rhs));
        }
        b.push(
            format!("{model}: H on {c} vertices with {} edges", h.edge_count()),
            "U_Hbar(t)x = exp(i(delta(c-1) - zeta)t) U_H(-t)x at 20 times",
            format!("max deviation {worst:.3e}"),
            worst,
            worst <= tol,
        );
    }
}

pub(super) fn attachment_equivalence(b: &mut Builder, s: &Settings) {
    let tol = s.tol_or(1e-8);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let c4 = WeightedGraph::cycle(4);
    let (x, y) = (pair(4, 0, 1), pair(4, 3, 2));
    for k in 0..15 {
        let model = MODELS[k % 3];
        let (sz, rest) = (rng.random_range(1..=3), rng.random_range(0..=4));
        let (base, members) = random_base_with_cluster(&mut rng, 4, sz, rest, true);
        let cluster = Cluster::from_members(&base, &members).expect("planted cluster");
        let g = attach(&AttachmentPlan::in_member_order(base, cluster.clone(), c4.clone()).expect("sizes agree"))
            .expect("independent cluster");
        let lift = |v: &RealPureState| v.lift(g.order(), &members).expect("cluster dimension");
        let (dh, dg) = (dec(&c4, model), dec(&g, model));
        let opts = SearchOptions::default();
        let h_cert = find_pst(&dh, &x, &y, &opts).expect("valid states").remove(0);
        let g_cert = find_pst(&dg, &lift(&x), &lift(&y), &opts).expect("valid states").remove(0);
        let tau = h_cert.tau.unwrap_or(f64::NAN);
        let phase_err = (g_cert.gamma - h_cert.gamma * cluster_phase(model, &cluster, tau)).norm();
        let same_time = g_cert.tau.is_some_and(|t| (t - tau).abs() < 1e-9);
        let period_h = is_periodic(&dh, &x, &opts).expect("valid state").map(|p| p.0);
        let period_g = is_periodic(&dg, &lift(&x), &opts).expect("valid state").map(|p| p.0);
        let same_period = match (period_h, period_g) {
            (Some(a), Some(b)) => (a - b).abs() < 1e-9,
            (None, None) => true,
            _ => false,
        };
        b.push(
            format!("{model}: C4 planted in a random base, G(H) on {} vertices", g.order()),
            "same PST time and period; phase times exp(i delta tau 1'z)",
            format!(
                "PST at {} vs {}, period {:?} vs {:?}",
                h_cert.tau.map_or("none".into(), |t| format!("{t:.9}")),
                g_cert.tau.map_or("none".into(), |t| format!("{t:.9}")),
                period_h,
                period_g
            ),
            phase_err.max(g_cert.residual),
            h_cert.is_pst() && g_cert.is_pst() && same_time && same_period && phase_err <= tol,
        );
    }

    for k in 0..15 {
        let model = MODELS[k % 3];
        let inst = random_cluster_instance(&mut rng, model, false);
        let c = inst.cluster.size();
        let (dh, dg) = (dec(&inst.inner, model), dec(&inst.attached, model));
        let pairs: Vec<(usize, usize)> = (0..c).flat_map(|a| (a + 1..c).map(move |b| (a, b))).collect();
        let (mut agree, mut total, mut sc) = (0, 0, 0);
        for (i, &(p, q)) in pairs.iter().enumerate() {
            for &(u, v) in &pairs[i + 1..] {
                let (xh, yh) = (pair(c, p, q), pair(c, u, v));
                let in_h = strong_cospectral(&dh, &xh, &yh).expect("valid").is_some();
                let in_g = strong_cospectral(&dg, &inst.lift(&xh), &inst.lift(&yh)).expect("valid").is_some();
                total += 1;
                sc += usize::from(in_h);
                agree += usize::from(in_h == in_g);
            }
        }
        b.push(
            format!("{model}: all pair states of a random cluster of {c} in {} vertices", inst.attached.order()),
            "strong cospectrality in H iff in G(H)",
            format!("{agree}/{total} agree ({sc} strongly cospectral)"),
            (total - agree) as f64,
            agree == total,
        );
    }
}

pub(super) fn complements(b: &mut Builder, s: &Settings) {
    let tol = s.tol_or(1e-9);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    for k in 0..12 {
        let model = MODELS[k % 3];
        let c = rng.random_range(3..=7);
        let h = random_inner(&mut rng, c, model, false);
        let hc = complement(&h).expect("unweighted");
        let (dh, dc) = (dec(&h, model), dec(&hc, model));
        let (x, y) = (random_balanced_state(&mut rng, c), random_balanced_state(&mut rng, c));
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let t = rng.random_range(0.0..20.0);
            let f = fidelity(&dh, t, &x, &y).expect("valid");
            worst = worst.max((f - fidelity(&dc, t, &x, &y).expect("valid")).abs());
        }
        let sc_same = strong_cospectral(&dh, &x, &y).expect("valid").is_some()
            == strong_cospectral(&dc, &x, &y).expect("valid").is_some();
        b.push(
            format!("{model}: H and its complement on {c} vertices"),
            "equal fidelity curves and strong cospectrality",
            format!("max fidelity gap {worst:.3e}, cospectrality agrees: {sc_same}"),
            worst,
            worst <= tol && sc_same,
        );
    }

    for k in 0..12 {
        let model = MODELS[k % 3];
        let c = rng.random_range(2..=5);
        let (sz, rest) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let (base, members) = random_base_with_cluster(&mut rng, c, sz, rest, false);
        let cluster = Cluster::from_members(&base, &members).expect("planted cluster");
        let h = random_inner(&mut rng, c, model, false);
        let gh = attach(&AttachmentPlan::in_member_order(base, cluster, h.clone()).expect("sizes agree"))
            .expect("independent cluster");
        let ghc = complement(&gh).expect("unweighted");
        let (x, y) = (random_balanced_state(&mut rng, c), random_balanced_state(&mut rng, c));
        let lift = |v: &RealPureState| v.lift(ghc.order(), &members).expect("cluster dimension");
        let (dh, dgc) = (dec(&h, model), dec(&ghc, model));
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let t = rng.random_range(0.0..20.0);
            let f = fidelity(&dh, t, &x, &y).expect("valid");
            worst = worst.max((f - fidelity(&dgc, t, &lift(&x), &lift(&y)).expect("valid")).abs());
        }
        b.push(
            format!("{model}: complement of G(H) on {} vertices, cluster of {c}", ghc.order()),
            "fidelity in complement of G(H) equals fidelity in H",
            format!("max fidelity gap {worst:.3e}"),
            worst,
            worst <= tol,
        );
    }

    let mut bipartite = |label: String, g: WeightedGraph, x: RealPureState, y: RealPureState, models: &[HamiltonianModel]| {
        let gc = complement(&g).expect("unweighted");
        for &m in models {
            for (which, graph) in [("", &g), ("complement of ", &gc)] {
                let cert = check_pst_at(&dec(graph, m), &x, &y, FRAC_PI_2, EXACT_TOL).expect("valid");
                b.push(
                    format!("{m}: {which}{label}"),
                    "PST at 1.570796327",
                    format!("{}, arg(gamma)/pi {:.9}", cert.verdict.as_str(), cert.gamma_arg_over_pi()),
                    cert.residual,
                    cert.is_pst(),
                );
            }
        }
    };
    for (m, n) in [(4, 3), (4, 5), (5, 4), (3, 5)] {
        let mut g = WeightedGraph::complete_bipartite(m, n);
        let part: Vec<usize> = if m >= 4 { (0..m).collect() } else { (m..m + n).collect() };
        g.add_edge(part[0], part[1], 1.0).expect("non-edge inside a part");
        g.add_edge(part[2], part[3], 1.0).expect("non-edge inside a part");
        let models: &[HamiltonianModel] = if part.len() == 4 { &MODELS } else { &[HamiltonianModel::Laplacian] };
        let total = m + n;
        bipartite(
            format!("K{m},{n} plus a 2-matching in a part, pair ({},{}) -> ({},{})", part[0], part[2], part[1], part[3]),
            g,
            pair(total, part[0], part[2]),
            pair(total, part[1], part[3]),
            models,
        );
    }
    for (m, n) in [(3, 3), (3, 4), (5, 3)] {
        let mut g = WeightedGraph::complete_bipartite(m, n);
        g.add_edge(0, 1, 1.0).expect("non-edge inside a part");
        bipartite(
            format!("K{m},{n} plus one edge in a part, pair (0,2) -> (1,2)"),
            g,
            pair(m + n, 0, 2),
            pair(m + n, 1, 2),
            &[HamiltonianModel::Laplacian],
        );
    }
    let mut star = WeightedGraph::star(4);
    star.add_edge(1, 2, 1.0).expect("leaves are non-adjacent");
    bipartite(
        "K1,4 plus an edge between leaves, pair (1,3) -> (2,3)".into(),
        star,
        pair(5, 1, 3),
        pair(5, 2, 3),
        &[HamiltonianModel::Laplacian],
    );
}
