use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};
use pairwalk_core::coherent::{extract_permutation, s_pair_transfer, PERMUTATION_TOL};
use pairwalk_core::construct::{
    attach, blow_up, cartesian, complement, edge_corona, join, lexicographic, neighborhood_corona, sequential_join,
    vertex_corona, AttachmentPlan, CoronaIndex,
};
use pairwalk_core::random::{random_base_with_cluster, random_cluster_instance, random_graph, random_inner};
use pairwalk_core::spectral::{evolve, fidelity, support};
use pairwalk_core::transfer::{check_pst_at, cluster_phase, find_pst, strong_cospectral, SearchOptions, EXACT_TOL};
use pairwalk_core::{detect_clusters, Cluster, Complex64, HamiltonianModel, RealPureState, SpectralDecomposition, WeightedGraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODELS: [HamiltonianModel; 3] = HamiltonianModel::ALL;

fn dec(g: &WeightedGraph, m: HamiltonianModel) -> SpectralDecomposition {
    SpectralDecomposition::of_graph(g, m).unwrap()
}

fn pair(n: usize, a: usize, b: usize) -> RealPureState {
    RealPureState::pair(n, a, b).unwrap()
}

fn model_strategy() -> impl Strategy<Value = HamiltonianModel> {
    prop_oneof![
        Just(HamiltonianModel::Adjacency),
        Just(HamiltonianModel::Laplacian),
        Just(HamiltonianModel::SignlessLaplacian)
    ]
}

fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
}

fn relabeled(g: &WeightedGraph, perm: &[usize]) -> WeightedGraph {
    WeightedGraph::from_edges(g.order(), g.edges().map(|(u, v, w)| (perm[u], perm[v], w))).unwrap()
}

fn inner_pairs(c: usize) -> Vec<(usize, usize)> {
    (0..c).flat_map(|a| (a + 1..c).map(move |b| (a, b))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cluster_block_powers(seed in any::<u64>(), model in model_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_cluster_instance(&mut rng, model, true);
        let c = inst.cluster.size();
        let x = pairwalk_core::random::random_balanced_state(&mut rng, c);
        let xt = inst.lift(&x);
        let mg = inst.attached.matrix(model);
        let shifted = inst.inner.matrix(model) + DMatrix::identity(c, c) * (f64::from(model.delta()) * inst.shift());
        let mut lhs = xt.vector().clone();
        let mut rhs = x.vector().clone();
        for _ in 1..=6 {
            lhs = &mg * lhs;
            rhs = &shifted * rhs;
            let mut padded = DVector::zeros(inst.attached.order());
            for (i, &v) in inst.cluster.members.iter().enumerate() {
                padded[v] = rhs[i];
            }
            let scale = padded.amax().max(1.0);
            prop_assert!((&lhs - &padded).amax() <= 1e-9 * scale);
        }
    }

    #[test]
    fn support_shifts_by_cluster_weight(seed in any::<u64>(), model in model_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_cluster_instance(&mut rng, model, true);
        let x = pairwalk_core::random::random_balanced_state(&mut rng, inst.cluster.size());
        let inner = support(&dec(&inst.inner, model), &x).unwrap().eigenvalues();
        let outer = support(&dec(&inst.attached, model), &inst.lift(&x)).unwrap().eigenvalues();
        let shift = f64::from(model.delta()) * inst.shift();
        prop_assert_eq!(inner.len(), outer.len());
        for (a, b) in inner.iter().zip(&outer) {
            prop_assert!((a + shift - b).abs() < 1e-7, "{inner:?} + {shift} vs {outer:?}");
        }
    }

    #[test]
    fn strong_cospectrality_survives_attachment(seed in any::<u64>(), model in model_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_cluster_instance(&mut rng, model, false);
        let c = inst.cluster.size();
        let (dh, dg) = (dec(&inst.inner, model), dec(&inst.attached, model));
        let pairs = inner_pairs(c);
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for &(p, q) in &pairs[i + 1..] {
                let (x, y) = (pair(c, a, b), pair(c, p, q));
                let in_h = strong_cospectral(&dh, &x, &y).unwrap().is_some();
                let in_g = strong_cospectral(&dg, &inst.lift(&x), &inst.lift(&y)).unwrap().is_some();
                prop_assert_eq!(in_h, in_g);
            }
        }
    }

    #[test]
    fn planted_transfer_keeps_time_and_shifts_phase(seed in any::<u64>(), model in model_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = rng.random_range(1..=3);
        let r = rng.random_range(0..=4);
        let (base, members) = random_base_with_cluster(&mut rng, 4, s, r, true);
        let cluster = Cluster::from_members(&base, &members).unwrap();
        let plan = AttachmentPlan::in_member_order(base, cluster.clone(), WeightedGraph::cycle(4)).unwrap();
        let g = attach(&plan).unwrap();
        let (x, y) = (pair(4, 0, 1), pair(4, 3, 2));
        let lift = |v: &RealPureState| v.lift(g.order(), &members).unwrap();
        let h_cert = &find_pst(&dec(&WeightedGraph::cycle(4), model), &x, &y, &SearchOptions::default()).unwrap()[0];
        let g_cert = check_pst_at(&dec(&g, model), &lift(&x), &lift(&y), h_cert.tau.unwrap(), EXACT_TOL).unwrap();
        prop_assert!(h_cert.is_pst() && g_cert.is_pst());
        let expected = h_cert.gamma * cluster_phase(model, &cluster, h_cert.tau.unwrap());
        prop_assert!((g_cert.gamma - expected).norm() < 1e-8);
    }

    #[test]
    fn complement_preserves_fidelity(seed in any::<u64>(), model in model_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = rng.random_range(3..=7);
        let h = random_inner(&mut rng, c, model, false);
        let hc = complement(&h).unwrap();
        let (dh, dc) = (dec(&h, model), dec(&hc, model));
        let x = pairwalk_core::random::random_balanced_state(&mut rng, c);
        let y = pairwalk_core::random::random_balanced_state(&mut rng, c);
        for _ in 0..10 {
            let t = rng.random_range(0.0..20.0);
            let f = fidelity(&dh, t, &x, &y).unwrap();
            prop_assert!((f - fidelity(&dc, t, &x, &y).unwrap()).abs() < 1e-9);
        }
        prop_assert_eq!(
            strong_cospectral(&dh, &x, &y).unwrap().is_some(),
            strong_cospectral(&dc, &x, &y).unwrap().is_some()
        );
    }

    #[test]
    fn complement_of_attachment_is_attachment_of_complement(seed in any::<u64>(), model in model_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = rng.random_range(2..=5);
        let s = rng.random_range(1..=3);
        let r = rng.random_range(1..=3);
        let (base, members) = random_base_with_cluster(&mut rng, c, s, r, false);
        let cluster = Cluster::from_members(&base, &members).unwrap();
        let h = random_inner(&mut rng, c, model, false);
        let gh = attach(&AttachmentPlan::in_member_order(base.clone(), cluster, h.clone()).unwrap()).unwrap();

        let mut tilde = complement(&base).unwrap();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                tilde.remove_edge(u, v);
            }
        }
        let tilde_cluster = Cluster::from_members(&tilde, &members).unwrap();
        let hc = complement(&h).unwrap();
        let rebuilt = attach(&AttachmentPlan::in_member_order(tilde, tilde_cluster, hc.clone()).unwrap()).unwrap();
        let gh_c = complement(&gh).unwrap();
        prop_assert_eq!(&rebuilt, &gh_c);

        let x = pairwalk_core::random::random_balanced_state(&mut rng, c);
        let y = pairwalk_core::random::random_balanced_state(&mut rng, c);
        let lift = |v: &RealPureState| v.lift(gh_c.order(), &members).unwrap();
        let (dh, dgc) = (dec(&h, model), dec(&gh_c, model));
        for _ in 0..10 {
            let t = rng.random_range(0.0..20.0);
            let f = fidelity(&dh, t, &x, &y).unwrap();
            prop_assert!((f - fidelity(&dgc, t, &lift(&x), &lift(&y)).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn cartesian_transition_factorizes(seed in any::<u64>(), model in model_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (ng, nk) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let g = random_graph(&mut rng, ng, 0.6, true);
        let k = random_graph(&mut rng, nk, 0.6, true);
        let p = cartesian(&g, &k);
        let t = rng.random_range(-5.0..5.0);
        let lhs = dec(&p, model).transition_matrix(t);
        let rhs = dec(&g, model).transition_matrix(t).kronecker(&dec(&k, model).transition_matrix(t));
        prop_assert!(max_diff(&lhs, &rhs) < 1e-9);
    }

    #[test]
    fn uniform_blow_up_is_lexicographic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(1..=5);
        let g = random_graph(&mut rng, n, 0.5, false);
        let c = rng.random_range(1..=4);
        let h = random_graph(&mut rng, c, 0.5, false);
        let copies = vec![h.clone(); g.order()];
        prop_assert_eq!(blow_up(&g, c, &copies).unwrap(), lexicographic(&g, &h));
    }

    #[test]
    fn cluster_detection_commutes_with_relabeling(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = rng.random_range(2..=4);
        let (s, r) = (rng.random_range(1..=3), rng.random_range(0..=3));
        let (g, _) = random_base_with_cluster(&mut rng, c, s, r, true);
        let mut perm: Vec<usize> = (0..g.order()).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let mut mapped: Vec<Vec<usize>> = detect_clusters(&g)
            .into_iter()
            .map(|cl| {
                let mut m: Vec<usize> = cl.members.iter().map(|&v| perm[v]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        mapped.sort();
        let mut direct: Vec<Vec<usize>> = detect_clusters(&relabeled(&g, &perm))
            .into_iter()
            .map(|cl| {
                let mut m = cl.members;
                m.sort_unstable();
                m
            })
            .collect();
        direct.sort();
        prop_assert_eq!(mapped, direct);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(1..=9);
        let g = random_graph(&mut rng, n, 0.4, seed % 2 == 0);
        prop_assert_eq!(WeightedGraph::from_json_str(&g.to_json_string()).unwrap(), g);
    }
}

#[test]
fn joins_with_c4_carry_permutation_pairs() {
    let c4 = WeightedGraph::cycle(4);
    let cert = extract_permutation(&dec(&c4, HamiltonianModel::Adjacency), FRAC_PI_2, PERMUTATION_TOL)
        .unwrap()
        .unwrap();
    let k2bar = WeightedGraph::empty(2);
    let outers = [WeightedGraph::empty(1), k2bar, WeightedGraph::complete(2)];
    for outer in &outers {
        let g = join(&c4, outer);
        let n = g.order();
        for m in MODELS {
            let d = dec(&g, m);
            for (a, b) in inner_pairs(4) {
                if cert.perm[a] == b {
                    continue;
                }
                let x = pair(n, a, b);
                let y = pair(n, cert.perm[a], cert.perm[b]);
                let c = check_pst_at(&d, &x, &y, FRAC_PI_2, EXACT_TOL).unwrap();
                assert!(c.is_pst(), "{m} join with {} vertices, pair ({a},{b})", outer.order());
            }
        }
    }
}

#[test]
fn s_pairs_on_c4_for_many_coefficients() {
    let c4 = WeightedGraph::cycle(4);
    for m in MODELS {
        let d = dec(&c4, m);
        let cert = extract_permutation(&d, FRAC_PI_2, PERMUTATION_TOL).unwrap().unwrap();
        for s in [1.0, -1.0, 2.0, -2.0, 0.5, 3.0] {
            let (x, y) = s_pair_transfer(&cert, 0, 1, s).unwrap();
            let out = evolve(&d, FRAC_PI_2, &x).unwrap();
            let want = y.vector().map(|v| cert.gamma * v);
            let err = (out - want).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(err < 1e-10, "{m} s={s}");
        }
    }
}

#[test]
fn coronas_carry_c4_transfer_in_every_copy() {
    let c4 = WeightedGraph::cycle(4);
    let p3 = WeightedGraph::path(3);
    let (x, y) = (pair(4, 0, 1), pair(4, 3, 2));
    let graphs = [
        (vertex_corona(&p3, &c4), 3),
        (edge_corona(&p3, &c4), p3.edge_count()),
        (neighborhood_corona(&p3, &c4), 3),
    ];
    for (g, copies) in &graphs {
        let idx = CoronaIndex {
            base: 3,
            copy_size: 4,
        };
        for m in MODELS {
            let d = dec(g, m);
            for copy in 0..*copies {
                let members = idx.copy_vertices(copy);
                let xt = x.lift(g.order(), &members).unwrap();
                let yt = y.lift(g.order(), &members).unwrap();
                assert!(check_pst_at(&d, &xt, &yt, FRAC_PI_2, EXACT_TOL).unwrap().is_pst());
            }
        }
    }
}

#[test]
fn sequential_join_lengths_keep_transfer() {
    for len in 0..5 {
        let mut parts = vec![WeightedGraph::complete(1), WeightedGraph::cycle(4)];
        parts.extend(std::iter::repeat_with(|| WeightedGraph::complete(1)).take(len));
        let g = sequential_join(&parts).unwrap();
        let n = g.order();
        for m in MODELS {
            let c = check_pst_at(&dec(&g, m), &pair(n, 1, 2), &pair(n, 4, 3), FRAC_PI_2, EXACT_TOL).unwrap();
            assert!(c.is_pst(), "{m} length {len}");
        }
    }
}
