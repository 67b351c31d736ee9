use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankguard::codes::LinearCode;
use rankguard::coset_scheme::NestedScheme;
use rankguard::rank_metrics::gap;
use rankguard::security::{self, omega_bounds, omega_exact, partial_leakage, JointDistribution};
use rankguard::subspaces::{enumerate_base_up_to, Combinations};
use rankguard::{FieldCtx, Subspace};

const TOL: f64 = 1e-9;

fn binary(m: usize) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::binary(m).unwrap())
}

fn random_scheme(seed: u64, m: usize, n: usize, k1: usize, k2: usize) -> NestedScheme {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = binary(m);
    let c1 = LinearCode::random(ctx.clone(), n, k1, &mut rng);
    let c2 = LinearCode::from_generator(ctx, n, &c1.generator().select_rows(&(0..k2).collect::<Vec<_>>())).unwrap();
    NestedScheme::with_random_psi(c1, c2, &mut rng).unwrap()
}

#[test]
fn leakage_equals_dual_gap_for_random_schemes() {
    for seed in 0..6 {
        let s = random_scheme(seed, 3, 3, 2, 1);
        let ctx = s.ctx().clone();
        let dist = JointDistribution::uniform(&s).unwrap();
        let (c1d, c2d) = (s.c1().dual(), s.c2().dual());
        for b in enumerate_base_up_to(2, 3, 3, 1000).unwrap() {
            let v = Subspace::from_generators(&ctx.base(), 3, &b).unwrap().embed(&ctx);
            let want = gap(&c2d, &c1d, &v).unwrap() as f64;
            let got = dist.mutual_information(&b).unwrap();
            assert!((got - want).abs() < TOL, "seed {seed}: I = {got}, gap = {want}");
        }
        for mu in 0..=3 {
            let r = security::universal_equivocation(&s, &dist, mu).unwrap();
            assert!((r.max_leakage - r.predicted as f64).abs() < TOL);
        }
    }
}

#[test]
fn reference_scheme_profile() {
    // q = 2, m = 4, l = 1, n = 3, k = 2: leakage 0, 0, 1, 1 for μ = 0..3.
    let s = NestedScheme::build_proposed(binary(4), 1, 3, 2).unwrap();
    let dist = JointDistribution::uniform(&s).unwrap();
    let got: Vec<usize> = (0..=3).map(|mu| security::universal_equivocation(&s, &dist, mu).unwrap().predicted).collect();
    assert_eq!(got, vec![0, 0, 1, 1]);
    let w = rankguard::rank_metrics::rgrw(&s.c2().dual(), &s.c1().dual()).unwrap();
    assert_eq!(w.first(), 2);
}

#[test]
fn partial_subcodes_are_mrd_with_distance_growing_in_z() {
    // l = 2, n = 3, k = 3 over F_32: dim C3_Z = k − |Z| and d_R = n − k + |Z| + 1.
    let s = NestedScheme::build_proposed(binary(5), 2, 3, 3).unwrap();
    let (n, k) = (3, 3);
    for size in 1..=2 {
        for z in Combinations::new(2, size) {
            let c3 = s.partial_subcode(&z).unwrap();
            assert_eq!(c3.k(), k - size);
            assert_eq!(c3.min_rank_distance().unwrap(), Some(n - k + size + 1), "Z = {z:?}");
        }
    }
}

/// Largest ω such that every nonempty Z leaks nothing through ω − |Z| + 1 links. Wiretap
/// matrices with more than n rows see no more than n links do.
fn omega_by_definition(s: &NestedScheme, dist: &JointDistribution) -> usize {
    let l = s.l();
    let silent = |omega: usize| {
        (1..=l.min(omega + 1)).all(|size| {
            let mu = (omega + 1 - size).min(s.n());
            Combinations::new(l, size).all(|z| partial_leakage(s, dist, &z, mu).unwrap().max_leakage < TOL)
        })
    };
    let mut omega = 0;
    while silent(omega + 1) {
        omega += 1;
    }
    omega
}

#[test]
fn omega_matches_definition_and_bounds() {
    for seed in 0..4 {
        let s = random_scheme(100 + seed, 4, 3, 2, 0);
        let dist = JointDistribution::uniform(&s).unwrap();
        let exact = omega_exact(&s).unwrap().omega;
        assert_eq!(exact, omega_by_definition(&s, &dist), "seed {seed}");
        let b = omega_bounds(&s).unwrap();
        assert!(b.lower <= exact && exact <= b.upper, "{b:?} vs {exact}");
    }
    // Standard scheme with l = k = 2, n = 2: Ω = k − 1.
    let s = NestedScheme::build_proposed(binary(4), 2, 2, 2).unwrap();
    let dist = JointDistribution::uniform(&s).unwrap();
    assert_eq!(omega_exact(&s).unwrap().omega, 1);
    assert_eq!(omega_by_definition(&s, &dist), 1);
}

#[test]
fn entropy_bookkeeping() {
    let s = NestedScheme::build_proposed(binary(4), 1, 3, 2).unwrap();
    let dist = JointDistribution::uniform(&s).unwrap();
    assert!((dist.entropy_s() - 1.0).abs() < TOL);
    assert!((dist.entropy_x() - 2.0).abs() < TOL);
    assert!(dist.divergence_s().abs() < TOL && dist.divergence_x_given_s().abs() < TOL);
    let e = security::entropy_tools(&dist, None).unwrap();
    assert!(e.h_s_given_w.is_none());
}
