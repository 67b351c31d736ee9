use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankguard::codes::{systematize, LinearCode};
use rankguard::rank_metrics::{first_rgrw_by_weights, rdip, rdlp, rghw, rgrw, rgrw_direct, verify_bounds};
use rankguard::{Error, ExtElement, Field, FieldCtx, Matrix};

fn binary(m: usize) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::binary(m).unwrap())
}

fn subcode<R: Rng>(c1: &LinearCode, dim: usize, rng: &mut R) -> LinearCode {
    let ctx = c1.ctx().clone();
    loop {
        let rows: Vec<Vec<ExtElement>> = (0..dim)
            .map(|_| {
                let msg: Vec<_> = (0..c1.k()).map(|_| ExtElement(rng.gen_range(0..ctx.size()))).collect();
                c1.encode(&msg).unwrap()
            })
            .collect();
        let c2 = LinearCode::from_generator(ctx.clone(), c1.n(), &Matrix::from_rows(c1.n(), &rows).unwrap()).unwrap();
        if c2.k() == dim {
            return c2;
        }
    }
}

/// Minimum rank weight over nonzero codewords, by listing every codeword.
fn brute_min_rank(c: &LinearCode) -> usize {
    let ctx = c.ctx();
    c.codewords().filter(|w| w.iter().any(|x| !x.is_zero())).map(|w| ctx.rank_weight(&w)).min().unwrap()
}

#[test]
fn gabidulin_duals_are_mrd() {
    for (m, n, k) in [(4, 4, 1), (4, 4, 2), (4, 4, 3), (5, 3, 1), (5, 4, 2)] {
        let c = LinearCode::gabidulin(binary(m), n, k, None).unwrap();
        assert_eq!(brute_min_rank(&c), n - k + 1);
        let d = c.dual();
        assert_eq!(d.k(), n - k);
        assert_eq!(brute_min_rank(&d), k + 1, "dual of [{n},{k}] over F_2^{m}");
    }
}

#[test]
fn gabidulin_rejects_bad_inputs() {
    let ctx = binary(3);
    assert!(matches!(LinearCode::gabidulin(ctx.clone(), 4, 2, None), Err(Error::DegreeTooSmall { m: 3, n: 4 })));
    let pts = [ctx.one(), ctx.alpha(), ctx.add(ctx.one(), ctx.alpha())];
    assert_eq!(LinearCode::gabidulin(ctx.clone(), 3, 1, Some(&pts)).unwrap_err(), Error::DependentPoints);
    assert!(matches!(LinearCode::gabidulin(ctx, 3, 0, None), Err(Error::BadDimensions(_))));
}

#[test]
fn puncture_and_shorten_of_mrd_stay_mrd() {
    // A systematic [5, 3] Gabidulin code over F_32.
    let c = LinearCode::gabidulin(binary(5), 5, 3, None).unwrap();
    let p = c.puncture(&[2, 3, 4]).unwrap();
    assert_eq!(p.k(), 3);
    let s = c.shorten(&[1, 2, 3, 4]).unwrap();
    assert_eq!(s.k(), 2);
    assert_eq!(brute_min_rank(&s), 4 - 2 + 1);
    assert_eq!(c.puncture(&[]).unwrap_err(), Error::EmptyIndexSet);
    assert!(matches!(c.shorten(&[7]), Err(Error::IndexOutOfRange { index: 7, len: 5 })));
    let sys = systematize(c.ctx(), c.generator()).unwrap();
    assert_eq!(sys.generator.select_columns(&[0, 1, 2]), Matrix::identity(c.ctx().as_ref(), 3));
}

#[test]
fn min_rank_distance_matches_codeword_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let ctx = binary(rng.gen_range(2..=4));
        let n = rng.gen_range(2..=4);
        let c = LinearCode::random(ctx, n, rng.gen_range(1..=n), &mut rng);
        assert_eq!(c.min_rank_distance().unwrap(), Some(brute_min_rank(&c)));
        assert!(c.min_hamming_distance().unwrap().unwrap() >= brute_min_rank(&c));
    }
}

#[test]
fn rgrw_two_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..25 {
        let ctx = binary(rng.gen_range(2..=4));
        let n = rng.gen_range(2..=4);
        let k1 = rng.gen_range(1..=n);
        let c1 = LinearCode::random(ctx, n, k1, &mut rng);
        let c2 = subcode(&c1, rng.gen_range(0..k1), &mut rng);
        let w = rgrw(&c1, &c2).unwrap();
        assert_eq!(w, rgrw_direct(&c1, &c2).unwrap());
        assert_eq!(w.first(), first_rgrw_by_weights(&c1, &c2).unwrap());
        // Strictly increasing, and no larger than the Hamming counterpart.
        let h = rghw(&c1, &c2).unwrap();
        for i in 1..=w.len() {
            assert!(w.get(i) <= h.get(i));
            if i > 1 {
                assert!(w.get(i) > w.get(i - 1));
            }
        }
        let p = rdip(&c1, &c2).unwrap();
        assert_eq!(p.get(0), 0);
        assert_eq!(p.get(n), k1 - c2.k());
        for mu in 1..=n {
            assert!(p.get(mu) >= p.get(mu - 1) && p.get(mu) <= p.get(mu - 1) + 1);
            assert!(p.get(mu) >= rdlp(&c1, &c2).unwrap().get(mu));
        }
        let b = verify_bounds(&c1, &c2).unwrap();
        assert!(b.all_hold(), "{:?}", b.checks);
    }
}

#[test]
fn strict_subcode_required() {
    let ctx = binary(3);
    let c = LinearCode::gabidulin(ctx, 3, 2, None).unwrap();
    assert_eq!(rdip(&c, &c).unwrap_err(), Error::NotASubcode);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mrd_rgrw_ignores_the_subcode(seed in any::<u64>(), k2 in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, k1) = (4, 3);
        let c1 = LinearCode::gabidulin(binary(4), n, k1, None).unwrap();
        let c2 = subcode(&c1, k2, &mut rng);
        let w = rgrw(&c1, &c2).unwrap();
        for i in 1..=(k1 - k2) {
            prop_assert_eq!(w.get(i), n - k1 + i);
        }
    }

    #[test]
    fn duality_keeps_dimension(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let c = LinearCode::random(binary(5), n, rng.gen_range(0..=n), &mut rng);
        let d = c.dual();
        prop_assert_eq!(d.k() + c.k(), n);
        let dd = d.dual();
        prop_assert_eq!(dd.generator(), c.generator());
    }
}
