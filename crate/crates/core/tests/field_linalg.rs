use proptest::prelude::*;
use rankguard::field::{default_modulus, poly_is_irreducible};
use rankguard::linalg::{self, kernel, rank, rref, solve_left, Subspace};
use rankguard::subspaces::{enumerate_base_subspaces, gaussian_binomial, galois_closure, is_qinvariant, subfield_part};
use rankguard::{ExtElement, Field, FieldCtx, Matrix, PrimeField};

/// Schoolbook product of coefficient vectors reduced by the monic modulus.
fn poly_mulmod(q: u32, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % q;
        }
    }
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            for (k, &mk) in modulus.iter().enumerate() {
                let idx = d - m + k;
                prod[idx] = (prod[idx] + q * q - c * mk % q) % q;
            }
        }
    }
    prod.truncate(m);
    prod
}

fn f16() -> FieldCtx {
    FieldCtx::binary(4).unwrap()
}

#[test]
fn multiplication_matches_schoolbook_everywhere() {
    for (q, m, modulus) in [(2, 4, vec![1, 1, 0, 0, 1]), (2, 5, vec![1, 0, 1, 0, 0, 1]), (3, 2, vec![1, 0, 1]), (5, 2, vec![2, 0, 1])] {
        let ctx = FieldCtx::new(q, m, &modulus).unwrap();
        for a in ctx.elements() {
            for b in ctx.elements() {
                let want = poly_mulmod(q, &ctx.coeffs(a), &ctx.coeffs(b), &modulus);
                assert_eq!(ctx.coeffs(ctx.mul(a, b)), want, "q={q} m={m}");
            }
        }
    }
}

#[test]
fn irreducible_counts_match_necklace_formula() {
    // Monic irreducible polynomials over F_2 of degree 1..=6: 2, 1, 2, 3, 6, 9.
    for (deg, want) in [(1usize, 2usize), (2, 1), (3, 2), (4, 3), (5, 6), (6, 9)] {
        let count = (0..1u32 << deg)
            .filter(|low| {
                let mut f: Vec<u32> = (0..deg).map(|i| (low >> i) & 1).collect();
                f.push(1);
                poly_is_irreducible(2, &f)
            })
            .count();
        assert_eq!(count, want, "degree {deg}");
    }
    for m in 1..=16 {
        assert!(poly_is_irreducible(2, &default_modulus(2, m).unwrap()), "built-in modulus for m = {m}");
    }
}

#[test]
fn frobenius_fixes_exactly_the_base_field() {
    let ctx = FieldCtx::new(3, 2, &[1, 0, 1]).unwrap();
    let fixed: Vec<_> = ctx.elements().filter(|&a| ctx.frobenius(a, 1) == a).collect();
    assert_eq!(fixed.len(), 3);
    assert!(fixed.iter().all(|&a| ctx.is_base(a)));
    for a in ctx.elements() {
        assert_eq!(ctx.frobenius(a, 2), a);
    }
}

#[test]
fn rank_weight_agrees_with_expansion_rank() {
    let ctx = FieldCtx::new(3, 3, &[1, 2, 0, 1]).unwrap();
    let base = ctx.base();
    let mut x = vec![ExtElement::ZERO; 4];
    for seed in 0..500u32 {
        for (i, v) in x.iter_mut().enumerate() {
            *v = ctx.element((seed * 7 + i as u32 * 13) % ctx.size());
        }
        assert_eq!(ctx.rank_weight(&x), rank(&base, &linalg::expand_to_base(&ctx, &x)));
    }
}

fn elem() -> impl Strategy<Value = ExtElement> {
    (0u32..32).prop_map(ExtElement)
}

fn ext_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<ExtElement>> {
    proptest::collection::vec(0u32..16, rows * cols)
        .prop_map(move |d| Matrix::new(rows, cols, d.into_iter().map(ExtElement).collect()).unwrap())
}

proptest! {
    #[test]
    fn field_axioms(a in elem(), b in elem(), c in elem()) {
        let ctx = FieldCtx::binary(5).unwrap();
        prop_assert_eq!(ctx.mul(a, ctx.mul(b, c)), ctx.mul(ctx.mul(a, b), c));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
        prop_assert_eq!(ctx.add(a, ctx.neg(a)), ExtElement::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), ctx.one());
        } else {
            prop_assert!(ctx.inv(a).is_none());
        }
        // Frobenius is additive and multiplicative.
        prop_assert_eq!(ctx.frobenius(ctx.add(a, b), 1), ctx.add(ctx.frobenius(a, 1), ctx.frobenius(b, 1)));
        prop_assert_eq!(ctx.frobenius(ctx.mul(a, b), 2), ctx.mul(ctx.frobenius(a, 2), ctx.frobenius(b, 2)));
        prop_assert_eq!(ctx.pow(a, 32), a);
    }

    #[test]
    fn rank_nullity(m in ext_matrix(3, 5)) {
        let f = f16();
        let r = rank(&f, &m);
        let k = kernel(&f, &m);
        prop_assert_eq!(r + k.rows(), 5);
        let prod = linalg::mul(&f, &m, &k.transpose()).unwrap();
        prop_assert!(prod.data().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn rref_is_idempotent(m in ext_matrix(4, 4)) {
        let f = f16();
        let e = rref(&f, &m);
        prop_assert_eq!(rref(&f, &e.matrix).matrix, e.matrix.clone());
        prop_assert_eq!(e.pivots.len(), e.rank);
    }

    #[test]
    fn modular_law(u in ext_matrix(2, 4), v in ext_matrix(3, 4)) {
        let f = f16();
        let u = Subspace::from_generators(&f, 4, &u).unwrap();
        let v = Subspace::from_generators(&f, 4, &v).unwrap();
        let s = u.sum(&f, &v).unwrap();
        let i = u.intersection(&f, &v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(s.contains(&f, &u) && u.contains(&f, &i) && v.contains(&f, &i));
    }

    #[test]
    fn dual_is_an_involution(u in ext_matrix(2, 4)) {
        let f = f16();
        let u = Subspace::from_generators(&f, 4, &u).unwrap();
        let d = u.complement(&f);
        prop_assert_eq!(d.dim() + u.dim(), 4);
        prop_assert_eq!(d.complement(&f), u);
    }

    #[test]
    fn solve_left_inverts_vec_mul(m in ext_matrix(3, 4), x in proptest::collection::vec(0u32..16, 3)) {
        let f = f16();
        let x: Vec<_> = x.into_iter().map(ExtElement).collect();
        let y = linalg::vec_mul(&f, &x, &m).unwrap();
        let sol = solve_left(&f, &m, &y).unwrap();
        prop_assert_eq!(linalg::vec_mul(&f, &sol, &m).unwrap(), y);
    }

    #[test]
    fn galois_closure_is_an_invariant_superspace(u in ext_matrix(1, 3)) {
        let ctx = f16();
        let u = Subspace::from_generators(&ctx, 3, &u).unwrap();
        let c = galois_closure(&ctx, &u);
        prop_assert!(is_qinvariant(&ctx, &c));
        prop_assert!(c.contains(&ctx, &u));
        // The invariant part of an invariant space is spanned by its base-field vectors.
        prop_assert_eq!(subfield_part(&ctx, &c).dim(), c.dim());
        prop_assert!(subfield_part(&ctx, &u).dim() <= u.dim());
    }
}

#[test]
fn inverse_roundtrip_over_prime_field() {
    let f = PrimeField::new(5).unwrap();
    let m = Matrix::from_rows(3, &[vec![1, 2, 3], vec![0, 1, 4], vec![2, 0, 1]]).unwrap();
    let inv = linalg::inverse(&f, &m).unwrap();
    assert_eq!(linalg::mul(&f, &m, &inv).unwrap(), Matrix::identity(&f, 3));
}

#[test]
fn base_subspace_counts_are_gaussian_binomials() {
    for q in [2u32, 3] {
        for n in 0..=4usize {
            for k in 0..=n {
                let got = enumerate_base_subspaces(q, n, k, 1 << 20).unwrap().count() as u128;
                assert_eq!(got, gaussian_binomial(n, k, q), "q={q} n={n} k={k}");
            }
        }
    }
    // Distinct row spaces.
    let f = PrimeField::new(2).unwrap();
    let all: Vec<_> = enumerate_base_subspaces(2, 4, 2, 1000).unwrap().collect();
    let mut canon: Vec<_> = all.iter().map(|b| rref(&f, b).basis()).collect();
    canon.sort();
    canon.dedup();
    assert_eq!(canon.len(), 35);
}

#[test]
fn subfield_part_matches_brute_force() {
    let ctx = f16();
    let gens = Matrix::new(2, 3, vec![ctx.one(), ctx.alpha(), ExtElement::ZERO, ExtElement::ZERO, ctx.one(), ctx.one()]).unwrap();
    let v = Subspace::from_generators(&ctx, 3, &gens).unwrap();
    let brute = (0..8u32)
        .map(|i| (0..3).map(|j| (i >> j) & 1).collect::<Vec<u32>>())
        .filter(|b| v.contains_vector(&ctx, &b.iter().map(|&c| ctx.embed(c)).collect::<Vec<_>>()))
        .count();
    assert_eq!(1usize << subfield_part(&ctx, &v).dim(), brute);
}
