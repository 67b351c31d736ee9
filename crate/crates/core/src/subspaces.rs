//! Enumeration of Frobenius-invariant subspaces (equivalently, base-field subspaces
//! lifted to the extension) and of coordinate subspaces.

use crate::error::{Error, Result};
use crate::field::{ExtElement, FieldCtx, PrimeField};
use crate::linalg::{BitMatrix, Matrix, Subspace};

/// Default cap on the number of subspaces a single enumeration may yield.
pub const DEFAULT_ENUM_CAP: u128 = 1_000_000;

/// Gaussian binomial coefficient [n choose k]_q.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(q.saturating_pow((n - i) as u32).saturating_sub(1));
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32).saturating_sub(1));
    }
    if num == u128::MAX {
        return u128::MAX;
    }
    num / den
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// All k-subsets of 0..n in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let cur = if k <= n { Some((0..k).collect()) } else { None };
        Combinations { n, cur }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Lazily yields the RREF basis of every i-dimensional subspace of F_q^n, ordered by
/// pivot pattern and then by free entries (first free entry most significant).
#[derive(Clone, Debug)]
pub struct BaseSubspaces {
    q: u32,
    n: usize,
    patterns: Combinations,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    exhausted_pattern: bool,
}

impl BaseSubspaces {
    fn new(q: u32, n: usize, i: usize) -> Self {
        let mut s = BaseSubspaces {
            q,
            n,
            patterns: Combinations::new(n, i),
            pivots: Vec::new(),
            free: Vec::new(),
            counter: Vec::new(),
            exhausted_pattern: true,
        };
        s.load_pattern();
        s
    }

    fn load_pattern(&mut self) {
        match self.patterns.next() {
            Some(p) => {
                self.free = p
                    .iter()
                    .enumerate()
                    .flat_map(|(r, &pc)| {
                        let p = &p;
                        (pc + 1..self.n).filter(move |c| !p.contains(c)).map(move |c| (r, c))
                    })
                    .collect();
                self.counter = vec![0; self.free.len()];
                self.pivots = p;
                self.exhausted_pattern = false;
            }
            None => self.exhausted_pattern = true,
        }
    }

    fn current(&self) -> BitMatrix {
        let mut m = Matrix::filled(self.pivots.len(), self.n, 0u32);
        for (r, &c) in self.pivots.iter().enumerate() {
            m.set(r, c, 1);
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.counter) {
            m.set(r, c, v);
        }
        m
    }

    fn advance(&mut self) {
        for d in self.counter.iter_mut().rev() {
            *d += 1;
            if *d < self.q {
                return;
            }
            *d = 0;
        }
        self.load_pattern();
    }
}

impl Iterator for BaseSubspaces {
    type Item = BitMatrix;

    fn next(&mut self) -> Option<BitMatrix> {
        if self.exhausted_pattern {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

/// Every i-dimensional subspace of F_q^n as an RREF basis.
pub fn enumerate_base_subspaces(q: u32, n: usize, i: usize, cap: u128) -> Result<BaseSubspaces> {
    if i > n {
        return Err(Error::BadDimensions(format!("subspace dimension {i} exceeds ambient {n}")));
    }
    let needed = gaussian_binomial(n, i, q);
    if needed > cap {
        return Err(Error::EnumerationTooLarge { what: format!("{i}-dim subspaces of F_{q}^{n}"), needed, cap });
    }
    Ok(BaseSubspaces::new(q, n, i))
}

/// Every subspace of F_q^n of dimension at most `max_dim`, smallest dimension first.
pub fn enumerate_base_up_to(q: u32, n: usize, max_dim: usize, cap: u128) -> Result<impl Iterator<Item = BitMatrix>> {
    let top = max_dim.min(n);
    let needed: u128 = (0..=top).map(|i| gaussian_binomial(n, i, q)).fold(0u128, |a, b| a.saturating_add(b));
    if needed > cap {
        return Err(Error::EnumerationTooLarge { what: format!("subspaces of F_{q}^{n} up to dim {top}"), needed, cap });
    }
    Ok((0..=top).flat_map(move |i| BaseSubspaces::new(q, n, i)))
}

/// The q-invariant subspaces of dimension i in F_{q^m}^n.
#[derive(Clone, Debug)]
pub struct QInvariantFamily<'a> {
    ctx: &'a FieldCtx,
    n: usize,
    i: usize,
    inner: BaseSubspaces,
}

impl<'a> QInvariantFamily<'a> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.i
    }

    /// Number of members, [n choose i]_q.
    pub fn expected_len(&self) -> u128 {
        gaussian_binomial(self.n, self.i, self.ctx.q())
    }
}

impl Iterator for QInvariantFamily<'_> {
    type Item = Subspace<ExtElement>;

    fn next(&mut self) -> Option<Self::Item> {
        let b = self.inner.next()?;
        Some(Subspace::from_rref_unchecked(self.n, b.embed(self.ctx)))
    }
}

pub fn enumerate_qinvariant(ctx: &FieldCtx, n: usize, i: usize) -> Result<QInvariantFamily<'_>> {
    enumerate_qinvariant_capped(ctx, n, i, DEFAULT_ENUM_CAP)
}

pub fn enumerate_qinvariant_capped(ctx: &FieldCtx, n: usize, i: usize, cap: u128) -> Result<QInvariantFamily<'_>> {
    let inner = enumerate_base_subspaces(ctx.q(), n, i, cap)?;
    Ok(QInvariantFamily { ctx, n, i, inner })
}

/// Coordinate subspaces E_I for |I| = i, in lexicographic order of I.
#[derive(Clone, Debug)]
pub struct CoordinateFamily {
    n: usize,
    inner: Combinations,
}

impl CoordinateFamily {
    pub fn new(n: usize, i: usize) -> Self {
        CoordinateFamily { n, inner: Combinations::new(n, i) }
    }
}

impl Iterator for CoordinateFamily {
    /// Index set I (0-based) together with the base-field basis of E_I.
    type Item = (Vec<usize>, BitMatrix);

    fn next(&mut self) -> Option<Self::Item> {
        let idx = self.inner.next()?;
        let mut m = Matrix::filled(idx.len(), self.n, 0u32);
        for (r, &c) in idx.iter().enumerate() {
            m.set(r, c, 1);
        }
        Some((idx, m))
    }
}

fn frobenius_rows(ctx: &FieldCtx, m: &Matrix<ExtElement>) -> Matrix<ExtElement> {
    m.map(|x| ctx.frobenius(x, 1))
}

/// Smallest q-invariant subspace containing V: V + V^q + … + V^{q^{m-1}}.
pub fn galois_closure(ctx: &FieldCtx, v: &Subspace<ExtElement>) -> Subspace<ExtElement> {
    let mut cur = v.clone();
    loop {
        let img = frobenius_rows(ctx, cur.basis());
        let next = Subspace::from_generators(ctx, cur.ambient(), &cur.basis().vstack(&img).expect("same width"))
            .expect("same ambient");
        if next.dim() == cur.dim() {
            return cur;
        }
        cur = next;
    }
}

/// True iff V^q = V.
pub fn is_qinvariant(ctx: &FieldCtx, v: &Subspace<ExtElement>) -> bool {
    let img = frobenius_rows(ctx, v.basis());
    (0..img.rows()).all(|r| v.contains_vector(ctx, img.row(r)))
}

/// The subspace dim_q V|F_q of vectors with base-field entries, as a base-field RREF basis.
pub fn subfield_part(ctx: &FieldCtx, v: &Subspace<ExtElement>) -> Subspace<u32> {
    // x ∈ F_q^n lies in V iff x·H^T = 0 for a parity check H of V; expand H over F_q.
    let n = v.ambient();
    let h = v.complement(ctx);
    let base = ctx.base();
    if h.dim() == 0 {
        return Subspace::full(&base, n);
    }
    let m = ctx.m();
    let mut rows = Vec::new();
    for r in 0..h.dim() {
        let exp = crate::linalg::expand_to_base(ctx, h.basis().row(r));
        for i in 0..m {
            rows.push(exp.row(i).to_vec());
        }
    }
    let constraints = Matrix::from_rows(n, &rows).expect("n columns");
    let k = crate::linalg::kernel(&base, &constraints);
    Subspace::from_generators(&base, n, &k).expect("n columns")
}

/// Lift of a base-field subspace and its complement, the pair consumed by intersection-dimension
/// computations.
pub fn lift_with_complement(ctx: &FieldCtx, basis: &BitMatrix) -> (Matrix<ExtElement>, Matrix<ExtElement>) {
    let base: PrimeField = ctx.base();
    let n = basis.cols();
    let comp = if basis.rows() == 0 {
        Matrix::identity(&base, n)
    } else {
        crate::linalg::kernel(&base, basis)
    };
    (basis.embed(ctx), comp.embed(ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn counts_match_gaussian_binomials() {
        for n in 0..=5 {
            for i in 0..=n {
                let c = enumerate_base_subspaces(2, n, i, DEFAULT_ENUM_CAP).unwrap().count() as u128;
                assert_eq!(c, gaussian_binomial(n, i, 2), "n={n} i={i}");
            }
        }
        assert_eq!(enumerate_base_subspaces(3, 3, 1, DEFAULT_ENUM_CAP).unwrap().count(), 13);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_base_subspaces(2, 10, 5, 1000),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn first_items_are_ordered() {
        let v: Vec<_> = enumerate_base_subspaces(2, 3, 1, 100).unwrap().collect();
        assert_eq!(v[0].data(), &[1, 0, 0]);
        assert_eq!(v[1].data(), &[1, 0, 1]);
        assert_eq!(v[2].data(), &[1, 1, 0]);
        assert_eq!(v[6].data(), &[0, 0, 1]);
    }

    #[test]
    fn combinations_lex() {
        let c: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(c, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn non_invariant_line() {
        let ctx = FieldCtx::binary(4).unwrap();
        let v = Subspace::from_generators(&ctx, 2, &Matrix::from_rows(2, &[vec![ctx.one(), ctx.alpha()]]).unwrap()).unwrap();
        assert!(!is_qinvariant(&ctx, &v));
        assert_eq!(galois_closure(&ctx, &v).dim(), 2);
        assert_eq!(subfield_part(&ctx, &v).dim(), 0);
    }
}
