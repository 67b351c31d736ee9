//! Nested coset coding: a secret S is mapped to the coset S·ΔG + C2 inside C1 and a
//! random member of that coset is transmitted.

use std::sync::Arc;

use rand::Rng;

use crate::codes::{space_size, vector_from_index, LinearCode};
use crate::error::{Error, Result};
use crate::field::{ExtElement, Field, FieldCtx};
use crate::linalg::{self, BitMatrix, ExtMatrix, Matrix};

/// How the transmitted coset member is drawn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetDistribution {
    Uniform,
    /// `weights[s][c]`: unnormalised weight of the c-th element of C2 (message-index order)
    /// when the secret has index s.
    Table(Vec<Vec<u64>>),
}

#[derive(Clone, Debug)]
pub struct NestedScheme {
    c1: LinearCode,
    c2: LinearCode,
    delta_g: ExtMatrix,
    distribution: CosetDistribution,
    seed: u64,
}

impl NestedScheme {
    /// Validates C2 ⊊ C1 and that the rows of ΔG complete a basis of C2 to one of C1.
    pub fn new(c1: LinearCode, c2: LinearCode, delta_g: ExtMatrix) -> Result<Self> {
        if c1.n() != c2.n() {
            return Err(Error::AmbientMismatch(c1.n(), c2.n()));
        }
        if c2.k() >= c1.k() || !c1.contains(&c2) {
            return Err(Error::NotASubcode);
        }
        let l = c1.k() - c2.k();
        if delta_g.rows() != l || delta_g.cols() != c1.n() {
            return Err(Error::BadDimensions(format!(
                "delta_g is {}x{}, expected {l}x{}",
                delta_g.rows(),
                delta_g.cols(),
                c1.n()
            )));
        }
        let ctx = c1.ctx().clone();
        if (0..l).any(|r| !c1.contains_vector(delta_g.row(r))) {
            return Err(Error::BadDimensions("delta_g rows must lie in C1".into()));
        }
        let stacked = delta_g.vstack(c2.generator())?;
        if linalg::rank(ctx.as_ref(), &stacked) != c1.k() {
            return Err(Error::BadDimensions("delta_g rows together with C2 must span C1".into()));
        }
        Ok(NestedScheme { c1, c2, delta_g, distribution: CosetDistribution::Uniform, seed: 0 })
    }

    /// Scheme read off a systematic generator [I | P] of a length-(l+n) code: C1 and C2 are the
    /// puncturing and shortening onto the last n coordinates and ΔG is the top-right l×n block.
    pub fn from_systematic(ctx: Arc<FieldCtx>, l: usize, n: usize, g: &ExtMatrix) -> Result<Self> {
        let k = g.rows();
        if g.cols() != l + n || l == 0 || l > k {
            return Err(Error::BadDimensions(format!("need a k x (l+n) generator with 1 <= l <= k, got {k}x{} and l = {l}", g.cols())));
        }
        let d = LinearCode::from_generator(ctx, l + n, g)?;
        let tail: Vec<usize> = (l..l + n).collect();
        let c1 = d.puncture(&tail)?;
        let c2 = d.shorten(&tail)?;
        let delta_g = g.select_rows(&(0..l).collect::<Vec<_>>()).select_columns(&tail);
        Self::new(c1, c2, delta_g)
    }

    /// The construction from a systematic [l+n, k] Gabidulin code; needs m ≥ l + n.
    pub fn build_proposed(ctx: Arc<FieldCtx>, l: usize, n: usize, k: usize) -> Result<Self> {
        if !(1 <= l && l <= k && k <= n) {
            return Err(Error::BadDimensions(format!("need 1 <= l <= k <= n, got l = {l}, k = {k}, n = {n}")));
        }
        if ctx.m() < l + n {
            return Err(Error::PacketTooShort { m: ctx.m(), needed: l + n });
        }
        let d = LinearCode::gabidulin(ctx.clone(), l + n, k, None)?;
        let sys = d.systematic_form()?;
        Self::from_systematic(ctx, l, n, &sys.generator)
    }

    /// Same codes with a random coset-representative matrix.
    pub fn with_random_psi<R: Rng + ?Sized>(c1: LinearCode, c2: LinearCode, rng: &mut R) -> Result<Self> {
        let ctx = c1.ctx().clone();
        if c2.k() >= c1.k() {
            return Err(Error::NotASubcode);
        }
        let l = c1.k() - c2.k();
        loop {
            let coeffs: Vec<ExtElement> = (0..l * c1.k()).map(|_| ExtElement(rng.gen_range(0..ctx.size()))).collect();
            let mix = Matrix::new(l, c1.k(), coeffs)?;
            let dg = linalg::mul(ctx.as_ref(), &mix, c1.generator())?;
            if let Ok(s) = Self::new(c1.clone(), c2.clone(), dg) {
                return Ok(s);
            }
        }
    }

    pub fn with_distribution(mut self, d: CosetDistribution) -> Result<Self> {
        if let CosetDistribution::Table(t) = &d {
            let rows = space_size(self.ctx(), self.l());
            let cols = self.c2.num_codewords();
            if t.len() as u128 != rows || t.iter().any(|r| r.len() as u128 != cols || r.iter().all(|&w| w == 0)) {
                return Err(Error::BadDimensions(format!(
                    "coset table must be {rows} rows of {cols} weights, each row with positive mass"
                )));
            }
        }
        self.distribution = d;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.c1.ctx()
    }

    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    pub fn delta_g(&self) -> &ExtMatrix {
        &self.delta_g
    }

    pub fn distribution(&self) -> &CosetDistribution {
        &self.distribution
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n(&self) -> usize {
        self.c1.n()
    }

    pub fn l(&self) -> usize {
        self.delta_g.rows()
    }

    pub fn num_messages(&self) -> u128 {
        space_size(self.ctx(), self.l())
    }

    pub fn message(&self, index: u128) -> Vec<ExtElement> {
        vector_from_index(self.ctx(), index, self.l())
    }

    /// S·ΔG.
    pub fn coset_rep(&self, s: &[ExtElement]) -> Result<Vec<ExtElement>> {
        linalg::vec_mul(self.ctx().as_ref(), s, &self.delta_g)
    }

    /// S·ΔG plus the c-th element of C2.
    pub fn encode_with(&self, s: &[ExtElement], c2_index: u128) -> Result<Vec<ExtElement>> {
        let ctx = self.ctx().as_ref();
        let rep = self.coset_rep(s)?;
        let w = self.c2.encode(&vector_from_index(ctx, c2_index, self.c2.k()))?;
        Ok(linalg::vec_add(ctx, &rep, &w))
    }

    /// Random member of the coset of S drawn per the coset distribution.
    pub fn encode<R: Rng + ?Sized>(&self, s: &[ExtElement], rng: &mut R) -> Result<Vec<ExtElement>> {
        if s.len() != self.l() {
            return Err(Error::LengthMismatch(s.len(), self.l()));
        }
        let c = match &self.distribution {
            CosetDistribution::Uniform => rng.gen_range(0..self.c2.num_codewords()),
            CosetDistribution::Table(t) => {
                let row = &t[crate::codes::index_of_vector(self.ctx(), s) as usize];
                let total: u64 = row.iter().sum();
                let mut pick = rng.gen_range(0..total);
                let mut idx = 0;
                for (i, &w) in row.iter().enumerate() {
                    if pick < w {
                        idx = i;
                        break;
                    }
                    pick -= w;
                }
                idx as u128
            }
        };
        self.encode_with(s, c)
    }

    /// The secret whose coset contains x, or `None` when x ∉ C1.
    pub fn message_of(&self, x: &[ExtElement]) -> Option<Vec<ExtElement>> {
        let stacked = self.delta_g.vstack(self.c2.generator()).ok()?;
        let coeffs = linalg::solve_left(self.ctx().as_ref(), &stacked, x)?;
        Some(coeffs[..self.l()].to_vec())
    }

    /// Canonical representative of x + C2: x reduced against the RREF basis of C2.
    pub fn coset_label(&self, x: &[ExtElement]) -> Vec<ExtElement> {
        let ctx = self.ctx().as_ref();
        let g = self.c2.generator();
        let mut v = x.to_vec();
        for r in 0..g.rows() {
            let p = (0..g.cols()).find(|&j| !g.get(r, j).is_zero()).expect("nonzero row");
            let f = v[p];
            if !f.is_zero() {
                for (j, e) in v.iter_mut().enumerate() {
                    *e = ctx.sub(*e, ctx.mul(f, g.get(r, j)));
                }
            }
        }
        v
    }

    /// C2 plus the rows of ΔG whose index (0-based) is not in `zidx`.
    pub fn partial_subcode(&self, zidx: &[usize]) -> Result<LinearCode> {
        if let Some(&i) = zidx.iter().find(|&&i| i >= self.l()) {
            return Err(Error::IndexOutOfRange { index: i, len: self.l() });
        }
        let rest: Vec<usize> = (0..self.l()).filter(|i| !zidx.contains(i)).collect();
        let rows = self.delta_g.select_rows(&rest).vstack(self.c2.generator())?;
        LinearCode::from_generator(self.ctx().clone(), self.n(), &rows)
    }

    /// The length-(l+n) code {[S, X]} with generator [I | ΔG ; 0 | G2].
    pub fn lengthened_code(&self) -> Result<LinearCode> {
        let ctx = self.ctx().as_ref();
        let l = self.l();
        let top = Matrix::identity(ctx, l).hstack(&self.delta_g)?;
        let g2 = self.c2.generator();
        let bottom = Matrix::zeros(ctx, g2.rows(), l).hstack(g2)?;
        LinearCode::from_generator(self.ctx().clone(), l + self.n(), &top.vstack(&bottom)?)
    }

    /// Puncturing and shortening of the lengthened code at secret coordinate i (0-based).
    pub fn bound_codes(&self, i: usize) -> Result<(LinearCode, LinearCode)> {
        if i >= self.l() {
            return Err(Error::IndexOutOfRange { index: i, len: self.l() });
        }
        let c = self.lengthened_code()?;
        let keep: Vec<usize> = (0..c.n()).filter(|&j| j != i).collect();
        Ok((c.puncture(&keep)?, c.shorten(&keep)?))
    }
}

/// A scheme over F_{q^{m̃}} whose packets carry an n×n identity header, giving (m̃ + n)×n
/// base-field packet matrices.
#[derive(Clone, Debug)]
pub struct LiftedScheme {
    inner: NestedScheme,
    m: usize,
}

pub fn lift(inner: NestedScheme, target_m: usize) -> Result<LiftedScheme> {
    let expected = inner.ctx().m() + inner.n();
    if target_m != expected {
        return Err(Error::DegreeMismatch { expected, got: target_m });
    }
    Ok(LiftedScheme { inner, m: target_m })
}

impl LiftedScheme {
    pub fn inner(&self) -> &NestedScheme {
        &self.inner
    }

    /// Total packet length m̃ + n.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    /// [I; φ(x̃)] for an inner codeword x̃.
    pub fn lift_packet(&self, x: &[ExtElement]) -> BitMatrix {
        let ctx = self.inner.ctx();
        let n = self.n();
        let header = Matrix::identity(&ctx.base(), n);
        header.vstack(&linalg::expand_to_base(ctx, x)).expect("n columns")
    }

    pub fn lift_encode<R: Rng + ?Sized>(&self, s: &[ExtElement], rng: &mut R) -> Result<BitMatrix> {
        Ok(self.lift_packet(&self.inner.encode(s, rng)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::base_rank;

    #[test]
    fn proposed_dimensions() {
        let ctx = Arc::new(FieldCtx::binary(4).unwrap());
        let s = NestedScheme::build_proposed(ctx, 1, 3, 2).unwrap();
        assert_eq!((s.c1().k(), s.c2().k(), s.l()), (2, 1, 1));
        let ctx6 = Arc::new(FieldCtx::binary(6).unwrap());
        let s = NestedScheme::build_proposed(ctx6, 2, 4, 3).unwrap();
        assert_eq!(s.c2().k(), 1);
    }

    #[test]
    fn short_packets_rejected() {
        let ctx = Arc::new(FieldCtx::binary(3).unwrap());
        assert_eq!(
            NestedScheme::build_proposed(ctx, 1, 3, 2).unwrap_err(),
            Error::PacketTooShort { m: 3, needed: 4 }
        );
    }

    #[test]
    fn zero_secret_lands_in_c2() {
        let ctx = Arc::new(FieldCtx::binary(4).unwrap());
        let s = NestedScheme::build_proposed(ctx, 1, 3, 2).unwrap();
        let mut rng = rand::rngs::mock::StepRng::new(3, 7);
        let x = s.encode(&[ExtElement::ZERO], &mut rng).unwrap();
        assert!(s.c2().contains_vector(&x));
        assert_eq!(s.message_of(&x), Some(vec![ExtElement::ZERO]));
    }

    #[test]
    fn lifted_header() {
        let ctx = Arc::new(FieldCtx::binary(4).unwrap());
        let s = NestedScheme::build_proposed(ctx, 1, 3, 1).unwrap();
        assert!(matches!(lift(s.clone(), 6), Err(Error::DegreeMismatch { expected: 7, got: 6 })));
        let ls = lift(s, 7).unwrap();
        let p = ls.lift_packet(&[ExtElement::ZERO; 3]);
        assert_eq!(p.rows(), 7);
        assert_eq!(base_rank(ls.inner().ctx().base(), &p), 3);
    }
}
