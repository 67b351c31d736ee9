//! Linear codes over F_{q^m}, stored by their RREF generator.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{ExtElement, FieldCtx};
use crate::linalg::{self, ExtMatrix, Matrix, Subspace};

/// Default cap on the number of codewords an exhaustive scan may visit.
pub const DEFAULT_CODEWORD_CAP: u128 = 1 << 20;

/// An [n, k] linear code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    ctx: Arc<FieldCtx>,
    n: usize,
    gen: ExtMatrix,
}

/// `generator = [I | parity]`, and `transform · (input generator) = generator`.
#[derive(Clone, Debug)]
pub struct SystematicForm {
    pub generator: ExtMatrix,
    pub parity: ExtMatrix,
    pub transform: ExtMatrix,
}

/// Vector of length `len` whose entries are the base-(q^m) digits of `idx`, least significant first.
pub fn vector_from_index(ctx: &FieldCtx, mut idx: u128, len: usize) -> Vec<ExtElement> {
    let s = ctx.size() as u128;
    (0..len)
        .map(|_| {
            let e = ExtElement((idx % s) as u32);
            idx /= s;
            e
        })
        .collect()
}

pub fn index_of_vector(ctx: &FieldCtx, v: &[ExtElement]) -> u128 {
    let s = ctx.size() as u128;
    v.iter().rev().fold(0u128, |acc, e| acc * s + e.0 as u128)
}

/// (q^m)^len, saturating.
pub fn space_size(ctx: &FieldCtx, len: usize) -> u128 {
    (ctx.size() as u128).saturating_pow(len as u32)
}

/// The raw Gabidulin generator with rows g_j^{q^i}.
pub fn gabidulin_generator(ctx: &FieldCtx, k: usize, points: &[ExtElement]) -> ExtMatrix {
    let n = points.len();
    let mut g = Matrix::zeros(ctx, k, n);
    for i in 0..k {
        for (j, &p) in points.iter().enumerate() {
            g.set(i, j, ctx.frobenius(p, i));
        }
    }
    g
}

/// 1, α, …, α^{n-1}.
pub fn default_points(ctx: &FieldCtx, n: usize) -> Vec<ExtElement> {
    let a = ctx.alpha();
    (0..n).map(|i| ctx.pow(a, i as u64)).collect()
}

/// Brings a full-rank k×n generator to [I | P] without permuting columns.
pub fn systematize(ctx: &FieldCtx, g: &ExtMatrix) -> Result<SystematicForm> {
    let k = g.rows();
    let head = g.select_columns(&(0..k).collect::<Vec<_>>());
    let transform = linalg::inverse(ctx, &head).ok_or(Error::NotSystematizable { k })?;
    let generator = linalg::mul(ctx, &transform, g)?;
    let parity = generator.select_columns(&(k..g.cols()).collect::<Vec<_>>());
    Ok(SystematicForm { generator, parity, transform })
}

impl LinearCode {
    /// Code spanned by the rows of `gen`; dependent rows are allowed and dropped.
    pub fn from_generator(ctx: Arc<FieldCtx>, n: usize, gen: &ExtMatrix) -> Result<Self> {
        let s = Subspace::from_generators(ctx.as_ref(), n, gen)?;
        Ok(LinearCode { ctx, n, gen: s.basis().clone() })
    }

    pub fn from_subspace(ctx: Arc<FieldCtx>, s: &Subspace<ExtElement>) -> Self {
        LinearCode { ctx, n: s.ambient(), gen: s.basis().clone() }
    }

    pub fn zero(ctx: Arc<FieldCtx>, n: usize) -> Self {
        LinearCode { n, gen: Matrix::zeros(ctx.as_ref(), 0, n), ctx }
    }

    pub fn full(ctx: Arc<FieldCtx>, n: usize) -> Self {
        LinearCode { n, gen: Matrix::identity(ctx.as_ref(), n), ctx }
    }

    /// The [n, k] Gabidulin code; `points` default to 1, α, …, α^{n-1}.
    pub fn gabidulin(ctx: Arc<FieldCtx>, n: usize, k: usize, points: Option<&[ExtElement]>) -> Result<Self> {
        if ctx.m() < n {
            return Err(Error::DegreeTooSmall { m: ctx.m(), n });
        }
        if k == 0 || k > n {
            return Err(Error::BadDimensions(format!("Gabidulin dimension k = {k} must lie in 1..={n}")));
        }
        let pts = match points {
            Some(p) => p.to_vec(),
            None => default_points(&ctx, n),
        };
        if pts.len() != n {
            return Err(Error::LengthMismatch(pts.len(), n));
        }
        if ctx.rank_weight(&pts) != n {
            return Err(Error::DependentPoints);
        }
        let g = gabidulin_generator(&ctx, k, &pts);
        Self::from_generator(ctx, n, &g)
    }

    /// Uniformly random generator of rank k (rejection on rank).
    pub fn random<R: Rng + ?Sized>(ctx: Arc<FieldCtx>, n: usize, k: usize, rng: &mut R) -> Self {
        assert!(k <= n);
        loop {
            let data = (0..k * n).map(|_| ExtElement(rng.gen_range(0..ctx.size()))).collect();
            let g = Matrix::new(k, n, data).expect("k*n entries");
            if linalg::rank(ctx.as_ref(), &g) == k {
                return Self::from_generator(ctx, n, &g).expect("n columns");
            }
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    /// Canonical (RREF) generator.
    pub fn generator(&self) -> &ExtMatrix {
        &self.gen
    }

    pub fn as_subspace(&self) -> Subspace<ExtElement> {
        Subspace::from_rref_unchecked(self.n, self.gen.clone())
    }

    pub fn systematic_form(&self) -> Result<SystematicForm> {
        systematize(&self.ctx, &self.gen)
    }

    pub fn dual(&self) -> LinearCode {
        let s = self.as_subspace().complement(self.ctx.as_ref());
        LinearCode::from_subspace(self.ctx.clone(), &s)
    }

    /// A parity-check matrix (generator of the dual).
    pub fn parity_check(&self) -> ExtMatrix {
        self.dual().gen
    }

    fn check_indices(&self, keep: &[usize]) -> Result<()> {
        if let Some(&i) = keep.iter().find(|&&i| i >= self.n) {
            return Err(Error::IndexOutOfRange { index: i, len: self.n });
        }
        Ok(())
    }

    /// Restriction of every codeword to `keep` (0-based, in the given order).
    pub fn puncture(&self, keep: &[usize]) -> Result<LinearCode> {
        if keep.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        self.check_indices(keep)?;
        LinearCode::from_generator(self.ctx.clone(), keep.len(), &self.gen.select_columns(keep))
    }

    /// Codewords vanishing outside `keep`, restricted to `keep`.
    pub fn shorten(&self, keep: &[usize]) -> Result<LinearCode> {
        self.check_indices(keep)?;
        let outside: Vec<usize> = (0..self.n).filter(|i| !keep.contains(i)).collect();
        if self.k() == 0 {
            return Ok(LinearCode::zero(self.ctx.clone(), keep.len()));
        }
        let msgs = if outside.is_empty() {
            Matrix::identity(self.ctx.as_ref(), self.k())
        } else {
            // u with u·G_out = 0
            linalg::kernel(self.ctx.as_ref(), &self.gen.select_columns(&outside).transpose())
        };
        if msgs.rows() == 0 {
            return Ok(LinearCode::zero(self.ctx.clone(), keep.len()));
        }
        let words = linalg::mul(self.ctx.as_ref(), &msgs, &self.gen)?;
        LinearCode::from_generator(self.ctx.clone(), keep.len(), &words.select_columns(keep))
    }

    /// Code spanned by both.
    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        let s = self.as_subspace().sum(self.ctx.as_ref(), &other.as_subspace())?;
        Ok(LinearCode::from_subspace(self.ctx.clone(), &s))
    }

    pub fn intersection(&self, other: &LinearCode) -> Result<LinearCode> {
        let s = self.as_subspace().intersection(self.ctx.as_ref(), &other.as_subspace())?;
        Ok(LinearCode::from_subspace(self.ctx.clone(), &s))
    }

    pub fn contains_vector(&self, v: &[ExtElement]) -> bool {
        self.as_subspace().contains_vector(self.ctx.as_ref(), v)
    }

    /// True when `other` ⊆ `self`.
    pub fn contains(&self, other: &LinearCode) -> bool {
        self.as_subspace().contains(self.ctx.as_ref(), &other.as_subspace())
    }

    /// Basis of C ∩ F_q^n.
    pub fn subfield_subcode(&self) -> Subspace<u32> {
        crate::subspaces::subfield_part(&self.ctx, &self.as_subspace())
    }

    pub fn encode(&self, msg: &[ExtElement]) -> Result<Vec<ExtElement>> {
        linalg::vec_mul(self.ctx.as_ref(), msg, &self.gen)
    }

    pub fn num_codewords(&self) -> u128 {
        space_size(&self.ctx, self.k())
    }

    /// All codewords, message index order.
    pub fn codewords(&self) -> impl Iterator<Item = Vec<ExtElement>> + '_ {
        let total = self.num_codewords();
        (0..total).map(move |i| {
            let msg = vector_from_index(&self.ctx, i, self.k());
            self.encode(&msg).expect("message has length k")
        })
    }

    /// Minimum rank weight over nonzero codewords by exhaustive scan; `None` for the zero code.
    pub fn min_rank_distance(&self) -> Result<Option<usize>> {
        self.min_rank_distance_capped(DEFAULT_CODEWORD_CAP)
    }

    pub fn min_rank_distance_capped(&self, cap: u128) -> Result<Option<usize>> {
        let total = self.num_codewords();
        if total > cap {
            return Err(Error::EnumerationTooLarge { what: "codewords".into(), needed: total, cap });
        }
        let mut best: Option<usize> = None;
        for w in self.codewords().skip(1) {
            let r = self.ctx.rank_weight(&w);
            best = Some(best.map_or(r, |b| b.min(r)));
            if r == 1 {
                break;
            }
        }
        Ok(best)
    }

    /// Minimum Hamming weight over nonzero codewords by exhaustive scan.
    pub fn min_hamming_distance(&self) -> Result<Option<usize>> {
        let total = self.num_codewords();
        if total > DEFAULT_CODEWORD_CAP {
            return Err(Error::EnumerationTooLarge { what: "codewords".into(), needed: total, cap: DEFAULT_CODEWORD_CAP });
        }
        Ok(self.codewords().skip(1).map(|w| w.iter().filter(|e| !e.is_zero()).count()).min())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f16() -> Arc<FieldCtx> {
        Arc::new(FieldCtx::binary(4).unwrap())
    }

    #[test]
    fn gabidulin_full_length() {
        let c = LinearCode::gabidulin(f16(), 4, 4, None).unwrap();
        assert_eq!(c, LinearCode::full(f16(), 4));
        assert_eq!(c.min_rank_distance().unwrap(), Some(1));
    }

    #[test]
    fn gabidulin_rejects_short_field() {
        let ctx = Arc::new(FieldCtx::binary(3).unwrap());
        assert_eq!(LinearCode::gabidulin(ctx, 4, 2, None), Err(Error::DegreeTooSmall { m: 3, n: 4 }));
    }

    #[test]
    fn gabidulin_rejects_dependent_points() {
        let ctx = f16();
        let pts = [ExtElement(1), ExtElement(2), ExtElement(3)];
        assert_eq!(LinearCode::gabidulin(ctx, 3, 1, Some(&pts)), Err(Error::DependentPoints));
    }

    #[test]
    fn shorten_binary_example() {
        // {000, 110, 101, 011} over F_2 shortened to the last two coordinates
        let ctx = Arc::new(FieldCtx::new(2, 1, &[1, 1]).unwrap());
        let one = ExtElement::ONE;
        let z = ExtElement::ZERO;
        let g = Matrix::from_rows(3, &[vec![one, one, z], vec![one, z, one]]).unwrap();
        let c = LinearCode::from_generator(ctx.clone(), 3, &g).unwrap();
        let s = c.shorten(&[1, 2]).unwrap();
        let words: Vec<_> = s.codewords().collect();
        assert_eq!(words, vec![vec![z, z], vec![one, one]]);
    }

    #[test]
    fn systematic_rejects_zero_column() {
        let ctx = f16();
        let z = ExtElement::ZERO;
        let g = Matrix::from_rows(3, &[vec![z, ExtElement(1), ExtElement(2)]]).unwrap();
        assert_eq!(systematize(&ctx, &g).unwrap_err(), Error::NotSystematizable { k: 1 });
    }

    #[test]
    fn puncture_empty() {
        let c = LinearCode::full(f16(), 3);
        assert_eq!(c.puncture(&[]), Err(Error::EmptyIndexSet));
        assert_eq!(c.puncture(&[0, 1, 2]).unwrap(), c);
        assert_eq!(c.shorten(&[0, 1, 2]).unwrap(), c);
    }
}
