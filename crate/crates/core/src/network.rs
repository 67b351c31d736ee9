//! The linear network channel Yᵀ = A Xᵀ + D Zᵀ with a wiretapper observing Wᵀ = B Xᵀ + F Zᵀ.
//! Base-field matrices act on extension-field packets through scalar multiplication.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::codes::space_size;
use crate::error::{Error, Result};
use crate::field::{ExtElement, Field, FieldCtx, PrimeField};
use crate::linalg::{self, BitMatrix, Matrix};
use crate::subspaces::{self, gaussian_binomial, DEFAULT_ENUM_CAP};

const REJECTION_TRIES: usize = 10_000;

/// One realisation of the network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelRealization {
    /// N×n transfer matrix.
    pub a: BitMatrix,
    /// μ×n wiretap matrix.
    pub b: BitMatrix,
    /// N×t error transfer.
    pub d: BitMatrix,
    /// μ×t error-to-wiretap transfer.
    pub fw: BitMatrix,
    /// t injected packets.
    pub z: Vec<ExtElement>,
}

impl ChannelRealization {
    /// Error-free channel with the given transfer and wiretap matrices.
    pub fn clean(a: BitMatrix, b: BitMatrix) -> Self {
        let d = Matrix::filled(a.rows(), 0, 0u32);
        let fw = Matrix::filled(b.rows(), 0, 0u32);
        ChannelRealization { a, b, d, fw, z: Vec::new() }
    }

    /// Rank deficiency n − rank(A).
    pub fn rho(&self, q: PrimeField) -> usize {
        self.a.cols() - linalg::rank(&q, &self.a)
    }
}

/// x·Mᵀ, i.e. each output coordinate is Σ_j M[i][j]·x_j.
pub fn apply_base(ctx: &FieldCtx, m: &BitMatrix, x: &[ExtElement]) -> Result<Vec<ExtElement>> {
    if m.cols() != x.len() {
        return Err(Error::DimensionMismatch(format!("{}-column matrix applied to length-{} vector", m.cols(), x.len())));
    }
    Ok((0..m.rows())
        .map(|i| {
            x.iter()
                .enumerate()
                .fold(ExtElement::ZERO, |acc, (j, &e)| ctx.add(acc, ctx.scale(m.get(i, j), e)))
        })
        .collect())
}

/// Delivers (Y, W) for packets X.
pub fn transmit(ctx: &FieldCtx, x: &[ExtElement], real: &ChannelRealization) -> Result<(Vec<ExtElement>, Vec<ExtElement>)> {
    let t = real.z.len();
    if real.d.cols() != t || real.fw.cols() != t || real.d.rows() != real.a.rows() || real.fw.rows() != real.b.rows() {
        return Err(Error::DimensionMismatch("error matrices do not match the realisation".into()));
    }
    let y = linalg::vec_add(ctx, &apply_base(ctx, &real.a, x)?, &apply_base(ctx, &real.d, &real.z)?);
    let w = linalg::vec_add(ctx, &apply_base(ctx, &real.b, x)?, &apply_base(ctx, &real.fw, &real.z)?);
    Ok((y, w))
}

/// Packet-matrix form: X is m×n, Z is m×t, returns X·Aᵀ + Z·Dᵀ (m×N).
pub fn transmit_packets(q: PrimeField, x: &BitMatrix, a: &BitMatrix, z: &BitMatrix, d: &BitMatrix) -> Result<BitMatrix> {
    let clean = linalg::mul(&q, x, &a.transpose())?;
    if z.cols() == 0 {
        return Ok(clean);
    }
    linalg::add(&q, &clean, &linalg::mul(&q, z, &d.transpose())?)
}

pub fn random_bitmatrix<R: Rng + ?Sized>(rng: &mut R, q: u32, rows: usize, cols: usize) -> BitMatrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..q)).collect();
    Matrix::new(rows, cols, data).expect("rows*cols entries")
}

pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, q: u32, n: usize) -> BitMatrix {
    let f = PrimeField::new(q).expect("prime q");
    loop {
        let m = random_bitmatrix(rng, q, n, n);
        if linalg::rank(&f, &m) == n {
            return m;
        }
    }
}

/// Uniform N×n matrix conditioned on rank ≥ n − rho_max; falls back to R·[I;0]·C after
/// repeated rejections.
pub fn sample_transfer<R: Rng + ?Sized>(rng: &mut R, q: u32, n_out: usize, n: usize, rho_max: usize) -> Result<BitMatrix> {
    let needed = n.saturating_sub(rho_max);
    if needed > n_out {
        return Err(Error::InfeasibleRank { needed, rows: n_out, cols: n });
    }
    let f = PrimeField::new(q)?;
    for _ in 0..REJECTION_TRIES {
        let a = random_bitmatrix(rng, q, n_out, n);
        if linalg::rank(&f, &a) >= needed {
            return Ok(a);
        }
    }
    let r = random_invertible(rng, q, n_out);
    let c = random_invertible(rng, q, n);
    let mut mid = Matrix::zeros(&f, n_out, n);
    for i in 0..needed {
        mid.set(i, i, 1);
    }
    linalg::mul(&f, &linalg::mul(&f, &r, &mid)?, &c)
}

/// Uniform (D, Z) with D ∈ F_q^{N×t} and t random packets.
pub fn sample_error<R: Rng + ?Sized>(rng: &mut R, ctx: &FieldCtx, n_out: usize, t: usize) -> (BitMatrix, Vec<ExtElement>) {
    let d = random_bitmatrix(rng, ctx.q(), n_out, t);
    let z = (0..t).map(|_| ExtElement(rng.gen_range(0..ctx.size()))).collect();
    (d, z)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WiretapMode {
    /// One canonical RREF matrix per row space of dimension ≤ μ.
    RowSpace,
    /// Every μ×n matrix.
    Full,
}

/// Wiretap matrices for μ tapped links.
pub fn enumerate_wiretap(q: u32, n: usize, mu: usize, mode: WiretapMode, cap: u128) -> Result<Box<dyn Iterator<Item = BitMatrix>>> {
    match mode {
        WiretapMode::RowSpace => Ok(Box::new(subspaces::enumerate_base_up_to(q, n, mu, cap)?)),
        WiretapMode::Full => {
            let needed = (q as u128).saturating_pow((mu * n) as u32);
            if needed > cap {
                return Err(Error::EnumerationTooLarge { what: format!("{mu}x{n} wiretap matrices"), needed, cap });
            }
            Ok(Box::new((0..needed).map(move |mut idx| {
                let data = (0..mu * n)
                    .map(|_| {
                        let d = (idx % q as u128) as u32;
                        idx /= q as u128;
                        d
                    })
                    .collect();
                Matrix::new(mu, n, data).expect("mu*n entries")
            })))
        }
    }
}

/// Number of error vectors of length N over F_{q^m} with rank weight ≤ t.
pub fn count_errors(ctx: &FieldCtx, n_out: usize, t: usize) -> u128 {
    let qm = ctx.size() as u128;
    let q = ctx.q() as u128;
    (0..=t.min(n_out).min(ctx.m()))
        .map(|r| {
            let frames: u128 = (0..r).map(|i| qm - q.pow(i as u32)).product();
            gaussian_binomial(n_out, r, ctx.q()).saturating_mul(frames)
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Every E ∈ F_{q^m}^N with rank weight ≤ t, each exactly once. A rank-r error factors
/// uniquely as E_j = Σ_i p_i·Q[i][j] with Q the RREF basis of the row space of its
/// expansion and p_1..p_r independent over F_q, so enumerating (Q, p) needs no dedup.
pub fn enumerate_errors(ctx: &FieldCtx, n_out: usize, t: usize, cap: u128) -> Result<Vec<Vec<ExtElement>>> {
    let needed = count_errors(ctx, n_out, t);
    if needed > cap {
        return Err(Error::EnumerationTooLarge { what: format!("errors of rank <= {t} in length {n_out}"), needed, cap });
    }
    let mut out = Vec::with_capacity(needed as usize);
    for r in 0..=t.min(n_out).min(ctx.m()) {
        let frames: Vec<Vec<ExtElement>> = (0..space_size(ctx, r))
            .map(|i| crate::codes::vector_from_index(ctx, i, r))
            .filter(|p| ctx.rank_weight(p) == r)
            .collect();
        for qm in subspaces::enumerate_base_subspaces(ctx.q(), n_out, r, DEFAULT_ENUM_CAP)? {
            for p in &frames {
                let e = (0..n_out)
                    .map(|j| {
                        p.iter()
                            .enumerate()
                            .fold(ExtElement::ZERO, |acc, (i, &pi)| ctx.add(acc, ctx.scale(qm.get(i, j), pi)))
                    })
                    .collect();
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// Seeded draws of E = D·Z with D ∈ F_q^{N×t} and Z ∈ F_{q^m}^t.
pub fn sample_errors<R: Rng + ?Sized>(rng: &mut R, ctx: &FieldCtx, n_out: usize, t: usize, count: usize) -> Vec<Vec<ExtElement>> {
    (0..count)
        .map(|_| {
            let (d, z) = sample_error(rng, ctx, n_out, t);
            apply_base(ctx, &d, &z).expect("t columns")
        })
        .collect()
}

/// Every N×n matrix of rank ≥ n − rho, one per row space: the RREF basis padded with zero rows.
/// Decoding outcomes are invariant under A ↦ R·A for invertible R (with errors mapped by R),
/// so these representatives cover all transfer matrices.
pub fn canonical_transfers(q: u32, n_out: usize, n: usize, rho: usize, cap: u128) -> Result<Vec<BitMatrix>> {
    let min_rank = n.saturating_sub(rho);
    let mut out = Vec::new();
    for r in min_rank..=n.min(n_out) {
        for b in subspaces::enumerate_base_subspaces(q, n, r, cap)? {
            let pad = Matrix::filled(n_out - r, n, 0u32);
            out.push(b.vstack(&pad)?);
        }
    }
    Ok(out)
}

/// Every N×n matrix of rank ≥ n − rho (no reduction).
pub fn all_transfers(q: u32, n_out: usize, n: usize, rho: usize, cap: u128) -> Result<Vec<BitMatrix>> {
    let f = PrimeField::new(q)?;
    let min_rank = n.saturating_sub(rho);
    let all = enumerate_wiretap(q, n, n_out, WiretapMode::Full, cap)?;
    Ok(all.filter(|a| linalg::rank(&f, a) >= min_rank).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wiretap_counts() {
        assert_eq!(enumerate_wiretap(2, 3, 1, WiretapMode::RowSpace, 1000).unwrap().count(), 8);
        assert_eq!(enumerate_wiretap(2, 2, 1, WiretapMode::Full, 1000).unwrap().count(), 4);
        assert_eq!(enumerate_wiretap(2, 3, 0, WiretapMode::RowSpace, 1000).unwrap().count(), 1);
        assert_eq!(enumerate_wiretap(2, 3, 0, WiretapMode::Full, 1000).unwrap().count(), 1);
    }

    #[test]
    fn error_counts() {
        let ctx = FieldCtx::binary(4).unwrap();
        let e = enumerate_errors(&ctx, 3, 1, 1 << 20).unwrap();
        assert_eq!(e.len(), 1 + 7 * 15);
        let ctx5 = FieldCtx::binary(5).unwrap();
        assert_eq!(count_errors(&ctx5, 4, 1), 466);
        assert_eq!(enumerate_errors(&ctx5, 3, 0, 10).unwrap(), vec![vec![ExtElement::ZERO; 3]]);
    }

    #[test]
    fn infeasible_rank() {
        let mut rng = rand::rngs::mock::StepRng::new(0, 1);
        assert!(matches!(sample_transfer(&mut rng, 2, 2, 4, 1), Err(Error::InfeasibleRank { .. })));
    }

    #[test]
    fn canonical_transfer_count() {
        assert_eq!(canonical_transfers(2, 4, 4, 4, 1000).unwrap().len(), 67);
        assert_eq!(canonical_transfers(2, 4, 4, 1, 1000).unwrap().len(), 16);
    }
}
