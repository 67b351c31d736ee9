//! Minimum-discrepancy decoding of nested coset codes over an adversarial network, the
//! induced distances, and exhaustive or sampled capability checks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{space_size, vector_from_index};
use crate::coset_scheme::{LiftedScheme, NestedScheme};
use crate::error::{Error, Result};
use crate::field::{ExtElement, Field, FieldCtx};
use crate::linalg::{self, base_rank, BitMatrix, Matrix};
use crate::network::{self, apply_base};
use crate::rank_metrics::first_rgrw_by_weights;

/// Cap on coset members scanned per discrepancy.
pub const COSET_CAP: u128 = 1 << 16;
/// Cap on (S, X) pairs scanned per decode.
pub const DECODE_CAP: u128 = 1 << 20;
/// Default trial budget for sampled capability checks.
pub const DEFAULT_BUDGET: u64 = 100_000;
/// Cap on trials in exhaustive mode.
pub const EXHAUSTIVE_CAP: u128 = 1 << 34;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeStatus {
    Decoded,
    Ambiguous,
    Failed,
}

impl DecodeStatus {
    pub fn name(self) -> &'static str {
        match self {
            DecodeStatus::Decoded => "decoded",
            DecodeStatus::Ambiguous => "ambiguous",
            DecodeStatus::Failed => "failed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    pub message: Option<Vec<ExtElement>>,
    pub discrepancy: usize,
    pub runner_up: Option<usize>,
}

impl DecodeResult {
    pub fn recovers(&self, s: &[ExtElement]) -> bool {
        self.status == DecodeStatus::Decoded && self.message.as_deref() == Some(s)
    }
}

/// Images under a base-field map of every coset representative and every C2 codeword.
struct Images {
    reps: Vec<Vec<ExtElement>>,
    c2: Vec<Vec<ExtElement>>,
}

fn check_caps(scheme: &NestedScheme) -> Result<()> {
    let c2 = scheme.c2().num_codewords();
    if c2 > COSET_CAP {
        return Err(Error::EnumerationTooLarge { what: "coset members".into(), needed: c2, cap: COSET_CAP });
    }
    let all = space_size(scheme.ctx(), scheme.c1().k());
    if all > DECODE_CAP {
        return Err(Error::EnumerationTooLarge { what: "codewords of C1".into(), needed: all, cap: DECODE_CAP });
    }
    Ok(())
}

fn images(scheme: &NestedScheme, a: &BitMatrix) -> Result<Images> {
    check_caps(scheme)?;
    let ctx = scheme.ctx().as_ref();
    let mut reps = Vec::with_capacity(scheme.num_messages() as usize);
    for s in 0..scheme.num_messages() {
        reps.push(apply_base(ctx, a, &scheme.coset_rep(&scheme.message(s))?)?);
    }
    let mut c2 = Vec::new();
    for w in scheme.c2().codewords() {
        c2.push(apply_base(ctx, a, &w)?);
    }
    Ok(Images { reps, c2 })
}

fn coset_discrepancy(ctx: &FieldCtx, imgs: &Images, s: usize, y: &[ExtElement]) -> usize {
    let base = linalg::vec_sub(ctx, &imgs.reps[s], y);
    imgs.c2
        .iter()
        .map(|c| ctx.rank_weight(&linalg::vec_add(ctx, &base, c)))
        .min()
        .expect("C2 contains zero")
}

fn argmin(scheme: &NestedScheme, ctx: &FieldCtx, imgs: &Images, y: &[ExtElement]) -> DecodeResult {
    let mut best = usize::MAX;
    let mut best_s = None;
    let mut ties = 0;
    let mut runner = None::<usize>;
    for s in 0..imgs.reps.len() {
        let d = coset_discrepancy(ctx, imgs, s, y);
        if d < best {
            if best != usize::MAX {
                runner = Some(best);
            }
            best = d;
            best_s = Some(s);
            ties = 1;
        } else {
            if d == best {
                ties += 1;
            }
            runner = Some(runner.map_or(d, |r| r.min(d)));
        }
    }
    match best_s {
        None => DecodeResult { status: DecodeStatus::Failed, message: None, discrepancy: 0, runner_up: None },
        Some(_) if ties > 1 => DecodeResult { status: DecodeStatus::Ambiguous, message: None, discrepancy: best, runner_up: runner },
        Some(s) => DecodeResult {
            status: DecodeStatus::Decoded,
            message: Some(scheme.message(s as u128)),
            discrepancy: best,
            runner_up: runner,
        },
    }
}

/// Δ_A(coset of S, Y) = min over members X of d_R(X·Aᵀ, Y).
pub fn discrepancy_coherent(scheme: &NestedScheme, a: &BitMatrix, y: &[ExtElement], s: &[ExtElement]) -> Result<usize> {
    check_caps(scheme)?;
    let ctx = scheme.ctx().as_ref();
    if y.len() != a.rows() {
        return Err(Error::LengthMismatch(y.len(), a.rows()));
    }
    let rep = apply_base(ctx, a, &scheme.coset_rep(s)?)?;
    let mut best = usize::MAX;
    for w in scheme.c2().codewords() {
        let x = linalg::vec_add(ctx, &rep, &apply_base(ctx, a, &w)?);
        best = best.min(ctx.rank_weight(&linalg::vec_sub(ctx, &x, y)));
    }
    Ok(best)
}

/// Coset minimising Δ_A; ties are reported as ambiguous.
pub fn decode_coherent(scheme: &NestedScheme, a: &BitMatrix, y: &[ExtElement]) -> Result<DecodeResult> {
    if y.len() != a.rows() || a.cols() != scheme.n() {
        return Err(Error::DimensionMismatch(format!("A is {}x{}, Y has length {}", a.rows(), a.cols(), y.len())));
    }
    let imgs = images(scheme, a)?;
    Ok(argmin(scheme, scheme.ctx(), &imgs, y))
}

/// δ_A = min over v ∈ C1 \ C2 of the rank weight of v·Aᵀ.
pub fn delta_distance(scheme: &NestedScheme, a: &BitMatrix) -> Result<usize> {
    let ctx = scheme.ctx().as_ref();
    let imgs = images(scheme, a)?;
    let mut best = usize::MAX;
    for rep in imgs.reps.iter().skip(1) {
        for c in &imgs.c2 {
            best = best.min(ctx.rank_weight(&linalg::vec_add(ctx, rep, c)));
        }
    }
    Ok(best)
}

/// Minimum of δ_A over n×n transfer matrices of rank ≥ n − ρ, with a minimising A.
pub fn delta_min_over_a(scheme: &NestedScheme, rho: usize) -> Result<(usize, BitMatrix)> {
    let n = scheme.n();
    let mut best: Option<(usize, BitMatrix)> = None;
    for a in network::canonical_transfers(scheme.ctx().q(), n, n, rho, crate::subspaces::DEFAULT_ENUM_CAP)? {
        let d = delta_distance(scheme, &a)?;
        if best.as_ref().is_none_or(|(b, _)| d < *b) {
            best = Some((d, a));
        }
    }
    Ok(best.expect("the identity is always admissible"))
}

/// RREF basis of the row space of the expansion of x.
fn expansion_row_space(ctx: &FieldCtx, x: &[ExtElement]) -> BitMatrix {
    linalg::rref(&ctx.base(), &linalg::expand_to_base(ctx, x)).basis()
}

/// An n_out×n matrix of rank n − ρ whose row space contains the orthogonal complement of the
/// expansion row space of v, so that v·Aᵀ loses exactly min(ρ, rank v) of its rank.
pub fn worst_case_transfer(ctx: &FieldCtx, v: &[ExtElement], rho: usize, n_out: usize) -> Result<BitMatrix> {
    let n = v.len();
    let rho = rho.min(n);
    if n_out < n - rho {
        return Err(Error::InfeasibleRank { needed: n - rho, rows: n_out, cols: n });
    }
    let base = ctx.base();
    let rv = expansion_row_space(ctx, v);
    // U: a ρ-dim subspace inside row(v), or containing it when ρ exceeds its dimension.
    let u = if rho <= rv.rows() {
        rv.select_rows(&(0..rho).collect::<Vec<_>>())
    } else {
        let mut acc = rv.clone();
        for j in 0..n {
            if acc.rows() == rho {
                break;
            }
            let mut e = Matrix::filled(1, n, 0u32);
            e.set(0, j, 1);
            let trial = acc.vstack(&e)?;
            if base_rank(base, &trial) > acc.rows() {
                acc = trial;
            }
        }
        acc
    };
    let rows = if u.rows() == 0 { Matrix::identity(&base, n) } else { linalg::kernel(&base, &u) };
    rows.vstack(&Matrix::filled(n_out - rows.rows(), n, 0u32))
}

/// Splits x into W + W′ with rank W = i and rank W′ = rank x − i, via a rank factorisation of
/// its expansion.
pub fn split_rank(ctx: &FieldCtx, x: &[ExtElement], i: usize) -> (Vec<ExtElement>, Vec<ExtElement>) {
    let e = linalg::rref(&ctx.base(), &linalg::expand_to_base(ctx, x));
    let q = e.basis();
    let mut w = vec![ExtElement::ZERO; x.len()];
    let mut w2 = vec![ExtElement::ZERO; x.len()];
    for (r, &p) in e.pivots.iter().enumerate() {
        let col = x[p];
        let target = if r < i { &mut w } else { &mut w2 };
        for (j, t) in target.iter_mut().enumerate() {
            *t = ctx.add(*t, ctx.scale(q.get(r, j), col));
        }
    }
    (w, w2)
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub a: BitMatrix,
    pub s: Vec<ExtElement>,
    pub x: Vec<ExtElement>,
    pub error: Vec<ExtElement>,
    pub y: Vec<ExtElement>,
    pub outcome: DecodeResult,
}

/// A vector of C1 \ C2 of least rank weight.
pub fn lightest_outside(scheme: &NestedScheme) -> Result<Vec<ExtElement>> {
    check_caps(scheme)?;
    let ctx = scheme.ctx().as_ref();
    let mut best: Option<(usize, Vec<ExtElement>)> = None;
    for s in 1..scheme.num_messages() {
        let rep = scheme.coset_rep(&scheme.message(s))?;
        for w in scheme.c2().codewords() {
            let v = linalg::vec_add(ctx, &rep, &w);
            let r = ctx.rank_weight(&v);
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                best = Some((r, v));
            }
        }
    }
    Ok(best.expect("l >= 1").1)
}

/// When 2t + ρ ≥ M_{R,1}(C1, C2): a transfer matrix of rank n − ρ and an error of rank ≤ t
/// that makes the decoder tie or pick the wrong coset. `None` inside the capability region.
pub fn failure_witness(scheme: &NestedScheme, t: usize, rho: usize) -> Result<Option<Counterexample>> {
    let ctx = scheme.ctx().as_ref();
    let v = lightest_outside(scheme)?;
    let d = ctx.rank_weight(&v);
    if 2 * t + rho < d {
        return Ok(None);
    }
    let n = scheme.n();
    let a = worst_case_transfer(ctx, &v, rho, n)?;
    let u = apply_base(ctx, &a, &v)?;
    let du = ctx.rank_weight(&u);
    let (w, _) = split_rank(ctx, &u, du.div_ceil(2));
    let s = vec![ExtElement::ZERO; scheme.l()];
    let x = vec![ExtElement::ZERO; n];
    let outcome = decode_coherent(scheme, &a, &w)?;
    Ok(Some(Counterexample { a, s, x, error: w.clone(), y: w, outcome }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapabilityMode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct CapabilityReport {
    pub verified: bool,
    pub trials: u64,
    pub counterexample: Option<Counterexample>,
}

/// Checks decoding success for every (or seeded random) transfer matrix of rank ≥ n − ρ,
/// secret, coset member and error of rank ≤ t, with N = n received packets.
///
/// Exhaustive mode uses one transfer matrix per row space: replacing A by R·A and the
/// error E by E·Rᵀ for invertible R leaves every discrepancy unchanged.
pub fn capability_report(scheme: &NestedScheme, t: usize, rho: usize, mode: CapabilityMode, budget: u64) -> Result<CapabilityReport> {
    let ctx = scheme.ctx().as_ref();
    let n = scheme.n();
    match mode {
        CapabilityMode::Exhaustive => {
            let transfers = network::canonical_transfers(ctx.q(), n, n, rho, crate::subspaces::DEFAULT_ENUM_CAP)?;
            let errors = network::enumerate_errors(ctx, n, t, 1 << 22)?;
            let words = space_size(ctx, scheme.c1().k());
            let total = transfers.len() as u128 * words * errors.len() as u128;
            if total > EXHAUSTIVE_CAP {
                return Err(Error::EnumerationTooLarge { what: "capability trials".into(), needed: total, cap: EXHAUSTIVE_CAP });
            }
            let per_a: Vec<Result<(u64, Option<Counterexample>)>> = transfers
                .par_iter()
                .map(|a| exhaustive_for_transfer(scheme, a, &errors))
                .collect();
            let mut trials = 0;
            let mut cex = None;
            for r in per_a {
                let (k, c) = r?;
                trials += k;
                if cex.is_none() {
                    cex = c;
                }
            }
            Ok(CapabilityReport { verified: cex.is_none(), trials, counterexample: cex })
        }
        CapabilityMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let run = trials.min(budget);
            for i in 0..run {
                let a = network::sample_transfer(&mut rng, ctx.q(), n, n, rho)?;
                let s = vector_from_index(ctx, rand::Rng::gen_range(&mut rng, 0..scheme.num_messages()), scheme.l());
                let x = scheme.encode(&s, &mut rng)?;
                let (d, z) = network::sample_error(&mut rng, ctx, n, t);
                let error = apply_base(ctx, &d, &z)?;
                let y = linalg::vec_add(ctx, &apply_base(ctx, &a, &x)?, &error);
                let outcome = decode_coherent(scheme, &a, &y)?;
                if !outcome.recovers(&s) {
                    return Ok(CapabilityReport {
                        verified: false,
                        trials: i + 1,
                        counterexample: Some(Counterexample { a, s, x, error, y, outcome }),
                    });
                }
            }
            if trials > budget {
                return Err(Error::BudgetExceeded { completed: run, requested: trials });
            }
            Ok(CapabilityReport { verified: true, trials: run, counterexample: None })
        }
    }
}

fn exhaustive_for_transfer(scheme: &NestedScheme, a: &BitMatrix, errors: &[Vec<ExtElement>]) -> Result<(u64, Option<Counterexample>)> {
    let ctx = scheme.ctx().as_ref();
    let imgs = images(scheme, a)?;
    let mut trials = 0u64;
    for s_idx in 0..imgs.reps.len() {
        for (c_idx, c) in imgs.c2.iter().enumerate() {
            let clean = linalg::vec_add(ctx, &imgs.reps[s_idx], c);
            for e in errors {
                trials += 1;
                let y = linalg::vec_add(ctx, &clean, e);
                let outcome = argmin(scheme, ctx, &imgs, &y);
                let s = scheme.message(s_idx as u128);
                if !outcome.recovers(&s) {
                    let x = scheme.encode_with(&s, c_idx as u128)?;
                    return Ok((trials, Some(Counterexample { a: a.clone(), s, x, error: e.clone(), y, outcome })));
                }
            }
        }
    }
    Ok((trials, None))
}

/// One end-to-end coherent trial: encode, transmit, decode, compare.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRow {
    pub trial: u64,
    pub rank_a: usize,
    pub error_rank: usize,
    pub secret: u128,
    pub status: DecodeStatus,
    pub discrepancy: usize,
    pub success: bool,
}

/// Seeded trials with N received packets, transfer rank ≥ n − ρ and t injected packets.
pub fn simulate(scheme: &NestedScheme, n_out: usize, t: usize, rho: usize, trials: u64, seed: u64) -> Result<Vec<TrialRow>> {
    let ctx = scheme.ctx().as_ref();
    let n = scheme.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let a = network::sample_transfer(&mut rng, ctx.q(), n_out, n, rho)?;
        let s_idx = rand::Rng::gen_range(&mut rng, 0..scheme.num_messages());
        let s = scheme.message(s_idx);
        let x = scheme.encode(&s, &mut rng)?;
        let (d, z) = network::sample_error(&mut rng, ctx, n_out, t);
        let error = apply_base(ctx, &d, &z)?;
        let y = linalg::vec_add(ctx, &apply_base(ctx, &a, &x)?, &error);
        let out = decode_coherent(scheme, &a, &y)?;
        rows.push(TrialRow {
            trial,
            rank_a: base_rank(ctx.base(), &a),
            error_rank: ctx.rank_weight(&error),
            secret: s_idx,
            status: out.status,
            discrepancy: out.discrepancy,
            success: out.recovers(&s),
        });
    }
    Ok(rows)
}

/// Exhaustive counterpart of [`simulate`]: one row per canonical transfer matrix, marked
/// successful when every secret, coset member and error of rank ≤ t decodes.
pub fn simulate_exhaustive(scheme: &NestedScheme, n_out: usize, t: usize, rho: usize) -> Result<Vec<TrialRow>> {
    let ctx = scheme.ctx().as_ref();
    let transfers = network::canonical_transfers(ctx.q(), n_out, scheme.n(), rho, crate::subspaces::DEFAULT_ENUM_CAP)?;
    let errors = network::enumerate_errors(ctx, n_out, t, 1 << 22)?;
    let per_a: Vec<Result<(u64, Option<Counterexample>)>> =
        transfers.par_iter().map(|a| exhaustive_for_transfer(scheme, a, &errors)).collect();
    let mut rows = Vec::with_capacity(transfers.len());
    for (i, (a, r)) in transfers.iter().zip(per_a).enumerate() {
        let (_, cex) = r?;
        let (status, discrepancy, error_rank, secret) = match &cex {
            Some(c) => (c.outcome.status, c.outcome.discrepancy, ctx.rank_weight(&c.error), crate::codes::index_of_vector(ctx, &c.s)),
            None => (DecodeStatus::Decoded, 0, t, 0),
        };
        rows.push(TrialRow {
            trial: i as u64,
            rank_a: base_rank(ctx.base(), a),
            error_rank,
            secret,
            status,
            discrepancy,
            success: cex.is_none(),
        });
    }
    Ok(rows)
}

pub fn trials_csv(rows: &[TrialRow]) -> String {
    let mut s = String::from("trial,rank_a,error_rank,secret,status,discrepancy,success\n");
    for r in rows {
        s += &format!("{},{},{},{},{},{},{}\n", r.trial, r.rank_a, r.error_rank, r.secret, r.status.name(), r.discrepancy, r.success);
    }
    s
}

// Noncoherent decoding of lifted packets. A received m×N matrix Y splits into the header
// rows Ŷ (first n) and payload rows Y′.

fn split_received(lifted: &LiftedScheme, y: &BitMatrix) -> Result<(BitMatrix, Vec<ExtElement>)> {
    let n = lifted.n();
    if y.rows() != lifted.m() {
        return Err(Error::DimensionMismatch(format!("received matrix has {} rows, expected {}", y.rows(), lifted.m())));
    }
    let head = y.select_rows(&(0..n).collect::<Vec<_>>());
    let payload = y.select_rows(&(n..y.rows()).collect::<Vec<_>>());
    Ok((head, linalg::collapse_from_base(lifted.inner().ctx(), &payload)?))
}

/// Δ_ρ(X̃, Y) = rank(Y′ − φ(X̃)·Ŷ) + [n − ρ − rank Y]^+; the second term does not depend on X̃.
pub fn discrepancy_noncoherent_word(lifted: &LiftedScheme, y: &BitMatrix, x: &[ExtElement], rho: usize) -> Result<usize> {
    let ctx = lifted.inner().ctx().as_ref();
    let (head, payload) = split_received(lifted, y)?;
    let pred = apply_base(ctx, &head.transpose(), x)?;
    let r = ctx.rank_weight(&linalg::vec_sub(ctx, &payload, &pred));
    let ry = base_rank(ctx.base(), y);
    Ok(r + (lifted.n() as isize - rho as isize - ry as isize).max(0) as usize)
}

/// Δ_ρ by brute force: min over every N×n matrix A of rank ≥ n − ρ of rank(Y − X·Aᵀ).
pub fn discrepancy_noncoherent_word_brute(lifted: &LiftedScheme, y: &BitMatrix, x: &[ExtElement], rho: usize) -> Result<usize> {
    let q = lifted.inner().ctx().base();
    let xp = lifted.lift_packet(x);
    let mut best = usize::MAX;
    for a in network::all_transfers(q.q(), y.cols(), lifted.n(), rho, 1 << 16)? {
        let diff = linalg::add(&q, y, &linalg::mul(&q, &xp, &a.transpose())?.map(|v| q.neg(v)))?;
        best = best.min(base_rank(q, &diff));
    }
    Ok(best)
}

/// Minimum of [`discrepancy_noncoherent_word`] over the coset of S.
pub fn discrepancy_noncoherent(lifted: &LiftedScheme, y: &BitMatrix, s: &[ExtElement], rho: usize) -> Result<usize> {
    let inner = lifted.inner();
    check_caps(inner)?;
    let mut best = usize::MAX;
    for c in 0..inner.c2().num_codewords() {
        best = best.min(discrepancy_noncoherent_word(lifted, y, &inner.encode_with(s, c)?, rho)?);
    }
    Ok(best)
}

/// Coset minimising Δ_ρ. Only the payload term varies with the coset, so this is coherent
/// decoding of Y′ with Ŷᵀ in place of the transfer matrix.
pub fn decode_noncoherent(lifted: &LiftedScheme, y: &BitMatrix, rho: usize) -> Result<DecodeResult> {
    let inner = lifted.inner();
    let ctx = inner.ctx().as_ref();
    let (head, payload) = split_received(lifted, y)?;
    let at = head.transpose();
    let imgs = images(inner, &at)?;
    let mut r = argmin(inner, ctx, &imgs, &payload);
    let extra = (lifted.n() as isize - rho as isize - base_rank(ctx.base(), y) as isize).max(0) as usize;
    r.discrepancy += extra;
    r.runner_up = r.runner_up.map(|v| v + extra);
    Ok(r)
}

/// δ_ρ of the lifted scheme from the inner code: min over v ∈ C1 \ C2 of [rank v − ρ]^+.
pub fn delta_rho_lift(lifted: &LiftedScheme, rho: usize) -> Result<usize> {
    let inner = lifted.inner();
    Ok(first_rgrw_by_weights(inner.c1(), inner.c2())?.saturating_sub(rho))
}

/// δ_ρ of the lifted scheme by brute force over packet pairs in distinct cosets and pairs of
/// N×n transfer matrices of rank ≥ n − ρ (the first one up to row operations).
pub fn delta_rho_lift_brute(lifted: &LiftedScheme, rho: usize, n_out: usize) -> Result<usize> {
    let inner = lifted.inner();
    check_caps(inner)?;
    let q = inner.ctx().base();
    let n = lifted.n();
    let canon = network::canonical_transfers(q.q(), n_out, n, rho, 1 << 16)?;
    let all = network::all_transfers(q.q(), n_out, n, rho, 1 << 16)?;
    let mut packets = Vec::new();
    for s in 0..inner.num_messages() {
        for c in 0..inner.c2().num_codewords() {
            packets.push((s, lifted.lift_packet(&inner.encode_with(&inner.message(s), c)?)));
        }
    }
    let mut best = usize::MAX;
    for a in &canon {
        let left: Vec<(u128, BitMatrix)> = packets
            .iter()
            .map(|(s, p)| Ok((*s, linalg::mul(&q, p, &a.transpose())?)))
            .collect::<Result<_>>()?;
        for a2 in &all {
            let right: Vec<(u128, BitMatrix)> = packets
                .iter()
                .map(|(s, p)| Ok((*s, linalg::mul(&q, p, &a2.transpose())?)))
                .collect::<Result<_>>()?;
            for (s, l) in &left {
                for (s2, r) in &right {
                    if s == s2 {
                        continue;
                    }
                    let diff = linalg::add(&q, l, &r.map(|v| q.neg(v)))?;
                    best = best.min(base_rank(q, &diff));
                    if best == 0 {
                        return Ok(0);
                    }
                }
            }
        }
    }
    Ok(best)
}
