//! Exact leakage measurement for nested coset coding over a wiretapped network.
//!
//! Probabilities are integer weights over a common denominator; logarithms are taken in
//! base q^m and only the final sums are floating point.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::codes::{space_size, vector_from_index, LinearCode};
use crate::coset_scheme::{CosetDistribution, NestedScheme};
use crate::error::{Error, Result};
use crate::field::{ExtElement, FieldCtx};
use crate::linalg::BitMatrix;
use crate::network::{apply_base, enumerate_wiretap, WiretapMode};
use crate::rank_metrics::{rdip, rgrw};
use crate::subspaces::{Combinations, DEFAULT_ENUM_CAP};

/// Cap on the number of (S, X) support points.
pub const SUPPORT_CAP: u128 = 1 << 20;

/// Leakage below this is treated as zero when deciding strength.
pub const ZERO_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SupportEntry {
    pub s: Vec<ExtElement>,
    pub x: Vec<ExtElement>,
    pub weight: u128,
}

/// Joint law of (S, X) with integer weights.
#[derive(Clone, Debug)]
pub struct JointDistribution {
    ctx: Arc<FieldCtx>,
    l: usize,
    coset_dim: usize,
    entries: Vec<SupportEntry>,
    total: u128,
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl JointDistribution {
    /// Uniform secret, coset member drawn per the scheme's coset distribution.
    pub fn uniform(scheme: &NestedScheme) -> Result<Self> {
        Self::from_scheme(scheme, None)
    }

    /// `message_weights[s]` weights the secret with index s; `None` is uniform.
    pub fn from_scheme(scheme: &NestedScheme, message_weights: Option<&[u64]>) -> Result<Self> {
        let ctx = scheme.ctx().clone();
        let states = space_size(&ctx, scheme.c1().k());
        if states > SUPPORT_CAP {
            return Err(Error::EnumerationTooLarge { what: "joint (S, X) support".into(), needed: states, cap: SUPPORT_CAP });
        }
        let nmsg = scheme.num_messages();
        if let Some(w) = message_weights {
            if w.len() as u128 != nmsg || w.iter().all(|&x| x == 0) {
                return Err(Error::BadDimensions(format!("message weights must have {nmsg} entries with positive mass")));
            }
        }
        let ncw = scheme.c2().num_codewords();
        let row = |s: usize| -> Vec<u64> {
            match scheme.distribution() {
                CosetDistribution::Uniform => vec![1; ncw as usize],
                CosetDistribution::Table(t) => t[s].clone(),
            }
        };
        let mut lcm: u128 = 1;
        for s in 0..nmsg as usize {
            let rs: u128 = row(s).iter().map(|&w| w as u128).sum();
            lcm = lcm / gcd(lcm, rs) * rs;
        }
        let mut entries = Vec::with_capacity(states as usize);
        let mut total = 0u128;
        for s_idx in 0..nmsg {
            let ws = message_weights.map_or(1, |w| w[s_idx as usize]) as u128;
            if ws == 0 {
                continue;
            }
            let weights = row(s_idx as usize);
            let rs: u128 = weights.iter().map(|&w| w as u128).sum();
            let s = vector_from_index(&ctx, s_idx, scheme.l());
            for (c, &w) in weights.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                let weight = ws * w as u128 * (lcm / rs);
                total += weight;
                entries.push(SupportEntry { s: s.clone(), x: scheme.encode_with(&s, c as u128)?, weight });
            }
        }
        Ok(JointDistribution { ctx, l: scheme.l(), coset_dim: scheme.c2().k(), entries, total })
    }

    pub fn entries(&self) -> &[SupportEntry] {
        &self.entries
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn l(&self) -> usize {
        self.l
    }

    fn ln_base(&self) -> f64 {
        (self.ctx.size() as f64).ln()
    }

    fn entropy_by<K: Ord>(&self, key: impl Fn(&SupportEntry) -> K) -> f64 {
        let mut counts: BTreeMap<K, u128> = BTreeMap::new();
        for e in &self.entries {
            *counts.entry(key(e)).or_default() += e.weight;
        }
        entropy(counts.values().copied(), self.total) / self.ln_base()
    }

    /// I(K(S); W) with W = X·Bᵀ.
    pub fn mutual_information_by<K: Ord + Clone>(&self, key: impl Fn(&[ExtElement]) -> K, b: &BitMatrix) -> Result<f64> {
        self.mutual_information_noisy_by(key, b, &[(vec![ExtElement::ZERO; b.rows()], 1)])
    }

    /// I(K(S); X·Bᵀ + E) with E drawn independently from a weighted list.
    pub fn mutual_information_noisy_by<K: Ord + Clone>(
        &self,
        key: impl Fn(&[ExtElement]) -> K,
        b: &BitMatrix,
        noise: &[(Vec<ExtElement>, u128)],
    ) -> Result<f64> {
        let ctx = self.ctx.as_ref();
        let noise_total: u128 = noise.iter().map(|(_, w)| w).sum();
        let mut joint: BTreeMap<(K, Vec<ExtElement>), u128> = BTreeMap::new();
        let mut kc: BTreeMap<K, u128> = BTreeMap::new();
        let mut wc: BTreeMap<Vec<ExtElement>, u128> = BTreeMap::new();
        for e in &self.entries {
            let clean = apply_base(ctx, b, &e.x)?;
            let k = key(&e.s);
            *kc.entry(k.clone()).or_default() += e.weight * noise_total;
            for (z, zw) in noise {
                let w = crate::linalg::vec_add(ctx, &clean, z);
                let p = e.weight * zw;
                *wc.entry(w.clone()).or_default() += p;
                *joint.entry((k.clone(), w)).or_default() += p;
            }
        }
        let t = (self.total * noise_total) as f64;
        let mut acc = 0.0;
        for ((k, w), &c) in &joint {
            let ratio = (c as f64 * t) / (kc[k] as f64 * wc[w] as f64);
            acc += (c as f64 / t) * ratio.ln();
        }
        Ok(acc / self.ln_base())
    }

    /// I(S; X·Bᵀ).
    pub fn mutual_information(&self, b: &BitMatrix) -> Result<f64> {
        self.mutual_information_by(|s| s.to_vec(), b)
    }

    pub fn entropy_s(&self) -> f64 {
        self.entropy_by(|e| e.s.clone())
    }

    pub fn entropy_x(&self) -> f64 {
        self.entropy_by(|e| e.x.clone())
    }

    /// H(K(S)).
    pub fn entropy_key<K: Ord>(&self, key: impl Fn(&[ExtElement]) -> K) -> f64 {
        self.entropy_by(|e| key(&e.s))
    }

    /// D(S‖U) = l − H(S).
    pub fn divergence_s(&self) -> f64 {
        self.l as f64 - self.entropy_s()
    }

    /// D(X‖U_{ψ(S)}|S) = dim C2 − H(X|S); X determines S so H(X|S) = H(X) − H(S).
    pub fn divergence_x_given_s(&self) -> f64 {
        self.coset_dim as f64 - (self.entropy_x() - self.entropy_s())
    }
}

fn entropy(counts: impl Iterator<Item = u128>, total: u128) -> f64 {
    let t = total as f64;
    counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / t;
            -p * p.ln()
        })
        .sum()
}

/// Entropies and divergences of a joint law, in base-q^m units.
#[derive(Clone, Debug, Serialize)]
pub struct EntropySummary {
    pub h_s: f64,
    pub h_s_given_w: Option<f64>,
    pub d_x_given_s: f64,
    pub d_s: f64,
}

pub fn entropy_tools(dist: &JointDistribution, b: Option<&BitMatrix>) -> Result<EntropySummary> {
    let h_s = dist.entropy_s();
    let h_s_given_w = match b {
        Some(b) => Some(h_s - dist.mutual_information(b)?),
        None => None,
    };
    Ok(EntropySummary { h_s, h_s_given_w, d_x_given_s: dist.divergence_x_given_s(), d_s: dist.divergence_s() })
}

#[derive(Clone, Debug, Serialize)]
pub struct LeakageReport {
    pub mu: usize,
    /// Secret coordinates observed (0-based); all of them for the full secret.
    pub zidx: Vec<usize>,
    pub max_leakage: f64,
    pub argmax_b: BitMatrix,
    pub predicted: usize,
    /// D(X‖U|S_Z): how far the coset draw is from uniform given the observed part.
    pub d_x_given_s: f64,
    /// D(S_Z‖U).
    pub d_s: f64,
    /// H(S_Z) − max_leakage.
    pub equivocation: f64,
}

impl LeakageReport {
    /// predicted − D(S‖U) ≤ max ≤ predicted + D(X‖U|S), with `tol` slack on each side.
    pub fn sandwich_holds(&self, tol: f64) -> bool {
        let p = self.predicted as f64;
        p - self.d_s - tol <= self.max_leakage && self.max_leakage <= p + self.d_x_given_s + tol
    }
}

fn max_leakage_by<K: Ord + Clone>(
    dist: &JointDistribution,
    n: usize,
    mu: usize,
    key: impl Fn(&[ExtElement]) -> K + Copy,
) -> Result<(f64, BitMatrix)> {
    let mut best: Option<(f64, BitMatrix)> = None;
    for b in enumerate_wiretap(dist.ctx.q(), n, mu, WiretapMode::RowSpace, DEFAULT_ENUM_CAP)? {
        let v = dist.mutual_information_by(key, &b)?;
        // First maximiser in enumeration order wins ties.
        if best.as_ref().is_none_or(|(bv, _)| v > *bv + ZERO_TOL) {
            best = Some((v, b));
        }
    }
    Ok(best.expect("the zero space is always enumerated"))
}

/// Worst-case leakage of the full secret to μ tapped links, with its prediction from the
/// profile of the dual pair.
pub fn universal_equivocation(scheme: &NestedScheme, dist: &JointDistribution, mu: usize) -> Result<LeakageReport> {
    let all: Vec<usize> = (0..scheme.l()).collect();
    partial_leakage(scheme, dist, &all, mu)
}

/// Worst-case leakage of the secret coordinates in `zidx` (0-based) to μ tapped links.
pub fn partial_leakage(scheme: &NestedScheme, dist: &JointDistribution, zidx: &[usize], mu: usize) -> Result<LeakageReport> {
    let mut z = zidx.to_vec();
    z.sort_unstable();
    z.dedup();
    let c3 = scheme.partial_subcode(&z)?;
    let predicted = if z.is_empty() {
        0
    } else {
        rdip(&c3.dual(), &scheme.c1().dual())?.get(mu)
    };
    let key = |s: &[ExtElement]| z.iter().map(|&i| s[i]).collect::<Vec<_>>();
    let (max_leakage, argmax_b) = max_leakage_by(dist, scheme.n(), mu, key)?;
    let h = dist.entropy_key(key);
    let d_s = z.len() as f64 - h;
    // X determines S_Z, so H(X|S_Z) = H(X) − H(S_Z); the coset of S_Z has dim C3 elements.
    let d_x_given_s = c3.k() as f64 - (dist.entropy_x() - h);
    Ok(LeakageReport { mu, zidx: z, max_leakage, argmax_b, predicted, d_x_given_s, d_s, equivocation: h - max_leakage })
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaReport {
    pub omega: usize,
    /// Minimising secret-coordinate subset (0-based).
    pub minimizer: Vec<usize>,
    /// (subset, M_{R,1}(C3^⊥, C1^⊥)) for every nonempty subset.
    pub terms: Vec<(Vec<usize>, usize)>,
}

fn first_weight_of_duals(c3: &LinearCode, c1: &LinearCode) -> Result<usize> {
    Ok(rgrw(&c3.dual(), &c1.dual())?.first())
}

/// Ω = min over nonempty Z of M_{R,1}(C3_Z^⊥, C1^⊥) + |Z| − 2. The empty subset never
/// leaks (C3_∅ = C1) and is skipped.
pub fn omega_exact(scheme: &NestedScheme) -> Result<OmegaReport> {
    let l = scheme.l();
    if l > 12 {
        return Err(Error::EnumerationTooLarge { what: "secret-coordinate subsets".into(), needed: 1u128 << l, cap: 1 << 12 });
    }
    let mut terms = Vec::new();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for size in 1..=l {
        for z in Combinations::new(l, size) {
            let m1 = first_weight_of_duals(&scheme.partial_subcode(&z)?, scheme.c1())?;
            let v = m1 + size - 2;
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, z.clone()));
            }
            terms.push((z, m1));
        }
    }
    let (omega, minimizer) = best.expect("l >= 1");
    Ok(OmegaReport { omega, minimizer, terms })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaBounds {
    pub lower: usize,
    pub upper: usize,
}

/// Bounds on Ω from l weight computations each: singleton subsets for the upper bound and
/// the punctured/shortened lengthened code for the lower bound.
pub fn omega_bounds(scheme: &NestedScheme) -> Result<OmegaBounds> {
    let mut upper = usize::MAX;
    let mut lower = usize::MAX;
    for i in 0..scheme.l() {
        let c3 = scheme.partial_subcode(&[i])?;
        upper = upper.min(first_weight_of_duals(&c3, scheme.c1())? - 1);
        let (d1, d2) = scheme.bound_codes(i)?;
        lower = lower.min(rgrw(&d2.dual(), &d1.dual())?.first() - 1);
    }
    Ok(OmegaBounds { lower, upper })
}

/// Direct check of the strength definition at a claimed Ω.
#[derive(Clone, Debug, Serialize)]
pub struct StrengthCheck {
    pub omega: usize,
    /// Every nonempty Z leaks nothing at μ = Ω − |Z| + 1.
    pub silent_at_omega: bool,
    /// Some Z leaking at μ = Ω − |Z| + 2: (Z, μ, leakage, B).
    pub witness_above: Option<(Vec<usize>, usize, f64, BitMatrix)>,
}

pub fn confirm_strength(scheme: &NestedScheme, dist: &JointDistribution, omega: usize) -> Result<StrengthCheck> {
    let l = scheme.l();
    let mut silent = true;
    let mut witness = None;
    for size in 1..=l {
        for z in Combinations::new(l, size) {
            if omega + 1 >= size {
                let mu = omega + 1 - size;
                if partial_leakage(scheme, dist, &z, mu)?.max_leakage > ZERO_TOL {
                    silent = false;
                }
            }
            if witness.is_none() && omega + 2 >= size {
                let mu = omega + 2 - size;
                let r = partial_leakage(scheme, dist, &z, mu)?;
                if r.max_leakage > ZERO_TOL {
                    witness = Some((z.clone(), mu, r.max_leakage, r.argmax_b));
                }
            }
        }
    }
    Ok(StrengthCheck { omega, silent_at_omega: silent, witness_above: witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn full_observation_reveals_secret() {
        let ctx = Arc::new(FieldCtx::binary(4).unwrap());
        let s = NestedScheme::build_proposed(ctx, 1, 3, 2).unwrap();
        let d = JointDistribution::uniform(&s).unwrap();
        let f = crate::field::PrimeField::new(2).unwrap();
        let i = Matrix::identity(&f, 3);
        assert!((d.mutual_information(&i).unwrap() - 1.0).abs() < 1e-12);
        assert!(d.mutual_information(&Matrix::filled(0, 3, 0)).unwrap().abs() < 1e-12);
        assert!((d.entropy_s() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn point_mass_secret() {
        let ctx = Arc::new(FieldCtx::binary(4).unwrap());
        let s = NestedScheme::build_proposed(ctx, 1, 3, 2).unwrap();
        let mut w = vec![0u64; 16];
        w[3] = 1;
        let d = JointDistribution::from_scheme(&s, Some(&w)).unwrap();
        assert!(d.entropy_s().abs() < 1e-12);
        assert!((d.divergence_s() - 1.0).abs() < 1e-12);
    }
}
