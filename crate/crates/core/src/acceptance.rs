//! Acceptance criteria: closed forms reproduced exactly by exhaustive computation at small
//! parameters. Shared by the `acceptance` subcommand and the integration test.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{vector_from_index, LinearCode};
use crate::coset_scheme::{lift, CosetDistribution, NestedScheme};
use crate::decoder::{self, CapabilityMode};
use crate::error::{Error, Result};
use crate::field::{ExtElement, FieldCtx};
use crate::linalg::{ExtMatrix, Matrix, Subspace};
use crate::network;
use crate::rank_metrics::{first_rgrw_by_weights, gap, rdip, rgrw};
use crate::security::{self, JointDistribution};
use crate::subspaces::{enumerate_base_up_to, DEFAULT_ENUM_CAP};

/// Absolute tolerance for comparisons of computed information quantities.
pub const INFO_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub expected: String,
    pub measured: String,
    pub passed: bool,
    pub elapsed_ms: u128,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {}: expected {}; measured {} ({} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.expected,
            self.measured,
            self.elapsed_ms
        )
    }
}

pub const SUITES: &[(&str, &[u8])] = &[
    ("all", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]),
    ("bounds", &[1, 2, 3]),
    ("rank-metrics", &[2, 3, 4]),
    ("security-uniform", &[5, 6]),
    ("security-nonuniform", &[8]),
    ("strength", &[7]),
    ("capability", &[9]),
    ("noncoherent", &[10]),
    ("packet-length", &[11]),
];

pub fn suite_ids(name: &str) -> Result<&'static [u8]> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, ids)| *ids).ok_or_else(|| Error::SuiteUnknown(name.to_string()))
}

pub fn run_suite(name: &str) -> Result<Vec<CriterionResult>> {
    suite_ids(name)?.iter().map(|&id| run_criterion(id)).collect()
}

struct Outcome {
    expected: String,
    measured: String,
    passed: bool,
}

pub fn run_criterion(id: u8) -> Result<CriterionResult> {
    let start = Instant::now();
    let (name, limit, o): (&'static str, Option<Duration>, Outcome) = match id {
        1 => ("gabidulin codes meet the rank singleton bound", None, mrd_construction()?),
        2 => ("RGRW and RDIP of an MRD code and its subcodes", Some(Duration::from_secs(30)), mrd_profiles()?),
        3 => ("first RGRW against {0} equals minimum rank distance", Some(Duration::from_secs(60)), bridge_identity()?),
        4 => ("duality identity for intersection gaps", None, duality_identity()?),
        5 => ("leakage equals intersection gap of the dual pair", Some(Duration::from_secs(60)), leakage_equality()?),
        6 => ("universal equivocation of the standard scheme", None, equivocation()?),
        7 => ("universal maximum strength of the standard scheme", None, strength()?),
        8 => ("non-uniform leakage sandwich", None, nonuniform_sandwich()?),
        9 => ("coherent error-correction capability, both directions", Some(Duration::from_secs(600)), coherent_capability()?),
        10 => ("noncoherent decoding of lifted packets", None, noncoherent()?),
        11 => ("packet length below l + n", None, packet_length()?),
        _ => return Err(Error::SuiteUnknown(format!("criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let measured = if in_time { o.measured } else { format!("{} (over the {:?} time limit)", o.measured, limit.unwrap()) };
    Ok(CriterionResult { id, name, expected: o.expected, measured, passed: o.passed && in_time, elapsed_ms: elapsed.as_millis() })
}

fn binary(m: usize) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::binary(m).expect("built-in binary modulus"))
}

/// The standard small scheme: q = 2, m = 4, l = 1, n = 3, k = 2.
pub fn small_scheme() -> NestedScheme {
    NestedScheme::build_proposed(binary(4), 1, 3, 2).expect("valid parameters")
}

/// Prints values within rounding of zero as 0.
fn clean_zero(x: f64) -> f64 {
    if x.abs() < INFO_TOL {
        0.0
    } else {
        x
    }
}

fn fmt_list(v: &[usize]) -> String {
    format!("{v:?}")
}

fn mrd_construction() -> Result<Outcome> {
    let mut exp = Vec::new();
    let mut got = Vec::new();
    let mut slow = 0;
    for (m, n, k) in [(4, 4, 1), (4, 4, 2), (4, 4, 3), (5, 4, 2)] {
        let start = Instant::now();
        let c = LinearCode::gabidulin(binary(m), n, k, None)?;
        exp.push(n - k + 1);
        got.push(c.min_rank_distance()?.unwrap_or(0));
        slow += usize::from(start.elapsed() > Duration::from_secs(5));
    }
    Ok(Outcome {
        passed: exp == got && slow == 0,
        expected: format!("d_R = {} each within 5 s", fmt_list(&exp)),
        measured: format!("d_R = {}, {slow} over 5 s", fmt_list(&got)),
    })
}

fn random_subcode<R: Rng>(c1: &LinearCode, dim: usize, rng: &mut R) -> Result<LinearCode> {
    let ctx = c1.ctx().clone();
    loop {
        let msgs: Vec<Vec<ExtElement>> =
            (0..dim).map(|_| (0..c1.k()).map(|_| ExtElement(rng.gen_range(0..ctx.size()))).collect()).collect();
        let rows = msgs.iter().map(|m| c1.encode(m)).collect::<Result<Vec<_>>>()?;
        let c2 = LinearCode::from_generator(ctx.clone(), c1.n(), &Matrix::from_rows(c1.n(), &rows)?)?;
        if c2.k() == dim {
            return Ok(c2);
        }
    }
}

fn mrd_profiles() -> Result<Outcome> {
    let ctx = binary(4);
    let (n, k1) = (4, 2);
    let c1 = LinearCode::gabidulin(ctx.clone(), n, k1, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut subcodes = vec![LinearCode::zero(ctx, n)];
    for _ in 0..5 {
        subcodes.push(random_subcode(&c1, 1, &mut rng)?);
    }
    let mut mismatches = 0;
    let mut checked = 0;
    for c2 in &subcodes {
        let w = rgrw(&c1, c2)?;
        for i in 1..=(k1 - c2.k()) {
            checked += 1;
            mismatches += usize::from(w.get(i) != n - k1 + i);
        }
        let p = rdip(&c1, c2)?;
        for mu in 0..=(n - c2.k()) {
            checked += 1;
            mismatches += usize::from(p.get(mu) != (mu + k1).saturating_sub(n));
        }
    }
    Ok(Outcome {
        passed: mismatches == 0,
        expected: format!("M_i = n - k1 + i and K_mu = [mu - n + k1]^+ at {checked} entries (6 subcodes)"),
        measured: format!("{mismatches} mismatches"),
    })
}

fn bridge_identity() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pairs = Vec::new();
    for _ in 0..20 {
        let m = rng.gen_range(2..=5);
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=n);
        let ctx = binary(m);
        let c = LinearCode::random(ctx.clone(), n, k, &mut rng);
        let m1 = rgrw(&c, &LinearCode::zero(ctx, n))?.first();
        let d = c.min_rank_distance()?.expect("k >= 1");
        pairs.push((m1, d));
    }
    let bad = pairs.iter().filter(|(a, b)| a != b).count();
    Ok(Outcome { passed: bad == 0, expected: "20 of 20 equal".into(), measured: format!("{} of 20 equal", 20 - bad) })
}

fn random_ext_matrix<R: Rng>(ctx: &FieldCtx, rows: usize, cols: usize, rng: &mut R) -> ExtMatrix {
    Matrix::new(rows, cols, (0..rows * cols).map(|_| ExtElement(rng.gen_range(0..ctx.size()))).collect()).expect("shape")
}

/// dim(C1 ∩ V) − dim(C2 ∩ V) = dim(C1/C2) − dim(C2^⊥ ∩ V^⊥) + dim(C1^⊥ ∩ V^⊥), for arbitrary V.
pub fn duality_gap_sides(c1: &LinearCode, c2: &LinearCode, v: &Subspace<ExtElement>) -> Result<(usize, usize)> {
    let ctx = c1.ctx().as_ref();
    let lhs = gap(c1, c2, v)?;
    let rhs = (c1.k() - c2.k()) - gap(&c2.dual(), &c1.dual(), &v.complement(ctx))?;
    Ok((lhs, rhs))
}

fn duality_identity() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = 0;
    for _ in 0..100 {
        let m = rng.gen_range(2..=4);
        let n = rng.gen_range(2..=4);
        let ctx = binary(m);
        let k1 = rng.gen_range(1..=n);
        let k2 = rng.gen_range(0..k1);
        let c1 = LinearCode::random(ctx.clone(), n, k1, &mut rng);
        let c2 = random_subcode(&c1, k2, &mut rng)?;
        let vd = rng.gen_range(0..=n);
        let v = Subspace::from_generators(ctx.as_ref(), n, &random_ext_matrix(&ctx, vd, n, &mut rng))?;
        let (l, r) = duality_gap_sides(&c1, &c2, &v)?;
        bad += usize::from(l != r);
    }
    Ok(Outcome { passed: bad == 0, expected: "100 of 100 triples equal".into(), measured: format!("{} of 100 equal", 100 - bad) })
}

fn leakage_equality() -> Result<Outcome> {
    let s = small_scheme();
    let ctx = s.ctx().clone();
    let dist = JointDistribution::uniform(&s)?;
    let (c1d, c2d) = (s.c1().dual(), s.c2().dual());
    let mut worst = 0.0f64;
    let mut count = 0;
    for b in enumerate_base_up_to(ctx.q(), s.n(), s.n(), DEFAULT_ENUM_CAP)? {
        let v = Subspace::from_generators(&ctx.base(), s.n(), &b)?.embed(&ctx);
        let predicted = gap(&c2d, &c1d, &v)? as f64;
        worst = worst.max((dist.mutual_information(&b)? - predicted).abs());
        count += 1;
    }
    let profile = rdip(&c2d, &c1d)?;
    let mut exp = Vec::new();
    let mut got = Vec::new();
    let mut max_dev = 0.0f64;
    for mu in 0..=s.n() {
        let r = security::universal_equivocation(&s, &dist, mu)?;
        exp.push(profile.get(mu));
        got.push(format!("{:.6}", r.max_leakage));
        max_dev = max_dev.max((r.max_leakage - profile.get(mu) as f64).abs());
    }
    Ok(Outcome {
        passed: worst <= INFO_TOL && max_dev <= INFO_TOL,
        expected: format!("per-B leakage equal to the gap on all row spaces; maxima {exp:?}"),
        measured: format!("{count} row spaces, max deviation {worst:.1e}; maxima {got:?}"),
    })
}

fn equivocation() -> Result<Outcome> {
    let s = small_scheme();
    let dist = JointDistribution::uniform(&s)?;
    let (l, k, k2) = (s.l(), s.c1().k(), s.c2().k());
    let profile = rdip(&s.c2().dual(), &s.c1().dual())?;
    let mut exp = Vec::new();
    let mut got = Vec::new();
    let mut ok = true;
    for mu in 0..=s.n() {
        // The closed form covers μ ≤ k; beyond that the profile value is used.
        let e = if mu <= k {
            l as f64 - mu.saturating_sub(k2) as f64
        } else {
            l as f64 - profile.get(mu) as f64
        };
        let r = security::universal_equivocation(&s, &dist, mu)?;
        ok &= (r.equivocation - e).abs() <= INFO_TOL;
        exp.push(e);
        got.push(format!("{:.6}", clean_zero(r.equivocation)));
    }
    Ok(Outcome { passed: ok, expected: format!("{exp:?}"), measured: format!("{got:?}") })
}

fn strength() -> Result<Outcome> {
    let s = small_scheme();
    let dist = JointDistribution::uniform(&s)?;
    let k = s.c1().k();
    let om = security::omega_exact(&s)?;
    let b = security::omega_bounds(&s)?;
    let chk = security::confirm_strength(&s, &dist, om.omega)?;
    let witness = chk.witness_above.as_ref().map(|(z, mu, v, _)| format!("Z={z:?} mu={mu} leak={v:.3}"));
    let passed = om.omega == k - 1 && b.lower == k - 1 && b.upper == k - 1 && chk.silent_at_omega && witness.is_some();
    Ok(Outcome {
        passed,
        expected: format!("omega = {}, bounds {}..{}, silent at omega, leakage one step above", k - 1, k - 1, k - 1),
        measured: format!(
            "omega = {}, bounds {}..{}, silent = {}, witness = {}",
            om.omega,
            b.lower,
            b.upper,
            chk.silent_at_omega,
            witness.unwrap_or_else(|| "none".into())
        ),
    })
}

fn nonuniform_sandwich() -> Result<Outcome> {
    let s = small_scheme();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ncw = s.c2().num_codewords() as usize;
    let table: Vec<Vec<u64>> = (0..s.num_messages()).map(|_| (0..ncw).map(|_| rng.gen_range(1..=9)).collect()).collect();
    let msg_w: Vec<u64> = (0..s.num_messages()).map(|_| rng.gen_range(1..=5)).collect();
    let s = s.with_distribution(CosetDistribution::Table(table))?;
    let dist = JointDistribution::from_scheme(&s, Some(&msg_w))?;
    let mut ok = true;
    let mut got = Vec::new();
    for mu in 0..=s.n() {
        let r = security::universal_equivocation(&s, &dist, mu)?;
        ok &= r.sandwich_holds(INFO_TOL);
        got.push(format!(
            "mu={mu}: {:.4} <= {:.4} <= {:.4}",
            r.predicted as f64 - r.d_s,
            r.max_leakage,
            r.predicted as f64 + r.d_x_given_s
        ));
    }
    ok &= dist.divergence_x_given_s() > INFO_TOL;
    Ok(Outcome {
        passed: ok,
        expected: "predicted - D(S||U) <= max leakage <= predicted + D(X||U|S) for mu = 0..n, with D(X||U|S) > 0".into(),
        measured: got.join("; "),
    })
}

/// The scheme used for the capability checks: q = 2, m = 5, l = 1, n = 4, k = 1.
pub fn capability_scheme() -> NestedScheme {
    NestedScheme::build_proposed(binary(5), 1, 4, 1).expect("valid parameters")
}

fn coherent_capability() -> Result<Outcome> {
    let s = capability_scheme();
    let m1 = first_rgrw_by_weights(s.c1(), s.c2())?;
    let mut ok = m1 == 4;
    let mut inside = Vec::new();
    for (t, rho) in [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1)] {
        let r = decoder::capability_report(&s, t, rho, CapabilityMode::Exhaustive, decoder::DEFAULT_BUDGET)?;
        ok &= r.verified;
        inside.push(format!("(t={t},rho={rho}) {} over {} trials", if r.verified { "ok" } else { "FAILED" }, r.trials));
    }
    let mut outside = Vec::new();
    for (t, rho) in [(2, 0), (1, 2), (0, 4)] {
        let w = decoder::failure_witness(&s, t, rho)?;
        let broke = w.as_ref().is_some_and(|c| !c.outcome.recovers(&c.s));
        ok &= broke;
        outside.push(format!(
            "(t={t},rho={rho}) {}",
            w.map(|c| c.outcome.status.name().to_string()).unwrap_or_else(|| "no witness".into())
        ));
    }
    Ok(Outcome {
        passed: ok,
        expected: "first RGRW 4; success for all 2t+rho <= 3; failure witness for 2t+rho = 4".into(),
        measured: format!("first RGRW {m1}; {}; {}", inside.join(", "), outside.join(", ")),
    })
}

fn noncoherent() -> Result<Outcome> {
    let inner = NestedScheme::build_proposed(binary(4), 1, 3, 1)?;
    let m1 = first_rgrw_by_weights(inner.c1(), inner.c2())?;
    let lifted = lift(inner, 7)?;
    let n = lifted.n();
    let q = lifted.inner().ctx().base();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut failures = 0;
    let mut draws = 0;
    for (t, rho) in [(0, 0), (0, 1), (1, 0)] {
        if 2 * t + rho >= m1 {
            continue;
        }
        for _ in 0..200 {
            let s_idx = rng.gen_range(0..lifted.inner().num_messages());
            let s = lifted.inner().message(s_idx);
            let x = lifted.lift_encode(&s, &mut rng)?;
            let a = network::sample_transfer(&mut rng, q.q(), n, n, rho)?;
            let z = network::random_bitmatrix(&mut rng, q.q(), lifted.m(), t);
            let d = network::random_bitmatrix(&mut rng, q.q(), n, t);
            let y = network::transmit_packets(q, &x, &a, &z, &d)?;
            let out = decoder::decode_noncoherent(&lifted, &y, rho)?;
            draws += 1;
            failures += usize::from(!out.recovers(&s));
        }
    }
    let mut deltas = Vec::new();
    let mut ok = failures == 0;
    for rho in 0..=2 {
        let brute = decoder::delta_rho_lift_brute(&lifted, rho, n)?;
        ok &= brute + rho == m1 && decoder::delta_rho_lift(&lifted, rho)? == brute;
        deltas.push(brute + rho);
    }
    Ok(Outcome {
        passed: ok,
        expected: format!("all draws decode; delta_rho + rho = {m1} for rho = 0..2"),
        measured: format!("{failures} failures in {draws} draws; delta_rho + rho = {deltas:?}"),
    })
}

/// Result of checking the standard scheme's guarantees on a nested pair.
#[derive(Clone, Debug, Serialize)]
pub struct GuaranteeCheck {
    pub equivocation: bool,
    pub capability: bool,
    pub strength: bool,
}

/// Checks the three guarantees of the standard scheme on an arbitrary one with uniform
/// inputs: the RDIP of the dual pair is [μ − dim C2]^+ for μ ≤ k, the first RGRW is
/// n − k + 1, and Ω = k − 1.
pub fn check_guarantees(s: &NestedScheme) -> Result<GuaranteeCheck> {
    let (n, k, k2) = (s.n(), s.c1().k(), s.c2().k());
    let p = rdip(&s.c2().dual(), &s.c1().dual())?;
    let equivocation = (0..=k).all(|mu| p.get(mu) == mu.saturating_sub(k2));
    let capability = first_rgrw_by_weights(s.c1(), s.c2())? == n - k + 1;
    let strength = security::omega_exact(s)?.omega == k - 1;
    Ok(GuaranteeCheck { equivocation, capability, strength })
}

/// Outcome of scanning every systematic generator [I | P] over F_{q^m}.
#[derive(Clone, Debug, Serialize)]
pub struct PacketLengthSearch {
    pub scanned: u64,
    pub all_hold: u64,
    pub equivocation_fails: u64,
    pub capability_fails: u64,
    pub strength_fails: u64,
    /// First generator (index order) violating a guarantee.
    pub first_violation: Option<ExtMatrix>,
}

/// Scans systematic [l+n, k] generators [I | P] over F_{q^m} in index order and checks the
/// guarantees of the scheme built from each.
pub fn packet_length_search(ctx: Arc<FieldCtx>, l: usize, n: usize, k: usize) -> Result<PacketLengthSearch> {
    let len = l + n;
    let free = k * (len - k);
    let total = crate::codes::space_size(&ctx, free);
    let mut out = PacketLengthSearch {
        scanned: 0,
        all_hold: 0,
        equivocation_fails: 0,
        capability_fails: 0,
        strength_fails: 0,
        first_violation: None,
    };
    for idx in 0..total {
        let p = vector_from_index(&ctx, idx, free);
        let mut g = Matrix::zeros(ctx.as_ref(), k, len);
        for i in 0..k {
            g.set(i, i, ExtElement::ONE);
            for j in 0..len - k {
                g.set(i, k + j, p[i * (len - k) + j]);
            }
        }
        let scheme = match NestedScheme::from_systematic(ctx.clone(), l, n, &g) {
            Ok(s) => s,
            Err(_) => continue,
        };
        out.scanned += 1;
        let chk = check_guarantees(&scheme)?;
        out.equivocation_fails += u64::from(!chk.equivocation);
        out.capability_fails += u64::from(!chk.capability);
        out.strength_fails += u64::from(!chk.strength);
        if chk.equivocation && chk.capability && chk.strength {
            out.all_hold += 1;
        } else if out.first_violation.is_none() {
            out.first_violation = Some(g);
        }
    }
    Ok(out)
}

fn packet_length() -> Result<Outcome> {
    let rejected = matches!(NestedScheme::build_proposed(binary(3), 1, 3, 2), Err(Error::PacketTooShort { .. }));
    let r = packet_length_search(binary(3), 1, 3, 2)?;
    let measured = format!(
        "rejected = {rejected}; {} schemes scanned, {} satisfy every guarantee; failures: equivocation {}, capability {}, strength {}",
        r.scanned, r.all_hold, r.equivocation_fails, r.capability_fails, r.strength_fails
    );
    Ok(Outcome {
        passed: rejected && r.scanned > 0,
        expected: "m = l + n - 1 rejected; search completes and records its finding".into(),
        measured,
    })
}
