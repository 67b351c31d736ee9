//! Largest wiretap size for which no part of the secret leaks more than it must.

use std::sync::Arc;

use rankguard::coset_scheme::NestedScheme;
use rankguard::security::{self, JointDistribution};
use rankguard::FieldCtx;

fn main() -> rankguard::Result<()> {
    let s = NestedScheme::build_proposed(Arc::new(FieldCtx::binary(4)?), 2, 2, 2)?;
    let exact = security::omega_exact(&s)?;
    let b = security::omega_bounds(&s)?;
    println!("omega = {} (bounds {}..={}), minimiser Z = {:?}", exact.omega, b.lower, b.upper, exact.minimizer);
    for (z, w) in &exact.terms {
        println!("  Z = {z:?}: first weight {w}");
    }
    let dist = JointDistribution::uniform(&s)?;
    let c = security::confirm_strength(&s, &dist, exact.omega)?;
    println!("silent at omega: {}", c.silent_at_omega);
    if let Some((z, mu, leak, _)) = c.witness_above {
        println!("leaks {leak:.3} for Z = {z:?} with mu = {mu}");
    }
    Ok(())
}
