//! Exact leakage to a wiretapper observing μ links, next to the dual-code prediction.

use std::sync::Arc;

use rankguard::coset_scheme::NestedScheme;
use rankguard::security::{self, JointDistribution};
use rankguard::FieldCtx;

fn main() -> rankguard::Result<()> {
    let s = NestedScheme::build_proposed(Arc::new(FieldCtx::binary(4)?), 1, 3, 2)?;
    let dist = JointDistribution::uniform(&s)?;
    for mu in 0..=s.n() {
        let r = security::universal_equivocation(&s, &dist, mu)?;
        println!("mu = {mu}: max I(S; W) = {:.6}, predicted {}", r.max_leakage, r.predicted);
    }
    let e = security::entropy_tools(&dist, None)?;
    println!("H(S) = {:.3}", e.h_s);
    Ok(())
}
