//! Send packets through a rank-deficient channel with injected errors and decode.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankguard::coset_scheme::NestedScheme;
use rankguard::decoder::{self, CapabilityMode};
use rankguard::linalg;
use rankguard::network::{self, apply_base};
use rankguard::FieldCtx;

fn main() -> rankguard::Result<()> {
    let s = NestedScheme::build_proposed(Arc::new(FieldCtx::binary(5)?), 1, 4, 1)?;
    let ctx = s.ctx().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(4);

    let msg = s.message(9);
    let x = s.encode(&msg, &mut rng)?;
    let a = network::sample_transfer(&mut rng, 2, 4, 4, 1)?;
    let (d, z) = network::sample_error(&mut rng, &ctx, 4, 1);
    let y = linalg::vec_add(ctx.as_ref(), &apply_base(&ctx, &a, &x)?, &apply_base(&ctx, &d, &z)?);
    let r = decoder::decode_coherent(&s, &a, &y)?;
    println!("status {}, recovered {}, discrepancy {}", r.status.name(), r.recovers(&msg), r.discrepancy);

    for (t, rho) in [(1, 1), (2, 0)] {
        let rep = decoder::capability_report(&s, t, rho, CapabilityMode::Exhaustive, 0)?;
        println!("t = {t}, rho = {rho}: verified {} over {} trials", rep.verified, rep.trials);
    }
    if let Some(w) = decoder::failure_witness(&s, 2, 0)? {
        println!("witness outcome: {}", w.outcome.status.name());
    }
    Ok(())
}
