//! Lift a scheme with an identity prefix so the receiver needs no channel knowledge.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankguard::coset_scheme::{lift, NestedScheme};
use rankguard::{decoder, linalg, network};
use rankguard::{FieldCtx, Matrix};

fn main() -> rankguard::Result<()> {
    let inner = NestedScheme::build_proposed(Arc::new(FieldCtx::binary(4)?), 1, 3, 1)?;
    let lifted = lift(inner, 7)?;
    let f = lifted.inner().ctx().base();
    let mut rng = ChaCha8Rng::seed_from_u64(6);

    let msg = lifted.inner().message(5);
    let x = lifted.lift_encode(&msg, &mut rng)?;
    let a = network::sample_transfer(&mut rng, 2, 3, 3, 1)?;
    let y = network::transmit_packets(f, &x, &a, &Matrix::filled(7, 0, 0u32), &Matrix::filled(3, 0, 0u32))?;
    let r = decoder::decode_noncoherent(&lifted, &y, 1)?;
    println!("rank deficiency {}: recovered {}", 3 - linalg::base_rank(f, &a), r.recovers(&msg));
    for rho in 0..3 {
        println!("rho = {rho}: worst-case distance {}", decoder::delta_rho_lift(&lifted, rho)?);
    }
    Ok(())
}
