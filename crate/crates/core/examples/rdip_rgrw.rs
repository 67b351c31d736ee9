//! Relative dimension/intersection profile and generalized rank weights of a nested pair.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankguard::codes::LinearCode;
use rankguard::rank_metrics::{rdip, rgrw, verify_bounds};
use rankguard::FieldCtx;

fn main() -> rankguard::Result<()> {
    let ctx = Arc::new(FieldCtx::binary(4)?);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c1 = LinearCode::random(ctx.clone(), 4, 3, &mut rng);
    let c2 = LinearCode::from_generator(ctx, 4, &c1.generator().select_rows(&[0]))?;

    let p = rdip(&c1, &c2)?;
    let w = rgrw(&c1, &c2)?;
    println!("rdip: {:?}", (0..=p.n()).map(|i| p.get(i)).collect::<Vec<_>>());
    println!("rgrw: {:?}", (1..=w.len()).map(|i| w.get(i)).collect::<Vec<_>>());
    let b = verify_bounds(&c1, &c2)?;
    println!("bounds hold: {}", b.all_hold());
    Ok(())
}
