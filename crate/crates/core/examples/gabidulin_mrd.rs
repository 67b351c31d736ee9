//! Gabidulin codes meet the Singleton bound in the rank metric.

use std::sync::Arc;

use rankguard::codes::LinearCode;
use rankguard::FieldCtx;

fn main() -> rankguard::Result<()> {
    let ctx = Arc::new(FieldCtx::binary(5)?);
    for (n, k) in [(3, 1), (4, 2), (5, 3)] {
        let c = LinearCode::gabidulin(ctx.clone(), n, k, None)?;
        let d = c.min_rank_distance()?.unwrap();
        let dual = c.dual().min_rank_distance()?.unwrap();
        println!("[{n},{k}] over F_32: d_R = {d} (n-k+1 = {}), dual d_R = {dual}", n - k + 1);
    }
    let c = LinearCode::gabidulin(ctx, 5, 3, None)?;
    let s = c.shorten(&[1, 2, 3, 4])?;
    println!("shortened to length 4: k = {}, d_R = {:?}", s.k(), s.min_rank_distance()?);
    Ok(())
}
