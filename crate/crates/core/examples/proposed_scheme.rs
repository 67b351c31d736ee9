//! Build the standard nested coset scheme, encode a secret and read it back.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankguard::config::{self, SchemeJson};
use rankguard::coset_scheme::NestedScheme;
use rankguard::FieldCtx;

fn main() -> rankguard::Result<()> {
    let ctx = Arc::new(FieldCtx::binary(5)?);
    let s = NestedScheme::build_proposed(ctx, 2, 3, 3)?;
    println!("l = {}, n = {}, dim C1 = {}, dim C2 = {}", s.l(), s.n(), s.c1().k(), s.c2().k());

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let msg = s.message(77);
    let x = s.encode(&msg, &mut rng)?;
    println!("secret {:?} -> packet {:?}", msg, x);
    assert_eq!(s.message_of(&x).as_deref(), Some(&msg[..]));

    println!("{}", config::to_json_pretty(&SchemeJson::from_scheme(&s)));
    Ok(())
}
