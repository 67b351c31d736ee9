//! Seeded Monte Carlo run over random channels, printed as CSV.

use std::sync::Arc;

use rankguard::coset_scheme::NestedScheme;
use rankguard::decoder;
use rankguard::FieldCtx;

fn main() -> rankguard::Result<()> {
    let s = NestedScheme::build_proposed(Arc::new(FieldCtx::binary(5)?), 1, 4, 1)?;
    let rows = decoder::simulate(&s, 4, 1, 1, 20, 2024)?;
    print!("{}", decoder::trials_csv(&rows));
    let ok = rows.iter().filter(|r| r.success).count();
    eprintln!("{ok}/{} decoded", rows.len());
    Ok(())
}
