//! Arithmetic in F_16 and F_9, plus the rank weight of a vector over F_16.

use rankguard::{ExtElement, Field, FieldCtx};

fn main() -> rankguard::Result<()> {
    let f16 = FieldCtx::binary(4)?;
    let a = f16.alpha();
    let b = f16.add(a, f16.one());
    println!("F_16: alpha = {:?}, alpha + 1 = {:?}", f16.coeffs(a), f16.coeffs(b));
    println!("alpha * (alpha + 1) = {:?}", f16.coeffs(f16.mul(a, b)));
    println!("alpha^-1 = {:?}", f16.coeffs(f16.inv(a).unwrap()));
    println!("frobenius(alpha) = {:?}", f16.coeffs(f16.frobenius(a, 1)));

    let x = [f16.one(), a, b, ExtElement::ZERO];
    println!("rank weight of (1, a, a+1, 0) = {}", f16.rank_weight(&x));

    let f9 = FieldCtx::new(3, 2, &[1, 0, 1])?;
    let c = f9.alpha();
    println!("F_9: alpha^2 = {:?}, alpha^8 = {:?}", f9.coeffs(f9.mul(c, c)), f9.coeffs(f9.pow(c, 8)));
    Ok(())
}
