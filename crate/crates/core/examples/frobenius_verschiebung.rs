//! Frobenius and Verschiebung along one axis of a two-dimensional set.

use num_bigint::BigInt;
use truncwitt::rings::{Elem, Ring};
use truncwitt::truncation::sq_set;
use truncwitt::witt::WittVector;

fn main() -> truncwitt::Result<()> {
    let z = Ring::integers();
    let set = sq_set(&[2, 2], 2, &[0, 1])?;
    let x = WittVector::from_fn(&set, &z, |p| Elem::Int(BigInt::from(p.coords().iter().sum::<u64>() as i64)));

    let small = set.quotient(0, 2)?;
    println!("S = {set}\nS/2 along axis 1 = {small}");

    let fx = x.frobenius(0, 2)?;
    println!("F(x) = {}", fx.to_json());

    // V lands back in S; F V is multiplication by an integer on each line
    let vfx = fx.verschiebung(&set, 0, 2)?;
    println!("V(F(x)) = {}", vfx.to_json());
    println!("F(V(F(x))) = {}", vfx.frobenius(0, 2)?.to_json());
    Ok(())
}
