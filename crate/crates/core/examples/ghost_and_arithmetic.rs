//! Witt vector arithmetic over a finite field, checked through the ghost map over Z.

use num_bigint::BigInt;
use truncwitt::rings::{Elem, Ring};
use truncwitt::truncation::TruncationSet;
use truncwitt::witt::universal::{universal_polys, Op};
use truncwitt::witt::WittVector;

fn main() -> truncwitt::Result<()> {
    let set = TruncationSet::interval(6);

    let z = Ring::integers();
    let x = WittVector::from_fn(&set, &z, |p| Elem::Int(BigInt::from(p.coords()[0] as i64 - 2)));
    let y = WittVector::from_fn(&set, &z, |p| Elem::Int(BigInt::from(p.coords()[0] % 3)));
    let sum = x.add(&y)?;
    println!("x + y = {}", sum.to_json());
    let ghost: Vec<String> = sum
        .ghost()
        .values()
        .map(|w| match w {
            Elem::Int(n) => n.to_string(),
            other => format!("{other:?}"),
        })
        .collect();
    println!("ghost(x + y) = [{}]", ghost.join(", "));

    let f3 = Ring::finite_field(3, 1)?;
    let one = WittVector::one(&set, &f3);
    let three = one.mul_int(3);
    println!("3 in W_6(F_3) = {}", three.to_json());

    for (k, poly) in universal_polys(&TruncationSet::interval(4), Op::Product)?.render() {
        println!("product at {k}: {poly}");
    }
    Ok(())
}
