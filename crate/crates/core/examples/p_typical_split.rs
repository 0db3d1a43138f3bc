//! Splitting a Witt vector over F_9 into p-typical factors and back.

use truncwitt::rings::Ring;
use truncwitt::truncation::closure;
use truncwitt::truncation::Point;
use truncwitt::witt::split::{assemble, factor_shape, p_typical_split};
use truncwitt::witt::WittVector;

fn main() -> truncwitt::Result<()> {
    let ring = Ring::finite_field(3, 2)?;
    let set = closure(&[Point::new(vec![9, 3])?, Point::new(vec![6, 2])?, Point::new(vec![4, 1])?])?;
    println!("S = {set}");
    for ((line, m), len) in factor_shape(&set, 3) {
        println!("  factor ({line}, {m}) has length {len}");
    }

    let gen = ring.generator(0).expect("F_9 has a generator");
    let x = WittVector::from_fn(&set, &ring, |p| ring.pow(&gen, p.coords()[0]));
    let y = WittVector::one(&set, &ring).mul_int(2);

    let (sx, sy) = (p_typical_split(&x, 3)?, p_typical_split(&y, 3)?);
    assert_eq!(p_typical_split(&x.mul(&y)?, 3)?, sx.mul(&sy)?);
    assert_eq!(assemble(&sx)?, x);
    println!("{} factors; products and round trip agree", sx.factors.len());
    Ok(())
}
