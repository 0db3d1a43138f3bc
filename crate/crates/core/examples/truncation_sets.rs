//! Building truncation sets and checking the size of `S_q(I)`.

use truncwitt::truncation::{cardinality_formula, closure, sq_set, Point};

fn main() -> truncwitt::Result<()> {
    let s = closure(&[Point::new(vec![4, 6])?, Point::new(vec![3, 1])?])?;
    println!("closure of (4,6), (3,1): {s}");
    for (line, mults) in s.decompose().lines() {
        println!("  line through {line}: {mults:?}");
    }

    let a = [2, 3];
    for q in 1..=3 {
        for axes in [vec![], vec![0], vec![1], vec![0, 1]] {
            let set = sq_set(&a, q, &axes)?;
            println!("q={q} I={axes:?}: {} points (formula {})", set.len(), cardinality_formula(&a, q, &axes)?);
        }
    }
    Ok(())
}
