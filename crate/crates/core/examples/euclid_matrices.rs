//! Integer matrices relating circle actions, and torus reduction.

use truncwitt::lattice::{euclid_factorize, torus_reduce};

fn main() -> truncwitt::Result<()> {
    let f = euclid_factorize(12, 18, 10)?;
    println!("g={} e={} d={}", f.g, f.e, f.d);
    println!("{}", serde_json::to_string_pretty(&f).unwrap());
    for (name, ok) in f.checks() {
        println!("  {name}: {ok}");
    }

    let t = torus_reduce(&[12, 18, 30, 7])?;
    println!("gcd {} via M = {:?}", t.g, t.m);
    Ok(())
}
