//! Rational rank series from the closed form and from lattice point counts.

use truncwitt::zrank::{all_vertices, k_rational_series, k_rational_series_oracle, tc_vertex_series};

fn main() -> truncwitt::Result<()> {
    let a = [2, 3, 2];
    let k = k_rational_series(&a, 12)?;
    assert_eq!(k, k_rational_series_oracle(&a, 12)?);
    print!("{}", k.to_csv());

    for axes in all_vertices(a.len()) {
        let v = tc_vertex_series(&a, &axes, 8)?;
        println!("I={axes:?}: {:?}", v.rows());
    }
    Ok(())
}
