//! The reduced and full first pages for a three-variable example.

use truncwitt::ktheory::{e1_full, e1_hat, ProblemSpec};

fn main() -> truncwitt::Result<()> {
    let spec = ProblemSpec::new(5, 1, vec![2, 3, 2])?;

    let row = e1_hat(&spec, 2)?;
    println!("reduced row t={}", row.t);
    for col in &row.columns {
        let parts: Vec<String> = col.vertices.iter().map(|v| format!("{:?}: {}", v.axes, v.group)).collect();
        println!("  s={} |k|^{}  {}", col.s, col.exponent, parts.join(", "));
    }

    let page = e1_full(&spec, 2)?;
    for e in &page.entries {
        println!("E1[{}, {}] = {}", e.s, e.t, e.group);
    }
    println!("{}", page.order_note);
    Ok(())
}
