//! Closed-form groups against brute-force enumeration, plus the order formula.

use truncwitt::ktheory::{khat_brute, khat_group, khat_report, ktilde_groups, ProblemSpec, DEFAULT_BUDGET};

fn main() -> truncwitt::Result<()> {
    for (p, f, a) in [(3, 1, vec![2]), (2, 1, vec![3]), (5, 1, vec![2, 3]), (2, 2, vec![3])] {
        let spec = ProblemSpec::new(p, f, a)?;
        for q in 1..=3 {
            let g = khat_group(&spec, q)?;
            let brute = match khat_brute(&spec, q, DEFAULT_BUDGET) {
                Ok(b) => b.to_string(),
                Err(e) => format!("skipped ({e})"),
            };
            println!("{spec} q={q}: {g}   brute: {brute}");
        }
    }

    let spec = ProblemSpec::new(3, 1, vec![2, 2])?;
    let report = khat_report(&spec, 1, Some(DEFAULT_BUDGET))?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    println!("reduced K in degree 3: {}", ktilde_groups(&spec, 3)?);
    Ok(())
}
