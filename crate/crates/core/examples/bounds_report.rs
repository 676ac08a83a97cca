//! Closed-form bounds for a few equations, with the strongest upper bound
//! selected, printed as JSON.

use sfl::bounds::bound_report;

fn main() -> sfl::Result<()> {
    for (p, q, n) in [(2, 1, 100), (2, 2, 100), (9, 3, 100), (5, 3, 100)] {
        let r = bound_report(p, q, n)?;
        println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
    }
    Ok(())
}
