//! The graph `G_m` on `[m, n]`: its path census from the recursion, its
//! independence number and independent-set counts, and the structural bound.

use sfl::pathgraph::{build_gm, count_is_gm, decompose, max_is_gm, structure_bound};

fn main() -> sfl::Result<()> {
    let (p, q, n) = (2, 2, 30);
    let base = n / (p + q);
    for m in 1..=base {
        let d = decompose(p, q, n, m)?;
        let g = build_gm(p, q, n, m)?;
        let counts = count_is_gm(p, q, n, m)?;
        let bound = structure_bound(p, q, n, base - m)?;
        println!(
            "m = {m}: k = {}, paths by length {:?} (built graph agrees: {}), max independent set {}, \
             independent sets {} ({} through m), case {} bound {} (guaranteed {})",
            d.k,
            d.nonzero_counts(),
            d.nonzero_counts() == g.census(),
            max_is_gm(p, q, n, m)?,
            counts.total,
            counts.containing_m,
            bound.case.number(),
            bound.bound,
            bound.guaranteed,
        );
    }
    Ok(())
}
