//! The two explicit lower-bound constructions: disjoint triangles for
//! `px + y = z` and an induced matching for `p >= q >= 2`.

use sfl::linkgraph::{feasible_triangle_sizes, matching_construction, triangle_construction};
use sfl::Budget;

fn main() -> sfl::Result<()> {
    let budget = Budget::default();
    let t = triangle_construction(2, 110, &budget)?;
    println!(
        "triangles, p = 2, n = 110: s = {}, a = {}, ground [{}, {}], {} triangles, loops {:?}, \
         {} maximal independent sets, lower exponent 3^({}), verified {}",
        t.s,
        t.a,
        t.ground.0,
        t.ground.1,
        t.triangles.len(),
        t.graph.loops(),
        t.mis_count,
        t.lower_exponent,
        t.verified()
    );
    println!("feasible n for p = 3 in [1, 60]: {:?}", feasible_triangle_sizes(3, 1, 60));
    for (p, q, n) in [(2, 2, 36), (4, 2, 40), (3, 2, 40)] {
        let m = matching_construction(p, q, n, &budget)?;
        println!(
            "matching, ({p}, {q}, {n}): I = [{}, {}], matching of {} edges (needs {}), induced {}, verified {}",
            m.a,
            m.b,
            m.achieved,
            m.ell,
            m.induced,
            m.verified()
        );
    }
    Ok(())
}
