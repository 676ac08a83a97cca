//! Builds a link graph, names the L-triple behind each edge and loop, and
//! counts its maximal independent sets against the general and triangle-free
//! bounds.

use sfl::equations::PqEquation;
use sfl::linkgraph::{build_link, check_mis_bounds, enumerate_mis};
use sfl::Budget;

fn main() -> sfl::Result<()> {
    let eq = PqEquation::new(3, 2)?;
    let seed = [2, 5];
    let ground: Vec<u64> = (11..=30).collect();
    let g = build_link(&eq, &seed, &ground)?;
    println!("link graph of {seed:?} on [11, 30] for 3x + 2y = z");
    for &(u, v) in g.edges() {
        let w = g.edge_witness(&eq, u, v).expect("every edge has a witness");
        println!("  edge {u}-{v} from {w}");
    }
    for &x in g.loops() {
        let w = g.loop_witness(&eq, x).expect("every loop has a witness");
        println!("  loop at {x} from {w}");
    }
    let budget = Budget::default();
    let check = check_mis_bounds(&g, &budget)?;
    println!(
        "{} vertices, triangle-free: {}, maximal independent sets: {} (bounds hold: {})",
        check.vertices,
        check.triangle_free,
        check.count,
        check.holds()
    );
    for set in enumerate_mis(&g, &budget)?.iter().take(5) {
        println!("  {set:?}");
    }
    Ok(())
}
