//! Lists the L-triples of `2x + y = z` inside [12] and tests a few sets for
//! being solution-free.

use sfl::equations::{l_triples, PqEquation};
use sfl::oracle::is_solution_free;

fn main() -> sfl::Result<()> {
    let eq = PqEquation::new(2, 1)?;
    let n = 12;
    let triples = l_triples(&eq, n);
    println!("{} L-triples of 2x + y = z in [{n}]:", triples.len());
    for t in &triples {
        print!("{t} ");
    }
    println!();
    for set in [vec![3, 4, 5, 6], vec![1, 2, 4], vec![7, 8, 9, 10, 11, 12]] {
        println!("{set:?} solution-free: {}", is_solution_free(&eq, &set, n)?);
    }
    Ok(())
}
