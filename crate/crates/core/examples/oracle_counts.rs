//! Exact oracle values for `px + qy = z`: the largest solution-free size, the
//! number of solution-free and maximal solution-free subsets, and the number
//! of elements in no L-triple, next to the closed forms.

use sfl::bounds::{mu_formula, mu_star_formula};
use sfl::equations::PqEquation;
use sfl::oracle::{count_maximal, count_solution_free, mu, mu_star, largest_solution_free};
use sfl::Budget;

fn main() -> sfl::Result<()> {
    let budget = Budget::default();
    for (p, q) in [(2, 1), (2, 2), (3, 2)] {
        let eq = PqEquation::new(p, q)?;
        println!("{p}x + {q}y = z");
        println!("   n  mu  formula  mu*  formula        f    f_max");
        for n in (4..=24).step_by(4) {
            println!(
                "{n:>4} {:>3} {:>8} {:>4} {:>8} {:>8} {:>8}",
                mu(&eq, n, &budget)?,
                mu_formula(p, q, n)?,
                mu_star(&eq, n),
                mu_star_formula(p, q, n)?,
                count_solution_free(&eq, n, &budget)?,
                count_maximal(&eq, n, &budget)?,
            );
        }
        println!("a largest solution-free subset of [24]: {:?}", largest_solution_free(&eq, 24, &budget)?);
    }
    Ok(())
}
