//! Ground-truth computations by exact search: solution-freeness, the largest
//! solution-free size, counts of all and of maximal solution-free sets, counts
//! by minimum element, and the set of elements lying in no L-triple.

mod hypergraph;
mod stats;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::budget::Budget;
use crate::equations::{l_triples, LinearEquation, PqEquation};
use crate::error::{Error, Result};

pub use hypergraph::ConflictHypergraph;
pub(crate) use hypergraph::{elements_of, mask_of, Constraints};
pub use stats::{compute_stats, StatsFields, StatsRecord};

/// An equation the oracle can build a conflict hypergraph for.
pub trait Conflicts {
    fn conflicts(&self, n: u64, budget: &Budget) -> Result<ConflictHypergraph>;

    /// A solution-free set of `[n]` to seed the maximum search with.
    fn seed_set(&self, h: &ConflictHypergraph) -> u64 {
        h.greedy_descending()
    }

    /// Whether `set` contains a nontrivial solution (variables drawn from `set`,
    /// repetition allowed).
    fn is_solution_free(&self, set: &[u64]) -> Result<bool>;
}

impl Conflicts for PqEquation {
    fn conflicts(&self, n: u64, _budget: &Budget) -> Result<ConflictHypergraph> {
        ConflictHypergraph::from_pq(self, n)
    }

    fn seed_set(&self, h: &ConflictHypergraph) -> u64 {
        // the interval above n / (p + q)
        let n = h.n();
        let lo = n / (self.p() + self.q()) + 1;
        let interval = if lo > n { 0 } else { h.full() & !((1u64 << (lo - 1)) - 1) };
        if h.is_free(interval) {
            interval
        } else {
            h.greedy_descending()
        }
    }

    fn is_solution_free(&self, set: &[u64]) -> Result<bool> {
        let members: BTreeSet<u64> = set.iter().copied().collect();
        for &x in &members {
            for &y in &members {
                let z = self.p() as u128 * x as u128 + self.q() as u128 * y as u128;
                if z <= u64::MAX as u128 && members.contains(&(z as u64)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl Conflicts for LinearEquation {
    fn conflicts(&self, n: u64, budget: &Budget) -> Result<ConflictHypergraph> {
        ConflictHypergraph::from_linear(self, n, budget)
    }

    fn is_solution_free(&self, set: &[u64]) -> Result<bool> {
        let members: Vec<u64> = set.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let k = self.arity();
        let last = *self.coeffs().last().unwrap() as i128;
        let mut idx = vec![0usize; k - 1];
        if members.is_empty() {
            return Ok(true);
        }
        let lookup: BTreeSet<u64> = members.iter().copied().collect();
        let mut tuple = vec![0u64; k];
        loop {
            let mut rest = self.constant() as i128;
            for (j, &i) in idx.iter().enumerate() {
                tuple[j] = members[i];
                rest -= self.coeffs()[j] as i128 * members[i] as i128;
            }
            if rest % last == 0 {
                let v = rest / last;
                if v >= 1 && lookup.contains(&(v as u64)) {
                    tuple[k - 1] = v as u64;
                    if !crate::equations::is_trivial_solution(self, &tuple)? {
                        return Ok(false);
                    }
                }
            }
            let mut j = k - 1;
            loop {
                if j == 0 {
                    return Ok(true);
                }
                j -= 1;
                if idx[j] + 1 < members.len() {
                    idx[j] += 1;
                    idx[j + 1..].iter_mut().for_each(|v| *v = 0);
                    break;
                }
            }
        }
    }
}

fn check_subset(set: &[u64], n: u64) -> Result<()> {
    if let Some(&bad) = set.iter().find(|&&v| v == 0 || v > n) {
        return Err(Error::InvalidInput(format!("{bad} is not in [{n}]")));
    }
    Ok(())
}

/// Whether `set ⊆ [n]` is solution-free.
pub fn is_solution_free<E: Conflicts + ?Sized>(eq: &E, set: &[u64], n: u64) -> Result<bool> {
    check_subset(set, n)?;
    eq.is_solution_free(set)
}

/// A largest solution-free subset of `[n]`, by branch and bound.
pub fn largest_solution_free<E: Conflicts + ?Sized>(eq: &E, n: u64, budget: &Budget) -> Result<Vec<u64>> {
    budget.check_n("mu", n, budget.max_n_mu)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let h = eq.conflicts(n, budget)?;
    let meter = budget.meter();
    Ok(elements_of(h.largest(eq.seed_set(&h), &meter)?))
}

/// Size of the largest solution-free subset of `[n]`.
pub fn mu<E: Conflicts + ?Sized>(eq: &E, n: u64, budget: &Budget) -> Result<u64> {
    Ok(largest_solution_free(eq, n, budget)?.len() as u64)
}

/// Number of solution-free subsets of `[n]`, the empty set included.
pub fn count_solution_free<E: Conflicts + ?Sized>(eq: &E, n: u64, budget: &Budget) -> Result<BigUint> {
    budget.check_n("count", n, budget.max_n_count)?;
    if n == 0 {
        return Ok(BigUint::from(1u32));
    }
    let h = eq.conflicts(n, budget)?;
    let meter = budget.meter();
    Ok(BigUint::from(h.count(Constraints::none(&h), &meter)?))
}

/// Number of maximal solution-free subsets of `[n]`.
pub fn count_maximal<E: Conflicts + ?Sized>(eq: &E, n: u64, budget: &Budget) -> Result<BigUint> {
    budget.check_n("maximal", n, budget.max_n_maximal)?;
    if n == 0 {
        return Ok(BigUint::from(1u32));
    }
    let h = eq.conflicts(n, budget)?;
    let meter = budget.meter();
    Ok(BigUint::from(h.count_maximal(Constraints::none(&h), &meter)?))
}

/// The maximal solution-free subsets of `[n]`, each sorted, in mask order.
pub fn maximal_sets<E: Conflicts + ?Sized>(eq: &E, n: u64, budget: &Budget) -> Result<Vec<Vec<u64>>> {
    budget.check_n("maximal", n, budget.max_n_maximal)?;
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let h = eq.conflicts(n, budget)?;
    let meter = budget.meter();
    Ok(h.maximal_sets(Constraints::none(&h), &meter)?
        .into_iter()
        .map(elements_of)
        .collect())
}

/// Number of solution-free subsets of `[n]` whose minimum is `m`.
pub fn count_with_min<E: Conflicts + ?Sized>(eq: &E, n: u64, m: u64, budget: &Budget) -> Result<BigUint> {
    if m == 0 || m > n {
        return Err(Error::InvalidInput(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    budget.check_n("count", n, budget.max_n_count)?;
    let h = eq.conflicts(n, budget)?;
    let meter = budget.meter();
    let c = Constraints {
        forced: mask_of(&[m]),
        allowed: h.full() & !((1u64 << (m - 1)) - 1),
    };
    Ok(BigUint::from(h.count(c, &meter)?))
}

/// A largest solution-free subset of `[n]` whose minimum is `m`, or `None`
/// when `{m}` itself is not solution-free.
pub fn largest_with_min<E: Conflicts + ?Sized>(
    eq: &E,
    n: u64,
    m: u64,
    budget: &Budget,
) -> Result<Option<Vec<u64>>> {
    if m == 0 || m > n {
        return Err(Error::InvalidInput(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    budget.check_n("mu", n, budget.max_n_mu)?;
    let h = eq.conflicts(n, budget)?;
    let meter = budget.meter();
    let c = Constraints {
        forced: mask_of(&[m]),
        allowed: h.full() & !((1u64 << (m - 1)) - 1),
    };
    Ok(h.largest_constrained(c, &meter)?.map(elements_of))
}

/// `m -> f(n, L, m)` for every `m` in `[n]`.
pub fn counts_by_min<E: Conflicts + ?Sized>(
    eq: &E,
    n: u64,
    budget: &Budget,
) -> Result<BTreeMap<u64, BigUint>> {
    budget.check_n("count", n, budget.max_n_count)?;
    let h = eq.conflicts(n, budget)?;
    let meter = budget.meter();
    let mut out = BTreeMap::new();
    for m in 1..=n {
        let c = Constraints {
            forced: mask_of(&[m]),
            allowed: h.full() & !((1u64 << (m - 1)) - 1),
        };
        out.insert(m, BigUint::from(h.count(c, &meter)?));
    }
    Ok(out)
}

/// Number of `I ⊆ B` such that `S ∪ I` is a maximal solution-free subset of `[n]`.
///
/// `S` and `B` must be disjoint subsets of `[n]`.
pub fn extension_count<E: Conflicts + ?Sized>(
    eq: &E,
    n: u64,
    seed: &[u64],
    ground: &[u64],
    budget: &Budget,
) -> Result<BigUint> {
    check_subset(seed, n)?;
    check_subset(ground, n)?;
    let s = mask_of(seed);
    let b = mask_of(ground);
    if s & b != 0 {
        return Err(Error::InvalidInput("S and B must be disjoint".into()));
    }
    budget.check_n("maximal", n, budget.max_n_maximal)?;
    if n == 0 {
        return Ok(BigUint::from(1u32));
    }
    let h = eq.conflicts(n, budget)?;
    let meter = budget.meter();
    let c = Constraints {
        forced: s,
        allowed: s | b,
    };
    Ok(BigUint::from(h.count_maximal(c, &meter)?))
}

/// Elements of `[n]` lying in no L-triple.
pub fn m_set(eq: &PqEquation, n: u64) -> BTreeSet<u64> {
    let mut covered = BTreeSet::new();
    for t in l_triples(eq, n) {
        covered.extend(t.elements());
    }
    (1..=n).filter(|v| !covered.contains(v)).collect()
}

/// `|m_set(eq, n)|`.
pub fn mu_star(eq: &PqEquation, n: u64) -> u64 {
    m_set(eq, n).len() as u64
}

/// Elements of `[n]` lying in no nontrivial solution of a general equation.
pub fn uncovered_elements(eq: &LinearEquation, n: u64, budget: &Budget) -> Result<BTreeSet<u64>> {
    let h = ConflictHypergraph::from_linear(eq, n, budget)?;
    Ok((1..=n).filter(|&v| h.covered() & (1u64 << (v - 1)) == 0).collect())
}

/// Smallest `n0 <= hi` such that `oracle(n) == formula(n)` for every `n` in `[n0, hi]`.
///
/// Returns `None` when they disagree at `hi` itself.
pub fn agreement_threshold(
    hi: u64,
    mut oracle: impl FnMut(u64) -> Result<u64>,
    formula: impl Fn(u64) -> u64,
) -> Result<Option<u64>> {
    let mut n0 = None;
    for n in (0..=hi).rev() {
        if oracle(n)? != formula(n) {
            break;
        }
        n0 = Some(n);
    }
    Ok(n0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq(p: u64, q: u64) -> PqEquation {
        PqEquation::new(p, q).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn solution_free_examples() {
        let eq = pq(2, 1);
        assert!(is_solution_free(&eq, &[3, 4, 5, 6], 6).unwrap());
        assert!(!is_solution_free(&eq, &[1, 3], 6).unwrap());
        assert!(is_solution_free(&eq, &[], 6).unwrap());
        assert!(is_solution_free(&eq, &[7], 6).is_err());
        let lin = LinearEquation::homogeneous_from(&[2, 1, -1]).unwrap();
        assert!(!is_solution_free(&lin, &[1, 3], 6).unwrap());
        assert!(is_solution_free(&lin, &[3, 4, 5, 6], 6).unwrap());
    }

    #[test]
    fn mu_examples() {
        let b = Budget::default();
        assert_eq!(mu(&pq(2, 1), 6, &b).unwrap(), 4);
        assert_eq!(mu(&pq(2, 1), 12, &b).unwrap(), 8);
        assert_eq!(mu(&pq(3, 2), 0, &b).unwrap(), 0);
        let cap = Budget {
            max_n_mu: 10,
            ..Budget::default()
        };
        assert!(matches!(mu(&pq(2, 1), 11, &cap), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn count_examples() {
        let b = Budget::default();
        assert_eq!(count_solution_free(&pq(2, 1), 4, &b).unwrap(), big(11));
        assert_eq!(count_solution_free(&pq(2, 1), 0, &b).unwrap(), big(1));
        assert_eq!(count_solution_free(&pq(2, 2), 3, &b).unwrap(), big(8));
    }

    #[test]
    fn maximal_examples() {
        let b = Budget::default();
        assert_eq!(count_maximal(&pq(2, 1), 4, &b).unwrap(), big(3));
        assert_eq!(
            maximal_sets(&pq(2, 1), 4, &b).unwrap(),
            vec![vec![1, 2], vec![1, 4], vec![2, 3, 4]]
        );
        assert_eq!(count_maximal(&pq(2, 1), 2, &b).unwrap(), big(1));
        assert_eq!(
            maximal_sets(&pq(2, 2), 4, &b).unwrap(),
            vec![vec![1, 2, 3], vec![2, 3, 4]]
        );
    }

    #[test]
    fn count_with_min_examples() {
        let b = Budget::default();
        assert_eq!(count_with_min(&pq(2, 1), 10, 4, &b).unwrap(), big(64));
        assert_eq!(count_with_min(&pq(2, 1), 4, 3, &b).unwrap(), big(2));
        assert_eq!(count_with_min(&pq(2, 1), 4, 4, &b).unwrap(), big(1));
        assert!(count_with_min(&pq(2, 1), 4, 0, &b).is_err());
        assert!(count_with_min(&pq(2, 1), 4, 5, &b).is_err());
    }

    #[test]
    fn largest_with_min_matches_subset_scan() {
        let b = Budget::default();
        for (p, q) in [(2, 1), (2, 2), (3, 2)] {
            let eq = pq(p, q);
            for n in 1..=12u64 {
                for m in 1..=n {
                    let mut best = 0;
                    for mask in 0u64..(1 << n) {
                        if mask.trailing_zeros() as u64 != m - 1 {
                            continue;
                        }
                        let set = elements_of(mask);
                        if eq.is_solution_free(&set).unwrap() {
                            best = best.max(set.len());
                        }
                    }
                    let got = largest_with_min(&eq, n, m, &b).unwrap().unwrap();
                    assert_eq!(got.len(), best, "p={p} q={q} n={n} m={m}");
                    assert_eq!(got[0], m);
                    assert!(eq.is_solution_free(&got).unwrap());
                }
            }
        }
    }

    #[test]
    fn m_set_examples() {
        assert_eq!(m_set(&pq(2, 2), 10), [5, 7, 9].into_iter().collect());
        assert_eq!(mu_star(&pq(2, 2), 10), 3);
        assert!(m_set(&pq(2, 1), 6).is_empty());
        assert_eq!(m_set(&pq(4, 3), 6), (1..=6).collect());
    }

    #[test]
    fn extension_count_edges() {
        let b = Budget::default();
        let eq = pq(2, 1);
        // {2,3,4} is maximal in [4]; {2,3} is not
        assert_eq!(extension_count(&eq, 4, &[2, 3, 4], &[], &b).unwrap(), big(1));
        assert_eq!(extension_count(&eq, 4, &[2, 3], &[], &b).unwrap(), big(0));
        assert!(extension_count(&eq, 4, &[2], &[2, 3], &b).is_err());
        // S = {} and B = [n] is f_max
        assert_eq!(
            extension_count(&eq, 9, &[], &(1..=9).collect::<Vec<_>>(), &b).unwrap(),
            count_maximal(&eq, 9, &b).unwrap()
        );
    }

    #[test]
    fn per_min_sums_to_count() {
        let b = Budget::default();
        for (p, q) in [(2, 1), (3, 2), (2, 2)] {
            for n in 1..=20 {
                let per = counts_by_min(&pq(p, q), n, &b).unwrap();
                let sum: BigUint = per.values().sum();
                assert_eq!(sum + 1u32, count_solution_free(&pq(p, q), n, &b).unwrap());
            }
        }
    }

    #[test]
    fn linear_oracle_agrees_with_pq_oracle() {
        let b = Budget::default();
        for (p, q) in [(2, 1), (3, 2)] {
            let lin = pq(p, q).as_linear();
            for n in 1..=16 {
                assert_eq!(mu(&lin, n, &b).unwrap(), mu(&pq(p, q), n, &b).unwrap());
                assert_eq!(
                    count_solution_free(&lin, n, &b).unwrap(),
                    count_solution_free(&pq(p, q), n, &b).unwrap()
                );
                assert_eq!(
                    count_maximal(&lin, n, &b).unwrap(),
                    count_maximal(&pq(p, q), n, &b).unwrap()
                );
            }
        }
    }

    #[test]
    fn threshold_scan() {
        let t = agreement_threshold(10, |n| Ok(if n < 4 { 0 } else { n }), |n| n).unwrap();
        assert_eq!(t, Some(4));
        let none = agreement_threshold(3, |_| Ok(1), |_| 0).unwrap();
        assert_eq!(none, None);
    }
}
