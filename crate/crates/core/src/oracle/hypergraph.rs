//! Conflict hypergraph on `[n]` and the exact search over its independent sets.
//!
//! Element `v` is bit `v - 1` of a `u64`. A set is solution-free exactly when
//! it contains no hyperedge, where the hyperedges are the value sets of the
//! nontrivial solutions.
//!
//! The search decides elements in ascending order. At every node it tries to
//! collapse the subtree: once no live hyperedge has two or more undecided
//! elements, every undecided element is independently either forbidden (a
//! live edge is complete except for it) or free, so the subtree holds exactly
//! `2^free` solution-free sets and one candidate maximal set.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::budget::{Budget, Meter, Ticker};
use crate::equations::{enumerate_solutions, l_triples, LinearEquation, PqEquation};
use crate::error::{Error, Result};

#[inline]
pub(crate) fn bit(v: u64) -> u64 {
    1u64 << (v - 1)
}

pub(crate) fn mask_of(set: &[u64]) -> u64 {
    set.iter().fold(0, |m, &v| m | bit(v))
}

pub(crate) fn elements_of(mask: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as u64;
        out.push(i + 1);
        m &= m - 1;
    }
    out
}

fn full_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Hyperedges of nontrivial solutions inside `[n]`, reduced to inclusion-minimal ones.
#[derive(Debug, Clone)]
pub struct ConflictHypergraph {
    n: u32,
    edges: Vec<u64>,
    covered: u64,
    /// For bit `i`: `edge \ {i}` over edges containing `i`.
    containing: Vec<Vec<u64>>,
    /// For bit `i`: `edge \ {i}` over edges whose highest bit is `i`.
    by_max: Vec<Vec<u64>>,
    /// For bit `d` (and `d = n`): edges whose highest bit is `>= d`.
    after: Vec<Vec<u64>>,
}

impl ConflictHypergraph {
    pub fn from_pq(eq: &PqEquation, n: u64) -> Result<Self> {
        check_width(n)?;
        let masks = l_triples(eq, n)
            .into_iter()
            .map(|t| {
                let [x, y, z] = t.elements();
                bit(x) | bit(y) | bit(z)
            })
            .collect();
        Ok(Self::from_masks(n as u32, masks))
    }

    pub fn from_linear(eq: &LinearEquation, n: u64, budget: &Budget) -> Result<Self> {
        check_width(n)?;
        let masks = enumerate_solutions(eq, n, budget)?
            .into_iter()
            .map(|s| mask_of(&s))
            .collect();
        Ok(Self::from_masks(n as u32, masks))
    }

    pub(crate) fn from_masks(n: u32, raw: HashSet<u64>) -> Self {
        let covered = raw.iter().fold(0, |a, &e| a | e);
        let mut edges: Vec<u64> = raw
            .iter()
            .copied()
            .filter(|&e| {
                // drop e if a proper nonempty subset is also an edge
                let mut sub = (e - 1) & e;
                while sub != 0 {
                    if raw.contains(&sub) {
                        return false;
                    }
                    sub = (sub - 1) & e;
                }
                true
            })
            .collect();
        edges.sort_unstable();

        let nn = n as usize;
        let mut containing = vec![Vec::new(); nn];
        let mut by_max = vec![Vec::new(); nn];
        let mut after = vec![Vec::new(); nn + 1];
        for &e in &edges {
            let top = 63 - e.leading_zeros() as usize;
            by_max[top].push(e & !(1u64 << top));
            let mut m = e;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                containing[i].push(e & !(1u64 << i));
                m &= m - 1;
            }
            for list in after.iter_mut().take(top + 1) {
                list.push(e);
            }
        }
        ConflictHypergraph {
            n,
            edges,
            covered,
            containing,
            by_max,
            after,
        }
    }

    pub fn n(&self) -> u64 {
        self.n as u64
    }

    pub fn edges(&self) -> &[u64] {
        &self.edges
    }

    pub fn full(&self) -> u64 {
        full_mask(self.n)
    }

    /// Elements lying in at least one nontrivial solution.
    pub fn covered(&self) -> u64 {
        self.covered
    }

    pub fn is_free(&self, set: u64) -> bool {
        !self.edges.iter().any(|&e| e & !set == 0)
    }

    /// Every element of `[n]` outside `set` would complete an edge if added.
    pub fn is_maximal(&self, set: u64) -> bool {
        let mut outside = self.full() & !set;
        while outside != 0 {
            let i = outside.trailing_zeros() as usize;
            if !self.containing[i].iter().any(|&rest| rest & !set == 0) {
                return false;
            }
            outside &= outside - 1;
        }
        true
    }
}

fn check_width(n: u64) -> Result<()> {
    if n > crate::budget::MAX_BITSET_N {
        return Err(Error::BudgetExceeded(format!(
            "n = {n} exceeds the 64-element subset representation"
        )));
    }
    Ok(())
}

/// Elements that must be in, and elements that may be in, every counted set.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Constraints {
    pub forced: u64,
    pub allowed: u64,
}

impl Constraints {
    pub(crate) fn none(h: &ConflictHypergraph) -> Self {
        Constraints {
            forced: 0,
            allowed: h.full(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    chosen: u64,
    rejected: u64,
    open: u64,
}

struct Search<'a> {
    h: &'a ConflictHypergraph,
    forced: u64,
}

impl<'a> Search<'a> {
    /// Root node, or `None` when the constraints already admit no set.
    fn root(h: &'a ConflictHypergraph, c: Constraints) -> (Self, Option<Node>) {
        let full = h.full();
        let forced = c.forced & full;
        let allowed = (c.allowed | forced) & full;
        let s = Search { h, forced };
        let node = Node {
            chosen: forced,
            rejected: full & !allowed,
            open: allowed & !forced,
        };
        if !h.is_free(forced) {
            return (s, None);
        }
        (s, Some(node))
    }

    #[inline]
    fn can_include(&self, i: usize, chosen: u64) -> bool {
        let lists = if self.forced == 0 {
            &self.h.by_max[i]
        } else {
            &self.h.containing[i]
        };
        !lists.iter().any(|&rest| rest & !chosen == 0)
    }

    #[inline]
    fn blockable(&self, i: usize, rejected: u64) -> bool {
        self.h.containing[i].iter().any(|&rest| rest & rejected == 0)
    }

    /// `Some(forbidden)` when the subtree below `node` collapses.
    #[inline]
    fn collapse(&self, node: &Node) -> Option<u64> {
        let d = node.open.trailing_zeros() as usize;
        let mut forbidden = 0;
        for &e in &self.h.after[d.min(self.h.n as usize)] {
            if e & node.rejected != 0 {
                continue;
            }
            let o = e & node.open;
            match o.count_ones() {
                0 => {}
                // the rest of a live edge is all chosen
                1 => forbidden |= o,
                _ => return None,
            }
        }
        Some(forbidden)
    }

    fn children(&self, node: &Node, include_ok: bool, exclude_ok: bool) -> [Option<Node>; 2] {
        let i = node.open.trailing_zeros();
        let b = 1u64 << i;
        let open = node.open & !b;
        let inc = include_ok.then_some(Node {
            chosen: node.chosen | b,
            rejected: node.rejected,
            open,
        });
        let exc = exclude_ok.then_some(Node {
            chosen: node.chosen,
            rejected: node.rejected | b,
            open,
        });
        [inc, exc]
    }

    fn count(&self, node: Node, t: &mut Ticker) -> Result<u128> {
        t.tick()?;
        if node.open == 0 {
            return Ok(1);
        }
        if let Some(forbidden) = self.collapse(&node) {
            return Ok(1u128 << (node.open & !forbidden).count_ones());
        }
        let i = node.open.trailing_zeros() as usize;
        let inc_ok = self.can_include(i, node.chosen);
        let mut total = 0u128;
        for child in self.children(&node, inc_ok, true).into_iter().flatten() {
            total += self.count(child, t)?;
        }
        Ok(total)
    }

    fn maximal(&self, node: Node, t: &mut Ticker, sink: &mut Option<&mut Vec<u64>>) -> Result<u128> {
        t.tick()?;
        let candidate = if node.open == 0 {
            Some(node.chosen)
        } else {
            self.collapse(&node)
                .map(|forbidden| node.chosen | (node.open & !forbidden))
        };
        if let Some(set) = candidate {
            if self.h.is_maximal(set) {
                if let Some(out) = sink.as_deref_mut() {
                    out.push(set);
                }
                return Ok(1);
            }
            return Ok(0);
        }
        let i = node.open.trailing_zeros() as usize;
        let inc_ok = self.can_include(i, node.chosen);
        let exc_ok = self.blockable(i, node.rejected | (1u64 << i));
        let mut total = 0u128;
        for child in self.children(&node, inc_ok, exc_ok).into_iter().flatten() {
            total += self.maximal(child, t, sink)?;
        }
        Ok(total)
    }

    fn best(&self, node: Node, t: &mut Ticker, best: &mut u64) -> Result<()> {
        t.tick()?;
        let have = node.chosen.count_ones();
        if have + node.open.count_ones() <= best.count_ones() {
            return Ok(());
        }
        if node.open == 0 {
            *best = node.chosen;
            return Ok(());
        }
        if let Some(forbidden) = self.collapse(&node) {
            let set = node.chosen | (node.open & !forbidden);
            if set.count_ones() > best.count_ones() {
                *best = set;
            }
            return Ok(());
        }
        let i = node.open.trailing_zeros() as usize;
        let inc_ok = self.can_include(i, node.chosen);
        for child in self.children(&node, inc_ok, true).into_iter().flatten() {
            self.best(child, t, best)?;
        }
        Ok(())
    }

    /// Expands the tree breadth-first until about `target` nodes are pending.
    /// Collapsed or finished nodes stay in the list; the workers handle them.
    fn frontier(&self, root: Node, target: usize, maximal: bool) -> Vec<Node> {
        let mut level = vec![root];
        for _ in 0..24 {
            if level.len() >= target {
                break;
            }
            let mut next = Vec::with_capacity(level.len() * 2);
            let mut grew = false;
            for node in level {
                if node.open == 0 || self.collapse(&node).is_some() {
                    next.push(node);
                    continue;
                }
                grew = true;
                let i = node.open.trailing_zeros() as usize;
                let inc_ok = self.can_include(i, node.chosen);
                let exc_ok = !maximal || self.blockable(i, node.rejected | (1u64 << i));
                next.extend(self.children(&node, inc_ok, exc_ok).into_iter().flatten());
            }
            level = next;
            if !grew {
                break;
            }
        }
        level
    }
}

const PARALLEL_TARGET: usize = 256;

impl ConflictHypergraph {
    /// Number of solution-free sets satisfying the constraints.
    pub(crate) fn count(&self, c: Constraints, meter: &Meter) -> Result<u128> {
        let (s, root) = Search::root(self, c);
        let Some(root) = root else { return Ok(0) };
        let nodes = s.frontier(root, PARALLEL_TARGET, false);
        nodes
            .into_par_iter()
            .map(|node| s.count(node, &mut Ticker::new(meter)))
            .try_reduce(|| 0u128, |a, b| Ok(a + b))
    }

    fn maximal_roots(&self, c: Constraints) -> Option<(Search<'_>, Node)> {
        let (s, root) = Search::root(self, c);
        let root = root?;
        // every pre-rejected element still needs a potential blocker
        let mut pre = root.rejected;
        while pre != 0 {
            let i = pre.trailing_zeros() as usize;
            if !s.blockable(i, root.rejected) {
                return None;
            }
            pre &= pre - 1;
        }
        Some((s, root))
    }

    /// Number of maximal solution-free subsets of `[n]` satisfying the constraints.
    pub(crate) fn count_maximal(&self, c: Constraints, meter: &Meter) -> Result<u128> {
        let Some((s, root)) = self.maximal_roots(c) else {
            return Ok(0);
        };
        let nodes = s.frontier(root, PARALLEL_TARGET, true);
        nodes
            .into_par_iter()
            .map(|node| s.maximal(node, &mut Ticker::new(meter), &mut None))
            .try_reduce(|| 0u128, |a, b| Ok(a + b))
    }

    /// The maximal sets themselves, sorted by mask.
    pub(crate) fn maximal_sets(&self, c: Constraints, meter: &Meter) -> Result<Vec<u64>> {
        let Some((s, root)) = self.maximal_roots(c) else {
            return Ok(Vec::new());
        };
        let nodes = s.frontier(root, PARALLEL_TARGET, true);
        let parts: Vec<Vec<u64>> = nodes
            .into_par_iter()
            .map(|node| {
                let mut out = Vec::new();
                s.maximal(node, &mut Ticker::new(meter), &mut Some(&mut out))?;
                Ok(out)
            })
            .collect::<Result<_>>()?;
        let mut all: Vec<u64> = parts.into_iter().flatten().collect();
        all.sort_unstable();
        Ok(all)
    }

    /// A largest solution-free set, starting from a known solution-free `seed`.
    pub(crate) fn largest(&self, seed: u64, meter: &Meter) -> Result<u64> {
        if !self.is_free(seed) {
            return Err(Error::InvalidInput("seed set is not solution-free".into()));
        }
        let (s, root) = Search::root(self, Constraints::none(self));
        let mut best = seed;
        if let Some(root) = root {
            s.best(root, &mut Ticker::new(meter), &mut best)?;
        }
        Ok(best)
    }

    /// A largest solution-free set satisfying the constraints, or `None` when
    /// no set does.
    pub(crate) fn largest_constrained(&self, c: Constraints, meter: &Meter) -> Result<Option<u64>> {
        let (s, root) = Search::root(self, c);
        let Some(root) = root else { return Ok(None) };
        let mut best = root.chosen;
        s.best(root, &mut Ticker::new(meter), &mut best)?;
        Ok(Some(best))
    }

    /// Greedy solution-free set built from the top element down.
    pub(crate) fn greedy_descending(&self) -> u64 {
        let mut set = 0u64;
        for i in (0..self.n as usize).rev() {
            let b = 1u64 << i;
            if !self.containing[i].iter().any(|&rest| rest & !set == 0) {
                set |= b;
            }
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq(p: u64, q: u64, n: u64) -> ConflictHypergraph {
        ConflictHypergraph::from_pq(&PqEquation::new(p, q).unwrap(), n).unwrap()
    }

    /// Power-set scan: (count, maximal count, max size).
    fn brute(h: &ConflictHypergraph) -> (u128, u128, u32) {
        let n = h.n();
        let mut count = 0;
        let mut maximal = 0;
        let mut best = 0;
        for s in 0..(1u64 << n) {
            if h.is_free(s) {
                count += 1;
                best = best.max(s.count_ones());
                let extendable = (0..n).any(|i| s & (1 << i) == 0 && h.is_free(s | (1 << i)));
                if !extendable {
                    maximal += 1;
                }
            }
        }
        (count, maximal, best)
    }

    #[test]
    fn minimalization_drops_supersets() {
        let raw: HashSet<u64> = [0b011, 0b111, 0b1100].into_iter().collect();
        let h = ConflictHypergraph::from_masks(4, raw);
        assert_eq!(h.edges(), &[0b011, 0b1100]);
        assert_eq!(h.covered(), 0b1111);
    }

    #[test]
    fn search_matches_power_set_scan() {
        let meter = Budget::default().meter();
        for (p, q) in [(2, 1), (2, 2), (3, 2), (1, 1), (3, 1)] {
            for n in 0..=14 {
                let h = pq(p, q, n);
                let (count, maximal, best) = brute(&h);
                let c = Constraints::none(&h);
                assert_eq!(h.count(c, &meter).unwrap(), count, "count p={p} q={q} n={n}");
                assert_eq!(h.count_maximal(c, &meter).unwrap(), maximal, "max p={p} q={q} n={n}");
                let l = h.largest(0, &meter).unwrap();
                assert!(h.is_free(l));
                assert_eq!(l.count_ones(), best, "mu p={p} q={q} n={n}");
            }
        }
    }

    #[test]
    fn constrained_counts_match_filtered_scan() {
        let meter = Budget::default().meter();
        let h = pq(2, 1, 12);
        for (forced, allowed) in [(0b1000u64, 0xff8), (0b1, 0xfff), (0b10_0000_0001, 0b1111_0000_0011)] {
            let mut count = 0u128;
            let mut maximal = 0u128;
            for s in 0..(1u64 << 12) {
                if s & forced == forced && s & !allowed == 0 && h.is_free(s) {
                    count += 1;
                    if h.is_maximal(s) {
                        maximal += 1;
                    }
                }
            }
            let c = Constraints { forced, allowed };
            assert_eq!(h.count(c, &meter).unwrap(), count);
            assert_eq!(h.count_maximal(c, &meter).unwrap(), maximal);
            assert_eq!(h.maximal_sets(c, &meter).unwrap().len() as u128, maximal);
        }
    }

    #[test]
    fn bit_helpers_round_trip() {
        let v = vec![1, 5, 64];
        assert_eq!(elements_of(mask_of(&v)), v);
    }
}
