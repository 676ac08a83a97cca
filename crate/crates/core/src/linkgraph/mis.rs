//! Maximal independent sets by Bron–Kerbosch with pivoting on bitsets.
//!
//! Looped vertices are never independent, so they are deleted first. The count
//! of a disjoint union is the product of the counts of its components, so each
//! connected component is searched on its own.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::budget::{Budget, Meter, Ticker};
use crate::error::{Error, Result};

use super::LinkGraph;

/// Most maximal independent sets [`enumerate_mis`] will materialize.
pub const MAX_ENUMERATED: u64 = 1 << 22;

/// A component as local bitsets: `closed[i]` is the closed neighbourhood of
/// vertex `labels[i]`.
struct Component {
    labels: Vec<u64>,
    closed: Vec<u64>,
}

fn components(g: &LinkGraph, budget: &Budget) -> Result<Vec<Component>> {
    let g = g.without_loops();
    let adj = g.adjacency();
    let mut out = Vec::new();
    for labels in g.components() {
        if labels.len() > budget.max_mis_vertices.min(64) {
            return Err(Error::BudgetExceeded(format!(
                "component with {} vertices exceeds the MIS cap {}",
                labels.len(),
                budget.max_mis_vertices.min(64)
            )));
        }
        let index = |v: &u64| labels.binary_search(v).expect("neighbour in component");
        let closed = labels
            .iter()
            .enumerate()
            .map(|(i, v)| adj[v].iter().fold(1u64 << i, |m, w| m | 1u64 << index(w)))
            .collect();
        out.push(Component { labels, closed });
    }
    Ok(out)
}

/// Calls `visit` once per maximal independent set of the component, given as
/// a local bitset. `r` is the current set, `p` the candidates, `x` the
/// vertices already branched on.
fn bron_kerbosch(
    closed: &[u64],
    r: u64,
    mut p: u64,
    mut x: u64,
    t: &mut Ticker,
    visit: &mut dyn FnMut(u64),
) -> Result<()> {
    t.tick()?;
    if p == 0 {
        if x == 0 {
            visit(r);
        }
        return Ok(());
    }
    // every maximal extension meets the closed neighbourhood of any vertex
    // of P ∪ X, so branch on the smallest such intersection with P
    let mut pivot = 0;
    let mut fewest = u32::MAX;
    let mut rest = p | x;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        let c = (p & closed[u]).count_ones();
        if c < fewest {
            fewest = c;
            pivot = u;
        }
        rest &= rest - 1;
    }
    let mut branch = p & closed[pivot];
    while branch != 0 {
        let v = branch.trailing_zeros() as usize;
        let b = 1u64 << v;
        bron_kerbosch(closed, r | b, p & !closed[v], x & !closed[v], t, visit)?;
        p &= !b;
        x |= b;
        branch &= branch - 1;
    }
    Ok(())
}

fn full(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn component_count(c: &Component, meter: &Meter) -> Result<u64> {
    let mut count = 0u64;
    bron_kerbosch(&c.closed, 0, full(c.labels.len()), 0, &mut Ticker::new(meter), &mut |_| {
        count += 1
    })?;
    Ok(count)
}

fn component_sets(c: &Component, meter: &Meter) -> Result<Vec<Vec<u64>>> {
    let mut sets = Vec::new();
    bron_kerbosch(&c.closed, 0, full(c.labels.len()), 0, &mut Ticker::new(meter), &mut |m| {
        let mut set = Vec::with_capacity(m.count_ones() as usize);
        let mut rest = m;
        while rest != 0 {
            set.push(c.labels[rest.trailing_zeros() as usize]);
            rest &= rest - 1;
        }
        sets.push(set);
    })?;
    sets.sort_unstable();
    Ok(sets)
}

/// Number of maximal independent sets of `g` after deleting looped vertices.
///
/// Each connected component may have at most `budget.max_mis_vertices` vertices.
pub fn count_mis(g: &LinkGraph, budget: &Budget) -> Result<BigUint> {
    let meter = budget.meter();
    let mut total = BigUint::one();
    for c in components(g, budget)? {
        total *= component_count(&c, &meter)?;
    }
    Ok(total)
}

/// The maximal independent sets of `g` after deleting looped vertices, each
/// sorted ascending, listed in lexicographic order.
pub fn enumerate_mis(g: &LinkGraph, budget: &Budget) -> Result<Vec<Vec<u64>>> {
    let meter = budget.meter();
    let comps = components(g, budget)?;
    let mut per = Vec::with_capacity(comps.len());
    let mut total: u128 = 1;
    for c in &comps {
        let sets = component_sets(c, &meter)?;
        total = total.saturating_mul(sets.len() as u128);
        if total > MAX_ENUMERATED as u128 {
            return Err(Error::BudgetExceeded(format!(
                "more than {MAX_ENUMERATED} maximal independent sets"
            )));
        }
        per.push(sets);
    }
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for sets in per {
        out = out
            .iter()
            .flat_map(|prefix| {
                sets.iter().map(move |s| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(s);
                    v
                })
            })
            .collect();
    }
    for s in &mut out {
        s.sort_unstable();
    }
    out.sort_unstable();
    Ok(out)
}

/// Maximal independent set count of a graph checked against the general
/// bound `3^(v/3)` and, when the graph is triangle-free, `2^(v/2)`. Here `v`
/// counts every vertex, looped ones included; deleting them only lowers the
/// count, so both bounds still apply. The comparisons are exact:
/// `count^3 <= 3^v` and `count^2 <= 2^v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MisBoundCheck {
    pub vertices: u64,
    #[serde(serialize_with = "decimal")]
    pub count: BigUint,
    pub general_ok: bool,
    pub triangle_free: bool,
    /// `None` when the graph has a triangle and the bound does not apply.
    pub triangle_free_ok: Option<bool>,
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

impl MisBoundCheck {
    pub fn holds(&self) -> bool {
        self.general_ok && self.triangle_free_ok != Some(false)
    }
}

pub fn check_mis_bounds(g: &LinkGraph, budget: &Budget) -> Result<MisBoundCheck> {
    let count = count_mis(g, budget)?;
    let v = g.vertex_count() as u32;
    let triangle_free = g.is_triangle_free();
    let general_ok = count.pow(3) <= BigUint::from(3u32).pow(v);
    let triangle_free_ok = triangle_free.then(|| count.pow(2) <= BigUint::one() << v);
    Ok(MisBoundCheck {
        vertices: v as u64,
        count,
        general_ok,
        triangle_free,
        triangle_free_ok,
    })
}
