//! Explicit link graphs with many maximal independent sets, giving lower
//! bounds on `f_max`: disjoint triangles for `px + y = z`, and an induced
//! matching for `px + qy = z` with `p >= q >= 2`.
//!
//! Every step the bounds rely on is checked on the built graph rather than
//! assumed, and infeasible parameters are reported with the failing inequality.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::budget::Budget;
use crate::equations::PqEquation;
use crate::error::{Error, Result};
use crate::rational::ratio_string;

use super::{build_link, check_mis_bounds, count_mis, LinkGraph, MisBoundCheck};

fn decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

fn rational<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(v))
}

/// `L_{{s, 2s}}[a + 1, a + 3ps]` for `px + y = z`, with
/// `s = ⌊(p-1)n / (3p^2-1)⌋` and `a = ⌊(n-s)/p⌋`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleConstruction {
    pub p: u64,
    pub n: u64,
    pub s: u64,
    pub a: u64,
    pub seed: [u64; 2],
    /// The ground interval `[a + 1, a + 3ps]`.
    pub ground: (u64, u64),
    /// `{a+i, a+i+ps, a+i+2ps}` for `i` in `[ps]`.
    pub triangles: Vec<[u64; 3]>,
    /// `{(p+1)s, (p+2)s, (2p+1)s, (2p+2)s}` intersected with the ground interval.
    pub loop_candidates: Vec<u64>,
    pub graph: LinkGraph,
    /// The edge set is exactly the union of the triangles.
    pub exact_triangles: bool,
    pub loops_within_candidates: bool,
    /// Triangles with at least one looped vertex.
    pub affected_triangles: u64,
    #[serde(serialize_with = "decimal")]
    pub mis_count: BigUint,
    /// `mis_count >= 3^(ps - affected_triangles)`.
    pub count_ok: bool,
    pub mis_bounds: MisBoundCheck,
    /// The closed-form exponent `e` of the lower bound `f_max >= 3^e`.
    #[serde(serialize_with = "rational")]
    pub lower_exponent: BigRational,
}

impl TriangleConstruction {
    pub fn verified(&self) -> bool {
        self.exact_triangles && self.loops_within_candidates && self.count_ok && self.mis_bounds.holds()
    }
}

/// Builds and checks the disjoint-triangle link graph for `px + y = z`.
pub fn triangle_construction(p: u64, n: u64, budget: &Budget) -> Result<TriangleConstruction> {
    if p < 2 {
        return Err(Error::Domain(format!("need p >= 2, got p = {p}")));
    }
    let s = (p - 1)
        .checked_mul(n)
        .ok_or(Error::Overflow("triangle construction"))?
        / (3 * p * p - 1);
    if s == 0 {
        return Err(Error::Infeasible(format!(
            "s = floor((p-1)n/(3p^2-1)) = 0 for p = {p}, n = {n}"
        )));
    }
    let a = (n - s) / p;
    let top = a + 3 * p * s;
    if 2 * s > a {
        return Err(Error::Infeasible(format!(
            "seed {{{s}, {}}} is not below the ground interval starting at {}",
            2 * s,
            a + 1
        )));
    }
    if top > n {
        return Err(Error::Infeasible(format!("ground interval ends at a + 3ps = {top} > n = {n}")));
    }
    // [a+1, top] is solution-free iff (p+1)(a+1) > top
    if (p + 1) * (a + 1) <= top {
        return Err(Error::Infeasible(format!(
            "ground interval [{}, {top}] is not solution-free",
            a + 1
        )));
    }
    let eq = PqEquation::new(p, 1)?;
    if !crate::oracle::is_solution_free(&eq, &[s, 2 * s], n)? {
        return Err(Error::Infeasible(format!("seed {{{s}, {}}} is not solution-free", 2 * s)));
    }
    let ground: Vec<u64> = (a + 1..=top).collect();
    let graph = build_link(&eq, &[s, 2 * s], &ground)?;

    let ps = p * s;
    let triangles: Vec<[u64; 3]> = (1..=ps).map(|i| [a + i, a + i + ps, a + i + 2 * ps]).collect();
    let expected_edges: std::collections::BTreeSet<(u64, u64)> = triangles
        .iter()
        .flat_map(|&[x, y, z]| [(x, y), (y, z), (x, z)])
        .collect();
    let exact_triangles = graph.edges() == &expected_edges;
    let loop_candidates: Vec<u64> = [p + 1, p + 2, 2 * p + 1, 2 * p + 2]
        .into_iter()
        .map(|c| c * s)
        .filter(|v| (a + 1..=top).contains(v))
        .collect();
    let loops_within_candidates = graph.loops().iter().all(|v| loop_candidates.contains(v));
    let affected_triangles = triangles
        .iter()
        .filter(|t| t.iter().any(|v| graph.has_loop(*v)))
        .count() as u64;
    let mis_count = count_mis(&graph, budget)?;
    let count_ok = mis_count >= BigUint::from(3u32).pow((ps - affected_triangles) as u32);
    let mis_bounds = check_mis_bounds(&graph, budget)?;
    let lower_exponent = crate::bounds::msf2_lower(p, n)?;
    Ok(TriangleConstruction {
        p,
        n,
        s,
        a,
        seed: [s, 2 * s],
        ground: (a + 1, top),
        triangles,
        loop_candidates,
        graph,
        exact_triangles,
        loops_within_candidates,
        affected_triangles,
        mis_count,
        count_ok,
        mis_bounds,
        lower_exponent,
    })
}

/// The four conditions under which `G[I ∪ J]` is a perfect matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatchingConditions {
    /// (1) `qa + p > b`: `I` and `J` are disjoint.
    pub disjoint: bool,
    /// (2) `qb + p <= n`: `J ⊆ [n]`.
    pub images_in_range: bool,
    /// (3) `pa + q > n`: the only edges at `I` are `{i, qi + p}`.
    pub single_edge_form: bool,
    /// (3) is not needed when `p = q`, where both edge forms coincide.
    pub single_edge_form_waived: bool,
    /// (4) `p + q < a`: no looped vertex in `I ∪ J`.
    pub loop_free: bool,
}

impl MatchingConditions {
    /// Conditions (1), (2) and, unless waived, (3).
    pub fn required_hold(&self) -> bool {
        self.disjoint && self.images_in_range && (self.single_edge_form || self.single_edge_form_waived)
    }
}

/// An interval `I = [a, b]` and `J = {qi + p : i ∈ I}` inside the link graph
/// `L_{{1}}[⌊n/(p+q)⌋ + 1, n]`, which should induce a perfect matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingConstruction {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub a: u64,
    pub b: u64,
    /// The ground interval of the link graph.
    pub ground: (u64, u64),
    pub i: Vec<u64>,
    pub j: Vec<u64>,
    /// The closed-form exponent `ℓ` of `f_max >= 2^ℓ`.
    #[serde(serialize_with = "rational")]
    pub ell: BigRational,
    pub conditions: MatchingConditions,
    /// Edges `{i, qi + p}`, less the one at a looped vertex when (4) fails.
    pub matching: Vec<(u64, u64)>,
    pub achieved: u64,
    /// `I ∪ J` lies in the ground interval and the matched vertices induce
    /// exactly the matching edges and no loops.
    pub induced: bool,
    /// `achieved >= ⌈ℓ⌉`.
    pub meets_ell: bool,
    /// The induced subgraph on the matched vertices.
    pub graph: LinkGraph,
    pub mis_bounds: MisBoundCheck,
}

impl MatchingConstruction {
    pub fn verified(&self) -> bool {
        self.conditions.required_hold() && self.induced && self.meets_ell && self.mis_bounds.holds()
    }
}

/// Builds and checks the induced matching for `px + qy = z`, `p >= q >= 2`, `n > 2p`.
pub fn matching_construction(p: u64, q: u64, n: u64, budget: &Budget) -> Result<MatchingConstruction> {
    if q < 2 || p < q {
        return Err(Error::Domain(format!("need p >= q >= 2, got p = {p}, q = {q}")));
    }
    if n <= 2 * p {
        return Err(Error::Infeasible(format!("need n > 2p, got n = {n}, p = {p}")));
    }
    let eq = PqEquation::new(p, q)?;
    let ell = crate::bounds::msf6_lower(p, q, n)?;
    let low = n / (p + q) + 1;
    let b = (n - p) / q;
    let a = if p >= q * q {
        (n - q) / (q * q) + 1
    } else if p > q {
        (n - q) / p + 1
    } else {
        low
    };
    let conditions = MatchingConditions {
        disjoint: q * a + p > b,
        images_in_range: q * b + p <= n,
        single_edge_form: p * a + q > n,
        single_edge_form_waived: p == q,
        loop_free: p + q < a,
    };
    let i: Vec<u64> = (a..=b).collect();
    let j: Vec<u64> = i.iter().map(|&x| q * x + p).collect();
    let looped = (!conditions.loop_free && (a..=b).contains(&(p + q))).then_some(p + q);
    let matching: Vec<(u64, u64)> = i
        .iter()
        .zip(&j)
        .filter(|(x, _)| Some(**x) != looped)
        .map(|(&x, &y)| (x, y))
        .collect();
    let achieved = matching.len() as u64;

    let in_ground = |v: &u64| (low..=n).contains(v);
    let full = build_link(&eq, &[1], &(low..=n).collect::<Vec<_>>())?;
    let graph = full.induced(matching.iter().flat_map(|&(x, y)| [x, y]));
    let induced = i.iter().chain(&j).all(in_ground)
        && graph.vertex_count() == 2 * matching.len()
        && graph.loops().is_empty()
        && graph.edges().len() == matching.len()
        && matching.iter().all(|&(x, y)| graph.has_edge(x, y));
    let meets_ell = BigInt::from(achieved) >= ell.ceil().to_integer();
    let mis_bounds = check_mis_bounds(&graph, budget)?;
    Ok(MatchingConstruction {
        p,
        q,
        n,
        a,
        b,
        ground: (low, n),
        i,
        j,
        ell,
        conditions,
        matching,
        achieved,
        induced,
        meets_ell,
        graph,
        mis_bounds,
    })
}

/// `n` values in `[lo, hi]` where the triangle construction is feasible.
pub fn feasible_triangle_sizes(p: u64, lo: u64, hi: u64) -> Vec<u64> {
    let budget = Budget::default();
    (lo..=hi)
        .filter(|&n| triangle_construction(p, n, &budget).is_ok())
        .collect()
}
