//! The auxiliary graph `G_m` on `[m, n]` with edges `{c, pm + qc}`, its
//! decomposition into paths, and the bounds built on it: the maximum size of
//! a solution-free set with a given minimum, counts of its independent sets,
//! and the per-minimum count bounds.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::Serialize;

use crate::bounds::mu_formula;
use crate::error::{Error, Result};
use crate::rational::{int, le_scaled_pow2, ratio, ratio_to_f64, RationalBound};

fn check_pq(p: u64, q: u64) -> Result<()> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidEquation(format!("need p, q >= 1, got p = {p}, q = {q}")));
    }
    Ok(())
}

fn check_main(p: u64, q: u64) -> Result<()> {
    check_pq(p, q)?;
    if q > p || p < 2 {
        return Err(Error::Domain(format!("need p >= q and p >= 2, got p = {p}, q = {q}")));
    }
    Ok(())
}

fn check_m(n: u64, m: u64) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::InvalidInput(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    Ok(())
}

/// `G_m` with its vertices `[m, n]` and edges `(c, pm + qc)` listed by `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GmGraph {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub m: u64,
    pub edges: Vec<(u64, u64)>,
}

pub fn build_gm(p: u64, q: u64, n: u64, m: u64) -> Result<GmGraph> {
    check_pq(p, q)?;
    check_m(n, m)?;
    let mut edges = Vec::new();
    for c in m..=n {
        let up = p as u128 * m as u128 + q as u128 * c as u128;
        if up > n as u128 {
            break;
        }
        edges.push((c, up as u64));
    }
    Ok(GmGraph { p, q, n, m, edges })
}

impl GmGraph {
    pub fn vertex_count(&self) -> u64 {
        self.n - self.m + 1
    }

    /// Neighbour lists indexed by `vertex - m`.
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let mut adj = vec![Vec::new(); self.vertex_count() as usize];
        for &(a, b) in &self.edges {
            adj[(a - self.m) as usize].push(b);
            adj[(b - self.m) as usize].push(a);
        }
        adj
    }

    /// Connected components, each listed in ascending order.
    pub fn components(&self) -> Vec<Vec<u64>> {
        let adj = self.adjacency();
        let mut seen = vec![false; adj.len()];
        let mut out = Vec::new();
        for start in 0..adj.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(i) = stack.pop() {
                comp.push(i as u64 + self.m);
                for &w in &adj[i] {
                    let j = (w - self.m) as usize;
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether every component is a path (connected, max degree 2, acyclic).
    pub fn is_path_forest(&self) -> bool {
        let adj = self.adjacency();
        if adj.iter().any(|a| a.len() > 2) {
            return false;
        }
        // a forest has exactly |V| - #components edges
        self.edges.len() as u64 + self.components().len() as u64 == self.vertex_count()
    }

    /// Component size -> number of components of that size.
    pub fn census(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for c in self.components() {
            *out.entry(c.len() as u64).or_insert(0) += 1;
        }
        out
    }
}

/// The path structure of `G_m` computed from the recursion
/// `y_0 = n`, `y_i = floor((y_{i-1} - pm) / q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathDecomposition {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub m: u64,
    /// `y_0, ..., y_k`.
    pub ys: Vec<i128>,
    /// Path parameter: the largest `i` with `y_i >= m`.
    pub k: u64,
    /// Path size `i` in `[1, k + 1]` -> number of path components of that size.
    pub counts: BTreeMap<u64, u64>,
}

pub fn decompose(p: u64, q: u64, n: u64, m: u64) -> Result<PathDecomposition> {
    check_pq(p, q)?;
    check_m(n, m)?;
    let (pm, qi, mi) = (p as i128 * m as i128, q as i128, m as i128);
    let mut ys = vec![n as i128];
    loop {
        let next = Integer::div_floor(&(ys[ys.len() - 1] - pm), &qi);
        if next < mi {
            // keep y_{k+1} out of the record; it only certifies where k stops
            break;
        }
        ys.push(next);
    }
    let k = ys.len() as u64 - 1;
    let mut counts = BTreeMap::new();
    if k == 0 {
        counts.insert(1, n - m + 1);
    } else {
        let y = |i: u64| ys[i as usize];
        for i in 1..k {
            counts.insert(i, (y(i - 1) + y(i + 1) - 2 * y(i)) as u64);
        }
        counts.insert(k, (y(k - 1) - 2 * y(k) + mi - 1) as u64);
        counts.insert(k + 1, (y(k) - mi + 1) as u64);
    }
    Ok(PathDecomposition {
        p,
        q,
        n,
        m,
        ys,
        k,
        counts,
    })
}

impl PathDecomposition {
    /// The census with zero entries dropped, comparable with [`GmGraph::census`].
    pub fn nonzero_counts(&self) -> BTreeMap<u64, u64> {
        self.counts.iter().filter(|(_, &c)| c > 0).map(|(&i, &c)| (i, c)).collect()
    }

    /// `sum_i i * N(i)`, which must equal `n - m + 1`.
    pub fn vertex_total(&self) -> u64 {
        self.counts.iter().map(|(i, c)| i * c).sum()
    }
}

/// Maximum independent set size of `G_m`: `sum_i ceil(i/2) * N(i)`.
pub fn max_is_gm(p: u64, q: u64, n: u64, m: u64) -> Result<u64> {
    let d = decompose(p, q, n, m)?;
    Ok(d.counts.iter().map(|(&i, &c)| i.div_ceil(2) * c).sum())
}

/// `F(i)` with `F(0) = 0`, `F(1) = F(2) = 1`.
pub fn fibonacci(i: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..i {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Numbers of independent sets of `G_m`, the empty set included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsCounts {
    pub total: BigUint,
    /// Those containing the vertex `m`.
    pub containing_m: BigUint,
}

/// A path on `i` vertices has `F(i + 2)` independent sets, and `F(i)` of them
/// contain a fixed endpoint. `m` is an endpoint of a path on `k + 1` vertices.
pub fn count_is_gm(p: u64, q: u64, n: u64, m: u64) -> Result<IsCounts> {
    let d = decompose(p, q, n, m)?;
    let mut total = BigUint::one();
    for (&i, &c) in &d.counts {
        total *= Pow::pow(fibonacci(i + 2), c);
    }
    let size = d.k + 1;
    let containing_m = &total / fibonacci(size + 2) * fibonacci(size);
    Ok(IsCounts { total, containing_m })
}

/// Upper bound on the independent sets of a `v`-vertex graph with an
/// `e`-edge matching: `3^(e-1) 2^(v-2e)` for those containing a matched
/// vertex, `3^e 2^(v-2e)` for all of them.
pub fn matching_is_bound(v: u64, e: u64, contains_v: bool) -> Result<BigUint> {
    if e == 0 {
        return Err(Error::InvalidInput("the matching must have at least one edge".into()));
    }
    if 2 * e > v {
        return Err(Error::InvalidInput(format!("a matching of {e} edges needs {} vertices, got {v}", 2 * e)));
    }
    let threes = if contains_v { e - 1 } else { e };
    Ok(Pow::pow(BigUint::from(3u32), threes) << (v - 2 * e))
}

/// Which half of the structural bound applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StructureCase {
    /// Small `t`: many disjoint edges near `m`.
    #[serde(rename = "1")]
    One,
    /// Large `t`: long paths.
    #[serde(rename = "2")]
    Two,
}

impl StructureCase {
    pub fn number(self) -> u8 {
        match self {
            StructureCase::One => 1,
            StructureCase::Two => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureBound {
    pub case: StructureCase,
    /// `ceil((p+q-1)n/(p+q)) - floor(pt/q)` in case 1, `(q^2+1)n/(q^2+q+1)` in case 2.
    pub bound: RationalBound,
    /// Case 2 only: `n` must be at least this for `bound` to be guaranteed.
    pub n_threshold: Option<u64>,
    /// A bound guaranteed at this `n`: `bound` itself, or `C_k n + k` in
    /// case 2 with `q >= 2` below the threshold.
    pub guaranteed: RationalBound,
    /// Path parameter of `G_m`.
    pub k: u64,
}

/// `((p+q-1) / (p+q+p/q)) * floor(n/(p+q))`, the value of `t` separating the cases.
pub fn structure_threshold(p: u64, q: u64, n: u64) -> BigRational {
    let (p, q) = (p as i128, q as i128);
    let base = n as i128 / (p + q);
    ratio((p + q - 1) * q * base, q * (p + q) + p)
}

/// The two lower limits on `n` under which the case-2 bound is guaranteed;
/// the returned value is the ceiling of their maximum.
pub fn structure_n_threshold(p: u64, q: u64) -> u64 {
    let (p, q) = (p as i128, q as i128);
    let s = q * q + q + 1;
    let first = ratio(3 * s * (q.pow(3) + p * s), q * q + 1);
    let second = ratio(
        5 * s * (q.pow(5) + p * (q.pow(4) + q.pow(3) + q * q + q + 1)),
        q.pow(4) + (p - 1) * q.pow(3) + q * q + 1,
    );
    first.max(second).ceil().to_integer().to_u64().expect("threshold fits in u64")
}

/// The bound on `|S|` for a solution-free `S` with `min(S) = floor(n/(p+q)) - t`.
pub fn structure_bound(p: u64, q: u64, n: u64, t: u64) -> Result<StructureBound> {
    check_main(p, q)?;
    let base = n / (p + q);
    if t >= base {
        return Err(Error::Domain(format!(
            "need m = floor(n/(p+q)) - t >= 1, got floor({n}/{}) - {t}",
            p + q
        )));
    }
    let m = base - t;
    let k = decompose(p, q, n, m)?.k;
    let threshold = structure_threshold(p, q, n);
    if int(t) < threshold {
        let (pi, qi, ni, ti) = (p as i128, q as i128, n as i128, t as i128);
        let v = Integer::div_ceil(&((pi + qi - 1) * ni), &(pi + qi)) - (pi * ti) / qi;
        let bound = RationalBound::new(v, 1, 0);
        return Ok(StructureBound {
            case: StructureCase::One,
            guaranteed: bound.clone(),
            bound,
            n_threshold: None,
            k,
        });
    }
    let bound = RationalBound::new((q * q + 1) as u128 * n as u128, q * q + q + 1, 0);
    let n_threshold = structure_n_threshold(p, q);
    let guaranteed = if q == 1 || n >= n_threshold {
        bound.clone()
    } else {
        let c = c_k(p, q, k)?;
        RationalBound::with_additive(c.ratio() * int(n), k as i64)
    };
    Ok(StructureBound {
        case: StructureCase::Two,
        bound,
        n_threshold: Some(n_threshold),
        guaranteed,
        k,
    })
}

/// `C_k` for `q >= 2`, `k >= 2`, with `l = floor(k/2)`:
/// `(sum_{i<=2l+1} -(-q)^i + p sum_{i<=l} q^(2i)) / (q^(2l+1) + p sum_{i<=2l} q^i)`.
pub fn c_k(p: u64, q: u64, k: u64) -> Result<RationalBound> {
    check_pq(p, q)?;
    if q < 2 {
        return Err(Error::Domain("C_k is defined for q >= 2; q = 1 uses the bound 2n/3".into()));
    }
    if k < 2 {
        return Err(Error::Domain(format!("C_k needs k >= 2, got {k}")));
    }
    let l = (k / 2) as u32;
    let (p, q) = (BigInt::from(p), BigInt::from(q));
    let neg_q = -q.clone();
    let alternating: BigInt = (0..=2 * l + 1).map(|i| -Pow::pow(&neg_q, i)).sum();
    let even: BigInt = (0..=l).map(|i| Pow::pow(&q, 2 * i)).sum();
    let geometric: BigInt = (0..=2 * l).map(|i| Pow::pow(&q, i)).sum();
    Ok(RationalBound::new(
        alternating + &p * even,
        Pow::pow(&q, 2 * l + 1) + &p * geometric,
        0,
    ))
}

/// `((q^2+1)/(q^2+q+1) - C_k) * (q^k + p sum_{i<k} q^i) - k`; the inequality
/// needed for large paths holds exactly when this is nonnegative.
pub fn claim_a_margin(p: u64, q: u64, k: u64) -> Result<BigRational> {
    let c = c_k(p, q, k)?.ratio();
    let (pb, qb) = (BigInt::from(p), BigInt::from(q));
    let q2 = &qb * &qb;
    let limit = BigRational::new(&q2 + 1, &q2 + &qb + 1);
    let span: BigInt = Pow::pow(&qb, k as u32) + &pb * (0..k as u32).map(|i| Pow::pow(&qb, i)).sum::<BigInt>();
    Ok((limit - c) * BigRational::from_integer(span) - int(k))
}

pub fn check_claim_a(p: u64, q: u64, k: u64) -> Result<bool> {
    if q > p {
        return Err(Error::Domain(format!("need p >= q, got p = {p}, q = {q}")));
    }
    Ok(claim_a_margin(p, q, k)? >= BigRational::zero())
}

/// Which case of the per-minimum count bound applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Nsf2Case {
    I,
    Ii,
    Iii,
    Iv,
    V,
}

impl Nsf2Case {
    pub fn label(self) -> &'static str {
        match self {
            Nsf2Case::I => "i",
            Nsf2Case::Ii => "ii",
            Nsf2Case::Iii => "iii",
            Nsf2Case::Iv => "iv",
            Nsf2Case::V => "v",
        }
    }
}

/// An upper bound on a count, compared exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountBound {
    /// The count is exactly this value.
    Exact(BigUint),
    /// `2^exponent`.
    Pow2(BigRational),
    /// `factor * 2^exponent`.
    ScaledPow2 { factor: BigRational, exponent: BigRational },
}

impl CountBound {
    /// Whether `count` is within the bound (equal to it, for [`CountBound::Exact`]).
    pub fn admits(&self, count: &BigUint) -> bool {
        match self {
            CountBound::Exact(v) => v == count,
            CountBound::Pow2(e) => le_scaled_pow2(count, &int(1), e),
            CountBound::ScaledPow2 { factor, exponent } => le_scaled_pow2(count, factor, exponent),
        }
    }

    /// `log2` of the bound, approximately.
    pub fn log2(&self) -> f64 {
        match self {
            CountBound::Exact(v) => {
                let bits = v.bits();
                let shift = bits.saturating_sub(60);
                ((v >> shift).to_f64().unwrap_or(0.0)).log2() + shift as f64
            }
            CountBound::Pow2(e) => ratio_to_f64(e),
            CountBound::ScaledPow2 { factor, exponent } => ratio_to_f64(factor).log2() + ratio_to_f64(exponent),
        }
    }
}

impl std::fmt::Display for CountBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use crate::rational::ratio_string;
        match self {
            CountBound::Exact(v) => write!(f, "{v}"),
            CountBound::Pow2(e) => write!(f, "2^({})", ratio_string(e)),
            CountBound::ScaledPow2 { factor, exponent } => {
                write!(f, "{}*2^({})", ratio_string(factor), ratio_string(exponent))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nsf2Bound {
    pub case: Nsf2Case,
    pub bound: CountBound,
    /// Path parameter of `G_m`.
    pub k: u64,
    /// The offset `t` used by cases iii–v (0 otherwise).
    pub t: i64,
}

/// Bound on the number of solution-free subsets of `[n]` with minimum `m`.
pub fn nsf2_bound(p: u64, q: u64, n: u64, m: u64) -> Result<Nsf2Bound> {
    check_main(p, q)?;
    check_m(n, m)?;
    let base = n / (p + q);
    let k = decompose(p, q, n, m)?.k;
    let mu = mu_formula(p, q, n)?;
    let (pi, qi, ni) = (p as i64, q as i64, n as i64);
    if m > base {
        return Ok(Nsf2Bound {
            case: Nsf2Case::I,
            bound: CountBound::Exact(BigUint::one() << (n - m)),
            k,
            t: 0,
        });
    }
    if m == base {
        return Ok(Nsf2Bound {
            case: Nsf2Case::Ii,
            bound: CountBound::Pow2(int(mu as i64 - 1)),
            k,
            t: 0,
        });
    }
    if q >= 2 {
        let t = (base - m) as i64;
        if k == 1 {
            let exponent = int(mu as i64) - ratio(3, 5) + ratio(t * (3 * qi - 2 * pi), 5 * qi);
            return Ok(Nsf2Bound {
                case: Nsf2Case::Iii,
                bound: CountBound::Pow2(exponent),
                k,
                t,
            });
        }
        return Ok(Nsf2Bound {
            case: Nsf2Case::Iv,
            bound: CountBound::ScaledPow2 {
                factor: ratio(4, 3),
                exponent: ratio((5 * qi * qi - 2 * qi + 2) * ni, 5 * qi * qi),
            },
            k,
            t,
        });
    }
    // q = 1: path parameter l, m = floor(n/(lp+1)) - t
    let l = k as i64;
    let t = ni / (l * pi + 1) - m as i64;
    let exponent = ratio((7 * l * pi + 3 * pi) * ni, 10 * l * pi + 10) + ratio(t * (7 - 3 * pi), 10);
    Ok(Nsf2Bound {
        case: Nsf2Case::V,
        bound: CountBound::Pow2(exponent),
        k,
        t,
    })
}

/// The additive constant in the bound `f(n) <= (3/2 + o(1) + C) 2^mu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Nsf3Constant {
    pub applicable: bool,
    /// `None` when the bound does not apply to `(p, q)`.
    pub c: Option<f64>,
}

pub fn nsf3_constant(p: u64, q: u64) -> Nsf3Constant {
    let (pf, qf) = (p as f64, q as f64);
    // q >= 2 and p > q(3q-2)/(2q-2), kept in integers
    if q >= 2 && p * (2 * q - 2) > q * (3 * q - 2) {
        let r = ((3.0 * qf - 2.0 * pf) / (5.0 * qf)).exp2();
        let c = (-2.0 * pf / (5.0 * qf)).exp2() / (1.0 - r);
        return Nsf3Constant {
            applicable: true,
            c: Some(c),
        };
    }
    if q == 1 && p >= 3 {
        let r = ((7.0 - 3.0 * pf) / 10.0).exp2();
        return Nsf3Constant {
            applicable: true,
            c: Some(r / (1.0 - r)),
        };
    }
    Nsf3Constant {
        applicable: false,
        c: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census_of(counts: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        counts.iter().copied().collect()
    }

    #[test]
    fn gm_examples() {
        let g = build_gm(2, 1, 20, 5).unwrap();
        assert_eq!(g.edges, (5..=10).map(|c| (c, c + 10)).collect::<Vec<_>>());
        assert_eq!(g.census(), census_of(&[(1, 4), (2, 6)]));
        let g = build_gm(2, 1, 20, 3).unwrap();
        assert_eq!(g.census(), census_of(&[(3, 6)]));
        assert!(g.components().contains(&vec![3, 9, 15]));
        assert!(build_gm(3, 2, 10, 4).unwrap().edges.is_empty());
        assert!(build_gm(2, 1, 5, 6).is_err());
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(2, 1, 20, 5).unwrap();
        assert_eq!((d.ys.clone(), d.k), (vec![20, 10], 1));
        assert_eq!(d.counts, census_of(&[(1, 4), (2, 6)]));
        let d = decompose(2, 1, 20, 3).unwrap();
        assert_eq!((d.ys.clone(), d.k), (vec![20, 14, 8], 2));
        assert_eq!(d.counts, census_of(&[(1, 0), (2, 0), (3, 6)]));
        let d = decompose(3, 2, 10, 4).unwrap();
        assert_eq!(d.k, 0);
        assert_eq!(d.counts, census_of(&[(1, 7)]));
    }

    #[test]
    fn max_is_examples() {
        assert_eq!(max_is_gm(2, 1, 20, 3).unwrap(), 12);
        assert_eq!(max_is_gm(2, 1, 20, 5).unwrap(), 10);
        assert_eq!(max_is_gm(3, 2, 10, 4).unwrap(), 7);
    }

    #[test]
    fn is_count_examples() {
        assert_eq!(fibonacci(5), BigUint::from(5u32));
        let c = count_is_gm(2, 1, 20, 5).unwrap();
        assert_eq!(c.total, BigUint::from(11664u32));
        // m = 5 sits on the edge {5, 15}: only {5} from that edge
        assert_eq!(c.containing_m, BigUint::from(11664u32 / 3));
        let c = count_is_gm(2, 1, 1, 1).unwrap();
        assert_eq!((c.total, c.containing_m), (BigUint::from(2u32), BigUint::one()));
        // path 3-9-15: sets containing 3 are {3}, {3, 15}
        let c = count_is_gm(2, 1, 20, 3).unwrap();
        assert_eq!(c.containing_m, Pow::pow(BigUint::from(5u32), 5u32) * 2u32);
    }

    #[test]
    fn matching_bound_examples() {
        assert_eq!(matching_is_bound(4, 2, true).unwrap(), BigUint::from(3u32));
        assert_eq!(matching_is_bound(2, 1, true).unwrap(), BigUint::one());
        assert_eq!(matching_is_bound(10, 3, true).unwrap(), BigUint::from(144u32));
        assert_eq!(matching_is_bound(10, 3, false).unwrap(), BigUint::from(432u32));
        assert!(matching_is_bound(4, 0, true).is_err());
        assert!(matching_is_bound(3, 2, true).is_err());
    }

    #[test]
    fn structure_examples() {
        let s = structure_bound(2, 1, 20, 0).unwrap();
        assert_eq!(s.case, StructureCase::One);
        assert_eq!(s.bound, RationalBound::integer(14));
        let s = structure_bound(2, 2, 200, 40).unwrap();
        assert_eq!(s.case, StructureCase::Two);
        assert_eq!(s.bound, RationalBound::new(1000, 7, 0));
        assert_eq!(s.n_threshold, Some(114));
        assert_eq!(s.guaranteed, s.bound);
        let s = structure_bound(2, 1, 20, 3).unwrap();
        assert_eq!(s.case, StructureCase::Two);
        assert_eq!(structure_threshold(2, 1, 20), ratio(12, 5));
        assert!(structure_bound(1, 2, 20, 0).is_err());
        assert!(structure_bound(2, 1, 20, 6).is_err());
    }

    #[test]
    fn threshold_boundary_goes_to_case_two() {
        // (p, q, n) = (2, 1, 30): threshold (2/5) * 10 = 4 exactly
        assert_eq!(structure_threshold(2, 1, 30), int(4));
        assert_eq!(structure_bound(2, 1, 30, 4).unwrap().case, StructureCase::Two);
        assert_eq!(structure_bound(2, 1, 30, 3).unwrap().case, StructureCase::One);
    }

    #[test]
    fn c_k_examples() {
        assert_eq!(c_k(2, 2, 2).unwrap(), RationalBound::new(15, 22, 0));
        assert_eq!(c_k(2, 2, 3).unwrap(), c_k(2, 2, 2).unwrap());
        assert!(c_k(2, 1, 2).is_err());
        assert!(c_k(2, 2, 1).is_err());
        for q in 2..=10u64 {
            let limit = ratio(q * q + 1, q * q + q + 1);
            for p in q..=50 {
                for k in 2..=30 {
                    assert!(c_k(p, q, k).unwrap().ratio() < limit);
                }
            }
        }
    }

    #[test]
    fn claim_a_examples() {
        assert!(check_claim_a(2, 2, 6).unwrap());
        // margins are computed for small k too, whatever their sign
        assert!(claim_a_margin(2, 2, 2).is_ok());
    }

    #[test]
    fn nsf2_examples() {
        let b = nsf2_bound(2, 1, 10, 4).unwrap();
        assert_eq!(b.case, Nsf2Case::I);
        assert_eq!(b.bound, CountBound::Exact(BigUint::from(64u32)));
        let b = nsf2_bound(2, 1, 9, 3).unwrap();
        assert_eq!(b.case, Nsf2Case::Ii);
        assert_eq!(b.bound, CountBound::Pow2(int(5)));
        // (5, 2, 40): floor(40/7) = 5, m = 4 has path parameter 1
        let b = nsf2_bound(5, 2, 40, 4).unwrap();
        assert_eq!((b.case, b.k, b.t), (Nsf2Case::Iii, 1, 1));
        assert_eq!(b.bound, CountBound::Pow2(int(35) - ratio(3, 5) + ratio(-4, 10)));
    }

    #[test]
    fn nsf3_examples() {
        let c = nsf3_constant(3, 1);
        assert!(c.applicable);
        assert!((c.c.unwrap() - 6.7249).abs() < 1e-3);
        assert!(!nsf3_constant(2, 2).applicable);
        assert!(!nsf3_constant(4, 2).applicable);
        assert!(nsf3_constant(5, 2).applicable);
        assert!(!nsf3_constant(2, 1).applicable);
    }
}
