//! Closed-form quantities for `px + qy = z`: the maximum size of a
//! solution-free set, the number of elements in no L-triple, exponents of
//! the upper bounds on maximal solution-free sets and which of them is
//! strongest, the lower-bound exponents from explicit constructions, and
//! oracle checks of statements about equations in more variables.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::budget::Budget;
use crate::equations::{LinearEquation, PqEquation};
use crate::error::{Error, Result};
use crate::oracle;
use crate::rational::{cmp_base_pow, int, log_enclosure, ratio, ratio_string, ratio_to_f64};

fn check_main(p: u64, q: u64) -> Result<()> {
    if q == 0 || q > p || p < 2 {
        return Err(Error::Domain(format!(
            "need p >= q >= 1 and p >= 2, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

/// `n - floor(n / (p + q))`, the size of the interval `[floor(n/(p+q)) + 1, n]`.
pub fn mu_formula(p: u64, q: u64, n: u64) -> Result<u64> {
    check_main(p, q)?;
    Ok(n - n / (p + q))
}

/// `floor((n - p) / q)`, clamped at 0: everything above it can only play `z`.
pub fn shifted_n(p: u64, q: u64, n: u64) -> u64 {
    n.saturating_sub(p) / q
}

/// `|{s in [n] : s > floor((n-p)/q), gcd(p,q) does not divide s}|`.
pub fn mu_star_formula(p: u64, q: u64, n: u64) -> Result<u64> {
    check_main(p, q)?;
    let u = p.gcd(&q);
    let lo = shifted_n(p, q, n);
    // values in (lo, n] minus the multiples of u among them
    Ok((n - lo) - (n / u - lo / u))
}

/// `base^value`, compared exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exponent {
    pub base: u32,
    #[serde(serialize_with = "as_ratio_string")]
    pub value: BigRational,
}

fn as_ratio_string<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

impl Exponent {
    pub fn new(base: u32, value: BigRational) -> Self {
        Exponent { base, value }
    }

    pub fn log2(&self) -> f64 {
        ratio_to_f64(&self.value) * (self.base as f64).log2()
    }

    /// `count <= base^value`.
    pub fn bounds_above(&self, count: &BigUint) -> bool {
        cmp_base_pow(&int(BigInt::from(count.clone())), self.base, &self.value).is_le()
    }

    /// `count >= base^value`.
    pub fn bounds_below(&self, count: &BigUint) -> bool {
        cmp_base_pow(&int(BigInt::from(count.clone())), self.base, &self.value).is_ge()
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}^({})", self.base, ratio_string(&self.value))
    }
}

/// The three upper bounds on the number of maximal solution-free sets, each
/// up to a `2^o(n)` factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FmaxBound {
    /// `3^((mu - mu*)/3)`, from the maximal-independent-set bound for all graphs.
    General,
    /// `2^((mu - mu*)/2)`, from the bound for triangle-free link graphs.
    TriangleFree,
    /// `2^mu(floor((n-p)/q))`, from counting solution-free sets below the top block.
    Shifted,
}

/// Leading exponents of the upper bounds on maximal solution-free sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FmaxExponents {
    pub general: Exponent,
    /// Only when `q >= 2`, `p <= q^2 - q` and `gcd(p, q) = q`.
    pub triangle_free: Option<Exponent>,
    pub shifted: Exponent,
}

pub fn triangle_free_applies(p: u64, q: u64) -> bool {
    q >= 2 && p + q <= q * q && p.gcd(&q) == q
}

pub fn fmax_exponents(p: u64, q: u64, n: u64) -> Result<FmaxExponents> {
    let gap = (mu_formula(p, q, n)? - mu_star_formula(p, q, n)?) as i64;
    Ok(FmaxExponents {
        general: Exponent::new(3, ratio(gap, 3)),
        triangle_free: triangle_free_applies(p, q).then(|| Exponent::new(2, ratio(gap, 2))),
        shifted: Exponent::new(2, int(mu_formula(p, q, shifted_n(p, q, n))?)),
    })
}

/// Which of the three upper bounds is strongest for `(p, q)` as `n` grows.
pub fn best_selector(p: u64, q: u64) -> Result<FmaxBound> {
    check_main(p, q)?;
    if p.gcd(&q) == q && p + q <= q * q {
        return Ok(FmaxBound::TriangleFree);
    }
    if p.gcd(&q) == q && p >= q * q {
        if q <= 9 {
            return Ok(FmaxBound::General);
        }
        if q <= 17 && below_general_limit(p, q) {
            return Ok(FmaxBound::General);
        }
    }
    Ok(FmaxBound::Shifted)
}

/// `p < (a - 1)(q^2 - q) / (q(2 - a) - 1)` with `a = log_3 8`, for `10 <= q <= 17`
/// (where the denominator is positive), decided on a rational enclosure of `a`
/// that is refined until the comparison is unambiguous.
fn below_general_limit(p: u64, q: u64) -> bool {
    let (pr, qr) = (int(p), int(q));
    let limit = |a: &BigRational| {
        let num = (a - int(1)) * (&qr * &qr - &qr);
        let den = &qr * (int(2) - a) - int(1);
        num / den
    };
    let mut terms = 40;
    loop {
        let (lo, hi) = log_enclosure(3, 8, terms);
        // the limit increases with a while its denominator stays positive
        let den_hi = &qr * (int(2) - &hi) - int(1);
        assert!(den_hi.is_positive(), "denominator must be positive for 10 <= q <= 17");
        let (l_lo, l_hi) = (limit(&lo), limit(&hi));
        if pr < l_lo {
            return true;
        }
        if pr >= l_hi {
            return false;
        }
        terms *= 2;
    }
}

/// `f(floor((n-p)/q))`: an upper bound on the number of maximal solution-free sets.
pub fn msf3_bound(eq: &PqEquation, n: u64, budget: &Budget) -> Result<BigUint> {
    oracle::count_solution_free(eq, shifted_n(eq.p(), eq.q(), n), budget)
}

/// The exponent `l` with `f_max(n) >= 2^l` from an induced matching, `p >= q >= 2`, `n > 2p`.
pub fn msf6_lower(p: u64, q: u64, n: u64) -> Result<BigRational> {
    check_main(p, q)?;
    if q < 2 {
        return Err(Error::Domain(format!("need q >= 2, got q = {q}")));
    }
    if n <= 2 * p {
        return Err(Error::Domain(format!("need n > 2p, got n = {n}, p = {p}")));
    }
    let (p, q, n) = (p as i64, q as i64, n as i64);
    Ok(if p >= q * q {
        ratio(n * (q - 1) - p * q + q - 2 * q * q, q * q)
    } else if p > q {
        ratio(n * (p - q) - p * p + q * q - 2 * p * q, p * q)
    } else {
        ratio(n - 6 * q, 2 * q)
    })
}

/// The exponent of `f_max(n) >= 3^(...)` from the disjoint-triangle construction for `px + y = z`:
/// `mu/3 - 2pn/(3(p+1)(3p^2-1)) - p - 5`.
pub fn msf2_lower(p: u64, n: u64) -> Result<BigRational> {
    let mu = mu_formula(p, 1, n)? as i64;
    let (p, n) = (p as i64, n as i64);
    Ok(ratio(mu, 3) - ratio(2 * p * n, 3 * (p + 1) * (3 * p * p - 1)) - int(p + 5))
}

/// Lower bounds, each valid for every `n` where it is defined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBounds {
    /// On `f`: all subsets of the top interval are solution-free.
    pub interval: Exponent,
    /// On `f_max`, for `q = 1`: disjoint triangles in a link graph.
    pub triangles: Option<Exponent>,
    /// On `f_max`, for `p >= q >= 2`, `n > 2p`: an induced matching in a link graph.
    pub matching: Option<Exponent>,
}

/// Every closed-form quantity for one `(p, q, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub mu_formula: u64,
    pub mu_star_formula: u64,
    /// `log2 f(n) = mu + o(n)`; the recorded value omits the `o(n)` term.
    pub log2_f_leading: u64,
    pub fmax_uppers: FmaxExponents,
    pub best: FmaxBound,
    pub lower_bounds: LowerBounds,
}

pub fn bound_report(p: u64, q: u64, n: u64) -> Result<BoundReport> {
    let mu = mu_formula(p, q, n)?;
    let triangles = (q == 1).then(|| msf2_lower(p, n)).transpose()?.map(|v| Exponent::new(3, v));
    let matching = (q >= 2 && n > 2 * p)
        .then(|| msf6_lower(p, q, n))
        .transpose()?
        .map(|v| Exponent::new(2, v));
    Ok(BoundReport {
        p,
        q,
        n,
        mu_formula: mu,
        mu_star_formula: mu_star_formula(p, q, n)?,
        log2_f_leading: mu,
        fmax_uppers: fmax_exponents(p, q, n)?,
        best: best_selector(p, q)?,
        lower_bounds: LowerBounds {
            interval: Exponent::new(2, int(mu)),
            triangles,
            matching,
        },
    })
}

/// Both sides of an oracle comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// Whether `merged` arises from `eq` by replacing two coefficients `a_i, a_j`
/// (`i < j`) with `a_i + a_j` in position `i`, the constant unchanged.
/// Identical equations count as a merge of nothing.
pub fn is_merge_of(eq: &LinearEquation, merged: &LinearEquation) -> bool {
    if eq.constant() != merged.constant() {
        return false;
    }
    if eq == merged {
        return true;
    }
    let (a, b) = (eq.coeffs(), merged.coeffs());
    if a.len() != b.len() + 1 {
        return false;
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let mut c: Vec<i64> = a.to_vec();
            c[i] += c[j];
            c.remove(j);
            if c == b {
                return true;
            }
        }
    }
    false
}

/// `mu(eq, n) <= mu(merged, n)` by the oracle.
pub fn mu_merge_check(eq: &LinearEquation, merged: &LinearEquation, n: u64, budget: &Budget) -> Result<Comparison> {
    if !is_merge_of(eq, merged) {
        return Err(Error::InvalidInput(format!("{merged} is not obtained from {eq} by merging two coefficients")));
    }
    let lhs = oracle::mu(eq, n, budget)?;
    let rhs = oracle::mu(merged, n, budget)?;
    Ok(Comparison {
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        holds: lhs <= rhs,
    })
}

/// Equation `sum a_i x_i + sum b_i y_i = sum c_i z_i` with positive coefficients,
/// reduced to the sums `p', q', r'` divided by their gcd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupedEquation {
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    pub z: Vec<u64>,
}

impl GroupedEquation {
    pub fn new(x: Vec<u64>, y: Vec<u64>, z: Vec<u64>) -> Result<Self> {
        if x.is_empty() || y.is_empty() || z.is_empty() || x.iter().chain(&y).chain(&z).any(|&c| c == 0) {
            return Err(Error::InvalidEquation("each group needs at least one positive coefficient".into()));
        }
        Ok(GroupedEquation { x, y, z })
    }

    /// `(p, q, r)`: the group sums divided by their common gcd.
    pub fn reduced(&self) -> (u64, u64, u64) {
        let (p, q, r) = (self.x.iter().sum::<u64>(), self.y.iter().sum::<u64>(), self.z.iter().sum::<u64>());
        let t = p.gcd(&q).gcd(&r);
        (p / t, q / t, r / t)
    }

    pub fn as_linear(&self) -> Result<LinearEquation> {
        let coeffs = self
            .x
            .iter()
            .chain(&self.y)
            .map(|&c| c as i64)
            .chain(self.z.iter().map(|&c| -(c as i64)))
            .collect();
        LinearEquation::new(coeffs, 0)
    }
}

/// Oracle `mu(eq, n)` against `n - floor(n/(p+q))`; requires `r = 1`.
pub fn mu5ai_check(eq: &GroupedEquation, n: u64, budget: &Budget) -> Result<Comparison> {
    let (p, q, r) = eq.reduced();
    if r != 1 {
        return Err(Error::Domain(format!("the reduced right-hand sum is {r}, not 1")));
    }
    let expected = n - n / (p + q);
    let observed = oracle::mu(&eq.as_linear()?, n, budget)?;
    Ok(Comparison {
        lhs: observed.to_string(),
        rhs: expected.to_string(),
        holds: observed == expected,
    })
}

/// Oracle `f_max(n) <= f(floor(rn/p_s))` for `p_1 x_1 + ... + p_s x_s = rz`
/// with `p_1 >= ... >= p_s > r >= 1`.
pub fn msf8_check(ps: &[u64], r: u64, n: u64, budget: &Budget) -> Result<Comparison> {
    if ps.is_empty() || r == 0 || ps.windows(2).any(|w| w[0] < w[1]) || *ps.last().unwrap() <= r {
        return Err(Error::Domain("need p_1 >= ... >= p_s > r >= 1".into()));
    }
    let coeffs = ps.iter().map(|&c| c as i64).chain([-(r as i64)]).collect();
    let eq = LinearEquation::new(coeffs, 0)?;
    let top = (r * n) / ps.last().unwrap();
    let lhs = oracle::count_maximal(&eq, n, budget)?;
    let rhs = oracle::count_solution_free(&eq, top, budget)?;
    Ok(Comparison {
        holds: lhs <= rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

/// `log2` of a positive big integer, approximately.
pub fn log2_big(v: &BigUint) -> f64 {
    let shift = v.bits().saturating_sub(60);
    (v >> shift).to_f64().unwrap_or(0.0).log2() + shift as f64
}
