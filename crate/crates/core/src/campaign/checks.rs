//! The comparisons each campaign makes at one grid point or random instance.

use std::fmt::Display;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{self, Exponent, GroupedEquation};
use crate::budget::Budget;
use crate::equations::{LinearEquation, PqEquation};
use crate::error::{Error, Result};
use crate::linkgraph::{self, LinkGraph};
use crate::oracle;
use crate::pathgraph::{self, CountBound, Nsf2Case};
use crate::rational::{ratio_string, ratio_to_f64};

use super::{Campaign, CheckRow, Grid, Point, Status};

pub(super) struct Context<'a> {
    pub campaign: Campaign,
    pub grid: &'a Grid,
    pub budget: &'a Budget,
    pub seed: u64,
}

/// Where a row was computed; fills the key columns of each row.
#[derive(Clone, Copy)]
struct At {
    campaign: &'static str,
    p: Option<u64>,
    q: Option<u64>,
    n: Option<u64>,
    m: Option<u64>,
    k: Option<u64>,
    instance: Option<u64>,
}

impl At {
    fn new(campaign: Campaign) -> Self {
        At {
            campaign: campaign.id(),
            p: None,
            q: None,
            n: None,
            m: None,
            k: None,
            instance: None,
        }
    }

    fn point(campaign: Campaign, pt: &Point) -> Self {
        At {
            p: pt.get(&'p').copied(),
            q: pt.get(&'q').copied(),
            n: pt.get(&'n').copied(),
            m: pt.get(&'m').copied(),
            k: pt.get(&'k').copied(),
            ..At::new(campaign)
        }
    }

    fn instance(campaign: Campaign, i: u64) -> Self {
        At {
            instance: Some(i),
            ..At::new(campaign)
        }
    }

    fn pqn(mut self, p: u64, q: u64, n: u64) -> Self {
        (self.p, self.q, self.n) = (Some(p), Some(q), Some(n));
        self
    }

    fn with_n(mut self, n: u64) -> Self {
        self.n = Some(n);
        self
    }

    fn with_m(mut self, m: u64) -> Self {
        self.m = Some(m);
        self
    }

    fn row(
        &self,
        check: impl Into<String>,
        lhs: impl Display,
        relation: &'static str,
        rhs: impl Display,
        holds: bool,
        detail: impl Into<String>,
    ) -> CheckRow {
        CheckRow {
            campaign: self.campaign,
            p: self.p,
            q: self.q,
            n: self.n,
            m: self.m,
            k: self.k,
            instance: self.instance,
            check: check.into(),
            lhs: lhs.to_string(),
            relation,
            rhs: rhs.to_string(),
            status: if holds { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn skip(&self, check: impl Into<String>, detail: impl Into<String>) -> CheckRow {
        CheckRow {
            status: Status::Skip,
            ..self.row(check, "", "", "", true, detail)
        }
    }

    fn error(&self, check: impl Into<String>, e: &Error) -> CheckRow {
        CheckRow {
            status: Status::Error,
            ..self.row(check, "", "", "", true, e.to_string())
        }
    }
}

/// Grid names expanded into points; the rest are read inside the check.
pub(super) fn point_names(c: Campaign) -> Vec<char> {
    match c {
        Campaign::Structure => vec!['p', 'q', 'n', 'm'],
        Campaign::Triangles => vec!['p', 'n'],
        Campaign::PathInequality => vec!['p', 'q', 'k'],
        Campaign::MuFormula | Campaign::MuStar => vec!['p', 'q'],
        _ => vec!['p', 'q', 'n'],
    }
}

pub(super) fn run_point(ctx: &Context, pt: &Point) -> Vec<CheckRow> {
    let at = At::point(ctx.campaign, pt);
    if let Some(&p) = pt.get(&'p') {
        if p < 2 {
            return vec![at.skip(ctx.campaign.id(), "needs p >= 2")];
        }
    }
    let get = |c: char| pt.get(&c).copied().unwrap_or(0);
    let (p, q, n) = (get('p'), get('q'), get('n'));
    let result = match ctx.campaign {
        Campaign::Structure => structure(ctx, at, p, q, n, get('m')),
        Campaign::Census => census(at, p, q, n),
        Campaign::MinCounts => min_counts(ctx, at, p, q, n),
        Campaign::CountRatio => count_ratio(ctx, at, p, q, n),
        Campaign::Triangles => triangles(ctx, at, p, n),
        Campaign::ShiftedCount => shifted_count(ctx, at, p, q, n),
        Campaign::Matching => matching(ctx, at, p, q, n),
        Campaign::FmaxSandwich => fmax_sandwich(ctx, at, p, q, n),
        Campaign::PathInequality => path_inequality(at, p, q, get('k')),
        Campaign::MuFormula | Campaign::MuStar => formula_agreement(ctx, at, pt, p, q),
        other => Err(Error::InvalidInput(format!("{other} runs on random instances"))),
    };
    result.unwrap_or_else(|e| vec![at.error(ctx.campaign.id(), &e)])
}

fn structure(ctx: &Context, at: At, p: u64, q: u64, n: u64, m: u64) -> Result<Vec<CheckRow>> {
    if m == 0 || m > n {
        return Ok(vec![at.skip("structure", "needs 1 <= m <= n")]);
    }
    let eq = PqEquation::new(p, q)?;
    let mis = pathgraph::max_is_gm(p, q, n, m)?;
    let best = oracle::largest_with_min(&eq, n, m, ctx.budget)?.map_or(0, |s| s.len() as u64);
    let mut rows = vec![at.row(
        "largest free set with minimum m <= largest independent set of G_m",
        best,
        "<=",
        mis,
        best <= mis,
        "",
    )];
    let base = n / (p + q);
    if m <= base {
        let sb = pathgraph::structure_bound(p, q, n, base - m)?;
        let detail = match sb.n_threshold {
            Some(t) => format!("k = {}; plain bound {} guaranteed from n = {t}", sb.k, sb.bound),
            None => format!("k = {}", sb.k),
        };
        rows.push(at.row(
            format!("largest independent set of G_m <= case {} bound", sb.case.number()),
            mis,
            "<=",
            &sb.guaranteed,
            sb.guaranteed.admits(mis),
            detail,
        ));
    }
    Ok(rows)
}

fn census(at: At, p: u64, q: u64, n: u64) -> Result<Vec<CheckRow>> {
    let mut agree = 0u64;
    let mut first_bad = None;
    for m in 1..=n {
        let from_recursion = pathgraph::decompose(p, q, n, m)?.nonzero_counts();
        let mut built = pathgraph::build_gm(p, q, n, m)?.census();
        built.retain(|_, c| *c > 0);
        if from_recursion == built {
            agree += 1;
        } else if first_bad.is_none() {
            first_bad = Some(m);
        }
    }
    let detail = first_bad.map_or(String::new(), |m| format!("first mismatch at m = {m}"));
    Ok(vec![at.row(
        "values of m where the recursion census equals the census of G_m",
        agree,
        "==",
        n,
        agree == n,
        detail,
    )])
}

fn min_counts(ctx: &Context, at: At, p: u64, q: u64, n: u64) -> Result<Vec<CheckRow>> {
    let eq = PqEquation::new(p, q)?;
    let per = oracle::counts_by_min(&eq, n, ctx.budget)?;
    let mut rows = Vec::new();
    for (&m, count) in &per {
        let at = at.with_m(m);
        let is = pathgraph::count_is_gm(p, q, n, m)?;
        rows.push(at.row(
            "f(n, m) <= independent sets of G_m containing m",
            count,
            "<=",
            &is.containing_m,
            *count <= is.containing_m,
            "",
        ));
        let nb = pathgraph::nsf2_bound(p, q, n, m)?;
        let detail = format!("k = {}, t = {}", nb.k, nb.t);
        match (&nb.case, &nb.bound) {
            (Nsf2Case::I, CountBound::Exact(v)) => rows.push(at.row(
                "f(n, m) == case i value",
                count,
                "==",
                v,
                count == v,
                detail,
            )),
            _ => rows.push(at.row(
                format!("f(n, m) <= case {} bound", nb.case.label()),
                count,
                "<=",
                &nb.bound,
                nb.bound.admits(count),
                detail,
            )),
        }
    }
    Ok(rows)
}

fn count_ratio(ctx: &Context, at: At, p: u64, q: u64, n: u64) -> Result<Vec<CheckRow>> {
    let constant = pathgraph::nsf3_constant(p, q);
    let Some(c) = constant.c else {
        return Ok(vec![at.skip("count ratio", "the constant C does not apply to this (p, q)")]);
    };
    let eq = PqEquation::new(p, q)?;
    let f = oracle::count_solution_free(&eq, n, ctx.budget)?;
    let mu = bounds::mu_formula(p, q, n)?;
    let pow = BigUint::one() << mu;
    let c_exact = BigRational::from_float(c).ok_or(Error::Overflow("count ratio constant"))?;
    let factor = BigRational::new(5.into(), 2.into()) + c_exact;
    let f_r = BigRational::from_integer(BigInt::from(f.clone()));
    let upper = &factor * BigRational::from_integer(BigInt::from(pow.clone()));
    let ratio = ratio_to_f64(&(f_r.clone() / BigRational::from_integer(BigInt::from(pow.clone()))));
    let detail = format!("f / 2^mu = {ratio:.6}; C = {c:.6}");
    Ok(vec![
        at.row("2^mu <= f(n)", &pow, "<=", &f, pow <= f, detail.clone()),
        at.row(
            "f(n) <= (5/2 + C) 2^mu",
            &f,
            "<=",
            format!("{:.6}", ratio_to_f64(&upper)),
            f_r <= upper,
            detail,
        ),
    ])
}

fn triangles(ctx: &Context, at: At, p: u64, n: u64) -> Result<Vec<CheckRow>> {
    let c = match linkgraph::triangle_construction(p, n, ctx.budget) {
        Err(Error::Infeasible(why)) => return Ok(vec![at.skip("triangle construction", why)]),
        other => other?,
    };
    let ps = p * c.s;
    let loops: Vec<u64> = c.graph.loops().iter().copied().collect();
    let floor = BigUint::from(3u32).pow((ps - c.affected_triangles) as u32);
    let detail = format!("s = {}, a = {}, ground [{}, {}]", c.s, c.a, c.ground.0, c.ground.1);
    Ok(vec![
        at.row(
            "edges are exactly ps disjoint triangles",
            c.graph.edges().len(),
            "==",
            3 * ps,
            c.exact_triangles,
            detail,
        ),
        at.row(
            "loops within the candidate set",
            format!("{loops:?}"),
            "subset",
            format!("{:?}", c.loop_candidates),
            c.loops_within_candidates,
            "",
        ),
        at.row(
            "maximal independent sets >= 3^(ps - triangles with a loop)",
            &c.mis_count,
            ">=",
            floor,
            c.count_ok,
            "",
        ),
        at.row(
            "maximal independent sets^3 <= 3^v",
            &c.mis_count,
            "<=",
            format!("3^({}/3)", c.mis_bounds.vertices),
            c.mis_bounds.general_ok,
            "",
        ),
    ])
}

fn shifted_count(ctx: &Context, at: At, p: u64, q: u64, n: u64) -> Result<Vec<CheckRow>> {
    let eq = PqEquation::new(p, q)?;
    let fm = oracle::count_maximal(&eq, n, ctx.budget)?;
    let bound = bounds::msf3_bound(&eq, n, ctx.budget)?;
    Ok(vec![at.row(
        "f_max(n) <= f(floor((n - p)/q))",
        &fm,
        "<=",
        &bound,
        fm <= bound,
        format!("floor((n - p)/q) = {}", bounds::shifted_n(p, q, n)),
    )])
}

fn matching(ctx: &Context, at: At, p: u64, q: u64, n: u64) -> Result<Vec<CheckRow>> {
    let c = match linkgraph::matching_construction(p, q, n, ctx.budget) {
        Err(Error::Infeasible(why) | Error::Domain(why)) => {
            return Ok(vec![at.skip("matching construction", why)])
        }
        other => other?,
    };
    let ceil = c.ell.ceil().to_integer();
    let cond = c.conditions;
    let detail = format!(
        "I = [{}, {}], l = {}; conditions: disjoint {}, in range {}, single form {}{}, loop-free {}; induced {}",
        c.a,
        c.b,
        ratio_string(&c.ell),
        cond.disjoint,
        cond.images_in_range,
        cond.single_edge_form,
        if cond.single_edge_form_waived { " (waived)" } else { "" },
        cond.loop_free,
        c.induced,
    );
    let eq = PqEquation::new(p, q)?;
    let fm = oracle::count_maximal(&eq, n, ctx.budget)?;
    let floor = BigUint::one() << c.achieved;
    Ok(vec![
        at.row("induced matching size >= ceil(l)", c.achieved, ">=", ceil, c.verified(), detail),
        at.row("2^(matching size) <= f_max(n)", &floor, "<=", &fm, floor <= fm, ""),
    ])
}

fn fmax_sandwich(ctx: &Context, at: At, p: u64, q: u64, n: u64) -> Result<Vec<CheckRow>> {
    let eq = PqEquation::new(p, q)?;
    let fm = oracle::count_maximal(&eq, n, ctx.budget)?;
    let upper = bounds::msf3_bound(&eq, n, ctx.budget)?;
    let trend = if n > 0 {
        format!("log2(f_max)/n = {:.4}", bounds::log2_big(&fm) / n as f64)
    } else {
        String::new()
    };
    let mut rows = Vec::new();
    if q >= 2 && n > 2 * p {
        let ell = bounds::msf6_lower(p, q, n)?;
        let lower = Exponent::new(2, BigRational::from_integer(ell.ceil().to_integer()));
        rows.push(at.row("2^ceil(l) <= f_max(n)", &lower, "<=", &fm, lower.bounds_below(&fm), trend.clone()));
    } else {
        rows.push(at.skip("2^ceil(l) <= f_max(n)", "the matching lower bound needs q >= 2 and n > 2p"));
    }
    rows.push(at.row("f_max(n) <= f(floor((n - p)/q))", &fm, "<=", &upper, fm <= upper, trend));
    Ok(rows)
}

fn path_inequality(at: At, p: u64, q: u64, k: u64) -> Result<Vec<CheckRow>> {
    if q < 2 || k < 2 {
        return Ok(vec![at.skip("long-path inequality", "needs q >= 2 and k >= 2")]);
    }
    let margin = pathgraph::claim_a_margin(p, q, k)?;
    let holds = pathgraph::check_claim_a(p, q, k)?;
    let ck = pathgraph::c_k(p, q, k)?;
    let next = pathgraph::c_k(p, q, k + 1)?;
    Ok(vec![
        at.row(
            "long-path margin >= 0",
            format!("{:.6e}", ratio_to_f64(&margin)),
            ">=",
            0,
            holds,
            "compared exactly; lhs shown rounded",
        ),
        at.row("C_k >= C_(k+1)", &ck, ">=", &next, ck.ratio() >= next.ratio(), ""),
    ])
}

fn formula_agreement(ctx: &Context, at: At, pt: &Point, p: u64, q: u64) -> Result<Vec<CheckRow>> {
    let eq = PqEquation::new(p, q)?;
    let ns = ctx.grid.values('n', pt)?;
    let Some(&hi) = ns.iter().max() else {
        return Ok(vec![at.skip("formula agreement", "empty n range")]);
    };
    let star = ctx.campaign == Campaign::MuStar;
    let mut pairs = Vec::with_capacity(ns.len());
    for &n in &ns {
        let (oracle_v, formula_v) = if star {
            (oracle::mu_star(&eq, n), bounds::mu_star_formula(p, q, n)?)
        } else {
            (oracle::mu(&eq, n, ctx.budget)?, bounds::mu_formula(p, q, n)?)
        };
        pairs.push((n, oracle_v, formula_v));
    }
    // smallest n0 with agreement at every swept n >= n0
    let mut n0 = None;
    for &(n, o, f) in pairs.iter().rev() {
        if o != f {
            break;
        }
        n0 = Some(n);
    }
    let name = if star { "oracle mu* == closed form" } else { "oracle mu == n - floor(n/(p+q))" };
    let mut rows: Vec<CheckRow> = pairs
        .iter()
        .map(|&(n, o, f)| {
            let at = at.with_n(n);
            if o != f && n0.is_some_and(|t| n < t) {
                CheckRow {
                    status: Status::Skip,
                    ..at.row(name, o, "==", f, false, "below the agreement threshold")
                }
            } else {
                at.row(name, o, "==", f, o == f, "")
            }
        })
        .collect();
    rows.push(at.row(
        "agreement threshold n0",
        n0.map_or("none".to_string(), |t| t.to_string()),
        "<=",
        hi,
        n0.is_some(),
        "the closed form matches the oracle at every swept n >= n0",
    ));
    Ok(rows)
}

/// One randomized (or fixed extremal) instance.
#[derive(Debug, Clone, Copy)]
pub(super) enum Item {
    TriangleUnion(u64),
    PerfectMatching(u64),
    RandomGraph(u64),
    LinkTriangleFree(u64),
    Extension(u64),
    Merge(u64),
    Grouped(usize, u64),
    ShiftedMany(usize, u64),
}

const GROUPED: [(&[u64], &[u64], &[u64]); 3] = [(&[1, 1], &[1], &[1]), (&[2], &[1, 1], &[1]), (&[1, 1], &[2], &[1])];
const SHIFTED_MANY: [(&[u64], u64); 3] = [(&[3, 2], 1), (&[4, 3], 2), (&[3, 3, 2], 1)];

pub(super) fn random_items(ctx: &Context, count: u64) -> Result<Vec<Item>> {
    Ok(match ctx.campaign {
        Campaign::MisBounds => (1..=6)
            .map(Item::TriangleUnion)
            .chain((1..=8).map(Item::PerfectMatching))
            .chain((0..count).map(Item::RandomGraph))
            .collect(),
        Campaign::TriangleFree => (0..count).map(Item::LinkTriangleFree).collect(),
        Campaign::Extensions => (0..count).map(Item::Extension).collect(),
        Campaign::MultiVariable => {
            let empty = Point::new();
            let ns = |default: &str| -> Result<Vec<u64>> {
                match ctx.grid.get('n') {
                    Some(r) => r.values(&empty),
                    None => default.parse::<super::RangeSpec>()?.values(&empty),
                }
            };
            let grouped = ns("12..20")?;
            let shifted = ns("1..15")?;
            let mut items: Vec<Item> = (0..count).map(Item::Merge).collect();
            for i in 0..GROUPED.len() {
                items.extend(grouped.iter().map(|&n| Item::Grouped(i, n)));
            }
            for i in 0..SHIFTED_MANY.len() {
                items.extend(shifted.iter().map(|&n| Item::ShiftedMany(i, n)));
            }
            items
        }
        other => return Err(Error::InvalidInput(format!("{other} runs on a grid"))),
    })
}

/// An independent stream per instance, so results do not depend on evaluation order.
fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(super) fn run_random(ctx: &Context, item: Item) -> Vec<CheckRow> {
    let c = ctx.campaign;
    let at = match item {
        Item::TriangleUnion(_) | Item::PerfectMatching(_) | Item::Grouped(..) | Item::ShiftedMany(..) => At::new(c),
        Item::RandomGraph(i) | Item::LinkTriangleFree(i) | Item::Extension(i) | Item::Merge(i) => At::instance(c, i),
    };
    let result = match item {
        Item::TriangleUnion(t) => extremal(ctx, at, t, true),
        Item::PerfectMatching(l) => extremal(ctx, at, l, false),
        Item::RandomGraph(i) => random_graph(ctx, at, i),
        Item::LinkTriangleFree(i) => link_triangle_free(ctx, at, i),
        Item::Extension(i) => extension(ctx, at, i),
        Item::Merge(i) => merge(ctx, at, i),
        Item::Grouped(i, n) => grouped(ctx, at.with_n(n), i, n),
        Item::ShiftedMany(i, n) => shifted_many(ctx, at.with_n(n), i, n),
    };
    result.unwrap_or_else(|e| vec![at.error(c.id(), &e)])
}

fn bound_rows(at: At, g: &LinkGraph, budget: &Budget, detail: &str) -> Result<Vec<CheckRow>> {
    let check = linkgraph::check_mis_bounds(g, budget)?;
    let v = check.vertices;
    let mut rows = vec![at.row(
        "maximal independent sets^3 <= 3^v",
        &check.count,
        "<=",
        format!("3^({v}/3)"),
        check.general_ok,
        detail,
    )];
    if let Some(ok) = check.triangle_free_ok {
        rows.push(at.row(
            "maximal independent sets^2 <= 2^v (triangle-free)",
            &check.count,
            "<=",
            format!("2^({v}/2)"),
            ok,
            detail,
        ));
    }
    Ok(rows)
}

/// Disjoint triangles (`t` of them) or a perfect matching (`t` edges), where
/// the bounds are attained.
fn extremal(ctx: &Context, at: At, t: u64, triangles: bool) -> Result<Vec<CheckRow>> {
    let (g, expected, name) = if triangles {
        let edges = (0..t).flat_map(|i| {
            let a = 3 * i + 1;
            [(a, a + 1), (a + 1, a + 2), (a, a + 2)]
        });
        (
            LinkGraph::from_parts(1..=3 * t, edges, [])?,
            BigUint::from(3u32).pow(t as u32),
            format!("{t} disjoint triangles: count == 3^(v/3)"),
        )
    } else {
        let edges = (0..t).map(|i| (2 * i + 1, 2 * i + 2));
        (
            LinkGraph::from_parts(1..=2 * t, edges, [])?,
            BigUint::from(2u32).pow(t as u32),
            format!("perfect matching with {t} edges: count == 2^(v/2)"),
        )
    };
    let count = linkgraph::count_mis(&g, ctx.budget)?;
    let mut rows = vec![at.row(name, &count, "==", &expected, count == expected, "")];
    rows.extend(bound_rows(at, &g, ctx.budget, "")?);
    Ok(rows)
}

fn random_subset(rng: &mut ChaCha8Rng, lo: u64, hi: u64, density: f64) -> Vec<u64> {
    (lo..=hi).filter(|_| rng.random_bool(density)).collect()
}

/// Even instances: an arbitrary graph with a few loops. Odd instances: a link
/// graph of a random seed on a random ground set.
fn random_graph(ctx: &Context, at: At, i: u64) -> Result<Vec<CheckRow>> {
    let mut rng = rng_for(ctx.seed, i);
    if i.is_multiple_of(2) {
        let v = rng.random_range(1..=16u64);
        let density = rng.random_range(0.05..0.95);
        let mut edges = Vec::new();
        for a in 1..=v {
            for b in a + 1..=v {
                if rng.random_bool(density) {
                    edges.push((a, b));
                }
            }
        }
        let loops = random_subset(&mut rng, 1, v, 0.1);
        let g = LinkGraph::from_parts(1..=v, edges, loops)?;
        let detail = format!("random graph on {v} vertices, {} edges", g.edges().len());
        return bound_rows(at, &g, ctx.budget, &detail);
    }
    let p = rng.random_range(2..=5u64);
    let q = rng.random_range(1..=p);
    let n = rng.random_range(6..=40u64);
    let u = rng.random_range(1..=n / 2);
    let seed = random_subset(&mut rng, 1, u, 0.3);
    let mut ground = random_subset(&mut rng, u + 1, n, 0.6);
    ground.truncate(24);
    let g = linkgraph::build_link(&PqEquation::new(p, q)?, &seed, &ground)?;
    let detail = format!("link graph of {seed:?} for {p}x + {q}y = z on {} vertices", ground.len());
    bound_rows(at.pqn(p, q, n), &g, ctx.budget, &detail)
}

fn link_triangle_free(ctx: &Context, at: At, i: u64) -> Result<Vec<CheckRow>> {
    let mut rng = rng_for(ctx.seed, i);
    let q = rng.random_range(2..=5u64);
    let p = rng.random_range(q..=q * q - q);
    let n = rng.random_range(4..=100u64);
    let u = rng.random_range(1..n);
    let a_density = rng.random_range(0.05..0.5);
    let b_density = rng.random_range(0.1..0.9);
    let seed = random_subset(&mut rng, 1, u, a_density);
    let ground = random_subset(&mut rng, u + 1, n, b_density);
    let g = linkgraph::build_link(&PqEquation::new(p, q)?, &seed, &ground)?;
    let tf = g.is_triangle_free();
    Ok(vec![at.pqn(p, q, n).row(
        "link graph is triangle-free",
        tf,
        "==",
        true,
        tf,
        format!("u = {u}, |A| = {}, |B| = {}, {} edges", seed.len(), ground.len(), g.edges().len()),
    )])
}

/// Adds elements in random order while the set stays solution-free.
fn greedy_free(eq: &PqEquation, n: u64, pool: &[u64], rng: &mut ChaCha8Rng, density: f64) -> Result<Vec<u64>> {
    let mut order = pool.to_vec();
    order.shuffle(rng);
    let mut set = Vec::new();
    for x in order {
        if !rng.random_bool(density) {
            continue;
        }
        set.push(x);
        if !oracle::is_solution_free(eq, &set, n)? {
            set.pop();
        }
    }
    set.sort_unstable();
    Ok(set)
}

fn extension(ctx: &Context, at: At, i: u64) -> Result<Vec<CheckRow>> {
    let mut rng = rng_for(ctx.seed, i);
    let p = rng.random_range(2..=4u64);
    let q = rng.random_range(1..=p);
    let n = rng.random_range(4..=20u64);
    let eq = PqEquation::new(p, q)?;
    let all: Vec<u64> = (1..=n).collect();
    let seed = greedy_free(&eq, n, &all, &mut rng, 0.25)?;
    let rest: Vec<u64> = all.iter().copied().filter(|x| !seed.contains(x)).collect();
    let ground = greedy_free(&eq, n, &rest, &mut rng, 0.6)?;
    let g = linkgraph::build_link(&eq, &seed, &ground)?;
    let ext = oracle::extension_count(&eq, n, &seed, &ground, ctx.budget)?;
    let mis = linkgraph::count_mis(&g, ctx.budget)?;
    let keep = random_subset(&mut rng, 1, n, 0.7);
    let h = g.induced(keep);
    let mis_h = linkgraph::count_mis(&h, ctx.budget)?;
    let fm = oracle::count_maximal(&eq, n, ctx.budget)?;
    let at = at.pqn(p, q, n);
    let detail = format!("S = {seed:?}, B = {ground:?}");
    Ok(vec![
        at.row(
            "extensions of S in B <= maximal independent sets of the link graph",
            &ext,
            "<=",
            &mis,
            ext <= mis,
            detail.clone(),
        ),
        at.row(
            "maximal independent sets of an induced subgraph <= f_max(n)",
            &mis_h,
            "<=",
            &fm,
            mis_h <= fm,
            format!("{detail}, induced on {} vertices", h.vertex_count()),
        ),
    ])
}

fn merge(ctx: &Context, at: At, i: u64) -> Result<Vec<CheckRow>> {
    let mut rng = rng_for(ctx.seed, i);
    let k = rng.random_range(3..=4usize);
    let mut coeffs: Vec<i64> = (0..k - 1).map(|_| rng.random_range(1..=3)).collect();
    coeffs.push(-rng.random_range(1..=3));
    let eq = LinearEquation::homogeneous_from(&coeffs)?;
    let (a, b) = loop {
        let a = rng.random_range(0..k);
        let b = rng.random_range(0..k);
        if a < b && coeffs[a] + coeffs[b] != 0 {
            break (a, b);
        }
    };
    let mut merged = coeffs.clone();
    merged[a] += merged[b];
    merged.remove(b);
    let merged = LinearEquation::homogeneous_from(&merged)?;
    let n = match ctx.grid.get('n') {
        Some(r) => {
            let ns = r.values(&Point::new())?;
            *ns.choose(&mut rng).ok_or_else(|| Error::InvalidInput("empty n range".into()))?
        }
        None => rng.random_range(5..=15u64),
    };
    let c = bounds::mu_merge_check(&eq, &merged, n, ctx.budget)?;
    Ok(vec![at.with_n(n).row(
        "mu(equation) <= mu(merged equation)",
        &c.lhs,
        "<=",
        &c.rhs,
        c.holds,
        format!("{eq} merged into {merged}"),
    )])
}

fn grouped(ctx: &Context, at: At, i: usize, n: u64) -> Result<Vec<CheckRow>> {
    let (x, y, z) = GROUPED[i];
    let eq = GroupedEquation::new(x.to_vec(), y.to_vec(), z.to_vec())?;
    let c = bounds::mu5ai_check(&eq, n, ctx.budget)?;
    let (p, q, _) = eq.reduced();
    Ok(vec![at.row(
        "mu(n) == n - floor(n/(p+q)) with coefficient sums reduced",
        &c.lhs,
        "==",
        &c.rhs,
        c.holds,
        format!("{} with p = {p}, q = {q}", eq.as_linear()?),
    )])
}

fn shifted_many(ctx: &Context, at: At, i: usize, n: u64) -> Result<Vec<CheckRow>> {
    let (ps, r) = SHIFTED_MANY[i];
    let c = bounds::msf8_check(ps, r, n, ctx.budget)?;
    Ok(vec![at.row(
        "f_max(n) <= f(floor(rn/p_s))",
        &c.lhs,
        "<=",
        &c.rhs,
        c.holds,
        format!("coefficients {ps:?} against {r}z"),
    )])
}
