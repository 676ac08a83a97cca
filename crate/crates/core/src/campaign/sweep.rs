//! Tabulations over a grid: the independence number of `G_m` next to its
//! structural bound, and the closed-form bounds for each `(p, q, n)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, Exponent};
use crate::error::{Error, Result};
use crate::pathgraph;

use super::{drop_swapped, Grid, Point};

/// Rows of a sweep, in grid order, and any grid points that were skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport<R> {
    pub warnings: Vec<String>,
    pub rows: Vec<R>,
}

/// Ranges a `gm` sweep uses for names the grid leaves unset.
pub const GM_DEFAULTS: [(char, &str); 4] = [('p', "2..3"), ('q', "1..p"), ('n', "1..30"), ('m', "1..n")];
/// Ranges a `bounds` sweep uses for names the grid leaves unset.
pub const BOUNDS_DEFAULTS: [(char, &str); 3] = [('p', "2..5"), ('q', "1..p"), ('n', "10..100:10")];

/// Independence number of `G_m` and the structural bound at one point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GmRow {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub m: u64,
    /// Path parameter of `G_m`.
    pub k: u64,
    pub max_is: u64,
    /// `1` or `2`; `None` when `m > floor(n/(p+q))`, where no bound is stated.
    pub bound_case: Option<u8>,
    /// The case bound as an exact rational, without the small-`n` fallback.
    pub bound: Option<String>,
}

pub const GM_CSV_HEADER: [&str; 8] = ["p", "q", "n", "m", "k", "max_is", "bound_case", "bound"];

impl GmRow {
    pub fn csv_record(&self) -> [String; 8] {
        [
            self.p.to_string(),
            self.q.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.k.to_string(),
            self.max_is.to_string(),
            self.bound_case.map(|c| c.to_string()).unwrap_or_default(),
            self.bound.clone().unwrap_or_default(),
        ]
    }
}

/// The closed-form bounds at one `(p, q, n)`; exponents are written `b^(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub mu_formula: u64,
    pub mu_star_formula: u64,
    pub log2_f_leading: u64,
    pub general: String,
    pub triangle_free: Option<String>,
    pub shifted: String,
    pub best: String,
    pub interval: String,
    pub triangles: Option<String>,
    pub matching: Option<String>,
}

pub const BOUNDS_CSV_HEADER: [&str; 13] = [
    "p",
    "q",
    "n",
    "mu_formula",
    "mu_star_formula",
    "log2_f_leading",
    "general",
    "triangle_free",
    "shifted",
    "best",
    "interval",
    "triangles",
    "matching",
];

impl BoundsRow {
    pub fn csv_record(&self) -> [String; 13] {
        [
            self.p.to_string(),
            self.q.to_string(),
            self.n.to_string(),
            self.mu_formula.to_string(),
            self.mu_star_formula.to_string(),
            self.log2_f_leading.to_string(),
            self.general.clone(),
            self.triangle_free.clone().unwrap_or_default(),
            self.shifted.clone(),
            self.best.clone(),
            self.interval.clone(),
            self.triangles.clone().unwrap_or_default(),
            self.matching.clone().unwrap_or_default(),
        ]
    }
}

fn points(grid: &Grid, defaults: &[(char, &str)], warnings: &mut Vec<String>) -> Result<Vec<Point>> {
    let names: Vec<char> = defaults.iter().map(|&(c, _)| c).collect();
    let grid = grid.with_defaults(defaults)?;
    let mut kept = drop_swapped(grid.points(&names)?, warnings);
    let before = kept.len();
    kept.retain(|pt| pt[&'p'] >= 2 && pt[&'q'] >= 1);
    if kept.len() < before {
        warnings.push(format!("skipped {} grid points with p < 2 or q < 1", before - kept.len()));
    }
    if kept.is_empty() {
        return Err(Error::InvalidInput("the grid has no points".into()));
    }
    Ok(kept)
}

fn gm_row(pt: &Point) -> Result<GmRow> {
    let (p, q, n, m) = (pt[&'p'], pt[&'q'], pt[&'n'], pt[&'m']);
    let max_is = pathgraph::max_is_gm(p, q, n, m)?;
    let k = pathgraph::decompose(p, q, n, m)?.k;
    let base = n / (p + q);
    let bound = (m >= 1 && m <= base)
        .then(|| pathgraph::structure_bound(p, q, n, base - m))
        .transpose()?;
    Ok(GmRow {
        p,
        q,
        n,
        m,
        k,
        max_is,
        bound_case: bound.as_ref().map(|b| b.case.number()),
        bound: bound.map(|b| b.bound.to_string()),
    })
}

/// `max_is_gm` and the structural bound over the `p, q, n, m` grid.
pub fn sweep_gm(grid: &Grid) -> Result<SweepReport<GmRow>> {
    let mut warnings = Vec::new();
    let pts = points(grid, &GM_DEFAULTS, &mut warnings)?;
    let rows = pts.par_iter().map(gm_row).collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { warnings, rows })
}

fn bounds_row(pt: &Point) -> Result<BoundsRow> {
    let (p, q, n) = (pt[&'p'], pt[&'q'], pt[&'n']);
    let r = bounds::bound_report(p, q, n)?;
    let show = |e: &Exponent| e.to_string();
    let best = serde_json::to_value(r.best)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    Ok(BoundsRow {
        p,
        q,
        n,
        mu_formula: r.mu_formula,
        mu_star_formula: r.mu_star_formula,
        log2_f_leading: r.log2_f_leading,
        general: show(&r.fmax_uppers.general),
        triangle_free: r.fmax_uppers.triangle_free.as_ref().map(show),
        shifted: show(&r.fmax_uppers.shifted),
        best,
        interval: show(&r.lower_bounds.interval),
        triangles: r.lower_bounds.triangles.as_ref().map(show),
        matching: r.lower_bounds.matching.as_ref().map(show),
    })
}

/// The closed-form bound report over the `p, q, n` grid.
pub fn sweep_bounds(grid: &Grid) -> Result<SweepReport<BoundsRow>> {
    let mut warnings = Vec::new();
    let pts = points(grid, &BOUNDS_DEFAULTS, &mut warnings)?;
    let rows = pts.par_iter().map(bounds_row).collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { warnings, rows })
}
