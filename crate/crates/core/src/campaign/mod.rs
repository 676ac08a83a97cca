//! Verification campaigns and parameter sweeps: each campaign evaluates one
//! family of exact statements over a grid of parameters (or over seeded random
//! instances) and records both sides of every comparison.
//!
//! Grid points are evaluated in parallel on the current rayon pool and
//! reported in grid order, so output does not depend on the thread count.

mod checks;
mod grid;
mod sweep;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};

pub use grid::{Endpoint, Grid, Point, RangeSpec, GRID_NAMES};
pub use sweep::{
    sweep_bounds, sweep_gm, BoundsRow, GmRow, SweepReport, BOUNDS_CSV_HEADER, BOUNDS_DEFAULTS, GM_CSV_HEADER,
    GM_DEFAULTS,
};

/// Seed used by randomized campaigns when none is given.
pub const DEFAULT_SEED: u64 = 1;

/// The families of statements a campaign can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Campaign {
    /// Largest free set with minimum `m` <= max independent set of `G_m` <= structural bound.
    Structure,
    /// Path-length census of `G_m` from the `y_i` recursion against the built graph.
    Census,
    /// Free sets with minimum `m` <= independent sets of `G_m` through `m` <= per-case bound.
    MinCounts,
    /// `2^mu <= f(n) <= (5/2 + C) 2^mu` where the constant `C` applies.
    CountRatio,
    /// Maximal independent set counts against `3^(v/3)` and `2^(v/2)` on random graphs.
    MisBounds,
    /// Random link graphs with `q^2 >= p + q` have no triangle.
    TriangleFree,
    /// Extensions of a free seed into a free ground set <= maximal independent sets of the link graph.
    Extensions,
    /// The disjoint-triangle construction for `px + y = z`.
    Triangles,
    /// `f_max(n) <= f(floor((n - p)/q))`.
    ShiftedCount,
    /// The induced-matching construction and `f_max >= 2^matching size`.
    Matching,
    /// `2^ceil(l) <= f_max(n) <= f(floor((n - p)/q))`.
    FmaxSandwich,
    /// The long-path inequality for `C_k`, and `C_k >= C_(k+1)`.
    PathInequality,
    /// Oracle `mu` against `n - floor(n/(p+q))`.
    MuFormula,
    /// Oracle count of elements in no L-triple against its closed form.
    MuStar,
    /// Coefficient merging, grouped equations and the shifted count bound in more variables.
    MultiVariable,
}

struct Defaults {
    ranges: &'static [(char, &'static str)],
    random: Option<u64>,
}

impl Campaign {
    pub const ALL: [Campaign; 15] = [
        Campaign::Structure,
        Campaign::Census,
        Campaign::MinCounts,
        Campaign::CountRatio,
        Campaign::MisBounds,
        Campaign::TriangleFree,
        Campaign::Extensions,
        Campaign::Triangles,
        Campaign::ShiftedCount,
        Campaign::Matching,
        Campaign::FmaxSandwich,
        Campaign::PathInequality,
        Campaign::MuFormula,
        Campaign::MuStar,
        Campaign::MultiVariable,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Campaign::Structure => "structure",
            Campaign::Census => "census",
            Campaign::MinCounts => "min-counts",
            Campaign::CountRatio => "count-ratio",
            Campaign::MisBounds => "mis-bounds",
            Campaign::TriangleFree => "triangle-free",
            Campaign::Extensions => "extensions",
            Campaign::Triangles => "triangles",
            Campaign::ShiftedCount => "shifted-count",
            Campaign::Matching => "matching",
            Campaign::FmaxSandwich => "fmax-sandwich",
            Campaign::PathInequality => "path-inequality",
            Campaign::MuFormula => "mu-formula",
            Campaign::MuStar => "mu-star",
            Campaign::MultiVariable => "multi-variable",
        }
    }

    /// Older short ids accepted on the command line.
    pub fn aliases(self) -> &'static [&'static str] {
        match self {
            Campaign::Structure => &[],
            Campaign::Census => &["fact32"],
            Campaign::MinCounts => &["nsf2"],
            Campaign::CountRatio => &["nsf3"],
            Campaign::MisBounds => &["moonmoser"],
            Campaign::TriangleFree => &["lemma28"],
            Campaign::Extensions => &["lemma26"],
            Campaign::Triangles => &["msf2"],
            Campaign::ShiftedCount => &["msf3"],
            Campaign::Matching => &["msf5"],
            Campaign::FmaxSandwich => &["msf7-sandwich"],
            Campaign::PathInequality => &["claim-a"],
            Campaign::MuFormula => &[],
            Campaign::MuStar => &[],
            Campaign::MultiVariable => &["section6"],
        }
    }

    fn defaults(self) -> Defaults {
        let (ranges, random): (&'static [(char, &'static str)], Option<u64>) = match self {
            Campaign::Structure => (&[('p', "2..3"), ('q', "1..2"), ('n', "1..30"), ('m', "1..n")], None),
            Campaign::Census => (&[('p', "2..5"), ('q', "1..p"), ('n', "1..200")], None),
            Campaign::MinCounts => (&[('p', "2..3"), ('q', "1..2"), ('n', "1..24")], None),
            Campaign::CountRatio => (&[('p', "3"), ('q', "1"), ('n', "1..30")], None),
            Campaign::MisBounds => (&[], Some(200)),
            Campaign::TriangleFree => (&[], Some(200)),
            Campaign::Extensions => (&[], Some(100)),
            Campaign::Triangles => (&[('p', "2..3"), ('n', "1..150")], None),
            Campaign::ShiftedCount => (&[('p', "2..4"), ('q', "1..p"), ('n', "1..24")], None),
            Campaign::Matching => (&[('p', "2..4"), ('q', "2..p"), ('n', "2p+1..26")], None),
            Campaign::FmaxSandwich => (&[('p', "2"), ('q', "2"), ('n', "16..28:4")], None),
            Campaign::PathInequality => (&[('q', "2..10"), ('p', "q..100"), ('k', "6..40")], None),
            Campaign::MuFormula => (&[('p', "2..4"), ('q', "1..p"), ('n', "0..40")], None),
            Campaign::MuStar => (&[('p', "2..4"), ('q', "1..p"), ('n', "0..60")], None),
            Campaign::MultiVariable => (&[], Some(20)),
        };
        Defaults { ranges, random }
    }

    /// The grid names this campaign reads.
    pub fn grid_names(self) -> Vec<char> {
        let mut names: Vec<char> = self.defaults().ranges.iter().map(|&(c, _)| c).collect();
        if self == Campaign::MultiVariable {
            names.push('n');
        }
        names
    }

    /// Whether the campaign draws seeded random instances.
    pub fn is_random(self) -> bool {
        self.defaults().random.is_some()
    }
}

impl fmt::Display for Campaign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Campaign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Campaign::ALL
            .into_iter()
            .find(|c| c.id() == s || c.aliases().contains(&s))
            .ok_or_else(|| {
                let ids: Vec<&str> = Campaign::ALL.iter().map(|c| c.id()).collect();
                Error::InvalidInput(format!("unknown campaign {s:?}; expected one of {}", ids.join(", ")))
            })
    }
}

/// Outcome of one comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable at this point (outside a statement's hypotheses, an
    /// infeasible construction, or below a reported agreement threshold).
    Skip,
    /// The computation was refused or aborted, usually by the budget.
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::Error => "error",
        }
    }
}

/// One comparison at one grid point or random instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub campaign: &'static str,
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub k: Option<u64>,
    pub instance: Option<u64>,
    pub check: String,
    pub lhs: String,
    pub relation: &'static str,
    pub rhs: String,
    pub status: Status,
    pub detail: String,
}

/// CSV column order for campaign rows.
pub const CHECK_CSV_HEADER: [&str; 13] = [
    "campaign", "p", "q", "n", "m", "k", "instance", "check", "lhs", "relation", "rhs", "status", "detail",
];

fn opt(v: Option<u64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

impl CheckRow {
    pub fn csv_record(&self) -> [String; 13] {
        [
            self.campaign.to_string(),
            opt(self.p),
            opt(self.q),
            opt(self.n),
            opt(self.m),
            opt(self.k),
            opt(self.instance),
            self.check.clone(),
            self.lhs.clone(),
            self.relation.to_string(),
            self.rhs.clone(),
            self.status.as_str().to_string(),
            self.detail.clone(),
        ]
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub error: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub campaign: &'static str,
    pub seed: Option<u64>,
    pub summary: Summary,
    pub warnings: Vec<String>,
    pub rows: Vec<CheckRow>,
}

impl CampaignReport {
    fn new(campaign: Campaign, seed: Option<u64>, rows: Vec<CheckRow>, warnings: Vec<String>) -> Self {
        let mut summary = Summary::default();
        for r in &rows {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skip => summary.skip += 1,
                Status::Error => summary.error += 1,
            }
        }
        CampaignReport {
            campaign: campaign.id(),
            seed,
            summary,
            warnings,
            rows,
        }
    }

    /// No failed and no aborted checks.
    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| r.status == Status::Fail)
    }
}

/// What a campaign runs over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    /// Ranges given explicitly; the campaign's defaults fill the rest.
    pub grid: Grid,
    /// Number of random instances, for randomized campaigns.
    pub random: Option<u64>,
    pub seed: u64,
    pub budget: Budget,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            grid: Grid::new(),
            random: None,
            seed: DEFAULT_SEED,
            budget: Budget::default(),
        }
    }
}

/// Splits points into those with `p >= q` and a warning about the rest.
/// The equation is symmetric in `p` and `q`, so each dropped point repeats a kept one.
fn drop_swapped(points: Vec<Point>, warnings: &mut Vec<String>) -> Vec<Point> {
    let before = points.len();
    let kept: Vec<Point> = points
        .into_iter()
        .filter(|pt| match (pt.get(&'p'), pt.get(&'q')) {
            (Some(p), Some(q)) => q <= p,
            _ => true,
        })
        .collect();
    if kept.len() < before {
        warnings.push(format!(
            "skipped {} grid points with q > p; px + qy = z is qx + py = z with x and y renamed",
            before - kept.len()
        ));
    }
    kept
}

/// Runs a campaign. Errors only on a malformed configuration; failures and
/// budget aborts at individual points are recorded as rows.
pub fn run_campaign(campaign: Campaign, config: &CampaignConfig) -> Result<CampaignReport> {
    let defaults = campaign.defaults();
    let mut warnings = Vec::new();
    let grid = config.grid.with_defaults(defaults.ranges)?;
    let ctx = checks::Context {
        campaign,
        grid: &grid,
        budget: &config.budget,
        seed: config.seed,
    };
    let rows: Vec<CheckRow> = if let Some(default_count) = defaults.random {
        let count = config.random.unwrap_or(default_count);
        let items = checks::random_items(&ctx, count)?;
        items
            .into_par_iter()
            .map(|item| checks::run_random(&ctx, item))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    } else {
        let names = checks::point_names(campaign);
        let points = drop_swapped(grid.points(&names)?, &mut warnings);
        if points.is_empty() {
            return Err(Error::InvalidInput("the grid has no points".into()));
        }
        points
            .into_par_iter()
            .map(|pt| checks::run_point(&ctx, &pt))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    let seed = defaults.random.is_some().then_some(config.seed);
    Ok(CampaignReport::new(campaign, seed, rows, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_and_aliases_round_trip() {
        for c in Campaign::ALL {
            assert_eq!(c.id().parse::<Campaign>().unwrap(), c);
            for a in c.aliases() {
                assert_eq!(a.parse::<Campaign>().unwrap(), c);
            }
        }
        assert!("bogus".parse::<Campaign>().is_err());
    }

    #[test]
    fn swapped_points_are_dropped_with_a_warning() {
        let mut g = Grid::new();
        g.set('p', "1..2".parse().unwrap()).set('q', "1..2".parse().unwrap());
        let mut w = Vec::new();
        let kept = drop_swapped(g.points(&['p', 'q']).unwrap(), &mut w);
        assert_eq!(kept.len(), 3);
        assert_eq!(w.len(), 1);
    }
}
