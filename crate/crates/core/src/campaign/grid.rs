//! Parameter grids: named integer ranges whose endpoints may refer to other
//! parameters, as in `--p q..100` or `--n 2p+1..30`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Values of the grid parameters at one point, keyed by name (`p`, `q`, `n`, `m`, `k`).
pub type Point = BTreeMap<char, u64>;

/// `coef * var + offset`, or a plain integer when `var` is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Endpoint {
    var: Option<char>,
    coef: u64,
    offset: i64,
}

impl Endpoint {
    pub fn literal(v: u64) -> Self {
        Endpoint {
            var: None,
            coef: 0,
            offset: v as i64,
        }
    }

    fn eval(&self, point: &Point) -> Result<i64> {
        let base = match self.var {
            None => 0,
            Some(v) => {
                let value = point.get(&v).ok_or_else(|| {
                    Error::InvalidInput(format!("range refers to {v}, which is not set before it"))
                })?;
                (self.coef * value) as i64
            }
        };
        Ok(base + self.offset)
    }
}

impl FromStr for Endpoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("cannot read range endpoint {s:?}"));
        if let Ok(v) = s.parse::<u64>() {
            return Ok(Endpoint::literal(v));
        }
        let var_at = s.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
        let var = s[var_at..].chars().next().ok_or_else(bad)?;
        if !GRID_NAMES.contains(&var) {
            return Err(bad());
        }
        let coef = match s[..var_at].trim_end_matches('*') {
            "" => 1,
            c => c.parse::<u64>().map_err(|_| bad())?,
        };
        let rest = s[var_at + 1..].trim();
        let offset = if rest.is_empty() {
            0
        } else if let Some(r) = rest.strip_prefix('+') {
            r.trim().parse::<i64>().map_err(|_| bad())?
        } else if let Some(r) = rest.strip_prefix('-') {
            -r.trim().parse::<i64>().map_err(|_| bad())?
        } else {
            return Err(bad());
        };
        Ok(Endpoint {
            var: Some(var),
            coef,
            offset,
        })
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.var {
            None => write!(f, "{}", self.offset),
            Some(v) => {
                if self.coef != 1 {
                    write!(f, "{}", self.coef)?;
                }
                write!(f, "{v}")?;
                match self.offset {
                    0 => Ok(()),
                    o if o > 0 => write!(f, "+{o}"),
                    o => write!(f, "{o}"),
                }
            }
        }
    }
}

/// Parameter names a grid understands, in default nesting order.
pub const GRID_NAMES: [char; 5] = ['p', 'q', 'n', 'm', 'k'];

/// An inclusive range `lo..hi` with an optional step, written `lo..hi:step`.
/// A single value `v` means `v..v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeSpec {
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub step: u64,
}

impl RangeSpec {
    pub fn new(lo: u64, hi: u64) -> Self {
        RangeSpec {
            lo: Endpoint::literal(lo),
            hi: Endpoint::literal(hi),
            step: 1,
        }
    }

    fn vars(&self) -> impl Iterator<Item = char> {
        self.lo.var.into_iter().chain(self.hi.var)
    }

    /// The values of the range with the other parameters fixed by `point`;
    /// empty when `hi < lo`. Negative values are clamped away.
    pub fn values(&self, point: &Point) -> Result<Vec<u64>> {
        let lo = self.lo.eval(point)?.max(0) as u64;
        let hi = self.hi.eval(point)?;
        if hi < lo as i64 {
            return Ok(Vec::new());
        }
        Ok((lo..=hi as u64).step_by(self.step as usize).collect())
    }
}

impl FromStr for RangeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (body, step) = match s.split_once(':') {
            Some((b, st)) => {
                let step = st
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("cannot read step in {s:?}")))?;
                if step == 0 {
                    return Err(Error::InvalidInput("range step must be positive".into()));
                }
                (b, step)
            }
            None => (s, 1),
        };
        let (lo, hi) = match body.split_once("..") {
            Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
            None => (body, body),
        };
        Ok(RangeSpec {
            lo: lo.parse()?,
            hi: hi.parse()?,
            step,
        })
    }
}

impl fmt::Display for RangeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)?;
        if self.step != 1 {
            write!(f, ":{}", self.step)?;
        }
        Ok(())
    }
}

/// A set of named ranges, expanded into points by nesting one loop per name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Grid {
    ranges: BTreeMap<char, RangeSpec>,
}

impl Grid {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: char, range: RangeSpec) -> &mut Self {
        self.ranges.insert(name, range);
        self
    }

    pub fn get(&self, name: char) -> Option<&RangeSpec> {
        self.ranges.get(&name)
    }

    /// This grid, with `defaults` filling the names it leaves unset.
    pub fn with_defaults(&self, defaults: &[(char, &str)]) -> Result<Grid> {
        let mut out = self.clone();
        for &(name, text) in defaults {
            if let std::collections::btree_map::Entry::Vacant(slot) = out.ranges.entry(name) {
                slot.insert(text.parse()?);
            }
        }
        Ok(out)
    }

    /// Loop order for `names`: the default order, except that a name whose
    /// range refers to another is placed after it.
    fn order(&self, names: &[char]) -> Result<Vec<char>> {
        let mut order: Vec<char> = Vec::new();
        let mut pending: Vec<char> = GRID_NAMES.iter().copied().filter(|c| names.contains(c)).collect();
        while !pending.is_empty() {
            let ready = pending.iter().position(|c| {
                self.ranges[c]
                    .vars()
                    .all(|v| order.contains(&v) || (!names.contains(&v) && v != *c))
            });
            match ready {
                Some(i) => order.push(pending.remove(i)),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "grid ranges refer to each other in a cycle among {pending:?}"
                    )))
                }
            }
        }
        Ok(order)
    }

    /// Every point over `names`, in nesting order. Each name must have a range.
    pub fn points(&self, names: &[char]) -> Result<Vec<Point>> {
        for c in names {
            if !self.ranges.contains_key(c) {
                return Err(Error::InvalidInput(format!("no range given for {c}")));
            }
        }
        let order = self.order(names)?;
        let mut points = vec![Point::new()];
        for name in order {
            let range = self.ranges[&name];
            let mut next = Vec::new();
            for pt in points {
                for v in range.values(&pt)? {
                    let mut p = pt.clone();
                    p.insert(name, v);
                    next.push(p);
                }
            }
            points = next;
        }
        Ok(points)
    }

    /// The values of one range at a point that fixes the names it refers to.
    pub fn values(&self, name: char, point: &Point) -> Result<Vec<u64>> {
        self.ranges
            .get(&name)
            .ok_or_else(|| Error::InvalidInput(format!("no range given for {name}")))?
            .values(point)
    }
}
