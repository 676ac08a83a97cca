//! Per-instance summary of the oracle quantities.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::budget::Budget;
use crate::equations::PqEquation;
use crate::error::{Error, Result};

/// Which oracle quantities to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StatsFields {
    pub mu: bool,
    pub mu_star: bool,
    pub f: bool,
    pub f_max: bool,
    pub per_min: bool,
}

impl StatsFields {
    pub const NAMES: [&'static str; 5] = ["mu", "mu_star", "f", "f_max", "per_min"];

    pub fn all() -> Self {
        StatsFields {
            mu: true,
            mu_star: true,
            f: true,
            f_max: true,
            per_min: true,
        }
    }

    pub fn none() -> Self {
        StatsFields {
            mu: false,
            mu_star: false,
            f: false,
            f_max: false,
            per_min: false,
        }
    }

    /// Parses a comma-separated list such as `mu,f_max`.
    pub fn parse(list: &str) -> Result<Self> {
        let mut out = Self::none();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match name {
                "mu" => out.mu = true,
                "mu_star" => out.mu_star = true,
                "f" => out.f = true,
                "f_max" => out.f_max = true,
                "per_min" => out.per_min = true,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown field {other:?}; expected one of {}",
                        Self::NAMES.join(", ")
                    )))
                }
            }
        }
        Ok(out)
    }
}

fn decimal<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_str_radix(10)),
        None => s.serialize_none(),
    }
}

fn decimal_map<S: Serializer>(
    v: &Option<BTreeMap<u64, BigUint>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(map) => s.collect_map(map.iter().map(|(m, c)| (m.to_string(), c.to_str_radix(10)))),
        None => s.serialize_none(),
    }
}

/// Oracle values for one `(p, q, n)`. Fields not requested are `None` and
/// serialize as `null`; big integers serialize as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatsRecord {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub mu: Option<u64>,
    pub mu_star: Option<u64>,
    #[serde(serialize_with = "decimal")]
    pub f: Option<BigUint>,
    #[serde(serialize_with = "decimal")]
    pub f_max: Option<BigUint>,
    #[serde(serialize_with = "decimal_map")]
    pub per_min: Option<BTreeMap<u64, BigUint>>,
    pub elapsed_ms: u64,
}

impl StatsRecord {
    /// Checks the relations that must hold between the recorded fields.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidInput(msg));
        if let Some(mu) = self.mu {
            if mu > self.n {
                return fail(format!("mu = {mu} exceeds n = {}", self.n));
            }
        }
        if let (Some(mu), Some(ms)) = (self.mu, self.mu_star) {
            if ms > mu {
                return fail(format!("mu_star = {ms} exceeds mu = {mu}"));
            }
        }
        if let (Some(f), Some(ms)) = (&self.f, self.mu_star) {
            if *f < BigUint::from(1u32) << ms {
                return fail(format!("f = {f} is below 2^mu_star"));
            }
        }
        if let (Some(f), Some(fm)) = (&self.f, &self.f_max) {
            if f < fm {
                return fail(format!("f = {f} is below f_max = {fm}"));
            }
        }
        if let Some(fm) = &self.f_max {
            if self.n >= 1 && *fm < BigUint::from(1u32) {
                return fail("f_max is zero".into());
            }
        }
        if let (Some(f), Some(per)) = (&self.f, &self.per_min) {
            let sum: BigUint = per.values().sum();
            if sum + 1u32 != *f {
                return fail("per-minimum counts do not sum to f - 1".into());
            }
        }
        Ok(())
    }
}

/// Computes the requested oracle quantities for `px + qy = z` on `[n]`.
pub fn compute_stats(eq: &PqEquation, n: u64, fields: StatsFields, budget: &Budget) -> Result<StatsRecord> {
    let start = Instant::now();
    let mu = fields.mu.then(|| super::mu(eq, n, budget)).transpose()?;
    let mu_star = fields.mu_star.then(|| super::mu_star(eq, n));
    let f = fields.f.then(|| super::count_solution_free(eq, n, budget)).transpose()?;
    let f_max = fields.f_max.then(|| super::count_maximal(eq, n, budget)).transpose()?;
    let per_min = fields.per_min.then(|| super::counts_by_min(eq, n, budget)).transpose()?;
    Ok(StatsRecord {
        p: eq.p(),
        q: eq.q(),
        n,
        mu,
        mu_star,
        f,
        f_max,
        per_min,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_field_names_and_decimal_strings() {
        let eq = PqEquation::new(2, 1).unwrap();
        let rec = compute_stats(&eq, 12, StatsFields::all(), &Budget::default()).unwrap();
        rec.check_invariants().unwrap();
        let v = serde_json::to_value(&rec).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        let mut expected = vec!["p", "q", "n", "mu", "mu_star", "f", "f_max", "per_min", "elapsed_ms"];
        expected.sort_unstable();
        let mut keys_sorted = keys.clone();
        keys_sorted.sort_unstable();
        assert_eq!(keys_sorted, expected);
        assert_eq!(v["mu"], 8);
        assert!(v["f"].is_string());
        assert!(v["f_max"].is_string());
        assert!(v["per_min"]["4"].is_string());
    }

    #[test]
    fn unrequested_fields_are_null() {
        let eq = PqEquation::new(2, 2).unwrap();
        let rec = compute_stats(&eq, 10, StatsFields::parse("mu_star").unwrap(), &Budget::default()).unwrap();
        assert_eq!(rec.mu_star, Some(3));
        let v = serde_json::to_value(&rec).unwrap();
        assert!(v["f"].is_null());
        assert!(v["mu"].is_null());
    }

    #[test]
    fn field_list_parsing() {
        assert!(StatsFields::parse("mu,bogus").is_err());
        assert_eq!(StatsFields::parse("").unwrap(), StatsFields::none());
    }
}
