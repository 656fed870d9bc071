//! Run configuration: key=value files merged under command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::Failure;

/// Every setting a command can read. Unset fields fall back to command defaults.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drop_term: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orders: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trap: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sites: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_overlap: Option<f64>,
    #[serde(skip)]
    pub coo: Option<PathBuf>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub csv: Option<PathBuf>,
    #[serde(skip)]
    pub format: Option<String>,
    #[serde(skip)]
    pub threads: Option<usize>,
}

fn parse<T: FromStr>(key: &str, v: &str) -> Result<T, Failure> {
    v.parse()
        .map_err(|_| Failure::invalid(format!("config key '{key}': cannot parse '{v}'")))
}

impl RunConfig {
    /// Reads `key = value` lines; `#` starts a comment. Unknown keys are errors.
    pub fn from_file(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::invalid(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    pub fn from_text(text: &str) -> Result<Self, Failure> {
        let mut c = RunConfig::default();
        let mut seen = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Failure::invalid(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let key = k.trim().replace('_', "-");
            let v = v.trim();
            if seen.insert(key.clone(), lineno).is_some() {
                return Err(Failure::invalid(format!("config key '{key}' given twice")));
            }
            c.set(&key, v)?;
        }
        Ok(c)
    }

    fn set(&mut self, key: &str, v: &str) -> Result<(), Failure> {
        let s = || Some(v.to_string());
        match key {
            "model" => self.model = s(),
            "params" => self.params = s(),
            "n" => self.n = Some(parse(key, v)?),
            "zeta" => self.zeta = Some(parse(key, v)?),
            "geometry" => self.geometry = s(),
            "samples" => self.samples = Some(parse(key, v)?),
            "seed" => self.seed = Some(parse(key, v)?),
            "drop-term" => self.drop_term = s(),
            "family" => self.family = s(),
            "orders" => self.orders = s(),
            "trap" => self.trap = s(),
            "budget" => self.budget = Some(parse(key, v)?),
            "sites" => self.sites = s(),
            "half-width" => self.half_width = Some(parse(key, v)?),
            "length" => self.length = Some(parse(key, v)?),
            "boundary" => self.boundary = s(),
            "order" => self.order = Some(parse(key, v)?),
            "min-overlap" => self.min_overlap = Some(parse(key, v)?),
            "coo" => self.coo = Some(v.into()),
            "out" => self.out = Some(v.into()),
            "csv" => self.csv = Some(v.into()),
            "format" => self.format = s(),
            "threads" => self.threads = Some(parse(key, v)?),
            _ => return Err(Failure::invalid(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }
}

/// Overwrites `slot` when the flag was given.
pub fn overlay<T: Clone>(slot: &mut Option<T>, flag: &Option<T>) {
    if flag.is_some() {
        slot.clone_from(flag);
    }
}

/// `g=1,omega=0.5` → map.
pub fn parse_params(s: Option<&str>) -> Result<BTreeMap<String, f64>, Failure> {
    let mut out = BTreeMap::new();
    for item in s
        .unwrap_or("")
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
    {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Failure::invalid(format!("parameter '{item}' is not key=value")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Failure::invalid(format!("parameter '{}' is not a number", k.trim())))?;
        if out.insert(k.trim().to_string(), v).is_some() {
            return Err(Failure::invalid(format!(
                "parameter '{}' given twice",
                k.trim()
            )));
        }
    }
    Ok(out)
}

/// Comma-separated list.
pub fn parse_list<T: FromStr>(what: &str, s: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::invalid(format!("{what}: cannot parse '{t}'")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_format() {
        let c = RunConfig::from_text("# run\nmodel = lieb-liniger\nhalf_width=4 # box\nseed=7\n")
            .unwrap();
        assert_eq!(c.model.as_deref(), Some("lieb-liniger"));
        assert_eq!(c.half_width, Some(4.0));
        assert_eq!(c.seed, Some(7));
        assert!(RunConfig::from_text("colour = red").is_err());
        assert!(RunConfig::from_text("seed = x").is_err());
        assert!(RunConfig::from_text("seed = 1\nseed = 2").is_err());
    }

    #[test]
    fn params_and_lists() {
        let p = parse_params(Some("g=1, omega=0.5")).unwrap();
        assert_eq!(p["omega"], 0.5);
        assert!(parse_params(Some("g")).is_err());
        assert_eq!(parse_list::<u32>("orders", "2,3").unwrap(), vec![2, 3]);
    }
}
