//! Assembled Hamiltonians and their Jastrow ground states.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::one_body::OneBodyProfile;
use crate::pair::{DeltaStrength, PairFamily};
use crate::units::{Geometry, PhysicalConstants, Statistics};

pub type Fn1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type Fn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type Fn3 = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// One labelled piece of a Hamiltonian.
#[derive(Clone)]
pub struct Term<F> {
    pub label: String,
    pub formula: String,
    pub citation: String,
    pub eval: F,
}

impl<F> Term<F> {
    pub fn new(label: &str, formula: impl Into<String>, citation: &str, eval: F) -> Self {
        Term {
            label: label.into(),
            formula: formula.into(),
            citation: citation.into(),
            eval,
        }
    }
}

impl<F> fmt::Debug for Term<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Term")
            .field("label", &self.label)
            .field("formula", &self.formula)
            .finish()
    }
}

/// Contact term. The strength is in energy units: H ⊃ c·δ(x_ij) (finite) or
/// c·δ(x_ij)/|x_ij| (hard core).
#[derive(Debug, Clone)]
pub struct DeltaTerm {
    pub strength: DeltaStrength,
    pub formula: String,
    pub citation: String,
}

#[derive(Clone, Default)]
pub enum ThreeBody {
    #[default]
    None,
    /// V_ijk(x_ij, x_jk, x_ki); contributes −V_ijk/m per triple.
    Full(Term<Fn3>),
    /// Q(x_ij); contributes −multiplicity·Q/m per pair, with multiplicity N − 2.
    Reduced { q: Term<Fn1>, multiplicity: usize },
}

impl fmt::Debug for ThreeBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThreeBody::None => write!(f, "None"),
            ThreeBody::Full(t) => write!(f, "Full({})", t.formula),
            ThreeBody::Reduced { q, multiplicity } => {
                write!(f, "Reduced({}, {multiplicity})", q.formula)
            }
        }
    }
}

/// Potential pieces of H = Σ p²/2m + (everything here).
#[derive(Clone, Debug, Default)]
pub struct AssembledPotential {
    /// U(x), summed over particles.
    pub external: Option<Term<Fn1>>,
    /// Smooth even pair potentials W₂(x_ij).
    pub two_body: Vec<Term<Fn1>>,
    pub delta: Option<DeltaTerm>,
    pub three_body: ThreeBody,
    /// Cross term evaluated at (x_i, x_j) for i < j.
    pub cross: Option<Term<Fn2>>,
    pub mass: f64,
}

impl AssembledPotential {
    pub fn new(mass: f64) -> Self {
        AssembledPotential {
            mass,
            ..Default::default()
        }
    }

    pub fn two_body_at(&self, r: f64) -> f64 {
        self.two_body.iter().map(|t| (t.eval)(r)).sum()
    }

    /// −V_ijk/m for one triple (zero unless the three-body term is unreduced).
    pub fn three_body_at(&self, r1: f64, r2: f64, r3: f64) -> f64 {
        match &self.three_body {
            ThreeBody::Full(t) => -(t.eval)(r1, r2, r3) / self.mass,
            _ => 0.0,
        }
    }

    /// Two-body contribution of the reduced three-body term at separation r.
    pub fn reduced_at(&self, r: f64) -> f64 {
        match &self.three_body {
            ThreeBody::Reduced { q, multiplicity } => {
                -(*multiplicity as f64) * (q.eval)(r) / self.mass
            }
            _ => 0.0,
        }
    }

    /// Everything except kinetic and contact terms, at one configuration.
    pub fn potential_energy(&self, x: &[f64]) -> f64 {
        let n = x.len();
        let mut e = 0.0;
        if let Some(u) = &self.external {
            e += x.iter().map(|&xi| (u.eval)(xi)).sum::<f64>();
        }
        for i in 0..n {
            for j in i + 1..n {
                let r = x[i] - x[j];
                e += self.two_body_at(r) + self.reduced_at(r);
                if let Some(c) = &self.cross {
                    e += (c.eval)(x[i], x[j]);
                }
            }
        }
        if let ThreeBody::Full(_) = self.three_body {
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        e += self.three_body_at(x[i] - x[j], x[j] - x[k], x[k] - x[i]);
                    }
                }
            }
        }
        e
    }

    pub fn has(&self, kind: TermKind) -> bool {
        match kind {
            TermKind::External => self.external.is_some(),
            TermKind::TwoBody => !self.two_body.is_empty(),
            TermKind::Delta => self.delta.is_some(),
            TermKind::ThreeBody => !matches!(self.three_body, ThreeBody::None),
            TermKind::Cross => self.cross.is_some(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermKind {
    External,
    TwoBody,
    Delta,
    ThreeBody,
    Cross,
}

impl TermKind {
    pub const ALL: [TermKind; 5] = [
        TermKind::External,
        TermKind::TwoBody,
        TermKind::Delta,
        TermKind::ThreeBody,
        TermKind::Cross,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TermKind::External => "external",
            TermKind::TwoBody => "two-body",
            TermKind::Delta => "delta",
            TermKind::ThreeBody => "three-body",
            TermKind::Cross => "cross",
        }
    }
}

impl FromStr for TermKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TermKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown term kind '{s}' (expected external, two-body, delta, three-body or cross)")))
    }
}

/// A Hamiltonian together with its Jastrow state and known ground-state energy.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub n: usize,
    pub constants: PhysicalConstants,
    pub statistics: Statistics,
    pub geometry: Geometry,
    pub pair: PairFamily,
    pub one_body: OneBodyProfile,
    pub terms: AssembledPotential,
    pub e0: Option<f64>,
    pub e0_formula: Option<String>,
    pub citations: Vec<String>,
    pub dropped: Vec<TermKind>,
}

impl ModelSpec {
    pub fn e0_known(&self) -> bool {
        self.e0.is_some()
    }

    /// Remove one term; used to build negative controls.
    pub fn drop_term(&self, kind: TermKind) -> Result<ModelSpec> {
        if !self.terms.has(kind) {
            return Err(Error::Invalid(format!(
                "model '{}' has no {} term to drop",
                self.name,
                kind.as_str()
            )));
        }
        let mut m = self.clone();
        match kind {
            TermKind::External => m.terms.external = None,
            TermKind::TwoBody => m.terms.two_body.clear(),
            TermKind::Delta => m.terms.delta = None,
            TermKind::ThreeBody => m.terms.three_body = ThreeBody::None,
            TermKind::Cross => m.terms.cross = None,
        }
        m.dropped.push(kind);
        Ok(m)
    }

    pub fn catalog_entry(&self) -> CatalogEntry {
        CatalogEntry {
            name: self.name.clone(),
            params: self.params.clone(),
            n: self.n,
            zeta: self.statistics.sign(),
            geometry: self.geometry,
            e0: self.e0,
            citations: self.citations.clone(),
        }
    }

    /// Term-by-term text rendering of the Hamiltonian.
    pub fn printout(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "model {} (N = {}, zeta = {:+}, {})",
            self.name,
            self.n,
            self.statistics.sign(),
            self.geometry.label()
        );
        let _ = writeln!(s, "  kinetic     sum_i p_i^2/2m");
        let t = &self.terms;
        if let Some(u) = &t.external {
            let _ = writeln!(s, "  external    sum_i {}    [{}]", u.formula, u.citation);
        }
        for w in &t.two_body {
            let _ = writeln!(s, "  two-body    sum_i<j {}    [{}]", w.formula, w.citation);
        }
        if let Some(d) = &t.delta {
            let _ = writeln!(s, "  delta       sum_i<j {}    [{}]", d.formula, d.citation);
        }
        match &t.three_body {
            ThreeBody::None => {}
            ThreeBody::Full(v) => {
                let _ = writeln!(
                    s,
                    "  three-body  -(1/m) sum_i<j<k {}    [{}]",
                    v.formula, v.citation
                );
            }
            ThreeBody::Reduced { q, multiplicity } => {
                let _ = writeln!(
                    s,
                    "  three-body  -({multiplicity}/m) sum_i<j {}    [{}]",
                    q.formula, q.citation
                );
            }
        }
        if let Some(c) = &t.cross {
            let _ = writeln!(s, "  cross       sum_i<j {}    [{}]", c.formula, c.citation);
        }
        match (&self.e0, &self.e0_formula) {
            (Some(e), Some(f)) => {
                let _ = writeln!(s, "  E0 = {f} = {e}");
            }
            _ => {
                let _ = writeln!(s, "  E0 unknown in closed form");
            }
        }
        s
    }
}

/// Serialized catalog record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    #[serde(rename = "N")]
    pub n: usize,
    pub zeta: i32,
    pub geometry: Geometry,
    pub e0: Option<f64>,
    pub citations: Vec<String>,
}

/// Particle positions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigVector {
    pub positions: Vec<f64>,
}

impl ConfigVector {
    pub fn new(positions: Vec<f64>) -> Self {
        ConfigVector { positions }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Smallest |x_i − x_j|, measured around the ring when a period is given.
    pub fn min_separation(&self, period: Option<f64>) -> f64 {
        let x = &self.positions;
        let mut best = f64::INFINITY;
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                let mut d = (x[i] - x[j]).abs();
                if let Some(l) = period {
                    d %= l;
                    d = d.min(l - d);
                }
                best = best.min(d);
            }
        }
        best
    }
}

impl From<Vec<f64>> for ConfigVector {
    fn from(v: Vec<f64>) -> Self {
        ConfigVector::new(v)
    }
}
