//! Problem-file schema.
//!
//! ```json
//! {
//!   "group": {"moduli": [8]},
//!   "H": {"generators": [[4]]},
//!   "M": {"generators": [[2]]},
//!   "generators": [{"spectrum": [[1,0],[1,0],[0,0],[0,0],[1,0],[1,0],[0,0],[0,0]]}]
//! }
//! ```
//!
//! Complex entries are `[re, im]` pairs (a bare number is read as a real
//! value). Each generator gives exactly one of `spectrum` or `signal`.

use anyhow::{anyhow, bail, Context, Result};
use extrainv::{dft, idft, Complex64, Group, Signal, Spectrum, Subgroup};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Moduli { moduli: Vec<i64> },
    List(Vec<i64>),
}

impl GroupSpec {
    fn moduli(&self) -> &[i64] {
        match self {
            GroupSpec::Moduli { moduli } | GroupSpec::List(moduli) => moduli,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupSpec {
    #[serde(default)]
    pub generators: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexValue {
    Pair([f64; 2]),
    Real(f64),
}

impl From<ComplexValue> for Complex64 {
    fn from(v: ComplexValue) -> Self {
        match v {
            ComplexValue::Pair([re, im]) => Complex64::new(re, im),
            ComplexValue::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<ComplexValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal: Option<Vec<ComplexValue>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub group: GroupSpec,
    #[serde(rename = "H", default)]
    pub h: SubgroupSpec,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<SubgroupSpec>,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
}

/// A validated problem: generators are normalized to time-domain signals.
#[derive(Debug, Clone)]
pub struct Problem {
    pub group: Group,
    pub h: Subgroup,
    pub m: Option<Subgroup>,
    pub family: Vec<Signal>,
}

fn subgroup(group: &Group, spec: &SubgroupSpec, name: &str) -> Result<Subgroup> {
    let gens = spec
        .generators
        .iter()
        .map(|c| group.element(c))
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("invalid generator of {name}"))?;
    Ok(Subgroup::closure(group, &gens)?)
}

fn vector(values: &[ComplexValue], expected: usize, what: &str) -> Result<Vec<Complex64>> {
    if values.len() != expected {
        bail!("{what} has length {}, expected |G| = {expected}", values.len());
    }
    Ok(values.iter().map(|&v| v.into()).collect())
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("malformed problem file")
    }

    pub fn validate(&self) -> Result<Problem> {
        let group = Group::new(self.group.moduli())?;
        let h = subgroup(&group, &self.h, "H")?;
        let m = self.m.as_ref().map(|s| subgroup(&group, s, "M")).transpose()?;
        if let Some(m) = &m {
            if !h.is_subgroup_of(m) {
                bail!("M does not contain H");
            }
        }
        let n = group.order();
        let family = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, spec)| match (&spec.spectrum, &spec.signal) {
                (Some(s), None) => {
                    let what = format!("generator {i} spectrum");
                    Ok(idft(&Spectrum::new(&group, vector(s, n, &what)?)?))
                }
                (None, Some(s)) => {
                    let what = format!("generator {i} signal");
                    Ok(Signal::new(&group, vector(s, n, &what)?)?)
                }
                _ => Err(anyhow!("generator {i} must give exactly one of `spectrum` or `signal`")),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Problem { group, h, m, family })
    }
}

impl Problem {
    pub fn require_m(&self) -> Result<&Subgroup> {
        self.m.as_ref().ok_or_else(|| anyhow!("this command needs `M` in the problem file"))
    }

    pub fn require_generators(&self) -> Result<&[Signal]> {
        if self.family.is_empty() {
            bail!("the problem file lists no generators");
        }
        Ok(&self.family)
    }

    pub fn spectra(&self) -> Vec<Spectrum> {
        self.family.iter().map(dft).collect()
    }
}

pub fn subgroup_spec(s: &Subgroup) -> SubgroupSpec {
    SubgroupSpec {
        generators: s
            .generators()
            .iter()
            .map(|e| e.coords().iter().map(|&c| c as i64).collect())
            .collect(),
    }
}
