//! Verification records and the per-family suite.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::algebra::MatrixAlgebra;
use super::checks;
use super::spectrum::restricted_spectrum;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::spaces::{catalog, Family};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The identity being tested, written out.
    pub identity: String,
    /// Measured deviation; absent when the check is a yes/no comparison
    /// or could not be computed.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn measured(name: impl Into<String>, identity: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            identity: identity.into(),
            residual: Some(residual),
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
            note: None,
        }
    }

    pub fn exact(name: impl Into<String>, identity: impl Into<String>, pass: bool, note: Option<String>) -> Self {
        Check { name: name.into(), identity: identity.into(), residual: None, tolerance: 0.0, pass, note }
    }

    pub fn failed(name: impl Into<String>, identity: impl Into<String>, err: &Error) -> Self {
        Check::exact(name, identity, false, Some(err.to_string()))
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub space: String,
    pub family: Family,
    #[serde(with = "crate::rational::serde_str")]
    pub d: Rational,
    /// How the absolute scale of the trace form was fixed.
    pub normalization: String,
    /// Measured multiplicities keyed by root.
    pub multiplicities: BTreeMap<String, usize>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// One line per check, for terminal output.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (d = {})", self.space, rational::format(&self.d));
        for c in &self.checks {
            let residual = c.residual.map_or_else(|| "-".to_string(), |r| format!("{r:.3e}"));
            let _ = writeln!(
                out,
                "  [{}] {:<44} residual {:>10}  tol {:.0e}{}",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                residual,
                c.tolerance,
                c.note.as_ref().map(|n| format!("  ({n})")).unwrap_or_default()
            );
        }
        out
    }
}

/// Classical instances covered by the full suite.
pub fn classical_suite() -> Vec<Family> {
    vec![
        Family::complex_projective(3),
        Family::Grassmannian { k: 2, n: 4 },
        Family::Grassmannian { k: 2, n: 5 },
        Family::OrientedGrassmannian { n: 5 },
        Family::OrientedGrassmannian { n: 6 },
        Family::OrientedGrassmannian { n: 7 },
        Family::OrientedGrassmannian { n: 8 },
        Family::SoQuotient { n: 4 },
        Family::SoQuotient { n: 5 },
        Family::SpQuotient { n: 2 },
        Family::SpQuotient { n: 3 },
    ]
}

/// Builds the model for `family` at metric parameter `d` and runs every check.
pub fn run_suite(family: Family, d: Rational) -> Result<VerificationReport> {
    let space = catalog(family)?;
    if !rational::is_positive(&d) {
        return Err(Error::InvalidParameter(format!("d = {} must be positive", rational::format(&d))));
    }
    let alg = MatrixAlgebra::build(family, rational::to_f64(&d))?;
    let mut out = checks::structure_checks(&alg);

    let spec = match restricted_spectrum(&alg) {
        Ok(s) => {
            out.push(Check::exact(
                "spectrum/multiplicities",
                "measured rank, type and multiplicities equal the catalog",
                true,
                None,
            ));
            s
        }
        Err(e) => {
            out.push(Check::failed(
                "spectrum/multiplicities",
                "measured rank, type and multiplicities equal the catalog",
                &e,
            ));
            return Ok(finish(&space.name, family, d, BTreeMap::new(), out));
        }
    };
    let multiplicities = spec.roots.iter().map(|r| (r.root.to_string(), r.multiplicity)).collect();

    out.extend(checks::spectrum_checks(&alg, &spec));
    out.extend(checks::verify_j_action(&alg, &spec));
    out.extend(checks::einstein_checks(&alg, &spec, &space, d));
    out.extend(checks::curvature_suite(&alg, &spec, &space, d));
    out.extend(checks::contact_suite(&alg, &spec, &space));
    out.extend(checks::face_suite(&alg, &spec, &space, d));
    Ok(finish(&space.name, family, d, multiplicities, out))
}

fn finish(
    space: &str,
    family: Family,
    d: Rational,
    multiplicities: BTreeMap<String, usize>,
    checks: Vec<Check>,
) -> VerificationReport {
    VerificationReport {
        space: space.to_string(),
        family,
        d,
        normalization: "trace form rescaled so that the measured highest root has |iA_delta|^2 = d".into(),
        multiplicities,
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}
