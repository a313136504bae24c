//! Brute-force model of the Jacobian algebra, by linear algebra on paths.

mod algebra;
mod checks;
mod field;
pub mod linalg;
mod module;

use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

pub use algebra::{cyclic_derivative, default_cap, potential_terms, AlgebraBasis, Element, Term};
pub use checks::{
    boundary_vanishing_check, ext1_dim, ext_arrow_rows, extension_lemma_check, radical_presentation, radical_rows,
    schurian_check, shape_of, stable_hom_dim, ExtArrowRow, LemmaCheck, PresentationShape, RadicalRow, SchurianReport,
    Side, VanishingReport, VanishingRow,
};
pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use module::{Cover, FreeModule, ModHom, Module, ModulePresentation, Sub};

use crate::quiver::{validate_dimer_tree, Quiver};
use crate::weights::weight_report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("not a composable path: {0}")]
    NotComposable(String),
    #[error("algebra not finite-dimensional at cap {0}")]
    NotFinite(usize),
    #[error("{0} is not a boundary arrow")]
    NotBoundary(String),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Schurian,
    /// The extension lemma and its dual, for every boundary arrow.
    Extension,
    /// Radical presentations, indecomposability and the Ext/arrow criterion.
    Radicals,
    BoundaryExt,
    All,
}

impl FromStr for Check {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Check, OracleError> {
        match s {
            "schurian" => Ok(Check::Schurian),
            "lemma1" => Ok(Check::Extension),
            "radicals" => Ok(Check::Radicals),
            "boundary-ext" => Ok(Check::BoundaryExt),
            "all" => Ok(Check::All),
            _ => Err(OracleError::UnknownCheck(s.to_string())),
        }
    }
}

impl Check {
    fn includes(self, other: Check) -> bool {
        self == Check::All || self == other
    }
}

/// Field-independent summary of an oracle run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub quiver: String,
    pub field: String,
    pub dim: usize,
    pub dims_by_length: Vec<usize>,
    pub stabilization: usize,
    pub cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schurian: Option<SchurianReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lemma: Vec<LemmaCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub radicals: Vec<RadicalRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ext_arrows: Vec<ExtArrowRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vanishing: Option<VanishingReport>,
    pub pass: bool,
}

impl OracleReport {
    /// The report with the field name cleared, for comparing runs over different fields.
    pub fn without_field(&self) -> OracleReport {
        OracleReport { field: String::new(), ..self.clone() }
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(s) = &self.schurian {
            out.extend(s.counterexamples.iter().cloned());
        }
        out.extend(self.lemma.iter().filter(|l| !l.holds).map(|l| format!("lemma {:?} {}", l.side, l.arrow)));
        out.extend(self.radicals.iter().filter(|r| !r.pass).map(|r| format!("radical {}", r.vertex)));
        out.extend(self.ext_arrows.iter().filter(|r| !r.pass).map(|r| format!("ext {} {}", r.from, r.to)));
        if let Some(v) = &self.vanishing {
            out.extend(v.rows.iter().filter(|r| !r.pass).map(|r| format!("vanishing {}", r.arrow)));
        }
        out
    }
}

pub fn build_algebra<K: Field>(q: &Quiver, field: K) -> Result<AlgebraBasis<K>, OracleError> {
    if !validate_dimer_tree(q).pass {
        return Err(OracleError::Input(format!("{} is not a dimer tree quiver", q.name)));
    }
    AlgebraBasis::build(field, q, potential_terms(q)?)
}

pub fn run_checks<K: Field>(ab: &AlgebraBasis<K>, check: Check) -> Result<OracleReport, OracleError> {
    let q = &ab.quiver;
    let schurian = check.includes(Check::Schurian).then(|| schurian_check(ab));
    let mut lemma = Vec::new();
    if check.includes(Check::Extension) {
        let wr = weight_report(q).map_err(|e| OracleError::Input(e.to_string()))?;
        for row in &wr.rows {
            for side in [Side::Right, Side::Left] {
                lemma.push(extension_lemma_check(ab, &wr, row.arrow, side)?);
            }
        }
    }
    let needs_radicals = check.includes(Check::Radicals) || check.includes(Check::BoundaryExt);
    let radical_modules: Vec<Module<K::E>> =
        if needs_radicals { (0..q.vertex_count()).map(|x| ab.radical_of_projective(x)).collect() } else { vec![] };
    let (radicals, ext_arrows) = if check.includes(Check::Radicals) {
        (radical_rows(ab, &radical_modules), ext_arrow_rows(ab, &radical_modules))
    } else {
        (vec![], vec![])
    };
    let vanishing = check.includes(Check::BoundaryExt).then(|| boundary_vanishing_check(ab, &radical_modules));
    let pass = schurian.as_ref().is_none_or(|s| s.pass)
        && lemma.iter().all(|l| l.holds)
        && radicals.iter().all(|r| r.pass)
        && ext_arrows.iter().all(|r| r.pass)
        && vanishing.as_ref().is_none_or(|v| v.pass);
    Ok(OracleReport {
        quiver: q.name.clone(),
        field: ab.field.name(),
        dim: ab.dim(),
        dims_by_length: ab.dims_by_length.clone(),
        stabilization: ab.stabilization,
        cap: default_cap(q),
        schurian,
        lemma,
        radicals,
        ext_arrows,
        vanishing,
        pass,
    })
}

/// Builds the algebra over the requested field and runs the requested checks.
pub fn run_oracle(q: &Quiver, field: FieldSpec, check: Check) -> Result<OracleReport, OracleError> {
    match field {
        FieldSpec::Prime(p) => {
            let k = PrimeField::new(p).ok_or_else(|| OracleError::Input(format!("{p} is not a usable prime")))?;
            run_checks(&build_algebra(q, k)?, check)
        }
        FieldSpec::Rational => run_checks(&build_algebra(q, Rationals)?, check),
    }
}

#[cfg(test)]
mod tests;
