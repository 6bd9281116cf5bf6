//! Feasibility: `X` and `Y` diagonalizable and `t0` with two eigenvalues.

use serde::Serialize;

use crate::exactlinalg::{eigenspace, ExactMatrix};

use super::derived::derived_elements;
use super::params::{condition_y_multiplicity_free, expected_eigenspace_dims};
use super::relations::{Check, Report};
use super::ubasis::y_diagonal;
use super::{DahaError, HqModule};

/// The outcome of each feasibility clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// `X` is diagonal on the construction basis with the ladder as its simple spectrum.
    pub x_diagonalizable: bool,
    /// `Y` is diagonalizable according to the inequality table.
    pub y_by_table: bool,
    /// `Y` is diagonalizable according to its eigenspaces for the predicted spectrum.
    pub y_by_spectrum: bool,
    /// `t0` has the two distinct eigenvalues `k0^{±1}`.
    pub t0_two_eigenvalues: bool,
    /// `(dim V(k0), dim V(k0⁻¹))`.
    pub t0_dims: (usize, usize),
    /// Name of the first failing clause.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_clause: Option<String>,
    pub report: Report,
}

/// Decides feasibility of a constructed module.
///
/// Diagonalizability of `Y` is decided twice, from the inequality table and
/// from the eigenspaces of `Y` for its predicted eigenvalues `β_r^{±1}`; the
/// two must agree or an error is returned. The `t0` clause needs `k0² ≠ 1`
/// and both eigenspaces nonzero, and the dimensions must match the table for
/// the type (which rules out `DDa` with `n = 1`).
pub fn is_feasible(module: &HqModule) -> Result<FeasibilityReport, DahaError> {
    let n = module.params.n;
    let dim = n + 1;
    let (xtype, k, q) = (module.xtype, &module.params.k, &module.params.q);
    let d = derived_elements(module);
    let mut report = Report::default();

    let x_check = Check::equal("X = diag(mu)", &d.x, &ExactMatrix::diagonal(&module.mu));
    let distinct = (0..dim).all(|i| !module.mu[i + 1..].contains(&module.mu[i]));
    let x_ok = x_check.passed && distinct;
    report.push(x_check);
    report.push(Check::flag("X eigenvalues distinct", distinct));

    let y_by_table = condition_y_multiplicity_free(xtype, n, k, q);
    let predicted = y_diagonal(xtype, k, q, n);
    let mut seen = Vec::new();
    let mut total = 0;
    for v in &predicted {
        if !seen.contains(v) {
            total += eigenspace(&d.y, v)?.dim();
            seen.push(v.clone());
        }
    }
    let y_by_spectrum = total == dim;
    report.push(Check::flag("Y multiplicity-free by table", y_by_table));
    report.push(Check::flag("Y diagonalizable by spectrum", y_by_spectrum));
    if y_by_table != y_by_spectrum {
        return Err(DahaError::CheckFailed(
            "the inequality table and the spectrum of Y disagree".into(),
        ));
    }
    if y_by_spectrum && seen.len() != dim {
        return Err(DahaError::CheckFailed(
            "Y is diagonalizable with a repeated eigenvalue".into(),
        ));
    }

    let k0 = &k[0];
    let k0i = k0.recip();
    let dims = if k0 == &k0i {
        (eigenspace(module.t(0), k0)?.dim(), 0)
    } else {
        (
            eigenspace(module.t(0), k0)?.dim(),
            eigenspace(module.t(0), &k0i)?.dim(),
        )
    };
    let two = k0 != &k0i && dims.0 > 0 && dims.1 > 0;
    report.push(Check::flag("t0 two eigenvalues", two));
    if k0 != &k0i {
        let expected = expected_eigenspace_dims(xtype, n);
        if dims != expected || dims.0 + dims.1 != dim {
            return Err(DahaError::CheckFailed(format!(
                "t0 eigenspace dimensions {dims:?}, expected {expected:?}"
            )));
        }
    }

    let failed_clause = if !x_ok {
        Some("X not diagonalizable".to_string())
    } else if !y_by_spectrum {
        Some("Y not diagonalizable".to_string())
    } else if !two {
        Some("t0 single eigenvalue".to_string())
    } else {
        None
    };
    Ok(FeasibilityReport {
        feasible: failed_clause.is_none(),
        x_diagonalizable: x_ok,
        y_by_table,
        y_by_spectrum,
        t0_two_eigenvalues: two,
        t0_dims: dims,
        failed_clause,
        report,
    })
}
