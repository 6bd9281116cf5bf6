//! The eigenspaces of `t0` and the Leonard pairs `𝒜, ℬ` on them.

use serde::Serialize;

use crate::exactfield::FieldElement;
use crate::exactlinalg::{restrict, ExactMatrix, Subspace, Vector};
use crate::leonard::{
    askey_wilson_third, huang_data_from_array, huang_equivalent, parameter_arrays,
    qracah_parameter, recognize_leonard_pair, HuangData, LeonardError, LeonardPair, Orderings,
};

use super::derived::{derived_elements, require_projections};
use super::feasible::is_feasible;
use super::params::expected_eigenspace_dims;
use super::relations::{Check, Report};
use super::ubasis::u_basis;
use super::{DahaError, HqModule, XType};

/// Bases of `V(k0)` and `V(k0⁻¹)` obtained by projecting u-basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct T0Split {
    pub plus: Subspace,
    pub minus: Subspace,
}

impl T0Split {
    /// `(d, d')`: the diameters of the two eigenspaces.
    pub fn diameters(&self) -> (usize, usize) {
        (self.plus.dim() - 1, self.minus.dim() - 1)
    }
}

/// Indices `r` of the u-vectors projected onto `V(k0)` and onto `V(k0⁻¹)`.
fn split_indices(xtype: XType, n: usize) -> (Vec<usize>, Vec<usize>) {
    let evens = |from: usize, to: usize| (from..=to).map(|r| 2 * r).collect::<Vec<_>>();
    match xtype {
        XType::DS => (evens(0, n / 2), evens(1, n / 2)),
        XType::DDa => {
            let mut plus = evens(0, (n - 1) / 2);
            plus.push(n);
            (plus, evens(1, (n - 1) / 2))
        }
        XType::DDb | XType::SSa => (
            evens(0, (n - 1) / 2),
            (0..=(n - 1) / 2).map(|r| 2 * r + 1).collect(),
        ),
        XType::SSb => (evens(0, (n - 1) / 2), evens(0, (n - 1) / 2)),
    }
}

/// Projects the type's u-vectors with `F^+` and `F^-`, giving bases of the
/// two eigenspaces of `t0`. Checks that `t0` acts on them by `k0^{±1}` and
/// that both are nonzero with the dimensions predicted for the type.
pub fn t0_split(module: &HqModule) -> Result<T0Split, DahaError> {
    let n = module.params.n;
    let dim = n + 1;
    let d = derived_elements(module);
    let (fp, fm) = require_projections(&d)?;
    let (plus_idx, minus_idx) = split_indices(module.xtype, n);
    if minus_idx.is_empty() {
        return Err(DahaError::Infeasible("t0 single eigenvalue".into()));
    }
    let ub = u_basis(module)?;
    let u = ub.basis.columns();
    let project = |f: &ExactMatrix, idx: &[usize]| -> Result<Vec<Vector>, DahaError> {
        idx.iter().map(|&r| Ok(f.mat_vec(&u[r])?)).collect()
    };
    let plus = Subspace::new(dim, project(fp, &plus_idx)?)?;
    let minus = Subspace::new(dim, project(fm, &minus_idx)?)?;
    let expected = expected_eigenspace_dims(module.xtype, n);
    if (plus.dim(), minus.dim()) != expected {
        return Err(DahaError::CheckFailed(format!(
            "t0 eigenspace dimensions ({}, {}), expected {expected:?}",
            plus.dim(),
            minus.dim()
        )));
    }
    let k0 = &module.params.k[0];
    for (space, value) in [(&plus, k0.clone()), (&minus, k0.recip())] {
        for v in space.basis() {
            let image = module.t(0).mat_vec(v)?;
            if image.iter().zip(v).any(|(x, y)| x != &(&value * y)) {
                return Err(DahaError::CheckFailed(
                    "projected vector is not a t0-eigenvector".into(),
                ));
            }
        }
    }
    Ok(T0Split { plus, minus })
}

/// `x q^e + (x q^e)⁻¹` for `e = start, start + 2, …` (`len` terms).
fn ladder(x: &FieldElement, q: &FieldElement, start: i64, len: usize) -> Vec<FieldElement> {
    (0..len as i64)
        .map(|r| (x * &q.pow(start + 2 * r)).plus_inverse())
        .collect()
}

/// The diagonals of `𝒜` and `ℬ` on the projected bases, for `V(k0)` when
/// `plus` is set and `V(k0⁻¹)` otherwise.
fn predicted_diagonals(
    xtype: XType,
    k: &[FieldElement; 4],
    q: &FieldElement,
    plus: bool,
    len: usize,
) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let k01 = &k[0] * &k[1];
    let k23 = &k[2] * &k[3];
    let k03 = &k[0] * &k[3];
    let k12 = &k[1] * &k[2];
    let theta = match (xtype, plus) {
        (XType::DS | XType::DDa | XType::SSa, true) => ladder(&k01, q, 0, len),
        (XType::DS | XType::DDa | XType::SSa, false) => ladder(&k01, q, 2, len),
        (XType::DDb | XType::SSb, _) => ladder(&k23, q, 1, len),
    };
    let theta_star = match (xtype, plus) {
        (XType::DS | XType::DDa | XType::DDb, true) => ladder(&k03, q, 0, len),
        (XType::DS | XType::DDa | XType::DDb, false) => ladder(&k03, q, 2, len),
        (XType::SSa | XType::SSb, _) => ladder(&k12, q, 1, len),
    };
    (theta, theta_star)
}

/// Huang data of the pairs on `V(k0)` and `V(k0⁻¹)` from closed formulas in
/// `k0, …, k3`.
///
/// For the types other than `DS` the formulas involve the sign
/// `ε = ±1` of a square root fixed by the type's defining equation
/// (`ε = k0 q^d` for `DDa`, `k3 q^{d+1}` for `DDb`, `k1 q^{d+1}` for `SSa`,
/// `k2 q^{d+1}` for `SSb`, with `d` the diameter on `V(k0)`); each of
/// `a, b, c` carries the factor `ε`.
pub fn closed_form_huang(
    xtype: XType,
    n: usize,
    k: &[FieldElement; 4],
    q: &FieldElement,
) -> (HuangData, HuangData) {
    let [k0, k1, k2, k3] = k;
    let h = |a: FieldElement, b: FieldElement, c: FieldElement, d: usize| HuangData::new(a, b, c, d);
    match xtype {
        XType::DS => {
            let half = (n / 2) as i64;
            let s = q.pow(half);
            let s2 = q.pow(half + 1);
            (
                h(k0 * k1 * &s, k0 * k3 * &s, k0 * k2 * &s, n / 2),
                h(k0 * k1 * &s2, k0 * k3 * &s2, k0 * k2 * &s2, (n / 2).saturating_sub(1)),
            )
        }
        XType::DDa => {
            let d = (n + 1) / 2;
            let eps = k0 * &q.pow(d as i64);
            (
                h(&eps * k1, &eps * k3, &eps * k2, d),
                h(&eps * k1, &eps * k3, &eps * k2, d.saturating_sub(2)),
            )
        }
        XType::DDb => {
            let d = (n - 1) / 2;
            let eps = k3 * &q.pow(d as i64 + 1);
            (
                h(&eps * k2, &(&eps * k0) * &q.recip(), &eps * k1, d),
                h(&eps * k2, &(&eps * k0) * q, &eps * k1, d),
            )
        }
        XType::SSa => {
            let d = (n - 1) / 2;
            let eps = k1 * &q.pow(d as i64 + 1);
            (
                h(&(&eps * k0) * &q.recip(), &eps * k2, &eps * k3, d),
                h(&(&eps * k0) * q, &eps * k2, &eps * k3, d),
            )
        }
        XType::SSb => {
            let d = (n - 1) / 2;
            let eps = k2 * &q.pow(d as i64 + 1);
            (
                h(&eps * k3, &eps * k1, &(&eps * k0) * &q.recip(), d),
                h(&eps * k3, &eps * k1, &(&eps * k0) * q, d),
            )
        }
    }
}

/// One restricted Leonard pair with both of its Huang data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedPair {
    /// Columns spanning the eigenspace of `t0`.
    pub basis: ExactMatrix,
    /// `𝒜` and `ℬ` on that basis.
    pub pair: LeonardPair,
    pub orderings: Orderings,
    /// From split sequences of the recognised pair.
    pub huang: HuangData,
    /// From the closed formulas in `k0, …, k3`.
    pub closed_form: HuangData,
    /// The Askey-Wilson third element of the pair.
    pub third: ExactMatrix,
}

/// The pairs on `V(k0)` and `V(k0⁻¹)` with every check performed on them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedPairs {
    pub plus: RestrictedPair,
    pub minus: RestrictedPair,
    pub report: Report,
}

/// `((q^{∓1} k0 + q^{±1} k0⁻¹) T2 + T1 T3 − (a + a⁻¹)(b + b⁻¹)) / (q^{d+1} + q^{−d−1})`,
/// the predicted value of `c + c⁻¹`.
fn predicted_c_sum(k: &[FieldElement; 4], q: &FieldElement, h: &HuangData, plus: bool) -> FieldElement {
    let qe = if plus { q.recip() } else { q.clone() };
    let big = |i: usize| k[i].plus_inverse();
    let tw = &(&qe * &k[0]) + &(&qe.recip() * &k[0].recip());
    let d = h.d as i64;
    (&tw * &big(2) + &big(1) * &big(3) - &h.a.plus_inverse() * &h.b.plus_inverse())
        / (q.pow(d + 1) + q.pow(-d - 1))
}

fn analyse_side(
    module: &HqModule,
    a: &ExactMatrix,
    b: &ExactMatrix,
    space: &Subspace,
    plus: bool,
    closed: HuangData,
    report: &mut Report,
) -> Result<RestrictedPair, DahaError> {
    let side = if plus { "V(k0)" } else { "V(k0^-1)" };
    let (xtype, k, q) = (module.xtype, &module.params.k, &module.params.q);
    let ra = restrict(a, space)?;
    let rb = restrict(b, space)?;
    let len = space.dim();
    let (theta, theta_star) = predicted_diagonals(xtype, k, q, plus, len);
    report.push(Check::flag(format!("A lower bidiagonal on {side}"), ra.is_lower_bidiagonal()));
    report.push(Check::flag(format!("B upper bidiagonal on {side}"), rb.is_upper_bidiagonal()));
    report.push(Check::flag(format!("A diagonal on {side}"), ra.diagonal_entries() == theta));
    report.push(Check::flag(format!("B diagonal on {side}"), rb.diagonal_entries() == theta_star));

    let orderings = recognize_leonard_pair(&ra, &rb, Some((&theta, &theta_star)))
        .ok_or(DahaError::Leonard(LeonardError::NotLeonard))?;
    report.push(Check::flag(format!("Leonard pair on {side}"), true));
    let reversed = |v: &[FieldElement]| v.iter().rev().cloned().collect::<Vec<_>>();
    let standard = |o: &[FieldElement], diag: &[FieldElement]| o == diag || o == reversed(diag);
    report.push(Check::flag(
        format!("diagonals are standard orderings on {side}"),
        standard(&orderings.theta, &theta) && standard(&orderings.theta_star, &theta_star),
    ));
    report.push(Check::flag(
        format!("eigenvalues q-Racah on {side}"),
        qracah_parameter(&orderings.theta, q).is_some()
            && qracah_parameter(&orderings.theta_star, q).is_some(),
    ));

    let pair = LeonardPair::new(ra, rb)?;
    let arrays = parameter_arrays(&pair, &orderings)?;
    let huang = huang_data_from_array(&arrays[0], q)?.ok_or(LeonardError::NotQRacah)?;
    report.push(Check::flag(
        format!("Huang data agree on {side}"),
        huang_equivalent(&huang, &closed),
    ));
    if huang.d >= 1 {
        let predicted = predicted_c_sum(k, q, &huang, plus);
        report.push(Check::flag(
            format!("c + c^-1 formula on {side}"),
            huang.c.plus_inverse() == predicted,
        ));
    }
    let third = askey_wilson_third(&pair, &huang, q)?;
    Ok(RestrictedPair {
        basis: space.basis_matrix()?,
        pair,
        orderings,
        huang,
        closed_form: closed,
        third,
    })
}

/// Restricts `𝒜, ℬ` to both eigenspaces of `t0` and analyses each pair.
///
/// On the projected bases `𝒜` must be lower bidiagonal and `ℬ` upper
/// bidiagonal with the predicted diagonals. Each pair is recognised, its
/// eigenvalue orderings must be q-Racah, and its Huang data are computed
/// from split sequences and compared with the closed formulas; for
/// diameter at least 1 the value `c + c⁻¹` is checked against its formula
/// in the `k_i`. Any failed check is an error.
pub fn restricted_leonard_pairs(module: &HqModule) -> Result<RestrictedPairs, DahaError> {
    let feas = is_feasible(module)?;
    if let Some(clause) = feas.failed_clause {
        return Err(DahaError::Infeasible(clause));
    }
    let split = t0_split(module)?;
    let d = derived_elements(module);
    let (h_plus, h_minus) = closed_form_huang(module.xtype, module.params.n, &module.params.k, &module.params.q);
    let mut report = Report::default();
    let plus = analyse_side(module, &d.a, &d.b, &split.plus, true, h_plus, &mut report)?;
    let minus = analyse_side(module, &d.a, &d.b, &split.minus, false, h_minus, &mut report)?;
    if let Some(fail) = report.first_failure() {
        return Err(DahaError::CheckFailed(fail.name.clone()));
    }
    Ok(RestrictedPairs { plus, minus, report })
}
