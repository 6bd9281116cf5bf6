//! The basis `u_0, …, u_n` in which `Y` is lower and `X` upper tridiagonal.

use serde::Serialize;

use crate::exactfield::FieldElement;
use crate::exactlinalg::{change_of_basis, ExactMatrix, Vector};

use super::derived::derived_elements;
use super::params::{beta, e_scale, ladder_value};
use super::relations::{Check, Report};
use super::{DahaError, HqModule, XType};

/// The u-basis of a module with the matrices of `Y^{±1}, 𝒜` in it, and the
/// normalised basis `u'_r = e_0 ⋯ e_r u_r` with the matrices of `X^{±1}, ℬ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UBasis {
    /// Columns `u_0, …, u_n`.
    pub basis: ExactMatrix,
    /// Columns `u'_0, …, u'_n`.
    pub scaled: ExactMatrix,
    pub beta: Vec<FieldElement>,
    pub e: Vec<FieldElement>,
    pub y: ExactMatrix,
    pub y_inv: ExactMatrix,
    pub a: ExactMatrix,
    pub x: ExactMatrix,
    pub x_inv: ExactMatrix,
    pub b: ExactMatrix,
    /// Every shape and entry check performed.
    pub report: Report,
}

/// The diagonal of `Y` on the u-basis: `β_r^{±1}`, the sign depending on the
/// type and the parity of `r`.
pub(crate) fn y_diagonal(xtype: XType, k: &[FieldElement; 4], q: &FieldElement, n: usize) -> Vector {
    let ss = matches!(xtype, XType::SSa | XType::SSb);
    (0..=n)
        .map(|r| {
            let b = beta(xtype, k, q, r);
            if (r % 2 == 0) != ss {
                b
            } else {
                b.recip()
            }
        })
        .collect()
}

/// The matrices of `X` and `X⁻¹` on `u'_0, …, u'_n` given by closed formulas.
fn x_action_formulas(
    xtype: XType,
    k: &[FieldElement; 4],
    q: &FieldElement,
    n: usize,
) -> (ExactMatrix, ExactMatrix) {
    let dim = n + 1;
    let mut x = ExactMatrix::zeros(dim, dim, Default::default());
    let mut xi = x.clone();
    let put = |m: &mut ExactMatrix, row: i64, col: usize, v: FieldElement| {
        if row >= 0 {
            let row = row as usize;
            let cur = m.get(row, col).clone();
            m.set(row, col, cur + v);
        }
    };
    let dd = matches!(xtype, XType::DS | XType::DDa | XType::DDb);
    let m = if dd { &k[0] * &k[3] } else { &k[1] * &k[2] };
    let p = |e: i64| (&m * &q.pow(e)).recip();
    let p3 = |e: i64| (&m.pow(3) * &q.pow(e)).recip();
    for c in 0..dim {
        let r = c as i64;
        let even = c % 2 == 0;
        match (xtype, even) {
            (XType::DS | XType::DDa, true) => {
                put(&mut x, r, c, &m * &q.pow(r));
                put(&mut x, r - 1, c, p(r));
                put(&mut x, r - 2, c, -p(r));
                put(&mut xi, r, c, p(r));
                put(&mut xi, r - 1, c, -p(r));
            }
            (XType::DS | XType::DDa, false) => {
                put(&mut x, r, c, p(r + 1));
                put(&mut x, r - 1, c, -p(r + 1));
                put(&mut xi, r, c, &m * &q.pow(r + 1));
                put(&mut xi, r - 1, c, p(r - 1));
                put(&mut xi, r - 2, c, -p(r - 1));
            }
            (XType::DDb, true) => {
                put(&mut x, r, c, &m * &q.pow(r));
                put(&mut x, r - 1, c, p(r));
                put(&mut xi, r, c, p(r));
                put(&mut xi, r - 1, c, -p(r));
                put(&mut xi, r - 2, c, -p3(3 * r - 2));
            }
            (XType::DDb, false) => {
                put(&mut x, r, c, p(r + 1));
                put(&mut x, r - 1, c, -p(r + 1));
                put(&mut x, r - 2, c, -p3(3 * r - 1));
                put(&mut xi, r, c, &m * &q.pow(r + 1));
                put(&mut xi, r - 1, c, p(r - 1));
            }
            (XType::SSa, true) => {
                put(&mut x, r, c, p(r + 1));
                put(&mut x, r - 1, c, -p(r + 1));
                put(&mut x, r - 2, c, -p3(3 * r - 1));
                put(&mut xi, r, c, &m * &q.pow(r + 1));
                put(&mut xi, r - 1, c, p(r - 1));
            }
            (XType::SSa, false) => {
                put(&mut x, r, c, &m * &q.pow(r));
                put(&mut x, r - 1, c, p(r));
                put(&mut xi, r, c, p(r));
                put(&mut xi, r - 1, c, -p(r));
                put(&mut xi, r - 2, c, -p3(3 * r - 2));
            }
            (XType::SSb, true) => {
                put(&mut x, r, c, p(r + 1));
                put(&mut x, r - 1, c, -p(r + 1));
                put(&mut xi, r, c, &m * &q.pow(r + 1));
                put(&mut xi, r - 1, c, p(r - 1));
                put(&mut xi, r - 2, c, -p(r - 1));
            }
            (XType::SSb, false) => {
                put(&mut x, r, c, &m * &q.pow(r));
                put(&mut x, r - 1, c, p(r));
                put(&mut x, r - 2, c, -p(r));
                put(&mut xi, r, c, p(r));
                put(&mut xi, r - 1, c, -p(r));
            }
        }
    }
    (x, xi)
}

/// Builds `u_0 = v_0` and `u_r = u_{r−1} − β_{r−1} Y^{±1} u_{r−1}`, using `Y`
/// when `μ_{r−1}μ_r = 1` and `Y⁻¹` when `μ_{r−1}μ_r = q⁻²`.
///
/// Checks that `u_0, …, u_n` is a basis and that the next vector `u_{n+1}`
/// vanishes; that `Y^{±1}` and `𝒜` are lower tridiagonal on it with the
/// predicted diagonal of `Y`; and that on the normalised basis `X^{±1}` and
/// `ℬ` are upper tridiagonal, with `X^{±1}` matching the closed formulas
/// entry by entry. Any failure is an error.
pub fn u_basis(module: &HqModule) -> Result<UBasis, DahaError> {
    let n = module.params.n;
    let dim = n + 1;
    let (xtype, k, q) = (module.xtype, &module.params.k, &module.params.q);
    let d = derived_elements(module);
    let mut report = Report::default();

    let mut u: Vec<Vector> = Vec::with_capacity(dim + 1);
    let mut first = vec![FieldElement::zero(); dim];
    first[0] = FieldElement::one();
    u.push(first);
    let betas: Vec<FieldElement> = (0..=n).map(|r| beta(xtype, k, q, r)).collect();
    let q2 = q.pow(-2);
    for r in 1..=dim {
        let prev = &u[r - 1];
        let product = ladder_value(xtype, k, q, r - 1) * ladder_value(xtype, k, q, r);
        let op = if product.is_one() {
            &d.y
        } else if product == q2 {
            &d.y_inv
        } else {
            return Err(DahaError::CheckFailed(format!("ladder step {r} is not a bond")));
        };
        let image = op.mat_vec(prev)?;
        let b = beta(xtype, k, q, r - 1);
        u.push(prev.iter().zip(&image).map(|(p, i)| p - &(&b * i)).collect());
    }
    let last = u.pop().expect("n + 2 vectors");
    report.push(Check::flag("u_{n+1} = 0", last.iter().all(FieldElement::is_zero)));

    let basis = ExactMatrix::from_columns(&u)?;
    let independent = basis.rank()? == dim;
    report.push(Check::flag("u_0..u_n is a basis", independent));
    if !independent {
        return Err(DahaError::CheckFailed("u-vectors are dependent".into()));
    }

    let y = change_of_basis(&d.y, &basis)?;
    let y_inv = change_of_basis(&d.y_inv, &basis)?;
    let a = change_of_basis(&d.a, &basis)?;
    report.push(Check::flag("Y lower tridiagonal on u", y.is_lower_tridiagonal()));
    report.push(Check::flag("Y^-1 lower tridiagonal on u", y_inv.is_lower_tridiagonal()));
    report.push(Check::flag("A lower tridiagonal on u", a.is_lower_tridiagonal()));
    report.push(Check::flag(
        "Y diagonal on u",
        y.diagonal_entries() == y_diagonal(xtype, k, q, n),
    ));

    let mut e = Vec::with_capacity(dim);
    let mut scale = FieldElement::one();
    let mut scaled_cols = Vec::with_capacity(dim);
    for (r, col) in u.iter().enumerate() {
        let er = e_scale(xtype, k, q, r)?;
        scale = &scale * &er;
        e.push(er);
        scaled_cols.push(col.iter().map(|x| x * &scale).collect::<Vector>());
    }
    let scaled = ExactMatrix::from_columns(&scaled_cols)?;
    let x = change_of_basis(&d.x, &scaled)?;
    let x_inv = change_of_basis(&d.x_inv, &scaled)?;
    let b = change_of_basis(&d.b, &scaled)?;
    report.push(Check::flag("X upper tridiagonal on u'", x.is_upper_tridiagonal()));
    report.push(Check::flag("X^-1 upper tridiagonal on u'", x_inv.is_upper_tridiagonal()));
    report.push(Check::flag("B upper tridiagonal on u'", b.is_upper_tridiagonal()));
    let (fx, fxi) = x_action_formulas(xtype, k, q, n);
    report.push(Check::equal("X on u' matches closed form", &x, &fx));
    report.push(Check::equal("X^-1 on u' matches closed form", &x_inv, &fxi));

    if let Some(fail) = report.first_failure() {
        return Err(DahaError::CheckFailed(format!("u-basis: {}", fail.name)));
    }
    Ok(UBasis {
        basis,
        scaled,
        beta: betas,
        e,
        y,
        y_inv,
        a,
        x,
        x_inv,
        b,
        report,
    })
}
