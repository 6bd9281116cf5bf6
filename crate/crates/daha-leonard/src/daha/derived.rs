//! The derived elements `X, Y, 𝒜, ℬ, 𝒞, G_i, F^±` and the identities among them.

use serde::Serialize;

use crate::exactfield::FieldElement;
use crate::exactlinalg::ExactMatrix;

use super::relations::{Check, Report};
use super::{DahaError, Representation};

/// Matrices of the derived elements on a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedElements {
    /// `X = t3 t0`.
    pub x: ExactMatrix,
    pub x_inv: ExactMatrix,
    /// `Y = t0 t1`.
    pub y: ExactMatrix,
    pub y_inv: ExactMatrix,
    /// `𝒜 = Y + Y⁻¹`.
    pub a: ExactMatrix,
    /// `ℬ = X + X⁻¹`.
    pub b: ExactMatrix,
    /// `𝒞 = t0 t2 + (t0 t2)⁻¹`.
    pub c: ExactMatrix,
    /// `G_i = t_i − t_{i−1} t_i t_{i−1}⁻¹`, indices mod 4.
    pub g: [ExactMatrix; 4],
    /// The projections onto `V(k0)` and `V(k0⁻¹)`; absent when `k0² = 1`.
    pub f_plus: Option<ExactMatrix>,
    pub f_minus: Option<ExactMatrix>,
}

/// Computes every derived element; inverses come from `t_i⁻¹ = T_i − t_i`.
pub fn derived_elements<R: AsRef<Representation>>(module: &R) -> DerivedElements {
    let rep = module.as_ref();
    let t = &rep.t;
    let ti: [ExactMatrix; 4] = std::array::from_fn(|i| rep.t_inv(i));
    let x = &t[3] * &t[0];
    let x_inv = &ti[0] * &ti[3];
    let y = &t[0] * &t[1];
    let y_inv = &ti[1] * &ti[0];
    let a = &y + &y_inv;
    let b = &x + &x_inv;
    let c = &(&t[0] * &t[2]) + &(&ti[2] * &ti[0]);
    let g = std::array::from_fn(|i| {
        let p = (i + 3) % 4;
        &t[i] - &(&(&t[p] * &t[i]) * &ti[p])
    });
    let k0 = &rep.k[0];
    let k0i = k0.recip();
    let (f_plus, f_minus) = if k0 == &k0i {
        (None, None)
    } else {
        let plus = &t[0].add_scalar(&-&k0i).expect("square") * &(k0 - &k0i).recip();
        let minus = &t[0].add_scalar(&-k0).expect("square") * &(&k0i - k0).recip();
        (Some(plus), Some(minus))
    };
    DerivedElements {
        x,
        x_inv,
        y,
        y_inv,
        a,
        b,
        c,
        g,
        f_plus,
        f_minus,
    }
}

/// `p(M) = M² − M s + c` evaluated on a matrix, for the `G_i²` formulas.
fn g_polynomial(m: &ExactMatrix, s: &FieldElement, c: &FieldElement) -> ExactMatrix {
    (&(m * m) - &(m * s)).add_scalar(c).expect("square")
}

/// Checks the identities among derived elements:
///
/// * `X G0 = G0 X⁻¹`, `X⁻¹ G0 = G0 X`, `X G2 = q⁻² G2 X⁻¹`, `X⁻¹ G2 = q² G2 X`;
/// * the four expressions of `G0`, `G2` in terms of `X` and one generator;
/// * `X t0 − t0 X⁻¹ = X T0 − T3` and `q X t2 − q⁻¹ t2 X⁻¹ = T1 − q⁻¹ X⁻¹ T2`;
/// * `G0² = G(X, k0, k3)` and `G2² = G(qX, k1, k2)` as Laurent polynomials in `X`;
/// * `t_i t_j + (t_i t_j)⁻¹ = t_j t_i + (t_j t_i)⁻¹`, commuting with `t_i` and `t_j`;
/// * the three relations linking `𝒜, ℬ, 𝒞`;
/// * `F^±` idempotent, complementary, and eigen-projections of `t0`.
pub fn derived_identity_report<R: AsRef<Representation>>(module: &R) -> Report {
    let rep = module.as_ref();
    let d = derived_elements(rep);
    let n = rep.dim();
    let q = &rep.q;
    let qi = q.recip();
    let big: [FieldElement; 4] = std::array::from_fn(|i| rep.big_t(i));
    let eye = ExactMatrix::identity(n, Default::default());
    let zero = ExactMatrix::zeros(n, n, Default::default());
    let t = &rep.t;
    let mut report = Report::default();
    let mut eq = |name: &str, l: ExactMatrix, r: ExactMatrix| report.push(Check::equal(name, &l, &r));

    eq("X X^-1 = I", &d.x * &d.x_inv, eye.clone());
    eq("Y Y^-1 = I", &d.y * &d.y_inv, eye.clone());

    let [g0, _, g2, _] = &d.g;
    eq("X G0 = G0 X^-1", &d.x * g0, g0 * &d.x_inv);
    eq("X^-1 G0 = G0 X", &d.x_inv * g0, g0 * &d.x);
    eq("X G2 = q^-2 G2 X^-1", &d.x * g2, &(g2 * &d.x_inv) * &q.pow(-2));
    eq("X^-1 G2 = q^2 G2 X", &d.x_inv * g2, &(g2 * &d.x) * &q.pow(2));

    let x2i = &d.x_inv * &d.x_inv;
    eq(
        "G0 = t0(1 - X^-2) + T3 X^-1 - T0",
        g0.clone(),
        (&(&t[0] * &(&eye - &x2i)) + &(&d.x_inv * &big[3])).add_scalar(&-&big[0]).expect("square"),
    );
    eq(
        "G0 = t3(X^-1 - X) + T3 X - T0",
        g0.clone(),
        (&(&t[3] * &(&d.x_inv - &d.x)) + &(&d.x * &big[3])).add_scalar(&-&big[0]).expect("square"),
    );
    let qx = &d.x * q;
    let qx_plus = &qx + &(&d.x_inv * &qi);
    eq(
        "G2 = t2(1 - q^2 X^2) + q T1 X - T2",
        g2.clone(),
        (&(&t[2] * &(&eye - &(&qx * &qx))) + &(&qx * &big[1])).add_scalar(&-&big[2]).expect("square"),
    );
    eq(
        "G2 = t1(qX - q^-1 X^-1) + q^-1 T1 X^-1 - T2",
        g2.clone(),
        (&(&t[1] * &(&qx - &(&d.x_inv * &qi))) + &(&d.x_inv * &(&qi * &big[1])))
            .add_scalar(&-&big[2])
            .expect("square"),
    );

    eq(
        "X t0 - t0 X^-1 = X T0 - T3",
        &(&d.x * &t[0]) - &(&t[0] * &d.x_inv),
        (&d.x * &big[0]).add_scalar(&-&big[3]).expect("square"),
    );
    eq(
        "q X t2 - q^-1 t2 X^-1 = T1 - q^-1 X^-1 T2",
        &(&qx * &t[2]) - &(&(&t[2] * &d.x_inv) * &qi),
        (-&(&d.x_inv * &(&qi * &big[2]))).add_scalar(&big[1]).expect("square"),
    );

    let four = FieldElement::from_int(4);
    let c03 = &(&big[0] * &big[0]) + &(&big[3] * &big[3]) - &four;
    let c12 = &(&big[1] * &big[1]) + &(&big[2] * &big[2]) - &four;
    eq(
        "G0^2 = G(X, k0, k3)",
        g0 * g0,
        g_polynomial(&d.b, &(&big[0] * &big[3]), &c03),
    );
    eq(
        "G2^2 = G(qX, k1, k2)",
        g2 * g2,
        g_polynomial(&qx_plus, &(&big[1] * &big[2]), &c12),
    );

    let ti: [ExactMatrix; 4] = std::array::from_fn(|i| rep.t_inv(i));
    for i in 0..4 {
        for j in i + 1..4 {
            let ij = &(&t[i] * &t[j]) + &(&ti[j] * &ti[i]);
            let ji = &(&t[j] * &t[i]) + &(&ti[i] * &ti[j]);
            eq(&format!("t{i}t{j} + inverse = t{j}t{i} + inverse"), ij.clone(), ji);
            for k in [i, j] {
                eq(
                    &format!("t{i}t{j} + inverse commutes with t{k}"),
                    &(&ij * &t[k]) - &(&t[k] * &ij),
                    zero.clone(),
                );
            }
        }
    }

    let q2 = &q.pow(2) - &q.pow(-2);
    let qq = q.plus_inverse();
    let bracket = |x: &ExactMatrix, y: &ExactMatrix| &(&(&(x * y) * q) - &(&(y * x) * &qi)) * &q2.recip();
    let tw = &(&t[0] * &qi) + &(&ti[0] * q);
    let rhs = |ta: &FieldElement, tb: &FieldElement, tc: &FieldElement| {
        &(&tw * ta).add_scalar(&(tb * tc)).expect("square") * &qq.recip()
    };
    eq(
        "A + [B, C]_q = ((q^-1 t0 + q t0^-1) T1 + T2 T3)/(q + q^-1)",
        &d.a + &bracket(&d.b, &d.c),
        rhs(&big[1], &big[2], &big[3]),
    );
    eq(
        "B + [C, A]_q = ((q^-1 t0 + q t0^-1) T3 + T1 T2)/(q + q^-1)",
        &d.b + &bracket(&d.c, &d.a),
        rhs(&big[3], &big[1], &big[2]),
    );
    eq(
        "C + [A, B]_q = ((q^-1 t0 + q t0^-1) T2 + T3 T1)/(q + q^-1)",
        &d.c + &bracket(&d.a, &d.b),
        rhs(&big[2], &big[3], &big[1]),
    );

    if let (Some(fp), Some(fm)) = (&d.f_plus, &d.f_minus) {
        eq("F+ F+ = F+", fp * fp, fp.clone());
        eq("F- F- = F-", fm * fm, fm.clone());
        eq("F+ + F- = I", fp + fm, eye.clone());
        eq("F+ F- = 0", fp * fm, zero.clone());
        eq("t0 F+ = k0 F+", &t[0] * fp, fp * &rep.k[0]);
        eq("t0 F- = k0^-1 F-", &t[0] * fm, fm * &rep.k[0].recip());
    }
    report
}

/// `(F^+, F^-)`, or an infeasibility error when `k0² = 1`.
pub(crate) fn require_projections(
    d: &DerivedElements,
) -> Result<(&ExactMatrix, &ExactMatrix), DahaError> {
    match (&d.f_plus, &d.f_minus) {
        (Some(p), Some(m)) => Ok((p, m)),
        _ => Err(DahaError::Infeasible("t0 single eigenvalue (k0^2 = 1)".into())),
    }
}
