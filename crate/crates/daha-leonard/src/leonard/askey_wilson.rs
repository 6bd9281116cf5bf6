//! The Askey-Wilson third element of a q-Racah Leonard pair.

use crate::exactfield::FieldElement;
use crate::exactlinalg::ExactMatrix;

use super::{HuangData, LeonardError, LeonardPair};

/// The scalars in the three Askey-Wilson relations for Huang data `(a, b, c, d)`.
///
/// With `Q = q^{d+1} + q^{−d−1}` and `x̂ = x + x⁻¹`:
/// `gamma = (Q ĉ + â b̂)/(q + q⁻¹)`, `omega1 = (Q â + b̂ ĉ)/(q + q⁻¹)`,
/// `omega2 = (Q b̂ + ĉ â)/(q + q⁻¹)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AskeyWilsonScalars {
    pub gamma: FieldElement,
    pub omega1: FieldElement,
    pub omega2: FieldElement,
}

impl AskeyWilsonScalars {
    pub fn new(h: &HuangData, q: &FieldElement) -> Self {
        let d = h.d as i64;
        let big_q = q.pow(d + 1) + q.pow(-d - 1);
        let qq = q.plus_inverse();
        let (a, b, c) = (h.a.plus_inverse(), h.b.plus_inverse(), h.c.plus_inverse());
        AskeyWilsonScalars {
            gamma: (&big_q * &c + &a * &b) / &qq,
            omega1: (&big_q * &a + &b * &c) / &qq,
            omega2: (&big_q * &b + &c * &a) / &qq,
        }
    }
}

/// `(q X Y − q⁻¹ Y X)/(q² − q⁻²)`.
fn q_commutator(x: &ExactMatrix, y: &ExactMatrix, q: &FieldElement) -> ExactMatrix {
    let denom = (q.pow(2) - q.pow(-2)).recip();
    let t = &(&(x * y) * q) - &(&(y * x) * &q.recip());
    &t * &denom
}

/// `A^ε = γ I − (q A A* − q⁻¹ A* A)/(q² − q⁻²)`, after which both companion
/// relations are verified exactly.
pub fn askey_wilson_third(
    pair: &LeonardPair,
    h: &HuangData,
    q: &FieldElement,
) -> Result<ExactMatrix, LeonardError> {
    let s = AskeyWilsonScalars::new(h, q);
    let aeps = (-&q_commutator(&pair.a, &pair.a_star, q)).add_scalar(&s.gamma)?;
    if !askey_wilson_holds(pair, h, q, &aeps) {
        return Err(LeonardError::Verification(
            "Askey-Wilson relations fail for the computed third element".into(),
        ));
    }
    Ok(aeps)
}

/// True iff `A + (q A* A^ε − q⁻¹ A^ε A*)/(q² − q⁻²) = ω₁ I` and
/// `A* + (q A^ε A − q⁻¹ A A^ε)/(q² − q⁻²) = ω₂ I`.
pub fn askey_wilson_holds(
    pair: &LeonardPair,
    h: &HuangData,
    q: &FieldElement,
    aeps: &ExactMatrix,
) -> bool {
    let s = AskeyWilsonScalars::new(h, q);
    let n = pair.a.rows();
    let aw1 = &pair.a + &q_commutator(&pair.a_star, aeps, q);
    let aw2 = &pair.a_star + &q_commutator(aeps, &pair.a, q);
    aw1 == ExactMatrix::scalar(n, &s.omega1) && aw2 == ExactMatrix::scalar(n, &s.omega2)
}
