//! Twisting a module by the automorphisms `ρ` and `σ`.

use serde::{Deserialize, Serialize};

use crate::exactlinalg::ExactMatrix;

use super::derived::derived_elements;
use super::relations::{verify_hq_relations, Check, Report};
use super::{DahaError, Representation};

/// `ρ: t0 ↦ t1 ↦ t2 ↦ t3 ↦ t0` and
/// `σ: t0 ↦ t0, t1 ↦ t0⁻¹ t3 t0, t2 ↦ t1 t2 t1⁻¹, t3 ↦ t1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Automorphism {
    Rho,
    Sigma,
}

fn images(rep: &Representation, which: Automorphism) -> Representation {
    let t = &rep.t;
    let k = &rep.k;
    let (t, k) = match which {
        Automorphism::Rho => (
            [t[1].clone(), t[2].clone(), t[3].clone(), t[0].clone()],
            [k[1].clone(), k[2].clone(), k[3].clone(), k[0].clone()],
        ),
        Automorphism::Sigma => (
            [
                t[0].clone(),
                &(&rep.t_inv(0) * &t[3]) * &t[0],
                &(&t[1] * &t[2]) * &rep.t_inv(1),
                t[1].clone(),
            ],
            [k[0].clone(), k[3].clone(), k[2].clone(), k[1].clone()],
        ),
    };
    Representation {
        q: rep.q.clone(),
        k,
        t,
    }
}

/// The checks relating the derived elements of a module and of its twist:
/// `ρ` sends `X ↦ Y ↦ q⁻¹X⁻¹`; `σ` sends `X ↦ t0⁻¹ Y t0`, `Y ↦ X`,
/// `𝒜 ↦ ℬ`, `ℬ ↦ 𝒜`.
fn twist_identities(original: &Representation, twisted: &Representation, which: Automorphism) -> Report {
    let d = derived_elements(original);
    let e = derived_elements(twisted);
    let mut report = Report::default();
    match which {
        Automorphism::Rho => {
            report.push(Check::equal("rho: X -> Y", &e.x, &d.y));
            report.push(Check::equal(
                "rho: Y -> q^-1 X^-1",
                &e.y,
                &(&d.x_inv * &original.q.recip()),
            ));
        }
        Automorphism::Sigma => {
            let conj: ExactMatrix = &(&original.t_inv(0) * &d.y) * &original.t[0];
            report.push(Check::equal("sigma: X -> t0^-1 Y t0", &e.x, &conj));
            report.push(Check::equal("sigma: Y -> X", &e.y, &d.x));
            report.push(Check::equal("sigma: A -> B", &e.a, &d.b));
            report.push(Check::equal("sigma: B -> A", &e.b, &d.a));
        }
    }
    report
}

/// The module twisted by `which`, as a new set of generator matrices with
/// the permuted parameter sequence. The defining relations and the
/// automorphism's action on `X, Y, 𝒜, ℬ` are verified; the full report is
/// returned alongside.
pub fn twist<R: AsRef<Representation>>(
    module: &R,
    which: Automorphism,
) -> Result<(Representation, Report), DahaError> {
    let rep = module.as_ref();
    let twisted = images(rep, which);
    let mut report = verify_hq_relations(&twisted);
    report.extend(twist_identities(rep, &twisted, which));
    if let Some(fail) = report.first_failure() {
        return Err(DahaError::CheckFailed(format!("twist: {}", fail.name)));
    }
    Ok((twisted, report))
}
