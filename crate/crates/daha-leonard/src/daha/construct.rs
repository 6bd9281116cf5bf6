//! Building a module from its X-type, `n`, `k0..k3` and `q`.

use crate::exactfield::{FieldContext, FieldElement};
use crate::exactlinalg::ExactMatrix;

use super::params::{eigenvalue_ladder, validate_params};
use super::relations::verify_hq_relations;
use super::{DahaError, HqModule, HqParams, Representation, XType};

/// `G(λ, s, t) = (λ + λ⁻¹)² − (λ + λ⁻¹)(s + s⁻¹)(t + t⁻¹) + (s + s⁻¹)² + (t + t⁻¹)² − 4`.
pub fn g_function(lambda: &FieldElement, s: &FieldElement, t: &FieldElement) -> FieldElement {
    let l = lambda.plus_inverse();
    let s = s.plus_inverse();
    let t = t.plus_inverse();
    &l * &l - &(&l * &s) * &t + &s * &s + &t * &t - FieldElement::from_int(4)
}

/// The common field of `q` and the `k_i`.
pub(crate) fn params_context(
    k: &[FieldElement; 4],
    q: &FieldElement,
) -> Result<FieldContext, DahaError> {
    Ok(k
        .iter()
        .try_fold(q.context(), |c, x| c.join(x.context()))?)
}

/// Installs the `t0, t3` block on `v_r, v_{r+1}` for a bond with `μ_r μ_{r+1} = 1`.
fn single_bond(t: &mut [ExactMatrix; 4], r: usize, m: &FieldElement, k: &[FieldElement; 4]) {
    let mi = m.recip();
    let big0 = k[0].plus_inverse();
    let big3 = k[3].plus_inverse();
    let g = g_function(m, &k[0], &k[3]);
    let diff = m - &mi;
    t[0].set(r, r, (m * &big0 - &big3) / &diff);
    t[0].set(r + 1, r, m / &diff);
    t[0].set(r, r + 1, &g / &(m * &(&mi - m)));
    t[0].set(r + 1, r + 1, (&mi * &big0 - &big3) / &(&mi - m));
    t[3].set(r, r, (m * &big3 - &big0) / &diff);
    t[3].set(r + 1, r, (&mi - m).recip());
    t[3].set(r, r + 1, &g / &diff);
    t[3].set(r + 1, r + 1, (&mi * &big3 - &big0) / &(&mi - m));
}

/// Installs the `t1, t2` block on `v_r, v_{r+1}` for a bond with `μ_r μ_{r+1} = q⁻²`.
fn double_bond(
    t: &mut [ExactMatrix; 4],
    r: usize,
    m: &FieldElement,
    k: &[FieldElement; 4],
    q: &FieldElement,
) {
    let a = (q * m).recip();
    let b = q * m;
    let big1 = k[1].plus_inverse();
    let big2 = k[2].plus_inverse();
    let g = g_function(&b, &k[1], &k[2]);
    let ab = &a - &b;
    let ba = &b - &a;
    t[1].set(r, r, (&a * &big1 - &big2) / &ab);
    t[1].set(r + 1, r, ba.recip());
    t[1].set(r, r + 1, &g / &ab);
    t[1].set(r + 1, r + 1, (&b * &big1 - &big2) / &ba);
    t[2].set(r, r, (&a * &big2 - &big1) / &ab);
    t[2].set(r + 1, r, &a / &ab);
    t[2].set(r, r + 1, &(&b * &g) / &ba);
    t[2].set(r + 1, r + 1, (&b * &big2 - &big1) / &ba);
}

/// The four scalar endpoint actions on `v_0` and `v_n`, as `(generator, index, value)`.
fn endpoint_actions(xtype: XType, n: usize, k: &[FieldElement; 4]) -> [(usize, usize, FieldElement); 4] {
    let [k0, k1, k2, k3] = k.clone();
    match xtype {
        XType::DS => [(0, 0, k0), (3, 0, k3), (1, n, k1), (2, n, k2)],
        XType::DDa => [(0, 0, k0.clone()), (3, 0, k3.clone()), (0, n, k0), (3, n, k3.recip())],
        XType::DDb => [(0, 0, k0.clone()), (3, 0, k3.clone()), (0, n, k0.recip()), (3, n, k3)],
        XType::SSa => [(1, 0, k1.clone()), (2, 0, k2.clone()), (1, n, k1), (2, n, k2.recip())],
        XType::SSb => [(1, 0, k1.clone()), (2, 0, k2.clone()), (1, n, k1.recip()), (2, n, k2)],
    }
}

/// Builds the module on the X-standard basis `v_0, …, v_n`.
///
/// Parameters are validated first. Each ladder step with `μ_r μ_{r+1} = 1`
/// carries a `t0, t3` block and each step with `μ_r μ_{r+1} = q⁻²` carries a
/// `t1, t2` block; the remaining generators act on `v_0` and `v_n` by the
/// type's endpoint scalars. Every defining relation is then checked.
pub fn build_module(
    xtype: XType,
    n: usize,
    k: &[FieldElement; 4],
    q: &FieldElement,
) -> Result<HqModule, DahaError> {
    validate_params(xtype, n, k, q).map_err(DahaError::Invalid)?;
    let mu = eigenvalue_ladder(xtype, n, k, q)?;
    let ctx = params_context(k, q)?;
    let dim = n + 1;
    let mut t: [ExactMatrix; 4] = std::array::from_fn(|_| ExactMatrix::zeros(dim, dim, ctx));
    let q2 = q.pow(-2);
    for r in 0..n {
        let product = &mu[r] * &mu[r + 1];
        if product.is_one() {
            single_bond(&mut t, r, &mu[r], k);
        } else if product == q2 {
            double_bond(&mut t, r, &mu[r], k, q);
        } else {
            return Err(DahaError::CheckFailed(format!("ladder step {r} is not a bond")));
        }
    }
    for (i, r, v) in endpoint_actions(xtype, n, k) {
        t[i].set(r, r, v);
    }
    let rep = Representation {
        q: q.clone(),
        k: k.clone(),
        t,
    };
    let report = verify_hq_relations(&rep);
    if let Some(fail) = report.first_failure() {
        return Err(DahaError::CheckFailed(format!("relation {} fails", fail.name)));
    }
    Ok(HqModule {
        params: HqParams {
            q: q.clone(),
            n,
            k: k.clone(),
        },
        xtype,
        mu,
        rep,
    })
}
