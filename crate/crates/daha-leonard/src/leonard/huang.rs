//! q-Racah parameters, Huang data, admissibility and the canonical pair.

use crate::exactfield::{FieldContext, FieldElement};
use crate::exactlinalg::ExactMatrix;

use super::{
    parameter_arrays, recognize_leonard_pair, HuangData, LeonardError, LeonardPair,
    ParameterArray,
};

fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

/// `α q^{2r−d} + α⁻¹ q^{d−2r}` for `r = 0, …, d`.
pub fn qracah_sequence(alpha: &FieldElement, d: usize, q: &FieldElement) -> Vec<FieldElement> {
    let d = d as i64;
    let ai = alpha.recip();
    (0..=d)
        .map(|r| alpha * &q.pow(2 * r - d) + &ai * &q.pow(d - 2 * r))
        .collect()
}

/// Solves `x + x⁻¹ = s` inside the field of `s`, extending `Q` by one square
/// root when `s` is rational. Returns the root `(s + √(s² − 4))/2`.
fn solve_plus_inverse(s: &FieldElement) -> Option<FieldElement> {
    let disc = s * s - fe(4);
    let root = match disc.sqrt_element() {
        Some(r) => r,
        None => {
            let r = disc.as_rational()?;
            if !s.context().is_rational() {
                return None;
            }
            let ext = FieldContext::for_radicand(r).ok()?;
            disc.in_context(ext).ok()?.sqrt_in_field().ok()??
        }
    };
    Some(&(s + &root) / &fe(2))
}

/// The q-Racah parameter `α` of an eigenvalue sequence, if it has that form.
///
/// For `d ≥ 1`, `θ_r = u q^{2r} + w q^{−2r}` is solved from `r = 0, 1`, checked
/// for every `r` and for `uw = 1`, and `α = u q^d`. For `d = 0`, `α` solves
/// `α + α⁻¹ = θ_0` and is only determined up to inversion.
pub fn qracah_parameter(theta: &[FieldElement], q: &FieldElement) -> Option<FieldElement> {
    let d = theta.len().checked_sub(1)?;
    if d == 0 {
        return solve_plus_inverse(&theta[0]);
    }
    let q2 = q.pow(2);
    let qm2 = q.pow(-2);
    let u = (&theta[1] - &(&theta[0] * &qm2)) / (&q2 - &qm2);
    let w = &theta[0] - &u;
    if !(&u * &w).is_one() {
        return None;
    }
    for (r, th) in theta.iter().enumerate() {
        let r = r as i64;
        if &(&u * &q.pow(2 * r)) + &(&w * &q.pow(-2 * r)) != *th {
            return None;
        }
    }
    Some(&u * &q.pow(d as i64))
}

/// The common factor `q^{d+1} (q^r − q^{−r}) (q^{r−d−1} − q^{d−r+1})`.
fn split_core(r: i64, d: i64, q: &FieldElement) -> FieldElement {
    q.pow(d + 1) * (q.pow(r) - q.pow(-r)) * (q.pow(r - d - 1) - q.pow(d - r + 1))
}

/// First split sequence `φ_1, …, φ_d` of the q-Racah pair with Huang data `h`.
pub fn first_split_formula(h: &HuangData, q: &FieldElement) -> Vec<FieldElement> {
    let d = h.d as i64;
    let (a, b, c) = (&h.a, &h.b, &h.c);
    let abc = a * b * c;
    let abci = &(a * b) / c;
    let pre = (a * b).recip();
    (1..=d)
        .map(|r| {
            let t = q.pow(r - d - 1);
            &pre * &split_core(r, d, q)
                * (q.pow(-r) - &abc * &t)
                * (q.pow(-r) - &abci * &t)
        })
        .collect()
}

/// Second split sequence `ϕ_1, …, ϕ_d` of the q-Racah pair with Huang data `h`.
pub fn second_split_formula(h: &HuangData, q: &FieldElement) -> Vec<FieldElement> {
    let d = h.d as i64;
    let (a, b, c) = (&h.a, &h.b, &h.c);
    let x = &(b * c) / a;
    let y = &(b / c) / a;
    let pre = a / b;
    (1..=d)
        .map(|r| {
            let t = q.pow(r - d - 1);
            &pre * &split_core(r, d, q) * (q.pow(-r) - &x * &t) * (q.pow(-r) - &y * &t)
        })
        .collect()
}

/// Recovers Huang data from a parameter array.
///
/// `a` and `b` are the q-Racah parameters of `θ` and `θ*`. For `d ≥ 1`, the
/// equation for `φ_1` is linear in `c + c⁻¹`; `c` is then a root of
/// `c² − (c + c⁻¹)c + 1`, taken in the current field or in one quadratic
/// extension of `Q`. Every `φ_r` and `ϕ_r` is then checked. For `d = 0`, `c = 1`.
///
/// Returns `Ok(None)` when `θ` or `θ*` is not q-Racah.
pub fn huang_data_from_array(
    pa: &ParameterArray,
    q: &FieldElement,
) -> Result<Option<HuangData>, LeonardError> {
    let d = pa.diameter();
    let (Some(a), Some(b)) = (
        qracah_parameter(&pa.theta, q),
        qracah_parameter(&pa.theta_star, q),
    ) else {
        return Ok(None);
    };
    if d == 0 {
        return Ok(Some(HuangData::new(a, b, FieldElement::one(), 0)));
    }
    let di = d as i64;
    let ab = &a * &b;
    let k = &ab.recip() * &split_core(1, di, q);
    let s = (q.pow(-2) + &(&ab * &ab) * &q.pow(-2 * di) - &pa.phi[0] / &k)
        / (&ab * &q.pow(-di - 1));
    let c = solve_plus_inverse(&s).ok_or_else(|| {
        LeonardError::ExtensionRequired(format!("c + 1/c = {s}"))
    })?;
    let h = HuangData::new(a, b, c, d);
    if first_split_formula(&h, q) != pa.phi || second_split_formula(&h, q) != pa.phi2 {
        return Err(LeonardError::Verification(
            "split sequences do not match the recovered Huang data".into(),
        ));
    }
    Ok(Some(h))
}

/// `q^e` for every `e` in `from, from − step, …, to` (empty when `from < to`).
fn power_list(q: &FieldElement, from: i64, to: i64, step: i64) -> Vec<FieldElement> {
    let mut out = Vec::new();
    let mut e = from;
    while e >= to {
        out.push(q.pow(e));
        e -= step;
    }
    out
}

/// Admissibility of Huang data: `a², b²` avoid `q^{2d−2}, q^{2d−4}, …, q^{2−2d}`
/// and `abc, a⁻¹bc, ab⁻¹c, abc⁻¹` avoid `q^{d−1}, q^{d−3}, …, q^{1−d}`.
/// Also requires `a, b, c` nonzero.
pub fn check_huang_admissible(h: &HuangData, q: &FieldElement) -> bool {
    if h.a.is_zero() || h.b.is_zero() || h.c.is_zero() {
        return false;
    }
    let d = h.d as i64;
    let squares = power_list(q, 2 * d - 2, 2 - 2 * d, 2);
    let triples = power_list(q, d - 1, 1 - d, 2);
    let (a, b, c) = (&h.a, &h.b, &h.c);
    let a2 = a * a;
    let b2 = b * b;
    if squares.contains(&a2) || squares.contains(&b2) {
        return false;
    }
    let products = [a * b * c, &(b * c) / a, &(a * c) / b, &(a * b) / c];
    !products.iter().any(|p| triples.contains(p))
}

/// Equality of Huang data up to inverting each of `a`, `b`, `c`; `c` is
/// ignored when `d = 0`.
pub fn huang_equivalent(h1: &HuangData, h2: &HuangData) -> bool {
    if h1.d != h2.d {
        return false;
    }
    let same = |x: &FieldElement, y: &FieldElement| {
        x == y || (!x.is_zero() && &x.recip() == y)
    };
    same(&h1.a, &h2.a) && same(&h1.b, &h2.b) && (h1.d == 0 || same(&h1.c, &h2.c))
}

/// The split-form pair of Huang data `h`: `A` lower bidiagonal with diagonal
/// `θ` and subdiagonal 1, `A*` upper bidiagonal with diagonal `θ*` and
/// superdiagonal `φ`. The result is recognised and its Huang data are
/// recovered and compared with `h`.
pub fn build_pair_from_huang(h: &HuangData, q: &FieldElement) -> Result<LeonardPair, LeonardError> {
    if !check_huang_admissible(h, q) {
        return Err(LeonardError::Inadmissible(format!(
            "({}, {}, {}, {})",
            h.a, h.b, h.c, h.d
        )));
    }
    let theta = qracah_sequence(&h.a, h.d, q);
    let theta_star = qracah_sequence(&h.b, h.d, q);
    let phi = first_split_formula(h, q);
    let ctx = theta
        .iter()
        .chain(&theta_star)
        .chain(&phi)
        .try_fold(q.context(), |c, e| c.join(e.context()))?;
    let n = h.d + 1;
    let mut a = ExactMatrix::zeros(n, n, ctx);
    let mut a_star = ExactMatrix::zeros(n, n, ctx);
    for r in 0..n {
        a.set(r, r, theta[r].clone());
        a_star.set(r, r, theta_star[r].clone());
        if r > 0 {
            a.set(r, r - 1, FieldElement::one_in(ctx));
            a_star.set(r - 1, r, phi[r - 1].clone());
        }
    }
    let pair = LeonardPair::new(a, a_star)?;
    let orderings = recognize_leonard_pair(&pair.a, &pair.a_star, Some((&theta, &theta_star)))
        .ok_or(LeonardError::NotLeonard)?;
    let arrays = parameter_arrays(&pair, &orderings)?;
    let back = huang_data_from_array(&arrays[0], q)?.ok_or(LeonardError::NotQRacah)?;
    if !huang_equivalent(&back, h) {
        return Err(LeonardError::Verification(
            "Huang data do not round-trip through the constructed pair".into(),
        ));
    }
    Ok(pair)
}
