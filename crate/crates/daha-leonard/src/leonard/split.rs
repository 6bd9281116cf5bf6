//! Split bases, split sequences and the four parameter arrays.

use crate::exactfield::FieldElement;
use crate::exactlinalg::{change_of_basis, eigenspace, ExactMatrix};

use super::{LeonardError, LeonardPair, Orderings, ParameterArray};

/// The split basis for the ordering `(θ, θ*)`, as columns.
///
/// `v_0` spans the `θ*_0`-eigenspace of `A*` and `v_{r+1} = (A − θ_r) v_r`.
/// In this basis `A` is lower bidiagonal with diagonal `θ` and subdiagonal
/// entries 1, and `A*` is upper bidiagonal with diagonal `θ*`; both shapes are
/// verified and the superdiagonal of `A*` is returned with the basis.
pub fn split_basis(
    pair: &LeonardPair,
    theta: &[FieldElement],
    theta_star: &[FieldElement],
) -> Result<(ExactMatrix, Vec<FieldElement>), LeonardError> {
    let n = pair.a.rows();
    if theta.len() != n || theta_star.len() != n {
        return Err(LeonardError::Shape);
    }
    let top = eigenspace(&pair.a_star, &theta_star[0])?;
    if top.dim() != 1 {
        return Err(LeonardError::NotStandard(format!(
            "eigenspace of A* for theta*_0 has dimension {}",
            top.dim()
        )));
    }
    let mut vectors = vec![top.basis()[0].clone()];
    for th in theta.iter().take(n - 1) {
        let last = vectors.last().expect("nonempty");
        let next = pair.a.add_scalar(&-th)?.mat_vec(last)?;
        vectors.push(next);
    }
    let basis = ExactMatrix::from_columns(&vectors)?;
    if basis.rank()? < n {
        return Err(LeonardError::NotStandard("split vectors are dependent".into()));
    }
    let la = change_of_basis(&pair.a, &basis)?;
    let las = change_of_basis(&pair.a_star, &basis)?;
    let one = FieldElement::one();
    let a_ok = la.is_lower_bidiagonal()
        && (0..n).all(|r| la.get(r, r) == &theta[r])
        && (1..n).all(|r| la.get(r, r - 1) == &one);
    let as_ok = las.is_upper_bidiagonal() && (0..n).all(|r| las.get(r, r) == &theta_star[r]);
    if !a_ok || !as_ok {
        return Err(LeonardError::NotStandard("split form shapes fail".into()));
    }
    let phi: Vec<FieldElement> = (1..n).map(|r| las.get(r - 1, r).clone()).collect();
    if phi.iter().any(FieldElement::is_zero) {
        return Err(LeonardError::NotStandard("zero split-sequence entry".into()));
    }
    Ok((basis, phi))
}

/// The first split sequence `φ_1, …, φ_d` for the ordering `(θ, θ*)`.
pub fn split_sequence(
    pair: &LeonardPair,
    theta: &[FieldElement],
    theta_star: &[FieldElement],
) -> Result<Vec<FieldElement>, LeonardError> {
    if pair.a.rows() == 1 {
        return Ok(Vec::new());
    }
    split_basis(pair, theta, theta_star).map(|(_, phi)| phi)
}

fn reversed(v: &[FieldElement]) -> Vec<FieldElement> {
    v.iter().rev().cloned().collect()
}

/// The four parameter arrays of a recognised pair, starting from the given
/// standard orderings. Each array is re-verified against split sequences
/// computed afresh for its own orderings.
pub fn parameter_arrays(
    pair: &LeonardPair,
    orderings: &Orderings,
) -> Result<[ParameterArray; 4], LeonardError> {
    let th = &orderings.theta;
    let ths = &orderings.theta_star;
    let phi = split_sequence(pair, th, ths)?;
    let phi2 = split_sequence(pair, &reversed(th), ths)?;
    let arrays = [
        ParameterArray {
            theta: th.clone(),
            theta_star: ths.clone(),
            phi: phi.clone(),
            phi2: phi2.clone(),
        },
        ParameterArray {
            theta: th.clone(),
            theta_star: reversed(ths),
            phi: reversed(&phi2),
            phi2: reversed(&phi),
        },
        ParameterArray {
            theta: reversed(th),
            theta_star: ths.clone(),
            phi: phi2.clone(),
            phi2: phi.clone(),
        },
        ParameterArray {
            theta: reversed(th),
            theta_star: reversed(ths),
            phi: reversed(&phi),
            phi2: reversed(&phi2),
        },
    ];
    for (i, pa) in arrays.iter().enumerate().skip(1) {
        let fresh_phi = split_sequence(pair, &pa.theta, &pa.theta_star)?;
        let fresh_phi2 = split_sequence(pair, &reversed(&pa.theta), &pa.theta_star)?;
        if fresh_phi != pa.phi || fresh_phi2 != pa.phi2 {
            return Err(LeonardError::Verification(format!(
                "parameter array {} disagrees with its split sequences",
                i + 1
            )));
        }
    }
    Ok(arrays)
}
