//! Recognition of Leonard pairs and their standard orderings.

use serde::Serialize;

use crate::exactfield::FieldElement;
use crate::exactlinalg::{change_of_basis, eigenspace, ExactMatrix};

use super::LeonardPair;

/// Standard orderings of the eigenvalues of `A` (`theta`) and `A*` (`theta_star`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orderings {
    pub theta: Vec<FieldElement>,
    pub theta_star: Vec<FieldElement>,
}

/// Eigenvalues and an eigenbasis (as columns) of a multiplicity-free matrix.
///
/// With `candidates`, only those values are tried; otherwise the eigenvalues
/// come from exact root extraction of the characteristic polynomial.
/// Returns `None` unless every eigenspace is one-dimensional and they span.
pub fn multiplicity_free_eigenbasis(
    m: &ExactMatrix,
    candidates: Option<&[FieldElement]>,
) -> Option<(Vec<FieldElement>, ExactMatrix)> {
    let n = m.rows();
    let values: Vec<FieldElement> = match candidates {
        Some(c) => c.to_vec(),
        None => m.exact_eigenvalues().ok()??,
    };
    let mut distinct: Vec<FieldElement> = Vec::new();
    for v in values {
        if !distinct.contains(&v) {
            distinct.push(v);
        }
    }
    let mut eigenvalues = Vec::new();
    let mut vectors = Vec::new();
    for mu in distinct {
        let space = eigenspace(m, &mu).ok()?;
        match space.dim() {
            0 => continue,
            1 => {
                eigenvalues.push(mu);
                vectors.push(space.basis()[0].clone());
            }
            _ => return None,
        }
    }
    if eigenvalues.len() != n {
        return None;
    }
    let p = ExactMatrix::from_columns(&vectors).ok()?;
    Some((eigenvalues, p))
}

/// The vertex order of the path formed by the off-diagonal support of `b`,
/// starting at the endpoint with the smaller index.
fn path_order(b: &ExactMatrix) -> Option<Vec<usize>> {
    let n = b.rows();
    if n == 1 {
        return Some(vec![0]);
    }
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let nz = !b.get(i, j).is_zero();
            if nz != !b.get(j, i).is_zero() {
                return None;
            }
            if nz && i < j {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    if adj.iter().any(|a| a.len() > 2 || a.is_empty()) {
        return None;
    }
    let start = (0..n).find(|&i| adj[i].len() == 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < n {
        let next = *adj[cur].iter().find(|&&x| x != prev)?;
        if order.contains(&next) {
            return None;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    Some(order)
}

/// Orders eigenvalues of `m` so that `other` is irreducible tridiagonal in the
/// corresponding eigenbasis of `m`. Both standard orderings are returned
/// (the second is the reverse of the first).
fn standard_ordering(
    m: &ExactMatrix,
    other: &ExactMatrix,
    candidates: Option<&[FieldElement]>,
) -> Option<Vec<FieldElement>> {
    let (values, p) = multiplicity_free_eigenbasis(m, candidates)?;
    let b = change_of_basis(other, &p).ok()?;
    let order = path_order(&b)?;
    let forward: Vec<FieldElement> = order.iter().map(|&i| values[i].clone()).collect();
    let perm = ExactMatrix::from_columns(
        &order
            .iter()
            .map(|&i| p.column(i))
            .collect::<Vec<_>>(),
    )
    .ok()?;
    let check = change_of_basis(other, &perm).ok()?;
    if !check.is_irreducible_tridiagonal() {
        return None;
    }
    let mut backward = forward.clone();
    backward.reverse();
    Some(lexicographically_smaller(forward, backward))
}

fn lexicographically_smaller(
    x: Vec<FieldElement>,
    y: Vec<FieldElement>,
) -> Vec<FieldElement> {
    let key = |v: &[FieldElement]| v.iter().map(FieldElement::to_json_string).collect::<Vec<_>>();
    if key(&y) < key(&x) {
        y
    } else {
        x
    }
}

/// Decides whether `A, A*` is a Leonard pair over the current field and, if so,
/// returns a standard ordering for each. Of the two standard orderings of each
/// map, the one whose serialized list is lexicographically smaller is returned;
/// the reverse of each returned list is the other standard ordering.
///
/// `candidates` optionally supplies candidate eigenvalues for `A` and `A*`.
pub fn recognize_leonard_pair(
    a: &ExactMatrix,
    a_star: &ExactMatrix,
    candidates: Option<(&[FieldElement], &[FieldElement])>,
) -> Option<Orderings> {
    if LeonardPair::new(a.clone(), a_star.clone()).is_err() {
        return None;
    }
    if a.rows() == 1 {
        return Some(Orderings {
            theta: vec![a.get(0, 0).clone()],
            theta_star: vec![a_star.get(0, 0).clone()],
        });
    }
    let theta = standard_ordering(a, a_star, candidates.map(|c| c.0))?;
    let theta_star = standard_ordering(a_star, a, candidates.map(|c| c.1))?;
    Some(Orderings { theta, theta_star })
}
