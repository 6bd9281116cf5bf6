mod common;

use common::{identity, mul, r, rat_matrix, Q};
use daha_leonard::exactfield::{FieldContext, FieldElement};
use daha_leonard::exactlinalg::{
    change_of_basis, eigenspace, kernel_basis, polynomial_roots, restrict, ExactMatrix, Subspace,
};
use num_traits::Zero;
use proptest::prelude::*;

fn from_rat(rows: &[Vec<Q>]) -> ExactMatrix {
    ExactMatrix::from_rows(
        rows.iter()
            .map(|row| row.iter().map(|x| FieldElement::from_rational(x.clone())).collect())
            .collect(),
    )
    .unwrap()
}

fn small_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-4i64..5, n), n)
}

fn int_matrix(rows: &[Vec<i64>]) -> ExactMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    ExactMatrix::from_ints(&refs)
}

#[test]
fn roots_with_large_prime_factors() {
    // (x − p/s)² (x + 2) (x − t) (x² − 3x + 1) with primes beyond trial division.
    let (p, s) = (Q::from_integer(1_000_003.into()), Q::from_integer(1_000_033.into()));
    let t = Q::from_integer(1_000_037.into()) * Q::from_integer(1_000_039.into());
    let mut coeffs = vec![r(1, 1), r(-3, 1), r(1, 1)];
    for root in [&p / &s, &p / &s, r(-2, 1), t.clone()] {
        let mut next = vec![Q::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &root;
        }
        coeffs = next;
    }
    let fe: Vec<FieldElement> = coeffs.iter().cloned().map(FieldElement::from_rational).collect();
    let roots = polynomial_roots(&fe).expect("all roots found");
    assert_eq!(roots.len(), 6);
    let rational: Vec<Q> = roots.iter().filter_map(|x| x.as_rational().cloned()).collect();
    for (value, count) in [(&p / &s, 2), (r(-2, 1), 1), (t, 1)] {
        assert_eq!(rational.iter().filter(|x| **x == value).count(), count);
    }
    for x in roots.iter().filter(|x| !x.is_rational()) {
        assert!((&(x * x) - &(x * &FieldElement::from_int(3)) + FieldElement::one()).is_zero());
    }
}

#[test]
fn products_agree_with_the_oracle() {
    let a = ExactMatrix::from_ints(&[&[1, 2], &[3, 4], &[5, 6]]);
    let b = ExactMatrix::from_ints(&[&[1, 0, -1], &[2, 1, 0]]);
    let expected = mul(&rat_matrix(&a), &rat_matrix(&b));
    assert_eq!(rat_matrix(&(&a * &b)), expected);
    assert!(a.mat_mul(&a).is_err());
}

#[test]
fn inverse_of_a_rational_matrix() {
    let m = from_rat(&[
        vec![r(1, 2), r(1, 3), r(0, 1)],
        vec![r(0, 1), r(2, 1), r(-1, 5)],
        vec![r(1, 1), r(0, 1), r(3, 1)],
    ]);
    let inv = m.mat_inverse().unwrap();
    assert_eq!(mul(&rat_matrix(&m), &rat_matrix(&inv)), identity(3));
    let singular = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]);
    assert!(singular.mat_inverse().is_err());
}

#[test]
fn kernels_and_eigenspaces() {
    let m = ExactMatrix::from_ints(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
    // A Jordan block: the eigenvalue 1 has a one-dimensional eigenspace.
    assert_eq!(eigenspace(&m, &FieldElement::one()).unwrap().dim(), 1);
    assert_eq!(eigenspace(&m, &FieldElement::from_int(2)).unwrap().dim(), 1);
    assert_eq!(eigenspace(&m, &FieldElement::from_int(3)).unwrap().dim(), 0);

    let k = kernel_basis(&ExactMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]])).unwrap();
    assert_eq!(k.dim(), 2);
    for v in k.basis() {
        assert!(v[0].clone() + &v[1] * &FieldElement::from_int(2) + &v[2] * &FieldElement::from_int(3) == FieldElement::zero());
    }
}

#[test]
fn eigenvalues_over_an_extension() {
    // x² − 2: eigenvalues ±√2 are found once the field is Q(√2).
    let ctx = FieldContext::new(2).unwrap();
    let m = ExactMatrix::from_ints(&[&[0, 2], &[1, 0]]);
    let cp = m.characteristic_polynomial().unwrap();
    assert_eq!(cp.len(), 3);
    let root = FieldElement::sqrt_disc(ctx);
    assert_eq!(eigenspace(&m, &root).unwrap().dim(), 1);
    assert_eq!(eigenspace(&m, &-&root).unwrap().dim(), 1);
}

#[test]
fn restriction_to_an_invariant_subspace() {
    let m = ExactMatrix::from_ints(&[&[2, 0, 0], &[1, 3, 0], &[0, 0, 5]]);
    let w = Subspace::new(
        3,
        vec![
            vec![FieldElement::zero(), FieldElement::one(), FieldElement::zero()],
            vec![FieldElement::zero(), FieldElement::zero(), FieldElement::one()],
        ],
    )
    .unwrap();
    let rm = restrict(&m, &w).unwrap();
    assert_eq!(rat_matrix(&rm), vec![vec![r(3, 1), r(0, 1)], vec![r(0, 1), r(5, 1)]]);

    let not_invariant = Subspace::new(3, vec![vec![FieldElement::one(), FieldElement::zero(), FieldElement::zero()]]).unwrap();
    assert!(restrict(&m, &not_invariant).is_err());
}

#[test]
fn shape_predicates() {
    let lower_bi = ExactMatrix::from_ints(&[&[1, 0, 0], &[1, 2, 0], &[0, 1, 3]]);
    assert!(lower_bi.is_lower_bidiagonal());
    assert!(!lower_bi.is_upper_bidiagonal());
    assert!(lower_bi.is_lower_tridiagonal());
    assert!(lower_bi.transpose().is_upper_bidiagonal());
    let lower_tri = ExactMatrix::from_ints(&[&[1, 0, 0], &[1, 2, 0], &[1, 1, 3]]);
    assert!(lower_tri.is_lower_tridiagonal());
    assert!(!lower_tri.is_lower_bidiagonal());
    let tri = ExactMatrix::from_ints(&[&[1, 1, 0], &[1, 2, 1], &[0, 1, 3]]);
    assert!(tri.is_irreducible_tridiagonal());
    let reducible = ExactMatrix::from_ints(&[&[1, 1, 0], &[1, 2, 0], &[0, 1, 3]]);
    assert!(reducible.is_tridiagonal() && !reducible.is_irreducible_tridiagonal());
}

#[test]
fn json_round_trip() {
    let m = from_rat(&[vec![r(1, 2), r(-3, 1)], vec![r(0, 1), r(7, 9)]]);
    let s = serde_json::to_string(&m).unwrap();
    let back: ExactMatrix = serde_json::from_str(&s).unwrap();
    assert_eq!(back, m);
    let short: ExactMatrix = serde_json::from_str(r#"[["1/2", -3], [0, "7/9"]]"#).unwrap();
    assert_eq!(short, m);
    assert!(serde_json::from_str::<ExactMatrix>(r#"[[1, 2], [3]]"#).is_err());
}

proptest! {
    #[test]
    fn inverse_is_two_sided(rows in small_matrix(4)) {
        let m = int_matrix(&rows);
        if let Ok(inv) = m.mat_inverse() {
            prop_assert_eq!(mul(&rat_matrix(&m), &rat_matrix(&inv)), identity(4));
            prop_assert_eq!(mul(&rat_matrix(&inv), &rat_matrix(&m)), identity(4));
        } else {
            prop_assert!(m.rank().unwrap() < 4);
        }
    }

    #[test]
    fn rank_nullity(rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 3)) {
        let m = int_matrix(&rows);
        let k = kernel_basis(&m).unwrap();
        prop_assert_eq!(m.rank().unwrap() + k.dim(), 5);
        let mr = rat_matrix(&m);
        for v in k.basis() {
            let col: Vec<Vec<Q>> = v.iter().map(|x| vec![common::rat(x)]).collect();
            prop_assert!(mul(&mr, &col).iter().all(|row| row[0].is_zero()));
        }
    }

    #[test]
    fn cayley_hamilton(rows in small_matrix(3)) {
        let m = int_matrix(&rows);
        let cp = m.characteristic_polynomial().unwrap();
        let value = m.eval_poly(&cp).unwrap();
        prop_assert!(value.is_zero());
    }

    #[test]
    fn change_of_basis_preserves_eigenvalues(rows in small_matrix(3), p in small_matrix(3)) {
        let m = int_matrix(&rows);
        let p = int_matrix(&p);
        prop_assume!(p.mat_inverse().is_ok());
        let c = change_of_basis(&m, &p).unwrap();
        prop_assert_eq!(c.characteristic_polynomial().unwrap(), m.characteristic_polynomial().unwrap());
        let back = &(&p * &c) * &p.mat_inverse().unwrap();
        prop_assert_eq!(back, m);
    }
}
