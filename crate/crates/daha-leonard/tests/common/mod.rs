//! Independent oracles shared by the integration tests.
//!
//! Everything here is computed directly on `BigRational` (or on plain
//! matrices of `BigRational`) without going through the crate's own
//! arithmetic, so agreement is evidence rather than tautology.

#![allow(dead_code)]

use daha_leonard::daha::XType;
use daha_leonard::exactfield::FieldElement;
use daha_leonard::exactlinalg::ExactMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn r(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qpow(x: &Q, e: i64) -> Q {
    let mut out = Q::one();
    for _ in 0..e.unsigned_abs() {
        out *= x;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

/// The rational value of a field element; panics on irrational input.
pub fn rat(x: &FieldElement) -> Q {
    x.as_rational().expect("rational element").clone()
}

pub fn fe(x: &Q) -> FieldElement {
    FieldElement::from_rational(x.clone())
}

/// Matrix of rationals from an `ExactMatrix` with rational entries.
pub fn rat_matrix(m: &ExactMatrix) -> Vec<Vec<Q>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| rat(m.get(i, j))).collect())
        .collect()
}

pub fn mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Q::zero(), |acc, l| acc + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn add_scaled(a: &[Vec<Q>], b: &[Vec<Q>], s: &Q) -> Vec<Vec<Q>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y * s).collect())
        .collect()
}

/// `x + 1/x`.
pub fn pinv(x: &Q) -> Q {
    x + x.recip()
}

/// `λ^{-2} ∏ (λ − s^{±1} t^{±1})`, the product form of `G(λ, s, t)`.
pub fn g_product(l: &Q, s: &Q, t: &Q) -> Q {
    let mut p = Q::one();
    for a in [s.clone(), s.recip()] {
        for b in [t.clone(), t.recip()] {
            p *= l - &a * &b;
        }
    }
    p / (l * l)
}

/// The ladder `μ_r` of each type, written out from the case formulas.
pub fn ladder(xtype: XType, n: usize, k: &[Q; 4], q: &Q) -> Vec<Q> {
    (0..=n as i64)
        .map(|r| {
            let even = r % 2 == 0;
            match xtype {
                XType::DS | XType::DDa | XType::DDb => {
                    let x = &k[0] * &k[3];
                    if even {
                        &x * qpow(q, r)
                    } else {
                        (&x * qpow(q, r + 1)).recip()
                    }
                }
                XType::SSa | XType::SSb => {
                    let x = &k[1] * &k[2];
                    if even {
                        (&x * qpow(q, r + 1)).recip()
                    } else {
                        &x * qpow(q, r)
                    }
                }
            }
        })
        .collect()
}

/// `(φ_1..φ_d, ϕ_1..ϕ_d)` from Huang data for the ordering
/// `θ_r = a q^{2r−d} + a⁻¹ q^{d−2r}`, `θ*_r = b q^{2r−d} + b⁻¹ q^{d−2r}`.
pub fn split_sequences(a: &Q, b: &Q, c: &Q, d: usize, q: &Q) -> (Vec<Q>, Vec<Q>) {
    let di = d as i64;
    let mut phi = Vec::new();
    let mut phi2 = Vec::new();
    for ri in 1..=di {
        let common = qpow(q, di + 1)
            * (qpow(q, ri) - qpow(q, -ri))
            * (qpow(q, ri - di - 1) - qpow(q, di - ri + 1));
        let t = qpow(q, ri - di - 1);
        let u = qpow(q, -ri);
        phi.push(
            &common / (a * b)
                * (&u - a * b * c * &t)
                * (&u - a * b / c * &t),
        );
        phi2.push(
            &common * a / b
                * (&u - b * c / a * &t)
                * (&u - b / (a * c) * &t),
        );
    }
    (phi, phi2)
}

/// `x q^{2r−d} + (x q^{2r−d})⁻¹` for `r = 0..=d`.
pub fn huang_ladder(x: &Q, d: usize, q: &Q) -> Vec<Q> {
    (0..=d as i64).map(|r| pinv(&(x * qpow(q, 2 * r - d as i64)))).collect()
}

pub fn frac(n: i64, d: i64) -> FieldElement {
    FieldElement::frac(n, d)
}

pub fn ks(v: [(i64, i64); 4]) -> [FieldElement; 4] {
    v.map(|(n, d)| FieldElement::frac(n, d))
}

/// The flagship `DDa` instance: `n = 3`, `k = (1/4, 3, 7, 5)`, `q = 2`.
pub fn dda3() -> (XType, usize, [FieldElement; 4], FieldElement) {
    (XType::DDa, 3, ks([(1, 4), (3, 1), (7, 1), (5, 1)]), FieldElement::from_int(2))
}

/// A `DS` parameter sequence with `k3` forced by `k0 k1 k2 k3 = q^{-n-1}`.
pub fn ds_params(n: usize, k0: Q, k1: Q, k2: Q, q: &Q) -> [FieldElement; 4] {
    let k3 = qpow(q, -(n as i64) - 1) / (&k0 * &k1 * &k2);
    [fe(&k0), fe(&k1), fe(&k2), fe(&k3)]
}
