//! Checking the defining relations of `H_q` on four generator matrices.

use serde::Serialize;

use crate::exactlinalg::ExactMatrix;

use super::Representation;

/// One named matrix identity, with `lhs − rhs` kept when it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<ExactMatrix>,
}

impl Check {
    /// Compares `lhs` and `rhs`; a shape mismatch counts as a failure.
    pub fn equal(name: impl Into<String>, lhs: &ExactMatrix, rhs: &ExactMatrix) -> Self {
        let name = name.into();
        if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
            return Check {
                name,
                passed: false,
                residual: None,
            };
        }
        let residual = lhs - rhs;
        let passed = residual.is_zero();
        Check {
            name,
            passed,
            residual: (!passed).then_some(residual),
        }
    }

    /// A check whose outcome is a plain truth value.
    pub fn flag(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            residual: None,
        }
    }
}

/// An ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

fn commutator(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    &(a * b) - &(b * a)
}

/// Checks every defining relation on the generator matrices:
///
/// * each `t_i` is invertible (Gauss-Jordan) and `t_i t_i⁻¹ = I`;
/// * `t_i + t_i⁻¹ = T_i I` with `T_i = k_i + k_i⁻¹`, equivalently
///   `(t_i − k_i)(t_i − k_i⁻¹) = 0`;
/// * `t_i + t_i⁻¹` commutes with every `t_j`;
/// * `t_0 t_1 t_2 t_3 = q⁻¹ I` and its three rotations.
pub fn verify_hq_relations<R: AsRef<Representation>>(module: &R) -> Report {
    let rep = module.as_ref();
    let n = rep.dim();
    let mut report = Report::default();
    let eye = ExactMatrix::identity(n, Default::default());
    let zero = ExactMatrix::zeros(n, n, Default::default());
    let mut sums = Vec::with_capacity(4);
    for i in 0..4 {
        let t = &rep.t[i];
        match t.mat_inverse() {
            Ok(inv) => {
                report.push(Check::equal(format!("t{i} t{i}^-1 = I"), &(t * &inv), &eye));
                sums.push(Some(t + &inv));
            }
            Err(_) => {
                report.push(Check::flag(format!("t{i} invertible"), false));
                sums.push(None);
            }
        }
        let quad = &t.add_scalar(&-&rep.k[i]).expect("square")
            * &t.add_scalar(&-&rep.k[i].recip()).expect("square");
        report.push(Check::equal(format!("(t{i} - k{i})(t{i} - k{i}^-1) = 0"), &quad, &zero));
    }
    for (i, sum) in sums.iter().enumerate() {
        let Some(sum) = sum else { continue };
        report.push(Check::equal(
            format!("t{i} + t{i}^-1 = T{i}"),
            sum,
            &ExactMatrix::scalar(n, &rep.big_t(i)),
        ));
        for j in 0..4 {
            report.push(Check::equal(
                format!("t{i} + t{i}^-1 commutes with t{j}"),
                &commutator(sum, &rep.t[j]),
                &zero,
            ));
        }
    }
    let qinv = ExactMatrix::scalar(n, &rep.q.recip());
    for s in 0..4 {
        let order = [s, (s + 1) % 4, (s + 2) % 4, (s + 3) % 4];
        let product = order
            .iter()
            .skip(1)
            .fold(rep.t[order[0]].clone(), |acc, &i| &acc * &rep.t[i]);
        report.push(Check::equal(
            format!("t{}t{}t{}t{} = q^-1", order[0], order[1], order[2], order[3]),
            &product,
            &qinv,
        ));
    }
    report
}

