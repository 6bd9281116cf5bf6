//! Leonard pairs of q-Racah type.
//!
//! A Leonard pair `A, A*` on a space of dimension `d + 1` is recognised from
//! its matrices, its split sequences and parameter arrays are computed from
//! explicit split bases, and its Huang data `(a, b, c, d)` are recovered and
//! checked. The reverse direction builds the canonical split-form pair from
//! Huang data. The Askey-Wilson third element `A^ε` is computed and its two
//! companion relations are verified exactly.

mod askey_wilson;
mod huang;
mod recognize;
mod split;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactfield::{FieldElement, FieldError};
use crate::exactlinalg::{ExactMatrix, LinalgError};

pub use askey_wilson::{askey_wilson_holds, askey_wilson_third, AskeyWilsonScalars};
pub use huang::{
    build_pair_from_huang, check_huang_admissible, first_split_formula, huang_data_from_array,
    huang_equivalent, qracah_parameter, qracah_sequence, second_split_formula,
};
pub use recognize::{multiplicity_free_eigenbasis, recognize_leonard_pair, Orderings};
pub use split::{parameter_arrays, split_basis, split_sequence};

/// Errors raised by Leonard-pair computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeonardError {
    #[error("matrices must be square of equal size")]
    Shape,
    #[error("not a Leonard pair over this field")]
    NotLeonard,
    #[error("eigenvalue ordering is not standard: {0}")]
    NotStandard(String),
    #[error("sequence is not of q-Racah type")]
    NotQRacah,
    #[error("Huang data not admissible: {0}")]
    Inadmissible(String),
    #[error("extension required: c lies outside the current quadratic field ({0})")]
    ExtensionRequired(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Two linear maps on the same space, given by their matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeonardPair {
    pub a: ExactMatrix,
    pub a_star: ExactMatrix,
}

impl LeonardPair {
    pub fn new(a: ExactMatrix, a_star: ExactMatrix) -> Result<Self, LeonardError> {
        if !a.is_square() || !a_star.is_square() || a.rows() != a_star.rows() || a.rows() == 0 {
            return Err(LeonardError::Shape);
        }
        Ok(LeonardPair { a, a_star })
    }

    /// The diameter `d = dim V − 1`.
    pub fn diameter(&self) -> usize {
        self.a.rows() - 1
    }
}

/// `(θ, θ*, φ, ϕ)`: standard orderings and the first and second split sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterArray {
    pub theta: Vec<FieldElement>,
    pub theta_star: Vec<FieldElement>,
    pub phi: Vec<FieldElement>,
    pub phi2: Vec<FieldElement>,
}

impl ParameterArray {
    pub fn diameter(&self) -> usize {
        self.theta.len() - 1
    }
}

/// Huang data `(a, b, c, d)`; `a, b, c` are determined up to inversion and
/// `c` is arbitrary when `d = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuangData {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: usize,
}

impl HuangData {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: usize) -> Self {
        HuangData { a, b, c, d }
    }

    /// Huang data with small rational entries; convenient in tests and examples.
    pub fn from_ints(a: i64, b: i64, c: i64, d: usize) -> Self {
        HuangData::new(a.into(), b.into(), c.into(), d)
    }

    /// The variant with the selected components inverted.
    pub fn inverted(&self, inv_a: bool, inv_b: bool, inv_c: bool) -> Self {
        let pick = |x: &FieldElement, inv: bool| if inv { x.recip() } else { x.clone() };
        HuangData {
            a: pick(&self.a, inv_a),
            b: pick(&self.b, inv_b),
            c: pick(&self.c, inv_c),
            d: self.d,
        }
    }
}
