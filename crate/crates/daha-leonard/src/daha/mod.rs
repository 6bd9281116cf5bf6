//! Finite-dimensional modules for the universal DAHA `H_q` of type (C1∨, C1).
//!
//! Modules are built by X-type from an explicit eigenvalue ladder for
//! `X = t3 t0`, checked against every defining relation, and then analysed:
//! derived elements `X, Y, 𝒜, ℬ, 𝒞, G_i, F^±`, the u-basis in which `Y` and
//! `X` become lower and upper tridiagonal, the eigenspaces of `t0`, and the
//! two q-Racah Leonard pairs `𝒜, ℬ` on those eigenspaces. The linked
//! relation between two Leonard pairs is decided from their Huang data and
//! realised by constructing a module.

mod construct;
mod derived;
mod feasible;
mod link;
mod params;
mod relations;
mod restricted;
mod sampling;
mod twist;
mod ubasis;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactfield::{FieldElement, FieldError};
use crate::exactlinalg::{ExactMatrix, LinalgError};
use crate::leonard::LeonardError;

pub use construct::{build_module, g_function};
pub use derived::{derived_elements, derived_identity_report, DerivedElements};
pub use feasible::{is_feasible, FeasibilityReport};
pub use link::{
    link_check, link_construct, link_construct_case, defki, LinkCase, LinkCaseId, RootSign,
};
pub use params::{
    beta, condition_y_multiplicity_free, e_scale, eigenvalue_ladder, expected_eigenspace_dims,
    validate_params, x_diagram, Bond, DiagramShape, ParamViolation, XDiagram,
};
pub use relations::{verify_hq_relations, Check, Report};
pub use restricted::{
    closed_form_huang, restricted_leonard_pairs, t0_split, RestrictedPair, RestrictedPairs,
    T0Split,
};
pub use sampling::{sample_valid_params, Sampler};
pub use twist::{twist, Automorphism};
pub use ubasis::{u_basis, UBasis};

/// Errors raised while building or analysing modules.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DahaError {
    #[error("invalid parameters: {0}")]
    Invalid(ParamViolation),
    #[error("module is not feasible: {0}")]
    Infeasible(String),
    #[error("the Leonard pairs are not linked")]
    NotLinked,
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Leonard(#[from] LeonardError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The five X-types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum XType {
    DS,
    DDa,
    DDb,
    SSa,
    SSb,
}

impl XType {
    pub const ALL: [XType; 5] = [XType::DS, XType::DDa, XType::DDb, XType::SSa, XType::SSb];

    /// `n` must be even for `DS` and odd otherwise.
    pub fn parity_ok(self, n: usize) -> bool {
        (n % 2 == 0) == (self == XType::DS)
    }

    pub fn name(self) -> &'static str {
        match self {
            XType::DS => "DS",
            XType::DDa => "DDa",
            XType::DDb => "DDb",
            XType::SSa => "SSa",
            XType::SSb => "SSb",
        }
    }
}

impl std::fmt::Display for XType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for XType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        XType::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown X-type {s:?}"))
    }
}

/// `q`, the dimension parameter `n` (the module has dimension `n + 1`) and
/// the parameter sequence `k0, …, k3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HqParams {
    pub q: FieldElement,
    pub n: usize,
    pub k: [FieldElement; 4],
}

/// Four generator matrices with the scalars they are meant to satisfy.
///
/// This is the object relation checks and derived elements work on; a
/// constructed [`HqModule`] carries one, and twisting produces one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    pub q: FieldElement,
    pub k: [FieldElement; 4],
    pub t: [ExactMatrix; 4],
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.t[0].rows()
    }

    /// `T_i = k_i + k_i⁻¹`.
    pub fn big_t(&self, i: usize) -> FieldElement {
        self.k[i].plus_inverse()
    }

    /// `t_i⁻¹ = T_i I − t_i`.
    pub fn t_inv(&self, i: usize) -> ExactMatrix {
        (-&self.t[i]).add_scalar(&self.big_t(i)).expect("square")
    }
}

/// A module built by X-type, with its eigenvalue ladder `μ_0, …, μ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HqModule {
    pub params: HqParams,
    pub xtype: XType,
    pub mu: Vec<FieldElement>,
    pub rep: Representation,
}

impl HqModule {
    pub fn t(&self, i: usize) -> &ExactMatrix {
        &self.rep.t[i]
    }

    pub fn dim(&self) -> usize {
        self.params.n + 1
    }
}

impl AsRef<Representation> for HqModule {
    fn as_ref(&self) -> &Representation {
        &self.rep
    }
}

impl AsRef<Representation> for Representation {
    fn as_ref(&self) -> &Representation {
        self
    }
}
