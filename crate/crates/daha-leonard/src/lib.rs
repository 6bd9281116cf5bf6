//! Exact construction and verification of finite-dimensional modules for the
//! universal double affine Hecke algebra `H_q` of type (C1∨, C1), and of the
//! q-Racah Leonard pairs that live on the eigenspaces of `t0`.
//!
//! The crate is organised in layers:
//!
//! - [`exactfield`]: exact scalars in `Q` or in one quadratic extension `Q(√D)`.
//! - [`exactlinalg`]: dense exact matrices, kernels, eigenspaces, shape tests.
//! - [`leonard`]: Leonard-pair recognition, split sequences, parameter arrays,
//!   Huang data and the Askey-Wilson third element.
//! - [`daha`]: module construction by X-type, relation checking, derived
//!   elements, the u-basis, the `t0` split, Huang data of both restricted
//!   Leonard pairs, twisting, and the linked relation between Leonard pairs.
//! - [`cli`]: the JSON batch interface behind the `daha-leonard` binary.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod cli;
pub mod daha;
pub mod exactfield;
pub mod exactlinalg;
pub mod leonard;

pub use exactfield::{FieldContext, FieldElement, FieldError, Rational};
pub use exactlinalg::{ExactMatrix, LinalgError, Subspace};
