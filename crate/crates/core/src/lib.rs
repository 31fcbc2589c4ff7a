//! Exact symbolic toolkit for finite-dimensional Lie algebras of vector fields
//! with exponential-polynomial coefficients.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: exact linear algebra generic over a [`Field`] scalar.
//! - [`coeffring`]: the canonical-form differential ring of
//!   exponential/trigonometric polynomials with rational data.
//! - [`vfield`]: vector fields over that ring and their Lie bracket.
//! - [`liealg`]: bracket closure, structure constants, classical series.
//! - [`nilrad`]: nilradicals of solvable algebras via the associative
//!   envelope of the adjoint representation.
//! - [`grading`]: dilations, weight fields, degree decompositions.
//! - [`jets`]: truncated power series, jet maps, forms, pushforwards.
//! - [`pipeline`]: flag profile, weights, adapted chart and certificate.
//! - [`conjecture`]: recurrences, exponent spectra and witnesses.
//! - [`text`]: the algebra file grammar, parser and printer.

pub mod coeffring;
pub mod conjecture;
pub mod error;
pub mod grading;
pub mod jets;
pub mod liealg;
pub mod linalg;
pub mod nilrad;
pub mod pipeline;
pub mod scalar;
pub mod text;
pub mod upoly;
pub mod vfield;

pub use coeffring::{ExpPolyCoeff, Frequency, TermKey, Trig};
pub use error::{Error, Result};
pub use grading::Dilation;
pub use liealg::{LieAlgebraVF, SeriesKind, SeriesReport, StructureConstants, Subspace};
pub use scalar::Field;
pub use vfield::{VarContext, VectorField};

/// Arbitrary-precision rational, the scalar of every exact computation.
pub type Rational = num_rational::BigRational;

/// Dense matrix over [`Rational`].
pub type QMatrix = linalg::Matrix<Rational>;

/// Truncated power series over [`Rational`].
pub type Jet = jets::JetFunction<Rational>;

/// Jet map over [`Rational`].
pub type QJetMap = jets::JetMap<Rational>;

/// Univariate polynomial over [`Rational`].
pub type QPoly = upoly::Poly<Rational>;

/// Default bracket-closure dimension cap.
pub const DEFAULT_MAX_DIM: usize = 64;
