//! Exact blow ups of affine schemes over the rationals.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`]: multivariate polynomials with rational coefficients, monomial
//!   orders, the text format, derivatives, substitution and orders at points.
//! * [`ideal`]: the Gröbner kernel and every ideal operation built on it
//!   (membership, colon, saturation, elimination, radical membership,
//!   dimension, zero-dimensional radicals).
//! * [`blowup`]: blow-up charts, total/strict/controlled transforms and the
//!   [`ChartTree`](blowup::ChartTree) recording a succession of blow ups.
//! * [`singularity`]: Jacobian matrices, minors, the Jacobian ideal of a
//!   presentation, smoothness verdicts and maximal-order loci.
//! * [`divisors`]: factored divisors, normal-crossing and monomial verdicts,
//!   component separation and the surface normalization loop.
//! * [`resolve`]: principalization drivers and embedded resolution of
//!   reduced plane curves, with an independent verifier.
//!
//! All values are immutable once built. Resource caps for the Gröbner kernel
//! and saturation loops are process-wide, see [`limits`].

pub mod blowup;
pub mod divisors;
pub mod error;
pub mod ideal;
pub mod limits;
pub mod par;
pub mod poly;
pub mod resolve;
pub mod singularity;

pub use error::{Error, Result};
pub use ideal::{GroebnerBasis, Ideal, QuotientPresentation};

pub use poly::{Monomial, MonomialOrder, Multiplicity, PolyRing, Polynomial, Rational, Ring};
