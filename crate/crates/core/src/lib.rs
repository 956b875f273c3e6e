//! Exact computer algebra for Hodge loci of Fermat hypersurfaces.
//!
//! The crate works over cyclotomic fields with exact rational coordinates and
//! covers Jacobian and colon ideals of the Fermat polynomial, their Hilbert
//! functions, Gröbner bases, the polynomials attached to linear cycles and
//! product classes, intersection pairings, and the combinatorial bounds on
//! tangent codimensions.

pub mod bounds;
pub mod error;
pub mod exactnum;
pub mod fermat_hodge;
pub mod idealcalc;
pub mod linalg;
pub mod multipoly;
pub mod wire;

pub use error::{Error, Result};
