//! Matrix-less eigenvalue approximation for preconditioned Toeplitz
//! matrices `X_n = T_n(g)^{-1} T_n(l)` generated by even cosine polynomials.
//!
//! The crate is organised bottom-up:
//!
//! * [`symbols`]: cosine-polynomial symbols, `f = l / g` and its inverse.
//! * [`spectra`]: banded Toeplitz pencils and inertia-count eigensolvers.
//! * [`expansion`]: nested grids, coefficient extrapolation, interpolation
//!   and the linear-time eigenvalue reconstruction.
//! * [`harness`]: reference spectra, error reports and figure data.
//!
//! All numerical kernels are generic over [`real::Real`], so the same code
//! runs in IEEE double or in MPFR extended precision.

pub mod error;
pub mod expansion;
pub mod harness;
pub mod real;
pub mod spectra;
pub mod symbols;

pub use error::{Error, ErrorKind, Result};
pub use real::{Precision, Real};
pub use symbols::{CosinePoly, SymbolPair};
