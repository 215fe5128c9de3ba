//! Numerical toolkit for linear canonical transforms (LCTs) of sampled
//! signals, Wigner-type phase-space distributions over standard and
//! non-standard symplectic forms, and uncertainty-principle diagnostics
//! (Heisenberg, Robertson-Schrödinger, Hardy, Paley-Wiener).
//!
//! The crate is organized around four pillars:
//!
//! * [`symplectic`] — dense symplectic matrices, block decompositions,
//!   generating functions, Darboux/coupling matrices, non-standard forms.
//! * [`lct`] — fast chirp–FFT transforms, direct-quadrature oracles
//!   (including complex-argument evaluation), and Gaussian closed forms.
//! * [`phase_space`] — Wigner and ϑ-Wigner distributions, marginals,
//!   moments, Radon line integrals, and linear perturbations.
//! * [`uncertainty`] — spreads, covariance matrices, and the four
//!   uncertainty checks with their saturating inputs.
//!
//! Everything operates on uniformly sampled signals in double precision;
//! all types are immutable after construction and safe to share across
//! threads.

pub mod fft;
pub mod io;
pub mod lct;
pub mod nd;
pub mod phase_space;
pub mod signal;
pub mod symplectic;
pub mod tolerances;
pub mod uncertainty;

pub use nalgebra;
pub use num_complex::Complex64;
