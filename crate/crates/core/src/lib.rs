//! Bound states of a quantum particle bouncing on a mirror in uniform
//! gravity, quantized on an equispaced position lattice, together with the
//! machinery needed to confront the spectrum with experiment: the continuum
//! (Airy) limit, perturbative level shifts, vibration-induced transitions
//! and lifetimes, quadrupole radiative rates, and upper bounds on the
//! lattice spacing from measured level heights and lifetimes.
//!
//! Layering, bottom to top:
//!
//! * [`specfun`] - Airy/Bessel/log-gamma primitives, dependency-free;
//! * [`lattice`] - tridiagonal lattice Hamiltonian and a Sturm-bisection
//!   eigensolver, used both as a solver and as the oracle for everything
//!   built on Bessel functions;
//! * [`spectrum`] - the quantization condition, normalized lattice
//!   wavefunctions, and the energy table over the lattice-ratio grid;
//! * [`continuum`] - the continuum bouncer, its matrix elements, and the
//!   lattice-to-continuum comparison;
//! * [`transitions`], [`radiative`], [`experiment`] - physics built on the
//!   two layers above.
//!
//! All computations are pure functions over explicit inputs; concurrent use
//! requires no synchronization.

pub mod continuum;
pub mod error;
pub mod experiment;
pub mod lattice;
pub mod quad;
pub mod radiative;
pub mod specfun;
pub mod spectrum;
pub mod transitions;

pub use error::{Error, Result};
