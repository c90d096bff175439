//! Green's-function analysis of a corner-geometry Lloyd mirror
//! interferometer for slow neutrons.
//!
//! The library evaluates the interferometer wave functions two ways: exactly
//! and asymptotically without external fields through the mirror-charge
//! corner Green's function, and with a linear gravitational potential
//! through Airy-function reduced Green's functions. A validation suite
//! cross-checks every construction against independent numerical oracles.

pub mod corner_green;
pub mod gravity_green;
pub mod oracles;
pub mod quadrature;
pub mod specfun;

pub mod cli;
