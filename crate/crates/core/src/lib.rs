//! Hyperbolic geometry of the Borromean-rings complement: parabolic ball
//! isometries, the Cayley-tree path spectrum and its multifractal analysis,
//! decorated ideal octahedra, and the associated sine-Gordon system.

pub mod cayley;
pub mod cli;
pub mod error;
pub mod group;
pub mod hyperbolic;
pub mod io;
pub mod octahedron;
pub mod quadrature;
pub mod sine_gordon;
pub mod special;
pub mod teich;
pub mod vec3;

pub use error::{Error, Result};
