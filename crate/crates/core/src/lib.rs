//! Obstructions to rational homology spheres bounding negative definite
//! four-manifolds, with four-ball genus bounds for Montesinos links.
//!
//! The pipeline is: correction terms of a Seifert fibered space
//! ([`dinv`]) feed the filling search ([`obstruction`]), which enumerates
//! definite forms and their maximal-square functions ([`qforms`]) over the
//! group theory in [`algebra`]. [`links`] turns link descriptors into double
//! covers and signatures and drives the genus bound.

pub mod algebra;
pub mod dinv;
pub mod error;
pub mod links;
pub mod obstruction;
pub mod qforms;

pub use error::{Error, Result};
