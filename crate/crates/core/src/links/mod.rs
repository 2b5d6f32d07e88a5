//! Two-bridge and Montesinos links: diagrams, spanning surfaces, signatures and genus bounds.

pub mod construct;
pub mod cyclotomic;
pub mod descriptor;
pub mod diagram;
pub mod genus;
pub mod surface;
pub mod taylor;

pub use construct::*;
pub use cyclotomic::{tristram_levine, CyclotomicField};
pub use descriptor::*;
pub use diagram::*;
pub use genus::*;
pub use surface::*;
pub use taylor::{taylor_bracket, TaylorBracket};
