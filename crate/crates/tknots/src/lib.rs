//! Finite shadow biquandles and their local-biquandle counterparts: axiom
//! checking, derived tribrackets, chain-complex (co)homology over Z and Z_m,
//! diagram coloring enumeration, and region-coloring cocycle invariants of
//! links and surface-links.

pub mod algebra;
pub mod battery;
pub mod chains;
pub mod cocycles;
pub mod diagrams;
pub mod error;
pub mod howell;
pub mod io;
pub mod matrix;
pub mod tribracket;

pub use error::{Error, Result};
