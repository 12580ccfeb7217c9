//! Command-line plumbing for scattering diagrams: the JSON document format,
//! text and SVG rendering, and the built-in verification suite.

pub mod document;
pub mod render;
pub mod verify;
