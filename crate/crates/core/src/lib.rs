//! Construction and verification of the cusped hyperbolic 3-manifold obtained from the
//! Hoffman–Singleton graph.
//!
//! The pipeline runs from graph combinatorics ([`hsg`]), through the torus maps and the
//! planar layout of the twelve hexagons ([`torusmaps`]), to the hyperbolic fundamental
//! region and its face pairings ([`assembly`]), the isometry group ([`symmetry`]) and
//! closed geodesics ([`geodesics`]). [`report`] assembles everything into one JSON
//! report and [`svg`] draws the layout and the plane tessellations.

pub mod assembly;
pub mod eisenstein;
pub mod error;
pub mod geodesics;
pub mod graph;
pub mod h3geom;
pub mod hsg;
pub mod report;
pub mod svg;
pub mod symmetry;
pub mod torusmaps;

pub use error::{HsmError, Result};
