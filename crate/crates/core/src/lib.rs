//! Exact toolkit for affine-unimodular-equivariant valuations on lattice
//! polygons with values in truncated formal power series over Q.

pub mod error;
pub mod geometry;
pub mod group;
pub mod laplace;
pub mod laws;
pub mod linalg;
pub mod rational;
pub mod selftest;
pub mod series;
pub mod valuation;
pub mod vspace;
pub mod wire;

pub use error::{Error, Result};
pub use geometry::{LatticePolygon, Point, Triangulation};
pub use group::AffineUnimodular;
pub use rational::Rational;
pub use series::{Series1, Series2, DEFAULT_ORDER};
