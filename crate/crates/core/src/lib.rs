//! Exact computation with systems of simple arcs joining two fixed punctures
//! of a punctured sphere.

pub mod constructions;
pub mod diagram;
pub mod error;
pub mod extremal;
pub mod geometry;
pub mod model;
pub mod system;

pub use error::{Error, Result};
pub use system::{ArcSystem, SystemDocument};
pub use model::{enumerate_classes, ArcClass, GammaProfile, Puncture, Side, Surface};
