#![no_std]
//! Exact computations with quiver, polynomial and skeleton categories.

extern crate alloc;

pub mod bmodels;
pub mod complexes;
pub mod cyclic;
pub mod error;
pub mod exactlin;
pub mod field;
pub mod mirror;
pub mod pantsgeom;
pub mod polyring;
pub mod quivers;
pub mod skeleton;

pub use error::{Error, Result};
pub use exactlin::{ExactMatrix, GradedSpace, Grading};
pub use field::{Field, Fp, Q};
