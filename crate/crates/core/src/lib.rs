//! Exact computer algebra for the ideals of pinhole-camera image formation:
//! polynomial rings and Gröbner verification, the atlas variable universe,
//! k-focal determinants, generator families, specialization at scalar
//! cameras, and end-to-end verification suites.

// Dense exact matrix code indexes rows and columns by position.
#![allow(clippy::needless_range_loop)]

pub mod atlas_model;
pub mod focal;
pub mod idealgen;
pub mod linalg;
pub mod polyring;
pub mod specialize;
pub mod verify;
