//! Construction and exact verification of higher-order MDS codes.

pub mod fields;
pub mod linalg;
pub mod multipoly;
pub mod codes;
pub mod mdscheck;
pub mod constructions;
pub mod applications;
