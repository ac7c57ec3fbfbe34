pub mod complex;
pub mod error;
pub mod lattice;
pub mod homology;
pub mod morse;
pub mod bounds;
pub mod theorems;
pub mod verify;
pub mod render;
pub mod cli;
