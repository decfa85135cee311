//! Exact symbolic workbench for braided matrices, braided tensor squares and
//! braided spin chains built from an R-matrix.

pub mod bialg;
pub mod cli;
pub mod field;
pub mod matrix;
pub mod ncalg;
pub mod presents;
pub mod qscalar;
pub mod rmat;
