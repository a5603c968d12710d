pub mod scalar;
pub mod linalg;
pub mod graded;
pub mod superalgebra;
pub mod group;
pub mod cochain;
pub mod nr;
pub mod deformation;
pub mod extension;
pub mod random;
pub mod cli;
