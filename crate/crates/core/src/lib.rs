//! Degree-`d` powers of the ideal of a regular sequence with the exponent
//! of each element capped by a vector `w`. Builds their minimal free
//! resolutions, transfers a DG-algebra structure onto them, computes Koszul
//! homology and the Golod resolution of the residue field, and checks all of
//! it with an exact strand-homology oracle.

pub mod corealg;

pub use corealg::{Error, Result};
pub mod combinat;
pub mod complexes;
pub mod report;
pub mod oracle;
pub mod transfer;
pub mod dga;
pub mod golod;
pub mod cli;
