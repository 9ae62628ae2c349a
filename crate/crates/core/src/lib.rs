//! Poincaré-extended ab-indices of R-labeled graded posets and central
//! hyperplane arrangements, with exact arithmetic throughout.

pub mod arrangement;
pub mod checks;
pub mod cli;
pub mod extab;
pub mod families;
pub mod io;
pub mod ncpoly;
pub mod oracle;
pub mod poset;
pub mod rankset;
pub mod rlabel;
pub mod ypoly;
