pub mod exactla;
pub mod polytope;
pub mod factor;
pub mod families;
pub mod multiaffine;
pub mod random;
pub mod suites;
pub mod cli;
