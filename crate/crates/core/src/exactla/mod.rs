//! Exact rational arithmetic, linear algebra and linear programming.

mod lp;
mod matrix;
mod rational;

pub use lp::{
    lp_feasible, lp_maximize, satisfies, solve_standard, Feasibility, InfeasibilityCertificate,
    LpError, MaxOutcome, Optimum, StandardOutcome,
};
pub use matrix::{IntegerEchelon, Matrix};
pub use rational::{dot, ParseRationalError, Rational};
