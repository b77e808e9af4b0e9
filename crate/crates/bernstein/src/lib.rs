//! Best polynomial approximation errors E_n(f, L_p) for the family
//! |x|^alpha * exp(i beta log|x|), the closed-form limit constants they
//! converge to after n^(alpha + 1/p) scaling, and the experiment harness
//! verifying the limit relations and decay bounds at desk scale.

pub mod asymptotics;
pub mod best_approx;
pub mod constants;
pub mod error;
pub mod exec;
pub mod functions;
pub mod numerics;
pub mod polybase;
pub mod target;

pub use error::{Error, Result};
