//! Exact density polynomials of Hermitian torsion modules, the universal
//! submodule-counting polynomials behind them, and the analytic side of the
//! corank-one Eisenstein identities, each checked against an independent
//! brute-force or alternative-route oracle.

pub mod analytic;
pub mod density;
pub mod error;
pub mod exactpoly;
pub mod finitemod;
pub mod partitions;
pub mod springer;
pub mod subcount;
pub mod verify;

pub use error::{Error, Result};
pub use exactpoly::{IntPoly1, IntPoly2, SubstRule};
pub use partitions::Partition;
