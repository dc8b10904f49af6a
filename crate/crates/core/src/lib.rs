//! Exact enumeration and generating-function tools for lattice walks confined
//! to the quarter plane.

pub mod asymptotics;
pub mod closedforms;
pub mod enumerator;
pub mod error;
pub mod kernel;
pub mod numerics;
pub mod series;
pub mod stepsets;
pub mod verify;

pub use error::{Error, Result};
