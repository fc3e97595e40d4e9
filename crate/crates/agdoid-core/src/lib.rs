#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod agd;
pub mod brst;
pub mod error;
pub mod matrixoper;
pub mod poisson_fd;
pub mod psido;
pub mod symjet;
pub mod wphase;

pub use error::{Error, Result};
