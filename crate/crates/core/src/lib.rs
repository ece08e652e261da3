//! Construction and certification of finite simple right Bol loops of exponent 2.

pub mod baseg;
pub mod bigg;
pub mod cli;
pub mod error;
pub mod f2;
pub mod loopcore;
pub mod perm;
pub mod rng;
pub mod s5mod;
pub mod word;

pub use error::{Error, Result};
