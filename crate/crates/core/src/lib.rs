#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod analysis;
pub mod bimodule;
pub mod catalog;
pub mod cli;
pub mod comodule;
pub mod coring;
pub mod error;
pub mod instance;
pub mod linalg;
pub mod nat_trans;
pub mod tensor;
pub mod verdict;
