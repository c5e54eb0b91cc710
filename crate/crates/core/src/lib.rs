//! A ring of order 16 built from 3×3 matrices over GF(2), the cyclic
//! submodules of its rank-2 free modules, and the generalized quadrangle
//! of order two that organises the nine nonunimodular free ones.

pub mod correspondence;
pub mod error;
pub mod export;
pub mod free_module;
pub mod incidence;
pub mod orbit_table;
pub mod report;
pub mod ring;
pub mod structure;

pub use error::{Error, Result};
