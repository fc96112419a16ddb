//! Exact arithmetic engine for elliptic surfaces attached to a plane quartic
//! with a distinguished point, their Mordell–Weil lattices, contact conics
//! built from bisections, and the splitting invariants of conic arrangements.

pub mod algebra;
pub mod catalog;
pub mod conic;
pub mod error;
pub mod mw;
pub mod quartic;
pub mod zariski;

pub use error::{Error, Result};
