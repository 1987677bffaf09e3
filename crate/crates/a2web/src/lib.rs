//! Exact A2 (sl3) skein computations: webs, clasps, twist expansions,
//! colored Jones polynomials of (2,2m)-torus links and their tails.

pub mod invariants;
pub mod qcomb;
pub mod qlaurent;
pub mod tails;
pub mod twist;
pub mod verify;
pub mod webcore;

pub use qlaurent::{qpow, QLaurent, QRational};
