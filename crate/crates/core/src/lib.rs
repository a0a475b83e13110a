//! Exact decategorified categorical sl_2 / simply-laced quantum group actions:
//! Cartan data, quantum integers, integrable modules, braid operators,
//! quiver-variety numerics and a localized K-theory model of `T*G(k,N)`.

pub mod braid;
pub mod cartan;
pub mod cli;
pub mod error;
pub mod field;
pub mod ktheory;

pub mod matrix;
pub mod operator;

pub mod qlaurent;
pub mod quiver;
pub mod relations;
pub mod rep;
pub mod report;

pub mod udot;

pub use cartan::{CartanData, GraphData, Weight};
pub use error::{Error, Result};
pub use qlaurent::{QFraction, QLaurent};
pub use rep::IntegrableModule;
