//! Invertible cellular automata over finite groups: subgroup lattices,
//! configuration-space orbits, unit-group structure, rank bounds and an
//! exact rank search.

pub mod asymptotics;
pub mod bigcount;
pub mod bounds;
pub mod bruteforce;
pub mod context;
pub mod divisors;
pub mod error;
pub mod grammar;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod limits;
pub mod orbits;
pub mod rank;
pub mod structure;
pub mod subgroup;
pub mod verify;

pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use limits::Limits;
