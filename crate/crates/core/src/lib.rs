//! Exact enumeration of locally optimal 2-periodic sphere packings.

pub mod artifacts;
pub mod catalog;
pub mod checkpoint;
pub mod enumerator;
pub mod equivalence;
pub mod extremeness;
pub mod exact;
pub mod formfile;
pub mod forms;
pub mod oracle;
pub mod polyhedron;
pub mod shortvec;
