//! Finite lattices, binuclear intervals, semidistributivity checks and
//! torsion-class lattices of type-A path algebras.

pub mod binuclear;
pub mod generate;
pub mod lattice;
pub mod linalg;
pub mod semidistrib;
pub mod suite;
pub mod torsion;

pub use binuclear::{BinucError, BinucPoset, NiBound};
pub use lattice::{ElementId, FinLattice, Interval, LatticeError, LatticeJson, Poset};
