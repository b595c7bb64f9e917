//! Inputs shared by the benchmarks.

use binuc_core::torsion::{enumerate_tors, gen_linear_an, AlgebraSpec, TorsData};

pub fn linear(n: usize) -> AlgebraSpec {
    gen_linear_an(n).expect("valid rank")
}

pub fn tors(n: usize) -> TorsData {
    enumerate_tors(&linear(n)).expect("within enumeration limit")
}
