//! Inputs shared by the benchmarks.

use orthokit_core::lattice::stock;
use orthokit_core::{FiniteOrthoLattice, QuasiEquation};

pub fn lattice(name: &str) -> FiniteOrthoLattice {
    stock(name).expect("stock lattice")
}

/// Three-variable quasi-equation that holds in F2, so every valuation is scanned.
pub fn transitivity() -> QuasiEquation {
    QuasiEquation::parse("a ==3 b , b ==3 c => a ==3 c").expect("literal")
}
