//! Terms, finite ortholattices and checkers for orthomodular and weakly
//! orthomodular lattices and the quantum logics they model.
//!
//! ```
//! use orthokit_core::{lattice::stock, laws, check::check_quasi};
//!
//! let o6 = stock("O6").unwrap();
//! let report = check_quasi(&o6, &laws::om().statement).unwrap();
//! assert_eq!(report.machine_line(), "VERDICT fails LATTICE O6 WITNESS a=x b=y");
//! ```

pub mod beran;
pub mod check;
pub mod error;
pub mod lattice;
pub mod laws;
pub mod logic;
pub mod search;
mod syntax;
pub mod term;

pub use check::{CheckReport, Checker, Valuation, Verdict};
pub use error::Error;
pub use lattice::{Elem, FiniteOrthoLattice};
pub use syntax::{ConnIndex, Connective};
pub use term::{Equation, QuasiEquation, Term};
