use thiserror::Error;

/// Syntax error in a term, formula, equation or quasi-equation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(pos: usize, kind: ParseErrorKind) -> Self {
        ParseError { pos, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unknown connective index `{0}` (expected 0..5)")]
    UnknownIndex(char),
    #[error("missing connective index after operator")]
    MissingIndex,
    #[error("`{0}` is not a constant (only 0 and 1 are)")]
    BadConstant(String),
    #[error("constants are not allowed in formulas")]
    ConstantInFormula,
    #[error("unexpected {0}")]
    Unexpected(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("parenthesis opened at offset {0} is never closed")]
    UnclosedParen(usize),
    #[error("several equations without `=>`")]
    MissingImplies,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("not a lattice: `{a}` and `{b}` have no {kind}")]
    NotALattice {
        a: String,
        b: String,
        kind: &'static str,
    },
    #[error("ortho invalid: {reason}")]
    OrthoInvalid { reason: String },
    #[error("order is not antisymmetric: `{a}` and `{b}` lie on a cycle")]
    Cycle { a: String, b: String },
    #[error("`{0}` must be the {1} of the order")]
    Bounds(String, &'static str),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("a lattice needs at least the two elements 0 and 1")]
    TooSmall,
    #[error("{0} elements exceed the supported maximum of {max}", max = crate::lattice::MAX_ELEMENTS)]
    TooLarge(usize),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("unknown stock lattice `{0}`")]
    UnknownStock(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("valuation budget exceeded: {required} valuations required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("valuation does not assign variable `{0}`")]
    Unassigned(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BeranError {
    #[error("two-variable canonical forms only; term uses {0:?}")]
    TooManyVariables(Vec<String>),
    #[error("no generating pair found in the 96-element lattice")]
    NoGeneratingPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("element bound {0} outside the supported range 2..=12")]
    BoundExceeded(usize),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Error in the text of a derivation script (as opposed to a rejected step).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("script line {line}: {msg}")]
pub struct ScriptError {
    pub line: usize,
    pub msg: String,
}

/// Umbrella error for front ends.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Beran(#[from] BeranError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Script(#[from] ScriptError),
}
