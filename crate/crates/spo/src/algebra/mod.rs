//! Symbolic algebra of noncommutative words with a formal state symbol.
//!
//! Variables are hermitian generators subject to per-variable square rules
//! (free, idempotent `x² = x`, involutory `x² = 1`) and per-pair relations
//! (free, commuting, anticommuting). The evaluation regime selects which
//! states are quantified over: arbitrary states, tracial states (cyclic
//! state symbol), or commuting-variable moments.

mod model;
mod parse;
mod poly;
mod word;

pub use model::{EvalValue, Evaluation, StateModel, StateRepr};
pub use parse::parse_polynomial;
pub use poly::{CanonicalMonomial, StateMonomial, StatePolynomial};
pub use word::{canonicalize_word, CanonicalWord, Context, Sign, SignedWord, Word};

use thiserror::Error;

/// Reduction rule for the square of a variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SquareRule {
    /// No relation; powers stay.
    Free,
    /// Projection: `x² = x`.
    Idempotent,
    /// Self-inverse observable: `x² = 1`.
    Involutory,
}

/// Relation between an unordered pair of distinct variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum PairRelation {
    Free,
    Commute,
    Anticommute,
}

/// Which states the formal symbol ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Regime {
    /// Arbitrary states on arbitrary operators.
    State,
    /// Tracial states: `s(uv) = s(vu)`.
    Trace,
    /// Commuting variables; state values are mixed moments of a probability
    /// measure. Forces every pair relation to `Commute`.
    Moment,
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("variable index {index} out of range (n_vars = {n_vars})")]
    VarOutOfRange { index: usize, n_vars: usize },
    #[error("moment regime requires all pairs to commute (pair {a}, {b} is {rel:?})")]
    MomentNeedsCommute { a: usize, b: usize, rel: PairRelation },
    #[error("need at least one variable")]
    NoVariables,
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("canonicalization class exceeded {0} states; relations too unstructured")]
    ClassTooLarge(usize),
    #[error("dimension mismatch: model dimension {model} vs required {required}")]
    DimensionMismatch { model: usize, required: usize },
    #[error("model violates structural invariant: {0}")]
    BadModel(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown variable `{name}` at {line}:{col}")]
    UnknownVariable { name: String, line: usize, col: usize },
}

/// Structural description of the variable algebra and evaluation regime.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AlgebraSpec {
    var_names: Vec<String>,
    square_rules: Vec<SquareRule>,
    /// Upper-triangle packed pair relations, `(i, j)` with `i < j` at
    /// `j*(j-1)/2 + i`.
    pairs: Vec<PairRelation>,
    regime: Regime,
    real_symmetrize: bool,
}

impl AlgebraSpec {
    pub fn new(
        var_names: Vec<String>,
        square_rules: Vec<SquareRule>,
        pair_relations: Vec<((usize, usize), PairRelation)>,
        regime: Regime,
        real_symmetrize: bool,
    ) -> Result<Self, AlgebraError> {
        let n = var_names.len();
        if n == 0 {
            return Err(AlgebraError::NoVariables);
        }
        assert_eq!(square_rules.len(), n, "one square rule per variable");
        for (i, name) in var_names.iter().enumerate() {
            if var_names[..i].contains(name) {
                return Err(AlgebraError::DuplicateName(name.clone()));
            }
        }
        let default = match regime {
            Regime::Moment => PairRelation::Commute,
            _ => PairRelation::Free,
        };
        let mut pairs = vec![default; n * (n - 1) / 2];
        for ((a, b), rel) in pair_relations {
            if a >= n {
                return Err(AlgebraError::VarOutOfRange { index: a, n_vars: n });
            }
            if b >= n {
                return Err(AlgebraError::VarOutOfRange { index: b, n_vars: n });
            }
            assert_ne!(a, b, "pair relation needs two distinct variables");
            if regime == Regime::Moment && rel != PairRelation::Commute {
                return Err(AlgebraError::MomentNeedsCommute { a, b, rel });
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            pairs[j * (j - 1) / 2 + i] = rel;
        }
        Ok(AlgebraSpec {
            var_names,
            square_rules,
            pairs,
            regime,
            real_symmetrize,
        })
    }

    /// All variables free with the given regime; convenience for tests.
    pub fn free(n: usize, regime: Regime, real_symmetrize: bool) -> Self {
        let names = (0..n).map(|i| format!("x{i}")).collect();
        AlgebraSpec::new(names, vec![SquareRule::Free; n], vec![], regime, real_symmetrize)
            .expect("free spec is always valid")
    }

    pub fn n_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn square_rule(&self, v: usize) -> SquareRule {
        self.square_rules[v]
    }

    pub fn pair_relation(&self, a: usize, b: usize) -> PairRelation {
        if a == b {
            return PairRelation::Commute;
        }
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.pairs[j * (j - 1) / 2 + i]
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn real_symmetrize(&self) -> bool {
        self.real_symmetrize
    }

    pub fn with_real_symmetrize(mut self, on: bool) -> Self {
        self.real_symmetrize = on;
        self
    }
}
