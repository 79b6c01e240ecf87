//! Explicit finite-dimensional models: hermitian matrices plus a state
//! (vector or density), and the evaluation of state polynomials on them.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::poly::StatePolynomial;
use super::word::Word;
use super::{AlgebraError, AlgebraSpec, PairRelation, Regime, SquareRule};

const HERMITIAN_TOL: f64 = 1e-12;
/// Relative tolerance for structural relation checks (warn-level).
const RELATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub enum StateRepr {
    /// Unit vector; the state is `M ↦ ⟨M u, u⟩`.
    Vector(DVector<Complex64>),
    /// Density matrix; the state is `M ↦ tr(ρ M)`.
    Density(DMatrix<Complex64>),
}

/// Dimension, one hermitian matrix per variable, and a state.
#[derive(Debug, Clone)]
pub struct StateModel {
    dim: usize,
    matrices: Vec<DMatrix<Complex64>>,
    state: StateRepr,
}

impl StateModel {
    pub fn new(
        matrices: Vec<DMatrix<Complex64>>,
        state: StateRepr,
    ) -> Result<Self, AlgebraError> {
        let dim = match &state {
            StateRepr::Vector(u) => u.len(),
            StateRepr::Density(r) => r.nrows(),
        };
        if dim == 0 {
            return Err(AlgebraError::BadModel("zero-dimensional state".into()));
        }
        for (k, m) in matrices.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(AlgebraError::DimensionMismatch { model: m.nrows(), required: dim });
            }
            let scale = 1.0 + m.norm();
            if (m - m.adjoint()).norm() > HERMITIAN_TOL * scale {
                return Err(AlgebraError::BadModel(format!("matrix {k} is not hermitian")));
            }
        }
        match &state {
            StateRepr::Vector(u) => {
                if (u.norm() - 1.0).abs() > HERMITIAN_TOL * (1.0 + u.norm()) {
                    return Err(AlgebraError::BadModel("state vector is not unit".into()));
                }
            }
            StateRepr::Density(r) => {
                if r.ncols() != dim {
                    return Err(AlgebraError::DimensionMismatch { model: r.ncols(), required: dim });
                }
                let tr: Complex64 = r.diagonal().iter().sum();
                if (tr - Complex64::new(1.0, 0.0)).norm() > HERMITIAN_TOL * (1.0 + r.norm()) {
                    return Err(AlgebraError::BadModel("density matrix trace is not 1".into()));
                }
                if (r - r.adjoint()).norm() > HERMITIAN_TOL * (1.0 + r.norm()) {
                    return Err(AlgebraError::BadModel("density matrix is not hermitian".into()));
                }
            }
        }
        Ok(StateModel { dim, matrices, state })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[DMatrix<Complex64>] {
        &self.matrices
    }

    pub fn state(&self) -> &StateRepr {
        &self.state
    }

    /// Matrix of a word under the model (empty word = identity).
    pub fn word_matrix(&self, w: &Word) -> DMatrix<Complex64> {
        let mut m = DMatrix::identity(self.dim, self.dim);
        for &l in w.letters() {
            m = &m * &self.matrices[l as usize];
        }
        m
    }

    /// Applies the state to a matrix.
    pub fn apply_state(&self, m: &DMatrix<Complex64>) -> Complex64 {
        match &self.state {
            StateRepr::Vector(u) => (u.adjoint() * m * u)[(0, 0)],
            StateRepr::Density(r) => (r * m).diagonal().iter().sum(),
        }
    }

    /// Checks the model against the spec's structural relations; collects
    /// human-readable violations (warn-level per contract).
    pub fn relation_violations(&self, spec: &AlgebraSpec) -> Vec<String> {
        let mut out = Vec::new();
        let n = spec.n_vars().min(self.matrices.len());
        for i in 0..n {
            let x = &self.matrices[i];
            let scale = 1.0 + x.norm() * (1.0 + x.norm());
            match spec.square_rule(i) {
                SquareRule::Idempotent => {
                    if (x * x - x).norm() > RELATION_TOL * scale {
                        out.push(format!("x{i}^2 != x{i}"));
                    }
                }
                SquareRule::Involutory => {
                    let id = DMatrix::<Complex64>::identity(self.dim, self.dim);
                    if (x * x - id).norm() > RELATION_TOL * scale {
                        out.push(format!("x{i}^2 != 1"));
                    }
                }
                SquareRule::Free => {}
            }
            for j in (i + 1)..n {
                let y = &self.matrices[j];
                let scale2 = 1.0 + x.norm() * y.norm();
                let rel = match spec.regime() {
                    Regime::Moment => PairRelation::Commute,
                    _ => spec.pair_relation(i, j),
                };
                match rel {
                    PairRelation::Commute => {
                        if (x * y - y * x).norm() > RELATION_TOL * scale2 {
                            out.push(format!("x{i} and x{j} do not commute"));
                        }
                    }
                    PairRelation::Anticommute => {
                        if (x * y + y * x).norm() > RELATION_TOL * scale2 {
                            out.push(format!("x{i} and x{j} do not anticommute"));
                        }
                    }
                    PairRelation::Free => {}
                }
            }
        }
        if spec.regime() == Regime::Trace {
            if let StateRepr::Vector(_) = self.state {
                // A vector state is tracial only in trivial cases; flag it.
                if self.dim > 1 {
                    out.push("vector state used in trace regime".into());
                }
            }
            if let StateRepr::Density(r) = &self.state {
                let uniform = DMatrix::<Complex64>::identity(self.dim, self.dim)
                    .map(|v| v / Complex64::new(self.dim as f64, 0.0));
                if (r - uniform).norm() > RELATION_TOL * (1.0 + r.norm()) {
                    out.push("density is not the normalized trace".into());
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub enum EvalValue {
    Scalar(Complex64),
    Matrix(DMatrix<Complex64>),
}

impl EvalValue {
    pub fn scalar(&self) -> Option<Complex64> {
        match self {
            EvalValue::Scalar(c) => Some(*c),
            EvalValue::Matrix(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub value: EvalValue,
    /// Set when the model violates the spec's structural relations beyond
    /// tolerance; the value is still computed.
    pub relation_warnings: Vec<String>,
}

/// State evaluation of `p` at the model: state symbols become state values,
/// outer words become matrix products. Scalar polynomials yield scalars.
pub fn evaluate(
    spec: &AlgebraSpec,
    p: &StatePolynomial,
    model: &StateModel,
) -> Result<Evaluation, AlgebraError> {
    if model.matrices.len() < spec.n_vars() {
        return Err(AlgebraError::DimensionMismatch {
            model: model.matrices.len(),
            required: spec.n_vars(),
        });
    }
    let warnings = model.relation_violations(spec);
    let scalar_only = p.is_scalar();
    let dim = model.dim();
    let mut mat_acc: DMatrix<Complex64> = DMatrix::zeros(dim, dim);
    let mut scal_acc = Complex64::new(0.0, 0.0);
    for (m, c) in p.terms() {
        let mut coeff = *c;
        for w in m.sigma_words() {
            coeff *= model.apply_state(&model.word_matrix(w));
        }
        if scalar_only {
            scal_acc += coeff;
        } else {
            let outer = model.word_matrix(m.outer_word());
            mat_acc += outer.map(|v| v * coeff);
        }
    }
    let value = if scalar_only {
        EvalValue::Scalar(scal_acc)
    } else {
        EvalValue::Matrix(mat_acc)
    };
    Ok(Evaluation { value, relation_warnings: warnings })
}
