//! State monomials and polynomials: products of state symbols `s(w)` times
//! an outer word, with complex coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::word::{canonicalize_word, CanonicalWord, Context, Sign, Word};
use super::{AlgebraError, AlgebraSpec};

/// A product `s(w_1) ... s(w_k) * w` of state symbols and an outer word.
/// Stored canonically: every `w_i` is a nonempty canonical word under the
/// state symbol, the multiset is sorted, and `w` is plain-canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateMonomial {
    sigma: Vec<Word>,
    outer: Word,
}

impl StateMonomial {
    pub fn unit() -> Self {
        StateMonomial { sigma: Vec::new(), outer: Word::unit() }
    }

    /// Builds the canonical representative of `s(w_1)...s(w_k) * outer`,
    /// tracking the rewriting sign. `Zero` if any factor is forced to zero.
    pub fn canonical(
        spec: &AlgebraSpec,
        sigma_words: Vec<Word>,
        outer: Word,
    ) -> Result<CanonicalMonomial, AlgebraError> {
        let mut sign = Sign::Plus;
        let mut sigma = Vec::with_capacity(sigma_words.len());
        for w in sigma_words {
            match canonicalize_word(spec, &w, Context::UnderSigma)? {
                CanonicalWord::Zero => return Ok(CanonicalMonomial::Zero),
                CanonicalWord::Signed(sw) => {
                    if sw.word.is_empty() {
                        // s(1) = 1 contributes only its sign
                        sign = sign.combine(sw.sign);
                    } else {
                        sign = sign.combine(sw.sign);
                        sigma.push(sw.word);
                    }
                }
            }
        }
        let outer = match canonicalize_word(spec, &outer, Context::Plain)? {
            CanonicalWord::Zero => return Ok(CanonicalMonomial::Zero),
            CanonicalWord::Signed(sw) => {
                sign = sign.combine(sw.sign);
                sw.word
            }
        };
        sigma.sort();
        Ok(CanonicalMonomial::Signed(sign, StateMonomial { sigma, outer }))
    }

    /// Total degree: sum of state-symbol word lengths plus the outer length.
    pub fn degree(&self) -> usize {
        self.sigma.iter().map(Word::len).sum::<usize>() + self.outer.len()
    }

    pub fn sigma_words(&self) -> &[Word] {
        &self.sigma
    }

    pub fn outer_word(&self) -> &Word {
        &self.outer
    }

    pub fn is_scalar(&self) -> bool {
        self.outer.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.sigma.is_empty() && self.outer.is_empty()
    }

    /// Formal adjoint: reverse the outer word and each state-symbol word.
    pub fn adjoint(&self, spec: &AlgebraSpec) -> Result<CanonicalMonomial, AlgebraError> {
        StateMonomial::canonical(
            spec,
            self.sigma.iter().map(Word::reversed).collect(),
            self.outer.reversed(),
        )
    }

    /// Product of two monomials: state parts merge as multisets, outer words
    /// concatenate and re-canonicalize.
    pub fn multiply(
        &self,
        spec: &AlgebraSpec,
        other: &StateMonomial,
    ) -> Result<CanonicalMonomial, AlgebraError> {
        let mut sigma = self.sigma.clone();
        sigma.extend(other.sigma.iter().cloned());
        StateMonomial::canonical(spec, sigma, self.outer.concat(&other.outer))
    }
}

impl Ord for StateMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.sigma.cmp(&other.sigma))
            .then_with(|| self.outer.cmp(&other.outer))
    }
}

impl PartialOrd for StateMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CanonicalMonomial {
    Zero,
    Signed(Sign, StateMonomial),
}

/// Finite complex-linear combination of canonical state monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct StatePolynomial {
    terms: BTreeMap<StateMonomial, Complex64>,
}

impl StatePolynomial {
    pub fn zero() -> Self {
        StatePolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        StatePolynomial::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if c != Complex64::new(0.0, 0.0) {
            terms.insert(StateMonomial::unit(), c);
        }
        StatePolynomial { terms }
    }

    /// The single outer variable `x_i`.
    pub fn variable(spec: &AlgebraSpec, index: usize) -> Result<Self, AlgebraError> {
        if index >= spec.n_vars() {
            return Err(AlgebraError::VarOutOfRange { index, n_vars: spec.n_vars() });
        }
        let mono = StateMonomial::canonical(spec, vec![], Word::new(vec![index as u16]))?;
        Ok(StatePolynomial::from_canonical(mono, Complex64::new(1.0, 0.0)))
    }

    /// The scalar `s(w)`.
    pub fn sigma_word(spec: &AlgebraSpec, w: Word) -> Result<Self, AlgebraError> {
        let mono = StateMonomial::canonical(spec, vec![w], Word::unit())?;
        Ok(StatePolynomial::from_canonical(mono, Complex64::new(1.0, 0.0)))
    }

    /// The outer word `w` (no state symbol).
    pub fn outer_word(spec: &AlgebraSpec, w: Word) -> Result<Self, AlgebraError> {
        let mono = StateMonomial::canonical(spec, vec![], w)?;
        Ok(StatePolynomial::from_canonical(mono, Complex64::new(1.0, 0.0)))
    }

    fn from_canonical(mono: CanonicalMonomial, coeff: Complex64) -> Self {
        let mut p = StatePolynomial::zero();
        p.add_canonical(mono, coeff);
        p
    }

    pub fn add_canonical(&mut self, mono: CanonicalMonomial, coeff: Complex64) {
        use std::collections::btree_map::Entry;
        match mono {
            CanonicalMonomial::Zero => {}
            CanonicalMonomial::Signed(sign, m) => {
                let c = coeff * sign.as_f64();
                if c == Complex64::new(0.0, 0.0) {
                    return;
                }
                match self.terms.entry(m) {
                    Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                        if *e.get() == Complex64::new(0.0, 0.0) {
                            e.remove();
                        }
                    }
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&StateMonomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &StateMonomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(StateMonomial::degree).max().unwrap_or(0)
    }

    /// True when every monomial has an empty outer word.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(StateMonomial::is_scalar)
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeff(&StateMonomial::unit())
    }

    pub fn add(&self, other: &StatePolynomial) -> StatePolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_canonical(CanonicalMonomial::Signed(Sign::Plus, m.clone()), *c);
        }
        out
    }

    pub fn sub(&self, other: &StatePolynomial) -> StatePolynomial {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> StatePolynomial {
        if c == Complex64::new(0.0, 0.0) {
            return StatePolynomial::zero();
        }
        StatePolynomial { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Coefficient-conjugating involution with hermitian generators.
    pub fn adjoint(&self, spec: &AlgebraSpec) -> Result<StatePolynomial, AlgebraError> {
        let mut out = StatePolynomial::zero();
        for (m, c) in &self.terms {
            out.add_canonical(m.adjoint(spec)?, c.conj());
        }
        Ok(out)
    }

    pub fn is_self_adjoint(&self, spec: &AlgebraSpec, tol: f64) -> Result<bool, AlgebraError> {
        let diff = self.sub(&self.adjoint(spec)?);
        Ok(diff.terms.values().all(|c| c.norm() <= tol))
    }

    /// Distributive product; state parts multiply commutatively, outer words
    /// concatenate with sign absorption.
    pub fn multiply(
        &self,
        spec: &AlgebraSpec,
        other: &StatePolynomial,
    ) -> Result<StatePolynomial, AlgebraError> {
        let mut out = StatePolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_canonical(m1.multiply(spec, m2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    /// The unital `𝒮`-linear map wrapping each outer word in a state symbol.
    pub fn varsigma_map(&self, spec: &AlgebraSpec) -> Result<StatePolynomial, AlgebraError> {
        let mut out = StatePolynomial::zero();
        for (m, c) in &self.terms {
            let mut sigma = m.sigma.clone();
            if !m.outer.is_empty() {
                sigma.push(m.outer.clone());
            }
            out.add_canonical(StateMonomial::canonical(spec, sigma, Word::unit())?, *c);
        }
        Ok(out)
    }
}

impl fmt::Display for StateMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for w in &self.sigma {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "s(")?;
            for (k, &l) in w.letters().iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "v{l}")?;
            }
            write!(f, ")")?;
        }
        for &l in self.outer.letters() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "v{l}")?;
        }
        Ok(())
    }
}

/// Renders a monomial with the spec's variable names, in the grammar the
/// parser accepts.
pub(crate) fn format_monomial(spec: &AlgebraSpec, m: &StateMonomial) -> String {
    if m.is_unit() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for w in m.sigma_words() {
        let inner: Vec<&str> =
            w.letters().iter().map(|&l| spec.var_names()[l as usize].as_str()).collect();
        parts.push(format!("s({})", inner.join(" ")));
    }
    for &l in m.outer_word().letters() {
        parts.push(spec.var_names()[l as usize].clone());
    }
    parts.join("*")
}

/// Renders a polynomial in parser-compatible form: complex coefficients are
/// split into a real and an `i`-carrying term.
pub fn format_polynomial(spec: &AlgebraSpec, p: &StatePolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    let mut push_term = |coeff: f64, imag: bool, mono: &StateMonomial, out: &mut String| {
        if coeff == 0.0 {
            return;
        }
        let mag = coeff.abs();
        if first {
            if coeff < 0.0 {
                out.push('-');
            }
            first = false;
        } else if coeff < 0.0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mono_str = format_monomial(spec, mono);
        let need_mag = (mag - 1.0).abs() > 0.0 || (mono.is_unit() && !imag);
        if need_mag {
            out.push_str(&format!("{mag}"));
        }
        if imag {
            if need_mag {
                out.push('*');
            }
            out.push('i');
        }
        if !mono.is_unit() {
            if need_mag || imag {
                out.push('*');
            }
            out.push_str(&mono_str);
        }
    };
    for (m, c) in p.terms() {
        push_term(c.re, false, m, &mut out);
        push_term(c.im, true, m, &mut out);
    }
    out
}
