//! Parser for the polynomial grammar: terms separated by `+`/`-`, factors
//! separated by `*` or whitespace, `s( ... )` wrapping a state-symbol word,
//! decimal or rational `p/q` literals, `i` for the imaginary unit.

use num_complex::Complex64;

use super::poly::StatePolynomial;
use super::word::Word;
use super::{AlgebraError, AlgebraSpec};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Number(f64),
    Ident(String),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { line, col, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<Spanned>, AlgebraError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut line = 1usize;
    let mut col = 1usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let (tline, tcol) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => advance(1, &mut i, &mut col),
            '+' => {
                out.push(Spanned { tok: Tok::Plus, line: tline, col: tcol });
                advance(1, &mut i, &mut col)
            }
            '-' | '−' => {
                out.push(Spanned { tok: Tok::Minus, line: tline, col: tcol });
                advance(if c == '-' { 1 } else { '−'.len_utf8() }, &mut i, &mut col)
            }
            '*' => {
                out.push(Spanned { tok: Tok::Star, line: tline, col: tcol });
                advance(1, &mut i, &mut col)
            }
            '/' => {
                out.push(Spanned { tok: Tok::Slash, line: tline, col: tcol });
                advance(1, &mut i, &mut col)
            }
            '(' => {
                out.push(Spanned { tok: Tok::LParen, line: tline, col: tcol });
                advance(1, &mut i, &mut col)
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, line: tline, col: tcol });
                advance(1, &mut i, &mut col)
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let s = &text[start..i];
                let v: f64 = s
                    .parse()
                    .map_err(|_| err(tline, tcol, format!("bad numeric literal `{s}`")))?;
                col += i - start;
                out.push(Spanned { tok: Tok::Number(v), line: tline, col: tcol });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                col += i - start;
                out.push(Spanned {
                    tok: Tok::Ident(text[start..i].to_string()),
                    line: tline,
                    col: tcol,
                });
            }
            other => return Err(err(tline, tcol, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    spec: &'a AlgebraSpec,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_pos(&self) -> (usize, usize) {
        self.toks.last().map(|t| (t.line, t.col + 1)).unwrap_or((1, 1))
    }

    fn var(&self, name: &str, line: usize, col: usize) -> Result<u16, AlgebraError> {
        self.spec
            .var_index(name)
            .map(|v| v as u16)
            .ok_or(AlgebraError::UnknownVariable { name: name.to_string(), line, col })
    }

    /// factor := number [ '/' number ] | 'i' | 's' '(' word ')' | ident
    fn factor(&mut self) -> Result<StatePolynomial, AlgebraError> {
        let (eline, ecol) = self.end_pos();
        let t = self.next().ok_or(err(eline, ecol, "expected a factor"))?;
        match t.tok {
            Tok::Number(v) => {
                if matches!(self.peek().map(|s| &s.tok), Some(Tok::Slash)) {
                    self.next();
                    let (l2, c2) = self.end_pos();
                    let d = self.next().ok_or(err(l2, c2, "expected denominator"))?;
                    match d.tok {
                        Tok::Number(q) if q != 0.0 => {
                            Ok(StatePolynomial::constant(Complex64::new(v / q, 0.0)))
                        }
                        Tok::Number(_) => Err(err(d.line, d.col, "zero denominator")),
                        _ => Err(err(d.line, d.col, "expected denominator")),
                    }
                } else {
                    Ok(StatePolynomial::constant(Complex64::new(v, 0.0)))
                }
            }
            Tok::Ident(name) if name == "i" => {
                Ok(StatePolynomial::constant(Complex64::new(0.0, 1.0)))
            }
            Tok::Ident(name) if name == "s"
                && matches!(self.peek().map(|s| &s.tok), Some(Tok::LParen)) =>
            {
                self.next(); // (
                let mut letters = Vec::new();
                loop {
                    let (l2, c2) = self.end_pos();
                    let t2 = self.next().ok_or(err(l2, c2, "unterminated s( ... )"))?;
                    match t2.tok {
                        Tok::RParen => break,
                        Tok::Star => continue,
                        Tok::Ident(w) => letters.push(self.var(&w, t2.line, t2.col)?),
                        _ => return Err(err(t2.line, t2.col, "expected variable name in s( ... )")),
                    }
                }
                if letters.is_empty() {
                    return Err(err(t.line, t.col, "empty state symbol s()"));
                }
                StatePolynomial::sigma_word(self.spec, Word::new(letters))
            }
            Tok::Ident(name) => {
                let v = self.var(&name, t.line, t.col)?;
                StatePolynomial::variable(self.spec, v as usize)
            }
            _ => Err(err(t.line, t.col, "expected a factor")),
        }
    }

    fn starts_factor(tok: &Tok) -> bool {
        matches!(tok, Tok::Number(_) | Tok::Ident(_))
    }

    /// term := factor (('*' | juxtaposition) factor)*
    fn term(&mut self) -> Result<StatePolynomial, AlgebraError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().map(|s| s.tok.clone()) {
                Some(Tok::Star) => {
                    self.next();
                    let f = self.factor()?;
                    acc = acc.multiply(self.spec, &f)?;
                }
                Some(tok) if Self::starts_factor(&tok) => {
                    let f = self.factor()?;
                    acc = acc.multiply(self.spec, &f)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<StatePolynomial, AlgebraError> {
        let mut negate = false;
        while let Some(s) = self.peek() {
            match s.tok {
                Tok::Plus => {
                    self.next();
                }
                Tok::Minus => {
                    negate = !negate;
                    self.next();
                }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.scale(Complex64::new(-1.0, 0.0));
        }
        while let Some(s) = self.peek() {
            let neg = match s.tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => {
                    let s = s.clone();
                    return Err(err(s.line, s.col, "expected `+` or `-` between terms"));
                }
            };
            self.next();
            let mut t = self.term()?;
            if neg {
                t = t.scale(Complex64::new(-1.0, 0.0));
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

/// Parses the polynomial grammar over the spec's variable names.
pub fn parse_polynomial(text: &str, spec: &AlgebraSpec) -> Result<StatePolynomial, AlgebraError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(err(1, 1, "empty polynomial"));
    }
    let mut p = Parser { toks, pos: 0, spec };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        let s = &p.toks[p.pos];
        return Err(err(s.line, s.col, "trailing input"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::format_polynomial;
    use crate::algebra::{Regime, SquareRule};

    fn spec2() -> AlgebraSpec {
        AlgebraSpec::new(
            vec!["x".into(), "y".into()],
            vec![SquareRule::Free; 2],
            vec![],
            Regime::State,
            false,
        )
        .unwrap()
    }

    #[test]
    fn parses_unit() {
        let spec = spec2();
        assert_eq!(parse_polynomial("1", &spec).unwrap(), StatePolynomial::one());
    }

    #[test]
    fn parses_bilocality_defect() {
        let spec = spec2();
        let p = parse_polynomial("s(x*y) - s(x)*s(y)", &spec).unwrap();
        let sxy = StatePolynomial::sigma_word(&spec, Word::new(vec![0, 1])).unwrap();
        let sx = StatePolynomial::sigma_word(&spec, Word::new(vec![0])).unwrap();
        let sy = StatePolynomial::sigma_word(&spec, Word::new(vec![1])).unwrap();
        let expected = sxy.sub(&sx.multiply(&spec, &sy).unwrap());
        assert_eq!(p, expected);
    }

    #[test]
    fn parses_comparative_example() {
        let spec = spec2();
        let p = parse_polynomial("0.5*s(x y x y) + 0.5*s(y x y x) - s(x y x)*s(y)", &spec).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.degree(), 4);
        assert!(p.is_scalar());
        assert!(p.is_self_adjoint(&spec, 1e-12).unwrap());
    }

    #[test]
    fn parses_rationals_and_imaginary() {
        let spec = spec2();
        let p = parse_polynomial("1/4 + 2*i*s(x)", &spec).unwrap();
        assert_eq!(p.constant_term(), Complex64::new(0.25, 0.0));
        let sx = StatePolynomial::sigma_word(&spec, Word::new(vec![0])).unwrap();
        let m = sx.terms().next().unwrap().0.clone();
        assert_eq!(p.coeff(&m), Complex64::new(0.0, 2.0));
    }

    #[test]
    fn juxtaposition_multiplies() {
        let spec = spec2();
        let a = parse_polynomial("2 x y", &spec).unwrap();
        let b = parse_polynomial("2*x*y", &spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_variable_reports_position() {
        let spec = spec2();
        match parse_polynomial("s(x) + z", &spec) {
            Err(AlgebraError::UnknownVariable { name, line, col }) => {
                assert_eq!(name, "z");
                assert_eq!((line, col), (1, 8));
            }
            other => panic!("expected unknown-variable error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_position() {
        let spec = spec2();
        match parse_polynomial("s(x", &spec) {
            Err(AlgebraError::Parse { .. }) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_polynomial("", &spec).is_err());
        assert!(parse_polynomial("1 +", &spec).is_err());
        assert!(parse_polynomial("1/0", &spec).is_err());
    }

    #[test]
    fn printer_round_trips() {
        let spec = spec2();
        for text in [
            "0.5*s(x y x y) + 0.5*s(y x y x) - s(x y x)*s(y)",
            "s(x*y) - s(x)*s(y)",
            "2 - x*x - y*y",
            "1/4 + 2*i*s(x) - i*s(y)*x",
        ] {
            let p = parse_polynomial(text, &spec).unwrap();
            let printed = format_polynomial(&spec, &p);
            let back = parse_polynomial(&printed, &spec).unwrap();
            assert_eq!(p, back, "round trip failed for `{text}` -> `{printed}`");
        }
    }
}
