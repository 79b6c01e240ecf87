//! Words in the free monoid over the variables, and their canonical forms
//! under the structural relations of an [`AlgebraSpec`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::{AlgebraError, AlgebraSpec, PairRelation, Regime, SquareRule};

/// Hard cap on the number of distinct words visited while exploring one
/// equivalence class. Classes anywhere near this size mean the relation set
/// is unsuited to rewriting.
const CLASS_CAP: usize = 200_000;

/// A product of variables; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u16>);

impl Word {
    pub fn new(letters: Vec<u16>) -> Self {
        Word(letters)
    }

    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    fn validate(&self, spec: &AlgebraSpec) -> Result<(), AlgebraError> {
        for &l in &self.0 {
            if l as usize >= spec.n_vars() {
                return Err(AlgebraError::VarOutOfRange {
                    index: l as usize,
                    n_vars: spec.n_vars(),
                });
            }
        }
        Ok(())
    }
}

/// Length-then-lexicographic order; the canonical representative of a class
/// is its minimum.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn combine(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// A word together with the ±1 scalar produced by signed rewriting.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWord {
    pub sign: Sign,
    pub word: Word,
}

/// Canonicalization result. `Zero` marks words whose class contains both
/// `w` and `-w` (the quotient kills them; e.g. `s(ab)` for anticommuting
/// involutions under reversal symmetrization, or under the trace regime).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CanonicalWord {
    Zero,
    Signed(SignedWord),
}

impl CanonicalWord {
    pub fn signed(sign: Sign, word: Word) -> Self {
        CanonicalWord::Signed(SignedWord { sign, word })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CanonicalWord::Zero)
    }

    pub fn negate(self) -> Self {
        match self {
            CanonicalWord::Zero => CanonicalWord::Zero,
            CanonicalWord::Signed(SignedWord { sign, word }) => {
                CanonicalWord::Signed(SignedWord { sign: sign.flip(), word })
            }
        }
    }
}

/// Where a word sits: outer factors rewrite with plain moves only, words
/// under the state symbol additionally pick up cyclic moves (trace regime)
/// and reversal (real symmetrization).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Context {
    Plain,
    UnderSigma,
}

/// Rewrites `w` to the (length, lex)-minimal representative of its class.
///
/// Moves: square-rule reductions, sign-tracked adjacent swaps for
/// commuting/anticommuting pairs, cyclic rotations (trace regime, under the
/// state symbol), and reversal (real symmetrization, under the state
/// symbol). Idempotent: canonicalizing a canonical word returns it.
pub fn canonicalize_word(
    spec: &AlgebraSpec,
    w: &Word,
    context: Context,
) -> Result<CanonicalWord, AlgebraError> {
    w.validate(spec)?;
    let under_sigma = context == Context::UnderSigma;
    let cyclic = under_sigma && spec.regime() == Regime::Trace;
    let reversal = under_sigma && spec.real_symmetrize();

    let mut letters = w.letters().to_vec();
    let mut sign = Sign::Plus;

    if !cyclic && all_pairs_sortable(spec, &letters) && sign_is_arrangement_stable(spec, &letters) {
        // Totally related letters: sort directly instead of walking the class.
        reduce_squares(spec, &mut letters);
        loop {
            sign = sign.combine(sort_signed(spec, &mut letters));
            if !reduce_squares(spec, &mut letters) {
                break;
            }
        }
        if reversal && reversal_parity_odd(spec, &letters) {
            return Ok(CanonicalWord::Zero);
        }
        return Ok(CanonicalWord::signed(sign, Word(letters)));
    }

    bfs_canonicalize(spec, letters, sign, cyclic, reversal)
}

/// One pass of square-rule reduction; returns whether anything fired.
fn reduce_squares(spec: &AlgebraSpec, letters: &mut Vec<u16>) -> bool {
    let mut changed = false;
    let mut i = 0;
    while i + 1 < letters.len() {
        if letters[i] == letters[i + 1] {
            match spec.square_rule(letters[i] as usize) {
                SquareRule::Idempotent => {
                    letters.remove(i + 1);
                    changed = true;
                    i = i.saturating_sub(1);
                    continue;
                }
                SquareRule::Involutory => {
                    letters.drain(i..i + 2);
                    changed = true;
                    i = i.saturating_sub(1);
                    continue;
                }
                SquareRule::Free => {}
            }
        }
        i += 1;
    }
    changed
}

fn all_pairs_sortable(spec: &AlgebraSpec, letters: &[u16]) -> bool {
    for (k, &a) in letters.iter().enumerate() {
        for &b in &letters[k + 1..] {
            if a != b && spec.pair_relation(a as usize, b as usize) == PairRelation::Free {
                return false;
            }
        }
    }
    true
}

/// Sorting commits to one sign per arrangement, which is only faithful when
/// letter counts change by even amounts under reductions (involutory) or no
/// sign is ever produced. Idempotent letters mixed with anticommutation can
/// force words to zero (anticommuting projections satisfy XY = 0), which
/// only the exhaustive closure detects.
fn sign_is_arrangement_stable(spec: &AlgebraSpec, letters: &[u16]) -> bool {
    let any_anticommute = letters.iter().enumerate().any(|(k, &a)| {
        letters[k + 1..].iter().any(|&b| {
            a != b && spec.pair_relation(a as usize, b as usize) == PairRelation::Anticommute
        })
    });
    if !any_anticommute {
        return true;
    }
    letters
        .iter()
        .all(|&l| spec.square_rule(l as usize) != SquareRule::Idempotent)
}

/// Bubble sort tracking the anticommutation sign of the permutation.
fn sort_signed(spec: &AlgebraSpec, letters: &mut [u16]) -> Sign {
    let mut sign = Sign::Plus;
    let n = letters.len();
    for i in 1..n {
        let mut j = i;
        while j > 0 && letters[j - 1] > letters[j] {
            if spec.pair_relation(letters[j - 1] as usize, letters[j] as usize)
                == PairRelation::Anticommute
            {
                sign = sign.flip();
            }
            letters.swap(j - 1, j);
            j -= 1;
        }
    }
    sign
}

/// Parity of the sign picked up by reversing the word and re-sorting: odd
/// parity means the class contains `-w`, so the word is zero under the
/// symmetrized state symbol.
fn reversal_parity_odd(spec: &AlgebraSpec, letters: &[u16]) -> bool {
    let mut odd = false;
    for (k, &a) in letters.iter().enumerate() {
        for &b in &letters[k + 1..] {
            if a != b
                && spec.pair_relation(a as usize, b as usize) == PairRelation::Anticommute
            {
                odd = !odd;
            }
        }
    }
    odd
}

/// Exhaustive closure over the reachable class with memoized signs. Detects
/// sign conflicts (`w ~ -w` ⇒ zero) and returns the minimal representative.
fn bfs_canonicalize(
    spec: &AlgebraSpec,
    start: Vec<u16>,
    start_sign: Sign,
    cyclic: bool,
    reversal: bool,
) -> Result<CanonicalWord, AlgebraError> {
    let mut seen: HashMap<Vec<u16>, Sign> = HashMap::new();
    let mut queue: Vec<Vec<u16>> = Vec::new();
    seen.insert(start.clone(), start_sign);
    queue.push(start);

    let push = |word: Vec<u16>,
                    sign: Sign,
                    seen: &mut HashMap<Vec<u16>, Sign>,
                    queue: &mut Vec<Vec<u16>>|
     -> Result<bool, AlgebraError> {
        match seen.get(&word) {
            Some(&s) if s != sign => return Ok(true), // sign conflict: class is zero
            Some(_) => return Ok(false),
            None => {}
        }
        if seen.len() >= CLASS_CAP {
            return Err(AlgebraError::ClassTooLarge(CLASS_CAP));
        }
        seen.insert(word.clone(), sign);
        queue.push(word);
        Ok(false)
    };

    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        let sign = seen[&cur];

        // square reductions
        for i in 0..cur.len().saturating_sub(1) {
            if cur[i] == cur[i + 1] {
                match spec.square_rule(cur[i] as usize) {
                    SquareRule::Idempotent => {
                        let mut next = cur.clone();
                        next.remove(i + 1);
                        if push(next, sign, &mut seen, &mut queue)? {
                            return Ok(CanonicalWord::Zero);
                        }
                    }
                    SquareRule::Involutory => {
                        let mut next = cur.clone();
                        next.drain(i..i + 2);
                        if push(next, sign, &mut seen, &mut queue)? {
                            return Ok(CanonicalWord::Zero);
                        }
                    }
                    SquareRule::Free => {}
                }
            }
        }
        // adjacent swaps
        for i in 0..cur.len().saturating_sub(1) {
            let (a, b) = (cur[i], cur[i + 1]);
            if a == b {
                continue;
            }
            let rel = spec.pair_relation(a as usize, b as usize);
            if rel == PairRelation::Free {
                continue;
            }
            let mut next = cur.clone();
            next.swap(i, i + 1);
            let s = if rel == PairRelation::Anticommute { sign.flip() } else { sign };
            if push(next, s, &mut seen, &mut queue)? {
                return Ok(CanonicalWord::Zero);
            }
        }
        // cyclic rotation (one step generates all of them over the closure)
        if cyclic && cur.len() >= 2 {
            let mut next = cur[1..].to_vec();
            next.push(cur[0]);
            if push(next, sign, &mut seen, &mut queue)? {
                return Ok(CanonicalWord::Zero);
            }
        }
        // reversal
        if reversal && cur.len() >= 2 {
            let next: Vec<u16> = cur.iter().rev().copied().collect();
            if push(next, sign, &mut seen, &mut queue)? {
                return Ok(CanonicalWord::Zero);
            }
        }
    }

    let (best, &sign) = seen
        .iter()
        .min_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .expect("class contains at least the start word");
    Ok(CanonicalWord::signed(sign, Word(best.clone())))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use proptest::prelude::*;

    fn spec_xy(rule: SquareRule, rel: PairRelation, regime: Regime, symm: bool) -> AlgebraSpec {
        AlgebraSpec::new(
            vec!["x".into(), "y".into()],
            vec![rule, rule],
            vec![((0, 1), rel)],
            regime,
            symm,
        )
        .unwrap()
    }

    fn canon(spec: &AlgebraSpec, letters: &[u16], ctx: Context) -> CanonicalWord {
        canonicalize_word(spec, &Word::new(letters.to_vec()), ctx).unwrap()
    }

    #[test]
    fn idempotent_square_reduces() {
        let spec = spec_xy(SquareRule::Idempotent, PairRelation::Free, Regime::State, false);
        assert_eq!(
            canon(&spec, &[0, 0], Context::Plain),
            CanonicalWord::signed(Sign::Plus, Word::new(vec![0]))
        );
    }

    #[test]
    fn anticommuting_swap_tracks_sign() {
        let spec = spec_xy(SquareRule::Free, PairRelation::Anticommute, Regime::State, false);
        assert_eq!(
            canon(&spec, &[1, 0], Context::Plain),
            CanonicalWord::signed(Sign::Minus, Word::new(vec![0, 1]))
        );
    }

    #[test]
    fn trace_regime_rotates_under_sigma() {
        let spec = spec_xy(SquareRule::Free, PairRelation::Free, Regime::Trace, false);
        assert_eq!(
            canon(&spec, &[1, 0], Context::UnderSigma),
            CanonicalWord::signed(Sign::Plus, Word::new(vec![0, 1]))
        );
        // plain context must not rotate
        assert_eq!(
            canon(&spec, &[1, 0], Context::Plain),
            CanonicalWord::signed(Sign::Plus, Word::new(vec![1, 0]))
        );
    }

    #[test]
    fn empty_word_is_unit() {
        let spec = spec_xy(SquareRule::Free, PairRelation::Free, Regime::State, false);
        assert_eq!(
            canon(&spec, &[], Context::UnderSigma),
            CanonicalWord::signed(Sign::Plus, Word::unit())
        );
    }

    #[test]
    fn involutory_pair_cancels() {
        let spec = spec_xy(SquareRule::Involutory, PairRelation::Free, Regime::State, false);
        assert_eq!(
            canon(&spec, &[0, 1, 1, 0], Context::Plain),
            CanonicalWord::signed(Sign::Plus, Word::unit())
        );
    }

    #[test]
    fn anticommuting_word_vanishes_under_reversal() {
        // s(xy) with x,y anticommuting involutions: reversal gives s(yx) = -s(xy).
        let spec =
            spec_xy(SquareRule::Involutory, PairRelation::Anticommute, Regime::State, true);
        assert_eq!(canon(&spec, &[0, 1], Context::UnderSigma), CanonicalWord::Zero);
        // without symmetrization it survives
        let spec2 =
            spec_xy(SquareRule::Involutory, PairRelation::Anticommute, Regime::State, false);
        assert_eq!(
            canon(&spec2, &[1, 0], Context::UnderSigma),
            CanonicalWord::signed(Sign::Minus, Word::new(vec![0, 1]))
        );
    }

    #[test]
    fn trace_with_anticommutation_kills_odd_survivors() {
        // tau(yxy) = tau(x) by cyclicity but -tau(x) by anticommutation.
        let spec =
            spec_xy(SquareRule::Involutory, PairRelation::Anticommute, Regime::Trace, false);
        assert_eq!(canon(&spec, &[1, 0, 1], Context::UnderSigma), CanonicalWord::Zero);
    }

    #[test]
    fn moment_regime_sorts() {
        let spec = AlgebraSpec::new(
            vec!["x".into(), "y".into()],
            vec![SquareRule::Idempotent; 2],
            vec![],
            Regime::Moment,
            true,
        )
        .unwrap();
        // xyxy -> x^2 y^2 -> xy
        assert_eq!(
            canon(&spec, &[0, 1, 0, 1], Context::Plain),
            CanonicalWord::signed(Sign::Plus, Word::new(vec![0, 1]))
        );
    }

    #[test]
    fn trace_plus_idempotent_shortens_cyclically() {
        // tau(xyx) = tau(x^2 y) = tau(xy)
        let spec = spec_xy(SquareRule::Idempotent, PairRelation::Free, Regime::Trace, false);
        assert_eq!(
            canon(&spec, &[0, 1, 0], Context::UnderSigma),
            CanonicalWord::signed(Sign::Plus, Word::new(vec![0, 1]))
        );
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent(
            letters in proptest::collection::vec(0u16..4, 0..10),
            rule in prop_oneof![
                Just(SquareRule::Free),
                Just(SquareRule::Idempotent),
                Just(SquareRule::Involutory)
            ],
            rel01 in prop_oneof![
                Just(PairRelation::Free),
                Just(PairRelation::Commute),
                Just(PairRelation::Anticommute)
            ],
            regime in prop_oneof![Just(Regime::State), Just(Regime::Trace)],
            symm in proptest::bool::ANY,
            ctx in prop_oneof![Just(Context::Plain), Just(Context::UnderSigma)],
        ) {
            let spec = AlgebraSpec::new(
                vec!["a".into(), "b".into(), "c".into(), "d".into()],
                vec![rule; 4],
                vec![((0, 1), rel01), ((2, 3), PairRelation::Commute)],
                regime,
                symm,
            ).unwrap();
            let first = canonicalize_word(&spec, &Word::new(letters), ctx).unwrap();
            if let CanonicalWord::Signed(sw) = &first {
                let again = canonicalize_word(&spec, &sw.word, ctx).unwrap();
                prop_assert_eq!(
                    again,
                    CanonicalWord::signed(Sign::Plus, sw.word.clone())
                );
            }
        }

        #[test]
        fn sortable_fast_path_matches_bfs(
            letters in proptest::collection::vec(0u16..3, 0..8),
            symm in proptest::bool::ANY,
            rule in prop_oneof![
                Just(SquareRule::Free),
                Just(SquareRule::Idempotent),
                Just(SquareRule::Involutory)
            ],
            rel in prop_oneof![Just(PairRelation::Commute), Just(PairRelation::Anticommute)],
        ) {
            // all pairs related: compare whatever path `canonicalize_word`
            // picks against the exhaustive closure.
            let spec = AlgebraSpec::new(
                vec!["a".into(), "b".into(), "c".into()],
                vec![rule; 3],
                vec![((0, 1), rel), ((0, 2), rel), ((1, 2), rel)],
                Regime::State,
                symm,
            ).unwrap();
            let w = Word::new(letters.clone());
            let fast = canonicalize_word(&spec, &w, Context::UnderSigma).unwrap();
            let slow = bfs_canonicalize(&spec, letters, Sign::Plus, false, symm).unwrap();
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn canonical_form_never_shrinks_via_bfs(
            letters in proptest::collection::vec(0u16..3, 0..7),
        ) {
            // anticommuting projections: the closure finds forced zeros
            // (XY = 0) that plain sorting would miss.
            let spec = AlgebraSpec::new(
                vec!["a".into(), "b".into(), "c".into()],
                vec![SquareRule::Idempotent; 3],
                vec![
                    ((0, 1), PairRelation::Anticommute),
                    ((0, 2), PairRelation::Commute),
                    ((1, 2), PairRelation::Commute),
                ],
                Regime::State,
                false,
            ).unwrap();
            let w = Word::new(letters.clone());
            let c = canonicalize_word(&spec, &w, Context::Plain).unwrap();
            // mixed adjacency of 0 and 1 with repetition forces zero
            let has_aba = letters.windows(3).any(|t| {
                (t == [0, 1, 0]) || (t == [1, 0, 1])
            });
            if has_aba {
                prop_assert_eq!(c, CanonicalWord::Zero);
            }
        }
    }
}
