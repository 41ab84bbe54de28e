//! Words over a system `(G, Σ)` and their dual words.
//!
//! A word is a sequence of letters `1 ≠ s_i ∈ S_i ∈ Σ`. Its partial products
//! are `g_0 = 1`, `g_i = g_{i-1} s_i`; its dual letters are
//! `t_i = g_i g_{i-1}⁻¹` with subgroups `T_i = g_{i-1} S_i g_{i-1}⁻¹`, the
//! stabilizer of the i-th edge on the word's walk from `1` to `g_n`.
//!
//! In a hyperreflection system a word is reduced iff its `T_i` are
//! pairwise distinct, and any word reduces by deleting a pair of letters
//! or by deleting one letter and replacing another. [`reduce_word`] runs
//! that procedure; [`length_and_reduced`] is the independent breadth-first
//! oracle.

use serde::Serialize;
use thiserror::Error;

use crate::groups::{Elem, Subgroup, IDENTITY};
use crate::hrs::special_subgroup;
use crate::hypergraph::CayleySystem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("letter {position} is the identity")]
    IdentityLetter { position: usize },
    #[error("letter {position} is not in sigma member {sigma}")]
    LetterNotInSigma { position: usize, sigma: usize },
    #[error("letter {position} refers to sigma index {sigma}, which does not exist")]
    SigmaIndex { position: usize, sigma: usize },
    #[error("the word is not reduced: T_{first} = T_{second}")]
    NotReduced { first: usize, second: usize },
    #[error("coset minimum is not unique: {0:?} all have minimal length")]
    NotUnique(Vec<Elem>),
    #[error("system does not behave as a hyperreflection system: {0}")]
    Inconsistent(String),
}

/// One letter `s ∈ Σ[sigma]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub element: Elem,
    pub sigma: usize,
}

impl Letter {
    pub fn new(element: Elem, sigma: usize) -> Self {
        Self { element, sigma }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(sys: &CayleySystem, letters: Vec<Letter>) -> Result<Self, WordError> {
        for (position, l) in letters.iter().enumerate() {
            let s = sys.sigma().get(l.sigma).ok_or(WordError::SigmaIndex { position, sigma: l.sigma })?;
            if l.element == IDENTITY {
                return Err(WordError::IdentityLetter { position });
            }
            if !s.contains(l.element) {
                return Err(WordError::LetterNotInSigma { position, sigma: l.sigma });
            }
        }
        Ok(Self { letters })
    }

    /// Letters whose Σ member is the first one containing them.
    pub fn from_elements(sys: &CayleySystem, elems: &[Elem]) -> Result<Self, WordError> {
        let letters = elems
            .iter()
            .enumerate()
            .map(|(position, &g)| {
                if g == IDENTITY {
                    return Err(WordError::IdentityLetter { position });
                }
                sys.sigma_containing(g)
                    .first()
                    .map(|&sigma| Letter::new(g, sigma))
                    .ok_or(WordError::LetterNotInSigma { position, sigma: 0 })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { letters })
    }

    /// Parses comma-separated element names such as `s,t,s`; the blank
    /// literal is the empty word.
    pub fn parse(sys: &CayleySystem, literal: &str) -> Result<Self, WordError> {
        let elems = literal
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|name| sys.group().element_by_name(name).ok_or_else(|| WordError::UnknownElement(name.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_elements(sys, &elems)
    }

    pub fn names(&self, sys: &CayleySystem) -> Vec<String> {
        self.letters.iter().map(|l| sys.group().name(l.element).to_string()).collect()
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.letters.iter().map(|l| l.element)
    }

    /// The represented element `s_1 ⋯ s_n`.
    pub fn evaluate(&self, sys: &CayleySystem) -> Elem {
        sys.group().product(self.elements())
    }

    /// `(s_n⁻¹, …, s_1⁻¹)`.
    pub fn inverse(&self, sys: &CayleySystem) -> Word {
        let g = sys.group();
        Word { letters: self.letters.iter().rev().map(|l| Letter::new(g.inv(l.element), l.sigma)).collect() }
    }

    /// Σ indices used by the letters, ascending.
    pub fn sigma_set(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.letters.iter().map(|l| l.sigma).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn delete(&mut self, positions: &[usize]) {
        let mut i = 0;
        self.letters.retain(|_| {
            let keep = !positions.contains(&i);
            i += 1;
            keep
        });
    }
}

/// A dual letter `t_i ∈ T_i`; the subgroup is stored as an index into
/// [`CayleySystem::conjugates`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualLetter {
    pub element: Elem,
    pub conjugate: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualWord {
    /// `g_0, …, g_n`.
    pub partials: Vec<Elem>,
    /// `(t_i, T_i)` for `i = 1..=n`.
    pub duals: Vec<DualLetter>,
}

impl DualWord {
    pub fn represented(&self) -> Elem {
        *self.partials.last().expect("partials always starts with the identity")
    }

    pub fn subgroup<'a>(&self, sys: &'a CayleySystem, i: usize) -> &'a Subgroup {
        &sys.conjugates()[self.duals[i].conjugate]
    }

    /// First pair `i < j` (lexicographic) with `T_i = T_j`.
    pub fn first_repeat(&self) -> Option<(usize, usize)> {
        let n = self.duals.len();
        (0..n).find_map(|i| (i + 1..n).find(|&j| self.duals[j].conjugate == self.duals[i].conjugate).map(|j| (i, j)))
    }

    /// Recovers the original letters from the dual letters alone, by the
    /// mirrored construction `h_i = t_i h_{i-1}`, `s_i = h_{i-1}⁻¹ t_i h_{i-1}`.
    pub fn primal_elements(&self, sys: &CayleySystem) -> Vec<Elem> {
        let g = sys.group();
        let mut h = IDENTITY;
        self.duals
            .iter()
            .map(|d| {
                let s = g.conj(g.inv(h), d.element);
                h = g.mul(d.element, h);
                s
            })
            .collect()
    }
}

pub fn dual_word(sys: &CayleySystem, w: &Word) -> DualWord {
    let g = sys.group();
    let mut partials = Vec::with_capacity(w.len() + 1);
    let mut duals = Vec::with_capacity(w.len());
    let mut prev = IDENTITY;
    partials.push(prev);
    for l in w.letters() {
        let next = g.mul(prev, l.element);
        duals.push(DualLetter { element: g.mul(next, g.inv(prev)), conjugate: sys.conjugate_id(l.sigma, prev) });
        partials.push(next);
        prev = next;
    }
    DualWord { partials, duals }
}

/// True iff the `T_i` are pairwise distinct.
pub fn has_distinct_duals(sys: &CayleySystem, w: &Word) -> bool {
    dual_word(sys, w).first_repeat().is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionRule {
    /// `t_i = t_j⁻¹`: both letters deleted.
    DeletePair { i: usize, j: usize },
    /// `T_i = T_j`, `t_i ≠ t_j⁻¹`: letter `i` replaced, letter `j` deleted.
    ReplaceAndDelete { i: usize, j: usize, replacement: Elem },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub rule: ReductionRule,
    /// The word after applying the rule.
    pub word: Word,
}

/// Applies one deletion-condition step at the first repeated pair, if any.
pub fn reduction_step(sys: &CayleySystem, w: &Word) -> Option<ReductionStep> {
    let dual = dual_word(sys, w);
    let (i, j) = dual.first_repeat()?;
    let g = sys.group();
    let (ti, tj) = (dual.duals[i].element, dual.duals[j].element);
    let mut word = w.clone();
    if ti == g.inv(tj) {
        word.delete(&[i, j]);
        return Some(ReductionStep { rule: ReductionRule::DeletePair { i, j }, word });
    }
    // t_j t_i g_{i-1} = g_{i-1} s̃_i.
    let prev = dual.partials[i];
    let replacement = g.conj(g.inv(prev), g.mul(tj, ti));
    debug_assert!(replacement != IDENTITY && sys.sigma()[w.letters[i].sigma].contains(replacement));
    word.letters[i].element = replacement;
    word.delete(&[j]);
    Some(ReductionStep { rule: ReductionRule::ReplaceAndDelete { i, j, replacement }, word })
}

/// All deletion-condition steps taken from `w` to a word with distinct
/// dual subgroups. Empty iff `w` already has distinct duals.
pub fn reduce_word_trace(sys: &CayleySystem, w: &Word) -> Vec<ReductionStep> {
    let mut steps = Vec::new();
    let mut current = w.clone();
    while let Some(step) = reduction_step(sys, &current) {
        current = step.word.clone();
        steps.push(step);
    }
    steps
}

pub fn reduce_word(sys: &CayleySystem, w: &Word) -> Word {
    reduce_word_trace(sys, w).pop().map_or_else(|| w.clone(), |s| s.word)
}

/// The mirror rule: given `T_i = T_j` with `i < j`, delete letter `i` and
/// replace letter `j`. Returns the replacement for `s_j`, which is the
/// identity exactly when `t_i = t_j⁻¹`.
pub fn replace_later_letter(sys: &CayleySystem, w: &Word, i: usize, j: usize) -> Elem {
    let dual = dual_word(sys, w);
    let g = sys.group();
    let before_j = dual.partials[j];
    g.conj(g.inv(before_j), g.mul(dual.duals[i].element, dual.duals[j].element))
}

/// Letters available at any position, ordered by Σ index then element id.
fn alphabet(sys: &CayleySystem) -> Vec<Letter> {
    sys.sigma().iter().enumerate().flat_map(|(i, s)| s.nonidentity().map(move |x| Letter::new(x, i))).collect()
}

/// `ℓ(g)` and the lexicographically least geodesic for `g`, comparing
/// letters by Σ index and then element id.
pub fn length_and_reduced(sys: &CayleySystem, g: Elem) -> (usize, Word) {
    let grp = sys.group();
    let letters = alphabet(sys);
    let n = sys.length(g);
    let mut rest = g;
    let mut word = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let l = *letters
            .iter()
            .find(|l| sys.length(grp.mul(grp.inv(l.element), rest)) == k)
            .expect("a geodesic letter exists at every distance");
        rest = grp.mul(grp.inv(l.element), rest);
        word.push(l);
    }
    (n, Word { letters: word })
}

/// Every geodesic word for `g`. Exponential; meant for small groups.
pub fn all_geodesics(sys: &CayleySystem, g: Elem) -> Vec<Word> {
    let letters = alphabet(sys);
    let mut out = Vec::new();
    fn go(sys: &CayleySystem, letters: &[Letter], rest: Elem, prefix: &mut Vec<Letter>, out: &mut Vec<Word>) {
        let k = sys.length(rest);
        if k == 0 {
            out.push(Word { letters: prefix.clone() });
            return;
        }
        let grp = sys.group();
        for &l in letters {
            let next = grp.mul(grp.inv(l.element), rest);
            if sys.length(next) + 1 == k {
                prefix.push(l);
                go(sys, letters, next, prefix, out);
                prefix.pop();
            }
        }
    }
    go(sys, &letters, g, &mut Vec::new(), &mut out);
    out
}

/// How `s_0⁻¹ g` relates to a reduced word `(s_1, …, s_n)` for `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ExchangeOutcome {
    /// `ℓ(s_0⁻¹g) = ℓ(g) - 1` and `g = s_0 s_1 ⋯ ŝ_i ⋯ s_n`.
    Deletion { index: usize },
    /// `ℓ(s_0⁻¹g) = ℓ(g)` and `g = s_0 s_1 ⋯ s̃_i ⋯ s_n` with `s̃_i ∉ {1, s_i}`.
    Replacement { index: usize, replacement: Elem },
    /// `ℓ(s_0⁻¹g) = ℓ(g) + 1`; no reduced word for `g` starts in `S_0`.
    NoExchange,
}

impl ExchangeOutcome {
    /// The word the outcome asserts represents `g`; `None` for `NoExchange`.
    pub fn witness(&self, w: &Word, s0: Letter) -> Option<Word> {
        let mut letters = vec![s0];
        match *self {
            ExchangeOutcome::Deletion { index } => {
                letters.extend(w.letters().iter().enumerate().filter(|(k, _)| *k != index).map(|(_, l)| *l));
            }
            ExchangeOutcome::Replacement { index, replacement } => {
                letters.extend(w.letters().iter().enumerate().map(|(k, l)| {
                    if k == index {
                        Letter::new(replacement, l.sigma)
                    } else {
                        *l
                    }
                }));
            }
            ExchangeOutcome::NoExchange => return None,
        }
        Some(Word { letters })
    }
}

/// Exchange condition for a reduced `w` and a letter `s0`.
///
/// The witness comes from reducing `(s_0⁻¹, s_1, …, s_n)`: its only
/// possible repeated dual pair involves the first letter, and the mirror
/// rule deletes that first letter and replaces the partner. The outcome is
/// checked against the breadth-first lengths and by multiplication.
pub fn exchange(sys: &CayleySystem, w: &Word, s0: Letter) -> Result<ExchangeOutcome, WordError> {
    Word::new(sys, vec![s0])?;
    if let Some((first, second)) = dual_word(sys, w).first_repeat() {
        return Err(WordError::NotReduced { first, second });
    }
    let grp = sys.group();
    let g = w.evaluate(sys);
    let shifted = grp.mul(grp.inv(s0.element), g);
    let (lg, ls) = (sys.length(g) as isize, sys.length(shifted) as isize);
    if lg != w.len() as isize {
        return Err(WordError::Inconsistent(format!(
            "word has distinct duals but length {} exceeds ℓ(g) = {lg}",
            w.len()
        )));
    }

    let mut extended = vec![Letter::new(grp.inv(s0.element), s0.sigma)];
    extended.extend_from_slice(w.letters());
    let extended = Word { letters: extended };
    let dual = dual_word(sys, &extended);
    let partner = (1..extended.len()).find(|&j| dual.duals[j].conjugate == dual.duals[0].conjugate);

    let outcome = match partner {
        None => ExchangeOutcome::NoExchange,
        Some(j) => {
            let replacement = replace_later_letter(sys, &extended, 0, j);
            if replacement == IDENTITY {
                ExchangeOutcome::Deletion { index: j - 1 }
            } else {
                ExchangeOutcome::Replacement { index: j - 1, replacement }
            }
        }
    };

    let expected = match ls - lg {
        -1 => matches!(outcome, ExchangeOutcome::Deletion { .. }),
        0 => matches!(outcome, ExchangeOutcome::Replacement { .. }),
        1 => outcome == ExchangeOutcome::NoExchange,
        d => {
            return Err(WordError::Inconsistent(format!("length changed by {d}")));
        }
    };
    if !expected {
        return Err(WordError::Inconsistent(format!("length change {} does not match outcome {outcome:?}", ls - lg)));
    }
    if let ExchangeOutcome::Replacement { index, replacement } = outcome {
        if replacement == w.letters()[index].element {
            return Err(WordError::Inconsistent("replacement equals the original letter".into()));
        }
    }
    if let Some(witness) = outcome.witness(w, s0) {
        if witness.evaluate(sys) != g {
            return Err(WordError::Inconsistent("exchange witness does not multiply to g".into()));
        }
    }
    Ok(outcome)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// The coset `gS`.
    Left,
    /// The coset `Sg`.
    Right,
}

/// Minimum-length element of a set, which must be unique.
pub(crate) fn unique_min(sys: &CayleySystem, elems: impl IntoIterator<Item = Elem>) -> Result<Elem, WordError> {
    let mut best: Vec<Elem> = Vec::new();
    let mut best_len = usize::MAX;
    for x in elems {
        let l = sys.length(x);
        if l < best_len {
            best_len = l;
            best.clear();
            best.push(x);
        } else if l == best_len && !best.contains(&x) {
            best.push(x);
        }
    }
    match best.as_slice() {
        [x] => Ok(*x),
        _ => {
            best.sort_unstable();
            Err(WordError::NotUnique(best))
        }
    }
}

/// The unique element of minimal length in `gS` (left) or `Sg` (right).
pub fn coset_min(sys: &CayleySystem, sigma: usize, g: Elem, side: Side) -> Result<Elem, WordError> {
    let s = sys.sigma().get(sigma).ok_or(WordError::SigmaIndex { position: 0, sigma })?;
    let grp = sys.group();
    let coset = s.elements().iter().map(|&x| match side {
        Side::Left => grp.mul(g, x),
        Side::Right => grp.mul(x, g),
    });
    unique_min(sys, coset)
}

/// `g = left · min · right` with `ℓ(g) = ℓ(left) + ℓ(min) + ℓ(right)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCosetMin {
    pub min: Elem,
    pub left: Elem,
    pub right: Elem,
}

/// Minimum of `G_A g G_B` with an additive decomposition of `g`.
///
/// The decomposition minimizes `ℓ(a) + ℓ(b)`; ties go to the smallest
/// `b` id.
pub fn double_coset_min(sys: &CayleySystem, a: &[usize], b: &[usize], g: Elem) -> Result<DoubleCosetMin, WordError> {
    let grp = sys.group();
    let ga = special_subgroup(sys, a).map_err(|e| WordError::Inconsistent(e.to_string()))?;
    let gb = special_subgroup(sys, b).map_err(|e| WordError::Inconsistent(e.to_string()))?;
    let double: Vec<Elem> =
        ga.elements().iter().flat_map(|&x| gb.elements().iter().map(move |&y| grp.mul(grp.mul(x, g), y))).collect();
    let min = unique_min(sys, double)?;

    // g = a · min · b  ⇔  a = g b⁻¹ min⁻¹.
    let (left, right) = gb
        .elements()
        .iter()
        .filter_map(|&y| {
            let x = grp.mul(grp.mul(g, grp.inv(y)), grp.inv(min));
            ga.contains(x).then_some((x, y))
        })
        .min_by_key(|&(x, y)| sys.length(x) + sys.length(y))
        .ok_or_else(|| WordError::Inconsistent("g is not in its own double coset".into()))?;
    if sys.length(g) != sys.length(left) + sys.length(min) + sys.length(right) {
        return Err(WordError::Inconsistent(format!(
            "decomposition is not length-additive: {} != {} + {} + {}",
            sys.length(g),
            sys.length(left),
            sys.length(min),
            sys.length(right)
        )));
    }
    Ok(DoubleCosetMin { min, left, right })
}
