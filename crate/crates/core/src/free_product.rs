//! The free product `S_1 * ... * S_m` of fusion rule sets.
//!
//! Simple objects of the free product are reduced alternating words whose
//! letters are non-unit simples of the factor rings. Multiplication only
//! interacts at the junction of two words: the last letter of the left word
//! fuses with the first letter of the right one, and whenever the unit
//! appears in that fusion the contraction continues one letter deeper.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

use thiserror::Error;

use crate::fusion::{FusionRing, Label, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeProductError {
    #[error("cannot parse word `{0}`")]
    Parse(String),
    #[error("letters {0} and {1} belong to the same factor; words must alternate")]
    NotAlternating(usize, usize),
    #[error("letter at position {0} is the unit of its factor")]
    UnitLetter(usize),
    #[error("factor index {0} is out of range")]
    UnknownFactor(usize),
    #[error("free product needs at least one factor")]
    NoFactors,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A non-unit simple of one factor ring. `factor` is zero-based; words print
/// it one-based as `f<j>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub factor: usize,
    pub label: Label,
}

impl Letter {
    pub fn new(factor: usize, label: Label) -> Self {
        Letter { factor, label }
    }
}

/// A reduced word: adjacent letters always come from different factors.
/// The empty word is the unit.
///
/// Words order by length first, then lexicographically by letter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    /// Builds a word, rejecting sequences that are not alternating.
    pub fn new(letters: Vec<Letter>) -> Result<Self, FreeProductError> {
        for (i, pair) in letters.windows(2).enumerate() {
            if pair[0].factor == pair[1].factor {
                return Err(FreeProductError::NotAlternating(i, i + 1));
            }
        }
        Ok(Word(letters))
    }

    pub fn letter(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// The first `k` letters.
    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    /// Everything after the first `k` letters.
    pub fn suffix_from(&self, k: usize) -> Word {
        Word(self.0[k..].to_vec())
    }

    /// Concatenation when it is still reduced.
    pub fn concat(&self, other: &Word) -> Option<Word> {
        match concat_status(self, other) {
            Concat::Free => {
                let mut letters = self.0.clone();
                letters.extend_from_slice(&other.0);
                Some(Word(letters))
            }
            Concat::Interacting => None,
        }
    }

    fn join3(left: &[Letter], middle: Letter, right: &[Letter]) -> Word {
        let mut letters = Vec::with_capacity(left.len() + right.len() + 1);
        letters.extend_from_slice(left);
        letters.push(middle);
        letters.extend_from_slice(right);
        Word(letters)
    }
}

/// Whether `xy` is again a reduced word (`x‖y`) or the junction letters
/// share a factor (`x|y`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Concat {
    Free,
    Interacting,
}

pub fn concat_status(x: &Word, y: &Word) -> Concat {
    match (x.last(), y.first()) {
        (Some(a), Some(b)) if a.factor == b.factor => Concat::Interacting,
        _ => Concat::Free,
    }
}

/// A finitely supported map from words to positive multiplicities: an
/// element of the fusion algebra, or equally the multiplicity function of an
/// object of the free product category.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FormalSum {
    terms: BTreeMap<Word, u64>,
}

impl FormalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::single(Word::unit())
    }

    pub fn single(word: Word) -> Self {
        let mut sum = Self::zero();
        sum.add(word, 1);
        sum
    }

    pub fn add(&mut self, word: Word, mult: u64) {
        if mult == 0 {
            return;
        }
        let entry = self.terms.entry(word).or_insert(0);
        *entry = entry.checked_add(mult).expect("multiplicity overflow");
    }

    pub fn add_scaled(&mut self, other: &FormalSum, factor: u64) {
        for (w, m) in other.iter() {
            self.add(w.clone(), mul(m, factor));
        }
    }

    pub fn coefficient(&self, word: &Word) -> u64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, u64)> + '_ {
        self.terms.iter().map(|(w, m)| (w, *m))
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> + '_ {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Sum of squared multiplicities, i.e. `dim End(X)` for the object `X`.
    pub fn square_norm(&self) -> u64 {
        self.terms.values().map(|m| mul(*m, *m)).sum()
    }
}

fn mul(a: u64, b: u64) -> u64 {
    a.checked_mul(b).expect("multiplicity overflow")
}

/// Summary of the junction-by-junction expansion of `Hom(x ⊗ y ⊗ z, w)` for
/// `x‖y`, listing one term per contracted junction plus the final term
/// `dim[y∩z] · dim[x, y△z; w]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitProfile {
    /// Term at depth `j` (index `j-1`): `prod_{i<j} N_{y_i z_i}^1 · sum_{u≠1} N_{y_j z_j}^u δ(x y(j) u z(j), w)`.
    pub junction_terms: Vec<u64>,
    /// `dim [y∩z]`: product of the unit multiplicities of all contracted junction pairs.
    pub intersection_dim: u64,
    /// `y△z`: what is left of `y` and `z` after the contracted junctions.
    pub remainder: Word,
    /// `dim [x, y△z; w]`.
    pub remainder_triangle: u64,
    pub final_term: u64,
    pub total: u64,
    /// `sum_u dim[x y; u] dim[u z; w]`.
    pub right_bracketing: u64,
    /// `sum_u dim[y z; u] dim[x u; w]`.
    pub left_bracketing: u64,
}

type TriangleKey = (Word, Word, Word);

/// The free product of an ordered list of fusion rings.
///
/// Factors are identified by position, so the same ring may appear more than
/// once. Triangle dimensions are memoized per instance behind a mutex.
pub struct FreeProductRing {
    factors: Vec<FusionRing>,
    triangle_cache: Mutex<HashMap<TriangleKey, u64>>,
}

impl Clone for FreeProductRing {
    fn clone(&self) -> Self {
        FreeProductRing {
            factors: self.factors.clone(),
            triangle_cache: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for FreeProductRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeProductRing")
            .field("factors", &self.factors)
            .finish_non_exhaustive()
    }
}

impl FreeProductRing {
    pub fn new(factors: Vec<FusionRing>) -> Result<Self, FreeProductError> {
        if factors.is_empty() {
            return Err(FreeProductError::NoFactors);
        }
        Ok(FreeProductRing {
            factors,
            triangle_cache: Mutex::new(HashMap::new()),
        })
    }

    /// `m` copies of the SU(2) ring.
    pub fn su2_power(m: usize) -> Self {
        Self::new(vec![FusionRing::su2(); m.max(1)]).expect("non-empty")
    }

    pub fn factors(&self) -> &[FusionRing] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    fn factor(&self, j: usize) -> Result<&FusionRing, FreeProductError> {
        self.factors.get(j).ok_or(FreeProductError::UnknownFactor(j))
    }

    /// A letter, checked against its factor ring.
    pub fn letter(&self, factor: usize, label: Label) -> Result<Letter, FreeProductError> {
        let ring = self.factor(factor)?;
        if !ring.contains(label) {
            return Err(RingError::LabelNotInRing {
                ring: ring.name().to_string(),
                label,
            }
            .into());
        }
        if label == ring.unit() {
            return Err(FreeProductError::UnitLetter(0));
        }
        Ok(Letter { factor, label })
    }

    /// Builds a word and checks every letter against its factor.
    pub fn word(&self, letters: Vec<Letter>) -> Result<Word, FreeProductError> {
        let word = Word::new(letters)?;
        self.validate(&word)?;
        Ok(word)
    }

    pub fn validate(&self, word: &Word) -> Result<(), FreeProductError> {
        for (i, l) in word.letters().iter().enumerate() {
            self.letter(l.factor, l.label).map_err(|e| match e {
                FreeProductError::UnitLetter(_) => FreeProductError::UnitLetter(i),
                other => other,
            })?;
        }
        Ok(())
    }

    fn coeff(&self, a: Letter, b: Letter, c: Option<Letter>) -> u64 {
        if a.factor != b.factor {
            return 0;
        }
        let ring = &self.factors[a.factor];
        let target = match c {
            None => ring.unit(),
            Some(c) if c.factor == a.factor => c.label,
            Some(_) => return 0,
        };
        ring.coefficient(a.label, b.label, target)
            .expect("letters are validated against their factor")
    }

    /// `N_{ab}^c` for same-factor letters as a list of non-unit targets plus
    /// the unit multiplicity.
    fn junction_fusion(&self, a: Letter, b: Letter) -> (Vec<(Letter, u64)>, u64) {
        debug_assert_eq!(a.factor, b.factor);
        let ring = &self.factors[a.factor];
        let sum = ring
            .fuse_pair(a.label, b.label)
            .expect("letters are validated against their factor");
        let unit = ring.unit();
        let mut letters = Vec::new();
        let mut unit_mult = 0;
        for (label, m) in sum.iter() {
            if label == unit {
                unit_mult = m;
            } else {
                letters.push((Letter::new(a.factor, label), m));
            }
        }
        (letters, unit_mult)
    }

    /// Every `z` that can possibly occur in `x · y`: `x'' c y''` for each
    /// junction depth with `c` a non-unit letter of the junction fusion, plus
    /// the full contraction `x ⊖ y` when every contracted pair contains the
    /// unit. For `x‖y` this is just `{xy}`.
    pub fn squeeze_candidates(&self, x: &Word, y: &Word) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        if let Some(xy) = x.concat(y) {
            out.insert(xy);
            return out;
        }
        let (xs, ys) = (x.letters(), y.letters());
        let depth = xs.len().min(ys.len());
        for j in 1..=depth {
            let (a, b) = (xs[xs.len() - j], ys[j - 1]);
            if a.factor != b.factor {
                continue;
            }
            let (targets, _) = self.junction_fusion(a, b);
            for (c, _) in targets {
                out.insert(Word::join3(&xs[..xs.len() - j], c, &ys[j..]));
            }
        }
        if let Some(full) = self.full_contraction(x, y) {
            out.insert(full);
        }
        out
    }

    /// `x ⊖ y`: contract junction pairs for as long as they interact; defined
    /// only when each contracted pair has the unit in its fusion.
    pub fn full_contraction(&self, x: &Word, y: &Word) -> Option<Word> {
        let (xs, ys) = (x.letters(), y.letters());
        let mut j = 0;
        while j < xs.len().min(ys.len()) {
            let (a, b) = (xs[xs.len() - 1 - j], ys[j]);
            if a.factor != b.factor {
                break;
            }
            if self.coeff(a, b, None) == 0 {
                return None;
            }
            j += 1;
        }
        let mut letters = xs[..xs.len() - j].to_vec();
        letters.extend_from_slice(&ys[j..]);
        Some(Word(letters))
    }

    /// `dim [x y; z]` by the junction recursion: `δ_{xy,z}` when `x‖y`;
    /// otherwise with `x = x'a`, `y = by'` it is `N_{ab}^c` when
    /// `z = x'cy'` for a single letter `c`, and `N_{ab}^1 · dim [x' y'; z]`
    /// in every other case.
    pub fn triangle_dim(&self, x: &Word, y: &Word, z: &Word) -> u64 {
        if concat_status(x, y) == Concat::Free {
            return u64::from(
                x.len() + y.len() == z.len()
                    && z.letters()[..x.len()] == *x.letters()
                    && z.letters()[x.len()..] == *y.letters(),
            );
        }
        let key = (x.clone(), y.clone(), z.clone());
        if let Some(&d) = self.triangle_cache.lock().expect("cache poisoned").get(&key) {
            return d;
        }
        let d = self.triangle_dim_uncached(x, y, z);
        self.triangle_cache
            .lock()
            .expect("cache poisoned")
            .insert(key, d);
        d
    }

    fn triangle_dim_uncached(&self, x: &Word, y: &Word, z: &Word) -> u64 {
        let (xs, ys, zs) = (x.letters(), y.letters(), z.letters());
        let (a, b) = (xs[xs.len() - 1], ys[0]);
        let (x_rest, y_rest) = (&xs[..xs.len() - 1], &ys[1..]);
        if zs.len() == x_rest.len() + y_rest.len() + 1
            && zs[..x_rest.len()] == *x_rest
            && zs[x_rest.len() + 1..] == *y_rest
        {
            return self.coeff(a, b, Some(zs[x_rest.len()]));
        }
        let unit_mult = self.coeff(a, b, None);
        if unit_mult == 0 {
            return 0;
        }
        mul(
            unit_mult,
            self.triangle_dim(&Word(x_rest.to_vec()), &Word(y_rest.to_vec()), z),
        )
    }

    /// The product `x · y` in the fusion algebra.
    pub fn fuse_words(&self, x: &Word, y: &Word) -> FormalSum {
        let mut out = FormalSum::zero();
        self.fuse_words_into(x.letters(), y.letters(), 1, &mut out);
        out
    }

    fn fuse_words_into(&self, xs: &[Letter], ys: &[Letter], scale: u64, out: &mut FormalSum) {
        match (xs.last(), ys.first()) {
            (Some(&a), Some(&b)) if a.factor == b.factor => {
                let (x_rest, y_rest) = (&xs[..xs.len() - 1], &ys[1..]);
                let (targets, unit_mult) = self.junction_fusion(a, b);
                for (c, m) in targets {
                    out.add(Word::join3(x_rest, c, y_rest), mul(scale, m));
                }
                if unit_mult > 0 {
                    self.fuse_words_into(x_rest, y_rest, mul(scale, unit_mult), out);
                }
            }
            _ => {
                let mut letters = xs.to_vec();
                letters.extend_from_slice(ys);
                out.add(Word(letters), scale);
            }
        }
    }

    /// Bilinear extension of [`fuse_words`](Self::fuse_words) to objects.
    pub fn tensor_object(&self, x: &FormalSum, y: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (xw, xm) in x.iter() {
            for (yw, ym) in y.iter() {
                self.fuse_words_into(xw.letters(), yw.letters(), mul(xm, ym), &mut out);
            }
        }
        out
    }

    /// Simple decomposition of `w_1 ⊗ ... ⊗ w_k`, folded left to right.
    pub fn decompose_tensor_words(&self, words: &[Word]) -> FormalSum {
        words.iter().fold(FormalSum::unit(), |acc, w| {
            self.tensor_object(&acc, &FormalSum::single(w.clone()))
        })
    }

    pub fn decompose_tensor_word(&self, letters: &[Letter]) -> FormalSum {
        let words: Vec<Word> = letters.iter().map(|&l| Word::letter(l)).collect();
        self.decompose_tensor_words(&words)
    }

    /// `dim Hom(s, l_1 ⊗ ... ⊗ l_k)`.
    pub fn hom_dim(&self, s: &Word, letters: &[Letter]) -> u64 {
        self.decompose_tensor_word(letters).coefficient(s)
    }

    /// Expands `dim Hom(x ⊗ y ⊗ z, w)` for `x‖y` junction by junction and
    /// reports both bracketings alongside.
    pub fn explicit_formula_profile(
        &self,
        x: &Word,
        y: &Word,
        z: &Word,
        w: &Word,
    ) -> Result<ExplicitProfile, FreeProductError> {
        if concat_status(x, y) != Concat::Free {
            return Err(FreeProductError::Precondition(
                "the explicit formula needs x‖y".to_string(),
            ));
        }
        let (xs, ys, zs) = (x.letters(), y.letters(), z.letters());
        // y = y_k ... y_1 and z = z_1 ... z_l: y_j is the j-th letter from the end.
        let y_at = |j: usize| ys[ys.len() - j];
        let mut junction_terms = Vec::new();
        let mut prefix_unit = 1u64;
        let mut depth = 0;
        while depth < ys.len().min(zs.len()) {
            let j = depth + 1;
            let (a, b) = (y_at(j), zs[j - 1]);
            if a.factor != b.factor {
                break;
            }
            let (targets, unit_mult) = self.junction_fusion(a, b);
            let mut head = xs.to_vec();
            head.extend_from_slice(&ys[..ys.len() - j]);
            let hits: u64 = targets
                .iter()
                .filter(|(u, _)| Word::join3(&head, *u, &zs[j..]) == *w)
                .map(|(_, m)| *m)
                .sum();
            junction_terms.push(mul(prefix_unit, hits));
            prefix_unit = mul(prefix_unit, unit_mult);
            depth = j;
        }
        let mut rest = ys[..ys.len() - depth].to_vec();
        rest.extend_from_slice(&zs[depth..]);
        let remainder = Word(rest);
        let remainder_triangle = self.triangle_dim(x, &remainder, w);
        let final_term = mul(prefix_unit, remainder_triangle);
        let total = junction_terms.iter().sum::<u64>() + final_term;

        let xy = x.concat(y).expect("x‖y");
        let right_bracketing = self.triangle_dim(&xy, z, w);
        let left_bracketing = self
            .squeeze_candidates(y, z)
            .iter()
            .map(|u| mul(self.triangle_dim(y, z, u), self.triangle_dim(x, u, w)))
            .sum();

        Ok(ExplicitProfile {
            junction_terms,
            intersection_dim: prefix_unit,
            remainder,
            remainder_triangle,
            final_term,
            total,
            right_bracketing,
            left_bracketing,
        })
    }

    /// All reduced words of length at most `max_len` whose letter keys are at
    /// most `max_key`.
    pub fn enumerate_words(&self, max_len: usize, max_key: u32) -> Vec<Word> {
        let alphabet: Vec<Letter> = self
            .factors
            .iter()
            .enumerate()
            .flat_map(|(j, ring)| {
                ring.simples_up_to(max_key)
                    .into_iter()
                    .filter(move |&l| l != ring.unit())
                    .map(move |l| Letter::new(j, l))
            })
            .collect();
        let mut out = vec![Word::unit()];
        let mut frontier = vec![Word::unit()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for &l in &alphabet {
                    if w.last().is_some_and(|p| p.factor == l.factor) {
                        continue;
                    }
                    let mut letters = w.0.clone();
                    letters.push(l);
                    next.push(Word(letters));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    // Word text format: letters `f<j>:<label>` joined by '.', unit is "1".

    pub fn format_letter(&self, l: Letter) -> String {
        format!("f{}:{}", l.factor + 1, self.factors[l.factor].label_name(l.label))
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_unit() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|&l| self.format_letter(l))
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn parse_letter(&self, text: &str) -> Result<Letter, FreeProductError> {
        let bad = || FreeProductError::Parse(text.to_string());
        let (factor, label) = text.split_once(':').ok_or_else(bad)?;
        let digits = factor.strip_prefix('f').ok_or_else(bad)?;
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) || digits.starts_with('0')
        {
            return Err(bad());
        }
        let j: usize = digits.parse().map_err(|_| bad())?;
        let ring = self.factor(j - 1)?;
        let label = ring.parse_label(label)?;
        self.letter(j - 1, label)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, FreeProductError> {
        if text == "1" {
            return Ok(Word::unit());
        }
        let mut letters = Vec::new();
        for (i, part) in text.split('.').enumerate() {
            let letter = self.parse_letter(part).map_err(|e| match e {
                FreeProductError::UnitLetter(_) => FreeProductError::UnitLetter(i),
                FreeProductError::Parse(_) => FreeProductError::Parse(text.to_string()),
                other => other,
            })?;
            letters.push(letter);
        }
        Word::new(letters)
    }

    /// Renders a formal sum as `1 + f1:s2`, with `k*` prefixes for
    /// multiplicities above one; the zero sum prints as `0`.
    pub fn format_sum(&self, sum: &FormalSum) -> String {
        if sum.is_zero() {
            return "0".to_string();
        }
        sum.iter()
            .map(|(w, m)| match m {
                1 => self.format_word(w),
                _ => format!("{m}*{}", self.format_word(w)),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> FreeProductRing {
        FreeProductRing::su2_power(2)
    }

    fn w(fp: &FreeProductRing, s: &str) -> Word {
        fp.parse_word(s).unwrap()
    }

    fn set(fp: &FreeProductRing, items: &[&str]) -> BTreeSet<Word> {
        items.iter().map(|s| w(fp, s)).collect()
    }

    #[test]
    fn word_round_trip_and_errors() {
        let fp = ring();
        for s in ["1", "f1:s1", "f1:s1.f2:s3.f1:s12"] {
            assert_eq!(fp.format_word(&w(&fp, s)), s);
        }
        assert!(matches!(fp.parse_word("f1:s1.f1:s2"), Err(FreeProductError::NotAlternating(0, 1))));
        assert!(matches!(fp.parse_word("f2:s0"), Err(FreeProductError::UnitLetter(0))));
        assert!(matches!(fp.parse_word("f3:s1"), Err(FreeProductError::UnknownFactor(2))));
        for bad in ["", "f1", "f1:", "g1:s1", "f1:s1.", "f01:s1", "f0:s1", "f1:t1"] {
            assert!(fp.parse_word(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn concat_status_cases() {
        let fp = ring();
        assert_eq!(concat_status(&w(&fp, "f1:s1"), &w(&fp, "f2:s1")), Concat::Free);
        assert_eq!(concat_status(&w(&fp, "f1:s1"), &w(&fp, "f1:s1")), Concat::Interacting);
        assert_eq!(concat_status(&Word::unit(), &w(&fp, "f1:s1.f2:s2")), Concat::Free);
        assert_eq!(concat_status(&w(&fp, "f2:s2"), &Word::unit()), Concat::Free);
    }

    #[test]
    fn squeeze_candidate_examples() {
        let fp = ring();
        assert_eq!(
            fp.squeeze_candidates(&w(&fp, "f1:s1.f2:s1"), &w(&fp, "f2:s1.f1:s1")),
            set(&fp, &["f1:s1.f2:s2.f1:s1", "f1:s2", "1"])
        );
        assert_eq!(
            fp.squeeze_candidates(&w(&fp, "f1:s1"), &w(&fp, "f2:s3")),
            set(&fp, &["f1:s1.f2:s3"])
        );
        assert_eq!(
            fp.squeeze_candidates(&w(&fp, "f1:s1"), &w(&fp, "f1:s2")),
            set(&fp, &["f1:s1", "f1:s3"])
        );
    }

    #[test]
    fn full_contraction_keeps_leftovers() {
        let fp = ring();
        let x = w(&fp, "f1:s1");
        let y = w(&fp, "f1:s1.f2:s1");
        assert_eq!(fp.full_contraction(&x, &y), Some(w(&fp, "f2:s1")));
        assert_eq!(fp.full_contraction(&x, &w(&fp, "f1:s2")), None);
    }

    #[test]
    fn triangle_examples() {
        let fp = ring();
        assert_eq!(fp.triangle_dim(&w(&fp, "f1:s1"), &w(&fp, "f1:s1"), &w(&fp, "f1:s2")), 1);
        assert_eq!(
            fp.triangle_dim(
                &w(&fp, "f1:s1.f2:s1"),
                &w(&fp, "f2:s1.f1:s1"),
                &w(&fp, "f1:s1.f2:s2.f1:s1")
            ),
            1
        );
        assert_eq!(fp.triangle_dim(&w(&fp, "f1:s1"), &w(&fp, "f2:s1"), &w(&fp, "f1:s1")), 0);
        assert_eq!(fp.triangle_dim(&w(&fp, "f1:s1"), &w(&fp, "f2:s1"), &w(&fp, "f1:s1.f2:s1")), 1);
        // cross-factor target at the junction
        assert_eq!(fp.triangle_dim(&w(&fp, "f1:s1"), &w(&fp, "f1:s1"), &w(&fp, "f2:s2")), 0);
    }

    #[test]
    fn fuse_word_examples() {
        let fp = ring();
        let f = |a: &str, b: &str| fp.format_sum(&fp.fuse_words(&w(&fp, a), &w(&fp, b)));
        assert_eq!(f("f1:s1", "f1:s1"), "1 + f1:s2");
        assert_eq!(f("f1:s1.f2:s1", "f2:s1.f1:s1"), "1 + f1:s2 + f1:s1.f2:s2.f1:s1");
        assert_eq!(f("1", "f2:s3"), "f2:s3");
        assert_eq!(f("f1:s2", "f1:s2"), "1 + f1:s2 + f1:s4");
    }

    #[test]
    fn tensor_object_examples() {
        let fp = ring();
        let d = |s: &str| FormalSum::single(w(&fp, s));
        assert_eq!(fp.format_sum(&fp.tensor_object(&d("f1:s1"), &d("f1:s1"))), "1 + f1:s2");
        assert_eq!(fp.tensor_object(&FormalSum::unit(), &d("f2:s1.f1:s2")), d("f2:s1.f1:s2"));
        let mut x = d("f1:s1");
        x.add(w(&fp, "f2:s1"), 1);
        assert_eq!(
            fp.format_sum(&fp.tensor_object(&x, &d("f1:s1"))),
            "1 + f1:s2 + f2:s1.f1:s1"
        );
    }

    #[test]
    fn tensor_word_decomposition() {
        let fp = ring();
        let l = |s: &str| fp.parse_letter(s).unwrap();
        let w2 = [l("f1:s1"), l("f2:s1")];
        assert_eq!(fp.format_sum(&fp.decompose_tensor_word(&w2)), "f1:s1.f2:s1");
        let w4 = [l("f1:s1"), l("f2:s1"), l("f2:s1"), l("f1:s1")];
        assert_eq!(
            fp.format_sum(&fp.decompose_tensor_word(&w4)),
            "1 + f1:s2 + f1:s1.f2:s2.f1:s1"
        );
        assert_eq!(fp.decompose_tensor_word(&[]), FormalSum::unit());
        assert_eq!(fp.hom_dim(&w(&fp, "f1:s1.f2:s1"), &w2), 1);
        assert_eq!(fp.hom_dim(&Word::unit(), &w4), 1);
        assert_eq!(fp.hom_dim(&w(&fp, "f2:s2"), &w4), 0);
    }

    #[test]
    fn explicit_profile_examples() {
        let fp = ring();
        let p = fp
            .explicit_formula_profile(&Word::unit(), &w(&fp, "f1:s1"), &w(&fp, "f1:s1"), &Word::unit())
            .unwrap();
        assert_eq!(p.junction_terms, vec![0]);
        assert_eq!((p.intersection_dim, p.final_term, p.total), (1, 1, 1));
        assert_eq!(p.total, p.left_bracketing);
        assert_eq!(p.total, p.right_bracketing);

        let p = fp
            .explicit_formula_profile(
                &Word::unit(),
                &w(&fp, "f1:s1"),
                &w(&fp, "f1:s1.f2:s1"),
                &w(&fp, "f2:s1"),
            )
            .unwrap();
        assert_eq!(p.remainder, w(&fp, "f2:s1"));
        assert_eq!(p.total, 1);

        // |y| = |z| with no unit in the junction fusion: [y∩z] = 0
        let p = fp
            .explicit_formula_profile(&Word::unit(), &w(&fp, "f1:s1"), &w(&fp, "f1:s2"), &Word::unit())
            .unwrap();
        assert_eq!((p.intersection_dim, p.final_term), (0, 0));

        assert!(matches!(
            fp.explicit_formula_profile(&w(&fp, "f1:s1"), &w(&fp, "f1:s1"), &Word::unit(), &Word::unit()),
            Err(FreeProductError::Precondition(_))
        ));
    }

    #[test]
    fn three_factor_contraction_stops_at_cross_factor_pair() {
        let fp = FreeProductRing::su2_power(3);
        let x = w(&fp, "f1:s1.f2:s1");
        let y = w(&fp, "f2:s1.f3:s1");
        let prod = fp.fuse_words(&x, &y);
        assert_eq!(fp.format_sum(&prod), "f1:s1.f3:s1 + f1:s1.f2:s2.f3:s1");
        let cands = fp.squeeze_candidates(&x, &y);
        assert!(prod.support().all(|z| cands.contains(z)));
        for z in &cands {
            assert_eq!(fp.triangle_dim(&x, &y, z), prod.coefficient(z));
        }
    }

    #[test]
    fn table_factor_words() {
        let z2 = FusionRing::from_json(
            r#"{"name": "Z2", "unit": "e", "simples": ["e", "g"],
            "fusion": {"e|e": {"e": 1}, "e|g": {"g": 1}, "g|e": {"g": 1}, "g|g": {"e": 1}}}"#,
        )
        .unwrap();
        let fp = FreeProductRing::new(vec![z2, FusionRing::su2()]).unwrap();
        let x = w(&fp, "f1:g.f2:s1.f1:g");
        assert_eq!(fp.format_word(&x), "f1:g.f2:s1.f1:g");
        // g·g contracts to the unit, then s1·s1 = 1 + s2 and g·g once more.
        assert_eq!(fp.format_sum(&fp.fuse_words(&x, &x)), "1 + f1:g.f2:s2.f1:g");
    }
}
