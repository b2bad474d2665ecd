//! Sparse exact arithmetic in the free associative algebra.
//!
//! A [`Poly`] is a finite map from canonical [`Word`]s to nonzero rational
//! coefficients. The same machinery serves the domain algebra (letters are
//! [`Generator`]s) and the codomain algebra of formal images (letters are
//! [`HSymbol`](crate::blift::HSymbol)s), so both share one set of arithmetic
//! routines and one text rendering.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact scalar. Always reduced; stored terms never carry a zero.
pub type Coefficient = BigRational;

/// Generators are tracked in a `u64` bitmask, which bounds the alphabet.
pub const MAX_GENERATORS: usize = 64;

pub const DEFAULT_GENERATOR_CAP: usize = 8;

/// Products with more term pairs than this are expanded on the rayon pool.
const PARALLEL_MUL_THRESHOLD: usize = 1 << 14;

pub fn rational(num: i64, den: i64) -> Coefficient {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(value: i64) -> Coefficient {
    BigRational::from_integer(BigInt::from(value))
}

/// `n!` as an exact scalar.
pub fn factorial(n: usize) -> Coefficient {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "com")]
    Commutative,
    #[serde(rename = "noncom")]
    Noncommutative,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::Commutative, Mode::Noncommutative];

    pub fn is_commutative(self) -> bool {
        matches!(self, Mode::Commutative)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Commutative => "com",
            Mode::Noncommutative => "noncom",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "com" | "commutative" => Ok(Mode::Commutative),
            "noncom" | "noncommutative" => Ok(Mode::Noncommutative),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

fn ensure_same_mode(left: Mode, right: Mode) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::ModeMismatch { left, right })
    }
}

/// One of the indeterminates `x1, x2, ...` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u8);

impl Generator {
    /// Validates `1 <= index <= cap`.
    pub fn new(index: usize, cap: usize) -> Result<Self> {
        if cap > MAX_GENERATORS {
            return Err(Error::CapTooLarge {
                cap,
                max: MAX_GENERATORS,
            });
        }
        if index == 0 || index > cap {
            return Err(Error::GeneratorOutOfRange { index, cap });
        }
        Ok(Generator(index as u8))
    }

    pub(crate) fn from_index(index: usize) -> Self {
        debug_assert!((1..=MAX_GENERATORS).contains(&index));
        Generator(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A set of generators, bit `i - 1` standing for `x_i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VarSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1..n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS);
        if n == MAX_GENERATORS {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(g: Generator) -> Self {
        VarSet(1u64 << (g.index() - 1))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut set = VarSet::EMPTY;
        for i in indices {
            set = set.union(VarSet::singleton(Generator::new(i, MAX_GENERATORS)?));
        }
        Ok(set)
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn contains(self, g: Generator) -> bool {
        self.0 & (1u64 << (g.index() - 1)) != 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Largest generator index present, 0 for the empty set.
    pub fn max_index(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Generator> {
        (1..=MAX_GENERATORS)
            .filter(move |i| self.0 & (1u64 << (i - 1)) != 0)
            .map(Generator::from_index)
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().map(Generator::index).collect()
    }

    /// Every subset of `self`, including `∅` and `self`, in decreasing bit order.
    pub fn subsets(self) -> impl Iterator<Item = VarSet> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(VarSet(cur))
        })
    }

    pub fn nonempty_subsets(self) -> impl Iterator<Item = VarSet> {
        self.subsets().filter(|s| !s.is_empty())
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, g) in self.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", g.index())?;
        }
        f.write_str("}")
    }
}

impl FromStr for VarSet {
    type Err = Error;

    /// Accepts `{1,2,3}` with optional whitespace; `{}` is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected `{{i,j,...}}`, got `{s}`")))?;
        if inner.trim().is_empty() {
            return Ok(VarSet::EMPTY);
        }
        let indices = inner
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad generator index `{part}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        VarSet::from_indices(indices)
    }
}

/// Alphabet of a free algebra.
pub trait Letter: Clone + Ord + Hash + fmt::Display + Send + Sync {
    /// Domain generators this letter mentions.
    fn varset(&self) -> VarSet;
}

impl Letter for Generator {
    fn varset(&self) -> VarSet {
        VarSet::singleton(*self)
    }
}

/// A monomial: a sequence of letters, sorted when the ambient mode is
/// commutative. The empty word is the unit monomial.
///
/// Words order by length first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word<L> {
    letters: Vec<L>,
}

impl<L: Letter> Word<L> {
    pub fn unit() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn new(mut letters: Vec<L>, mode: Mode) -> Self {
        if mode.is_commutative() {
            letters.sort();
        }
        Word { letters }
    }

    pub fn letter(letter: L) -> Self {
        Word {
            letters: vec![letter],
        }
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn varset(&self) -> VarSet {
        self.letters
            .iter()
            .fold(VarSet::EMPTY, |acc, l| acc.union(l.varset()))
    }

    pub fn is_canonical(&self, mode: Mode) -> bool {
        !mode.is_commutative() || self.letters.windows(2).all(|w| w[0] <= w[1])
    }

    /// Concatenation, or sorted merge in commutative mode. Both inputs must
    /// already be canonical for `mode`.
    pub fn mul(&self, other: &Self, mode: Mode) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        match mode {
            Mode::Noncommutative => {
                letters.extend_from_slice(&self.letters);
                letters.extend_from_slice(&other.letters);
            }
            Mode::Commutative => {
                let (mut a, mut b) = (self.letters.iter().peekable(), other.letters.iter().peekable());
                loop {
                    match (a.peek(), b.peek()) {
                        (Some(x), Some(y)) => {
                            if x <= y {
                                letters.push(a.next().unwrap().clone());
                            } else {
                                letters.push(b.next().unwrap().clone());
                            }
                        }
                        (Some(_), None) => letters.extend(a.by_ref().cloned()),
                        (None, Some(_)) => letters.extend(b.by_ref().cloned()),
                        (None, None) => break,
                    }
                }
            }
        }
        Word { letters }
    }

    pub fn map_letters<M: Letter>(&self, f: impl Fn(&L) -> M, mode: Mode) -> Word<M> {
        Word::new(self.letters.iter().map(f).collect(), mode)
    }
}

impl<L: Ord> Ord for Word<L> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl<L: Ord> PartialOrd for Word<L> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<L: Letter> fmt::Display for Word<L> {
    /// Runs of a repeated letter are written as powers: `x1^2*x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == self.letters[i] {
                run += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{}^{}", self.letters[i], run)?;
            } else {
                write!(f, "{}", self.letters[i])?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Element of a free algebra: sparse map from canonical words to nonzero
/// exact coefficients, tagged with its mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<L> {
    mode: Mode,
    terms: BTreeMap<Word<L>, Coefficient>,
}

/// Element of the domain free algebra over `x1..xn`.
pub type Polynomial = Poly<Generator>;

fn accumulate<L: Letter>(terms: &mut BTreeMap<Word<L>, Coefficient>, word: Word<L>, coeff: Coefficient) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(word) {
        Entry::Vacant(slot) => {
            slot.insert(coeff);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += coeff;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

impl<L: Letter> Poly<L> {
    pub fn zero(mode: Mode) -> Self {
        Poly {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(mode: Mode) -> Self {
        Self::monomial(Word::unit(), Coefficient::one(), mode)
    }

    /// `coeff * word`, canonicalizing the word for `mode`.
    pub fn monomial(word: Word<L>, coeff: Coefficient, mode: Mode) -> Self {
        Self::from_terms(std::iter::once((word, coeff)), mode)
    }

    /// Builds a polynomial from arbitrary (possibly non-canonical, repeated,
    /// or zero) terms.
    pub fn from_terms<I>(terms: I, mode: Mode) -> Self
    where
        I: IntoIterator<Item = (Word<L>, Coefficient)>,
    {
        let mut map = BTreeMap::new();
        for (word, coeff) in terms {
            let word = Word::new(word.letters, mode);
            accumulate(&mut map, word, coeff);
        }
        Poly { mode, terms: map }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn terms(&self) -> &BTreeMap<Word<L>, Coefficient> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word<L>, Coefficient> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as [`Poly::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &Word<L>) -> Option<&Coefficient> {
        self.terms.get(word)
    }

    /// Rebuilds the term map from scratch; a no-op on any stored value.
    pub fn canonicalize(&self) -> Self {
        Self::from_terms(self.terms.clone(), self.mode)
    }

    /// Checks every stored invariant: canonical keys, no zero coefficients.
    pub fn is_canonical(&self) -> bool {
        self.terms
            .iter()
            .all(|(w, c)| w.is_canonical(self.mode) && !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled_assign(other, &Coefficient::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled_assign(other, &-Coefficient::one())?;
        Ok(out)
    }

    /// `self += c * other`.
    pub fn add_scaled_assign(&mut self, other: &Self, c: &Coefficient) -> Result<()> {
        ensure_same_mode(self.mode, other.mode)?;
        if c.is_zero() {
            return Ok(());
        }
        for (word, coeff) in &other.terms {
            accumulate(&mut self.terms, word.clone(), coeff * c);
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Coefficient::one())
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return Self::zero(self.mode);
        }
        Poly {
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .map(|(w, coeff)| (w.clone(), coeff * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        ensure_same_mode(self.mode, other.mode)?;
        let mode = self.mode;
        let expand = |chunk: &[(&Word<L>, &Coefficient)]| {
            let mut map = BTreeMap::new();
            for (w1, c1) in chunk {
                for (w2, c2) in &other.terms {
                    accumulate(&mut map, w1.mul(w2, mode), *c1 * c2);
                }
            }
            map
        };
        let left: Vec<_> = self.terms.iter().collect();
        let terms = if left.len() * other.terms.len() > PARALLEL_MUL_THRESHOLD && left.len() > 1 {
            let chunk = left.len().div_ceil(rayon::current_num_threads().max(1) * 4).max(1);
            left.par_chunks(chunk)
                .map(expand)
                .reduce(BTreeMap::new, |mut acc, part| {
                    for (w, c) in part {
                        accumulate(&mut acc, w, c);
                    }
                    acc
                })
        } else {
            expand(&left)
        };
        Ok(Poly { mode, terms })
    }

    /// `p^0 = 1`, `p^n = p * p^(n-1)`.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.mode);
        for _ in 0..n {
            acc = self.mul(&acc).expect("same mode");
        }
        acc
    }

    /// Terms whose word mentions exactly the generators in `set`.
    pub fn exact_varset_component(&self, set: VarSet) -> Self {
        Poly {
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.varset() == set)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies a letter substitution to every word and re-canonicalizes.
    pub fn map_letters<M: Letter>(&self, f: impl Fn(&L) -> M) -> Poly<M> {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (Word::new(w.letters.iter().map(&f).collect(), self.mode), c.clone())),
            self.mode,
        )
    }

    /// If `self = c * other` for a single scalar `c`, returns `c`.
    pub fn scalar_ratio(&self, other: &Self) -> Option<Coefficient> {
        if self.mode != other.mode || self.terms.len() != other.terms.len() {
            return None;
        }
        if self.is_zero() {
            return Some(Coefficient::zero());
        }
        let (w, c) = other.terms.iter().next()?;
        let ratio = self.terms.get(w)? / c;
        (other.scale(&ratio) == *self).then_some(ratio)
    }
}

pub(crate) fn write_terms<'a, W, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    W: fmt::Display + 'a,
    I: IntoIterator<Item = (&'a W, &'a Coefficient, bool)>,
{
    let mut first = true;
    for (word, coeff, is_unit) in terms {
        let negative = coeff.is_negative();
        let magnitude = coeff.abs();
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if is_unit {
            write!(f, "{magnitude}")?;
        } else if magnitude.is_one() {
            write!(f, "{word}")?;
        } else {
            write!(f, "{magnitude}*{word}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<L: Letter> fmt::Display for Poly<L> {
    /// Terms in (degree, lexicographic) order, e.g. `x1*x2 + 3/2*x2*x1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(w, c)| (w, c, w.is_unit())))
    }
}

/// The polynomial `x_i`.
pub fn generator(g: Generator, mode: Mode) -> Polynomial {
    Polynomial::monomial(Word::letter(g), Coefficient::one(), mode)
}

/// `Σ_{i ∈ set} x_i`.
pub fn sum_of_generators(set: VarSet, mode: Mode) -> Result<Polynomial> {
    if set.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok(Polynomial::from_terms(
        set.iter().map(|g| (Word::letter(g), Coefficient::one())),
        mode,
    ))
}

pub fn varset<L: Letter>(word: &Word<L>) -> VarSet {
    word.varset()
}

pub fn exact_varset_component<L: Letter>(p: &Poly<L>, set: VarSet) -> Poly<L> {
    p.exact_varset_component(set)
}

/// Terms in which each of `x1..xn` occurs exactly once and nothing else occurs.
pub fn multilinear_component(p: &Polynomial, n: usize) -> Polynomial {
    let full = VarSet::full(n);
    Polynomial {
        mode: p.mode,
        terms: p
            .terms
            .iter()
            .filter(|(w, _)| w.degree() == n && w.varset() == full)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Generator {
        Generator::new(i, DEFAULT_GENERATOR_CAP).unwrap()
    }

    fn word(indices: &[usize], mode: Mode) -> Word<Generator> {
        Word::new(indices.iter().map(|&i| x(i)).collect(), mode)
    }

    fn poly(terms: &[(&[usize], i64)], mode: Mode) -> Polynomial {
        Polynomial::from_terms(
            terms.iter().map(|(w, c)| (word(w, mode), integer(*c))),
            mode,
        )
    }

    fn sum_n(k: usize, mode: Mode) -> Polynomial {
        sum_of_generators(VarSet::full(k), mode).unwrap()
    }

    const NC: Mode = Mode::Noncommutative;
    const C: Mode = Mode::Commutative;

    #[test]
    fn generator_basics() {
        assert_eq!(generator(x(1), NC), poly(&[(&[1], 1)], NC));
        assert_eq!(generator(x(3), C).to_string(), "x3");
        assert_eq!(
            Generator::new(0, 8),
            Err(Error::GeneratorOutOfRange { index: 0, cap: 8 })
        );
        assert!(Generator::new(9, 8).is_err());
        assert!(Generator::new(9, 9).is_ok());
        assert!(Generator::new(1, 65).is_err());
    }

    #[test]
    fn add_cancels_and_checks_mode() {
        let p = poly(&[(&[1], 1)], NC);
        assert!(p.add(&p.neg()).unwrap().is_zero());
        let q = poly(&[(&[2], 2)], NC);
        assert_eq!(p.add(&q).unwrap().to_string(), "x1 + 2*x2");
        let err = p.add(&poly(&[(&[1], 1)], C)).unwrap_err();
        assert!(matches!(err, Error::ModeMismatch { .. }));
    }

    #[test]
    fn scale_examples() {
        assert!(poly(&[(&[1], 1)], NC).scale(&integer(0)).is_zero());
        assert_eq!(
            poly(&[(&[1, 2], 1)], NC).scale(&integer(-1)),
            poly(&[(&[1, 2], -1)], NC)
        );
        let half = poly(&[(&[1], 3)], NC).scale(&rational(1, 2));
        assert_eq!(half.coefficient(&word(&[1], NC)), Some(&rational(3, 2)));
        assert_eq!(half.to_string(), "3/2*x1");
    }

    #[test]
    fn mul_examples() {
        let x1 = generator(x(1), NC);
        let x2 = generator(x(2), NC);
        assert_eq!(x2.mul(&x1).unwrap(), poly(&[(&[2, 1], 1)], NC));
        let (c1, c2) = (generator(x(1), C), generator(x(2), C));
        assert_eq!(c2.mul(&c1).unwrap(), poly(&[(&[1, 2], 1)], C));
        let s = x1.add(&x2).unwrap();
        assert_eq!(
            s.mul(&s).unwrap(),
            poly(&[(&[1, 1], 1), (&[1, 2], 1), (&[2, 1], 1), (&[2, 2], 1)], NC)
        );
        assert!(x1.mul(&c1).is_err());
    }

    #[test]
    fn pow_examples() {
        let sq = sum_n(2, NC).pow(2);
        assert_eq!(sq.len(), 4);
        assert!(sq.terms().values().all(|c| c.is_one()));
        assert_eq!(
            sum_n(2, C).pow(2),
            poly(&[(&[1, 1], 1), (&[1, 2], 2), (&[2, 2], 1)], C)
        );
        assert_eq!(sum_n(3, NC).pow(0), Polynomial::one(NC));
        assert_eq!(Polynomial::one(NC).to_string(), "1");
    }

    #[test]
    fn pow_four_over_four_letters_matches_enumeration() {
        // Brute force: every length-4 word over {1,2,3,4}.
        let mut expected = BTreeMap::new();
        for a in 1..=4 {
            for b in 1..=4 {
                for c in 1..=4 {
                    for d in 1..=4 {
                        expected.insert(word(&[a, b, c, d], NC), integer(1));
                    }
                }
            }
        }
        assert_eq!(expected.len(), 256);
        assert_eq!(sum_n(4, NC).pow(4).into_terms(), expected);
    }

    #[test]
    fn sum_of_generators_examples() {
        let s12 = sum_of_generators(VarSet::from_indices([1, 2]).unwrap(), NC).unwrap();
        assert_eq!(s12, poly(&[(&[1], 1), (&[2], 1)], NC));
        let s3 = sum_of_generators(VarSet::from_indices([3]).unwrap(), NC).unwrap();
        assert_eq!(s3, poly(&[(&[3], 1)], NC));
        assert_eq!(sum_of_generators(VarSet::EMPTY, NC), Err(Error::EmptySubset));
    }

    #[test]
    fn varset_examples() {
        assert_eq!(varset(&word(&[1, 2, 1], NC)).indices(), vec![1, 2]);
        assert!(varset(&Word::<Generator>::unit()).is_empty());
        assert_eq!(varset(&word(&[3], NC)).indices(), vec![3]);
    }

    #[test]
    fn component_examples() {
        let s12 = VarSet::from_indices([1, 2]).unwrap();
        assert_eq!(
            exact_varset_component(&sum_n(2, NC).pow(2), s12),
            poly(&[(&[1, 2], 1), (&[2, 1], 1)], NC)
        );
        let with_const = poly(&[(&[], 5), (&[1], 1)], NC);
        assert_eq!(
            exact_varset_component(&with_const, VarSet::EMPTY),
            poly(&[(&[], 5)], NC)
        );

        // Brute force over the 27 words of length 3: keep those using all letters.
        let cube = sum_n(3, NC).pow(3);
        let mut survivors = Vec::new();
        for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    let mut seen = [a, b, c];
                    seen.sort();
                    if seen == [1, 2, 3] {
                        survivors.push(word(&[a, b, c], NC));
                    }
                }
            }
        }
        let comp = exact_varset_component(&cube, VarSet::full(3));
        assert_eq!(comp.len(), 6);
        assert_eq!(survivors.len(), 6);
        for w in survivors {
            assert_eq!(comp.coefficient(&w), Some(&integer(1)));
        }
    }

    #[test]
    fn multilinear_examples() {
        assert_eq!(
            multilinear_component(&sum_n(2, NC).pow(2), 2),
            poly(&[(&[1, 2], 1), (&[2, 1], 1)], NC)
        );
        assert!(multilinear_component(&poly(&[(&[1, 1], 5)], NC), 2).is_zero());
        let ml = multilinear_component(&sum_n(4, NC).pow(4), 4);
        assert_eq!(ml.len(), 24);
        assert!(ml.terms().values().all(|c| c.is_one()));
        let mlc = multilinear_component(&sum_n(4, C).pow(4), 4);
        assert_eq!(mlc.len(), 1);
        assert_eq!(mlc.terms().values().next(), Some(&integer(24)));
    }

    #[test]
    fn rendering_order_and_signs() {
        let p = poly(&[(&[2, 1], 1), (&[1, 2], 1), (&[3], -2), (&[], 1)], NC);
        assert_eq!(p.to_string(), "1 - 2*x3 + x1*x2 + x2*x1");
        assert_eq!(poly(&[(&[1, 1, 2], -1)], NC).to_string(), "-x1^2*x2");
        assert_eq!(Polynomial::zero(NC).to_string(), "0");
    }

    #[test]
    fn varset_parse_and_subsets() {
        let s: VarSet = "{1, 3}".parse().unwrap();
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(s.subsets().count(), 4);
        assert_eq!(VarSet::full(4).nonempty_subsets().count(), 15);
        assert!("{0}".parse::<VarSet>().is_err());
        assert!("1,2".parse::<VarSet>().is_err());
    }

    #[test]
    fn large_products_agree_with_sequential_expansion() {
        let p = sum_n(5, NC).pow(3);
        let q = sum_n(5, NC).pow(4);
        let par = p.mul(&q).unwrap();
        let mut seq = BTreeMap::new();
        for (w1, c1) in p.terms() {
            for (w2, c2) in q.terms() {
                accumulate(&mut seq, w1.mul(w2, NC), c1 * c2);
            }
        }
        assert_eq!(par.into_terms(), seq);
    }
}
