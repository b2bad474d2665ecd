//! The codomain algebra: free on formal images `h(w)` of domain words.
//!
//! `h` is modelled as nothing more than a linear symbol, so every identity
//! proved here holds for every linear map into every algebra of the right
//! kind.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::freealg::{Coefficient, Generator, Letter, Mode, Poly, Polynomial, VarSet, Word};

/// The formal image `h(w)` of a canonical domain word.
///
/// Ordered by the domain word order: degree first, then letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HSymbol(Word<Generator>);

impl HSymbol {
    pub fn new(arg: Word<Generator>) -> Self {
        HSymbol(arg)
    }

    pub fn arg(&self) -> &Word<Generator> {
        &self.0
    }
}

impl Letter for HSymbol {
    fn varset(&self) -> VarSet {
        self.0.varset()
    }
}

impl fmt::Display for HSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h({})", self.0)
    }
}

/// A product of `h`-factors.
pub type BWord = Word<HSymbol>;

/// Domain and codomain modes travelling together.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Modes {
    pub a: Mode,
    pub b: Mode,
}

impl Modes {
    pub fn new(a: Mode, b: Mode) -> Self {
        Modes { a, b }
    }

    /// The four (A, B) combinations.
    pub fn all() -> [Modes; 4] {
        [
            Modes::new(Mode::Commutative, Mode::Commutative),
            Modes::new(Mode::Commutative, Mode::Noncommutative),
            Modes::new(Mode::Noncommutative, Mode::Commutative),
            Modes::new(Mode::Noncommutative, Mode::Noncommutative),
        ]
    }
}

/// Element of the codomain algebra. Carries the domain mode too, so values
/// built over differently-canonicalized domains never mix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BPolynomial {
    a_mode: Mode,
    body: Poly<HSymbol>,
}

impl BPolynomial {
    pub fn zero(modes: Modes) -> Self {
        BPolynomial {
            a_mode: modes.a,
            body: Poly::zero(modes.b),
        }
    }

    pub fn one(modes: Modes) -> Self {
        BPolynomial {
            a_mode: modes.a,
            body: Poly::one(modes.b),
        }
    }

    /// Builds from raw `(factors, coefficient)` terms; domain words inside
    /// the factors must already be canonical for `modes.a`.
    pub fn from_terms<I>(terms: I, modes: Modes) -> Self
    where
        I: IntoIterator<Item = (BWord, Coefficient)>,
    {
        BPolynomial {
            a_mode: modes.a,
            body: Poly::from_terms(terms, modes.b),
        }
    }

    pub fn modes(&self) -> Modes {
        Modes::new(self.a_mode, self.body.mode())
    }

    pub fn a_mode(&self) -> Mode {
        self.a_mode
    }

    pub fn b_mode(&self) -> Mode {
        self.body.mode()
    }

    pub fn as_poly(&self) -> &Poly<HSymbol> {
        &self.body
    }

    pub fn terms(&self) -> &std::collections::BTreeMap<BWord, Coefficient> {
        self.body.terms()
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn is_canonical(&self) -> bool {
        self.body.is_canonical()
            && self
                .terms()
                .keys()
                .all(|bw| bw.letters().iter().all(|h| h.arg().is_canonical(self.a_mode)))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.a_mode != other.a_mode {
            return Err(Error::ModeMismatch {
                left: self.a_mode,
                right: other.a_mode,
            });
        }
        Ok(())
    }

    fn wrap(&self, body: Poly<HSymbol>) -> Self {
        BPolynomial {
            a_mode: self.a_mode,
            body,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.body.add(&other.body)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.body.sub(&other.body)?))
    }

    pub fn add_scaled_assign(&mut self, other: &Self, c: &Coefficient) -> Result<()> {
        self.check(other)?;
        self.body.add_scaled_assign(&other.body, c)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        self.wrap(self.body.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.body.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.body.mul(&other.body)?))
    }

    pub fn pow(&self, n: u32) -> Self {
        self.wrap(self.body.pow(n))
    }

    pub fn exact_varset_component(&self, set: VarSet) -> Self {
        self.wrap(self.body.exact_varset_component(set))
    }

    pub fn scalar_ratio(&self, other: &Self) -> Option<Coefficient> {
        if self.a_mode != other.a_mode {
            return None;
        }
        self.body.scalar_ratio(&other.body)
    }

    /// Renames generators through `perm` (`perm[i - 1]` is the image of
    /// `x_i`) inside every `h`-argument.
    pub fn relabel(&self, perm: &[Generator]) -> Self {
        let a_mode = self.a_mode;
        let body = self.body.map_letters(|h| {
            HSymbol(h.arg().map_letters(|g| perm[g.index() - 1], a_mode))
        });
        self.wrap(body)
    }
}

impl fmt::Display for BPolynomial {
    /// `h(x1*x2)*h(x3) - h(x1)*h(x2)*h(x3)`; the empty product renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.body.fmt(f)
    }
}

/// Linear extension of `w ↦ h(w)`.
pub fn lift(p: &Polynomial, modes: Modes) -> Result<BPolynomial> {
    if p.mode() != modes.a {
        return Err(Error::ModeMismatch {
            left: p.mode(),
            right: modes.a,
        });
    }
    Ok(BPolynomial::from_terms(
        p.terms()
            .iter()
            .map(|(w, c)| (Word::letter(HSymbol(w.clone())), c.clone())),
        modes,
    ))
}

/// The single product `h(x_{i1}) h(x_{i2}) ...` in the given order.
pub fn h_product(gens: &[Generator], modes: Modes) -> BPolynomial {
    let factors = gens
        .iter()
        .map(|g| HSymbol(Word::letter(*g)))
        .collect::<Vec<_>>();
    BPolynomial::from_terms([(Word::new(factors, modes.b), Coefficient::one())], modes)
}

/// Union of the variable sets of all factors.
pub fn b_varset(bw: &BWord) -> VarSet {
    bw.varset()
}

pub fn b_exact_varset_component(bp: &BPolynomial, set: VarSet) -> BPolynomial {
    bp.exact_varset_component(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{generator, integer, sum_of_generators, DEFAULT_GENERATOR_CAP};

    const NC: Mode = Mode::Noncommutative;
    const C: Mode = Mode::Commutative;

    fn x(i: usize) -> Generator {
        Generator::new(i, DEFAULT_GENERATOR_CAP).unwrap()
    }

    fn h(indices: &[usize], a: Mode) -> HSymbol {
        HSymbol(Word::new(indices.iter().map(|&i| x(i)).collect(), a))
    }

    fn bword(factors: &[&[usize]], modes: Modes) -> BWord {
        Word::new(factors.iter().map(|f| h(f, modes.a)).collect(), modes.b)
    }

    fn bpoly(terms: &[(&[&[usize]], i64)], modes: Modes) -> BPolynomial {
        BPolynomial::from_terms(
            terms.iter().map(|(f, c)| (bword(f, modes), integer(*c))),
            modes,
        )
    }

    fn sum(indices: &[usize], a: Mode) -> Polynomial {
        sum_of_generators(VarSet::from_indices(indices.iter().copied()).unwrap(), a).unwrap()
    }

    #[test]
    fn lift_examples() {
        let m = Modes::new(NC, NC);
        assert_eq!(
            lift(&generator(x(1), NC), m).unwrap(),
            bpoly(&[(&[&[1]], 1)], m)
        );
        let p = Polynomial::from_terms(
            [
                (Word::new(vec![x(1), x(2)], NC), integer(2)),
                (Word::letter(x(3)), integer(-1)),
            ],
            NC,
        );
        let lifted = lift(&p, m).unwrap();
        assert_eq!(lifted, bpoly(&[(&[&[1, 2]], 2), (&[&[3]], -1)], m));
        assert_eq!(lifted.to_string(), "-h(x3) + 2*h(x1*x2)");
        assert!(lift(&Polynomial::zero(NC), m).unwrap().is_zero());
        assert!(lift(&generator(x(1), C), m).is_err());
    }

    #[test]
    fn b_pow_examples() {
        let m = Modes::new(NC, NC);
        let s = lift(&sum(&[1, 2], NC), m).unwrap();
        assert_eq!(
            s.pow(2),
            bpoly(
                &[
                    (&[&[1], &[1]], 1),
                    (&[&[1], &[2]], 1),
                    (&[&[2], &[1]], 1),
                    (&[&[2], &[2]], 1)
                ],
                m
            )
        );
        let mc = Modes::new(NC, C);
        let sc = lift(&sum(&[1, 2], NC), mc).unwrap();
        assert_eq!(
            sc.pow(2),
            bpoly(&[(&[&[1], &[1]], 1), (&[&[1], &[2]], 2), (&[&[2], &[2]], 1)], mc)
        );
        assert_eq!(sc.pow(2).to_string(), "h(x1)^2 + 2*h(x1)*h(x2) + h(x2)^2");
        assert!(BPolynomial::zero(m).mul(&s).unwrap().is_zero());
    }

    #[test]
    fn b_pow_counts() {
        let m = Modes::new(NC, NC);
        let s = lift(&sum(&[1, 2, 3], NC), m).unwrap();
        let cube = s.pow(3);
        assert_eq!(cube.len(), 27);
        assert!(cube.terms().keys().all(|w| w.degree() == 3));
    }

    #[test]
    fn mixed_domain_modes_rejected() {
        let a = BPolynomial::zero(Modes::new(C, NC));
        let b = BPolynomial::zero(Modes::new(NC, NC));
        assert!(a.add(&b).is_err());
        let c = BPolynomial::zero(Modes::new(C, C));
        assert!(a.mul(&c).is_err());
    }

    #[test]
    fn b_varset_examples() {
        let m = Modes::new(NC, NC);
        assert_eq!(b_varset(&bword(&[&[1], &[2]], m)).indices(), vec![1, 2]);
        assert_eq!(b_varset(&bword(&[&[1, 2, 1]], m)).indices(), vec![1, 2]);
        assert!(b_varset(&BWord::unit()).is_empty());
    }

    #[test]
    fn b_component_examples() {
        let m = Modes::new(NC, NC);
        let s12 = VarSet::from_indices([1, 2]).unwrap();
        let lifted = lift(&sum(&[1, 2], NC).pow(2), m).unwrap();
        assert_eq!(
            b_exact_varset_component(&lifted, s12),
            bpoly(&[(&[&[1, 2]], 1), (&[&[2, 1]], 1)], m)
        );
        assert!(b_exact_varset_component(&lifted, VarSet::EMPTY).is_zero());

        // Enumerate all 27 length-3 products over h(x1), h(x2), h(x3) and keep
        // those whose letters are exactly {1, 2}.
        let cube = lift(&sum(&[1, 2, 3], NC), m).unwrap().pow(3);
        let comp = b_exact_varset_component(&cube, s12);
        let mut expected = Vec::new();
        for a in 1..=3usize {
            for b in 1..=3usize {
                for c in 1..=3usize {
                    let f = [a, b, c];
                    if f.iter().all(|&i| i <= 2) && f.contains(&1) && f.contains(&2) {
                        expected.push((bword(&[&[a], &[b], &[c]], m), integer(1)));
                    }
                }
            }
        }
        assert_eq!(expected.len(), 6);
        assert_eq!(comp, BPolynomial::from_terms(expected, m));
    }

    #[test]
    fn commutative_b_orders_symbols_by_degree_then_letters() {
        let m = Modes::new(NC, C);
        let w = bword(&[&[1, 2], &[3], &[1]], m);
        assert_eq!(w.to_string(), "h(x1)*h(x3)*h(x1*x2)");
    }

    #[test]
    fn relabel_applies_permutation() {
        let m = Modes::new(NC, NC);
        let p = bpoly(&[(&[&[1, 2]], 1), (&[&[1], &[2]], -1)], m);
        let swapped = p.relabel(&[x(2), x(1)]);
        assert_eq!(swapped, bpoly(&[(&[&[2, 1]], 1), (&[&[2], &[1]], -1)], m));
    }
}
