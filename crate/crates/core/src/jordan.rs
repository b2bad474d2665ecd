//! Polarization of the Jordan defect over the subset lattice.
//!
//! For a subset `S` of `{1..n}` let `phi(S) = h((Σ_{i∈S} x_i)^n) - h(Σ_{i∈S} x_i)^n`.
//! Every term of `phi(S)` mentions some nonempty `T ⊆ S`, so `phi(S)` splits
//! into components `psi(T)`. This module computes those components three
//! independent ways (recursive subtraction, literal extraction, and the
//! inclusion–exclusion closed form), checks the top component against the
//! symmetrized multiplicativity defect, and checks the commutative collapse
//! to `n!` times the plain defect.
//!
//! It also evaluates the "sum over all intermediate `phi`" decomposition that
//! is sometimes claimed for the same quantity, and measures how many times
//! each pair component is counted on its right-hand side.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::One;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::blift::{h_product, lift, BPolynomial, HSymbol, Modes};
use crate::error::{Error, Result};
use crate::freealg::{
    factorial, integer, sum_of_generators, Coefficient, Generator, Polynomial, VarSet, Word,
    DEFAULT_GENERATOR_CAP, MAX_GENERATORS,
};

/// A nonempty subset of `{1..n}` indexing a `phi` or `psi` instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetId(VarSet);

impl SubsetId {
    pub fn new(set: VarSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(SubsetId(set))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        SubsetId::new(VarSet::from_indices(indices)?)
    }

    pub fn full(n: usize) -> Self {
        assert!(n >= 1);
        SubsetId(VarSet::full(n))
    }

    pub fn set(self) -> VarSet {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn indices(self) -> Vec<usize> {
        self.0.indices()
    }

    /// Order used in listings: larger subsets first, then lexicographic.
    fn listing_key(self) -> (Reverse<usize>, Vec<usize>) {
        (Reverse(self.len()), self.indices())
    }
}

impl fmt::Display for SubsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for SubsetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SubsetId::new(s.parse()?)
    }
}

/// Degree `n` and the modes of the domain and codomain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JordanConfig {
    n: usize,
    modes: Modes,
    cap: usize,
}

impl JordanConfig {
    pub fn new(n: usize, modes: Modes) -> Result<Self> {
        Self::with_cap(n, modes, DEFAULT_GENERATOR_CAP)
    }

    pub fn with_cap(n: usize, modes: Modes, cap: usize) -> Result<Self> {
        if cap > MAX_GENERATORS {
            return Err(Error::CapTooLarge {
                cap,
                max: MAX_GENERATORS,
            });
        }
        if n < 2 {
            return Err(Error::InvalidDegree {
                n,
                reason: "degree must be at least 2",
            });
        }
        if n > cap {
            return Err(Error::InvalidDegree {
                n,
                reason: "degree exceeds the configured generator cap",
            });
        }
        Ok(JordanConfig { n, modes, cap })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modes(&self) -> Modes {
        self.modes
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn full(&self) -> SubsetId {
        SubsetId::full(self.n)
    }

    fn check_subset(&self, s: SubsetId) -> Result<()> {
        if s.set().max_index() > self.n {
            return Err(Error::SubsetOutOfRange {
                subset: s.to_string(),
                n: self.n,
            });
        }
        Ok(())
    }

    fn exponent(&self) -> u32 {
        self.n as u32
    }
}

/// `h(a^n) - h(a)^n`.
pub fn jordan_defect(a: &Polynomial, cfg: &JordanConfig) -> Result<BPolynomial> {
    let span = a
        .terms()
        .keys()
        .fold(VarSet::EMPTY, |acc, w| acc.union(w.varset()));
    if span.max_index() > cfg.cap {
        return Err(Error::GeneratorOutOfRange {
            index: span.max_index(),
            cap: cfg.cap,
        });
    }
    let n = cfg.exponent();
    let image = lift(a, cfg.modes)?;
    lift(&a.pow(n), cfg.modes)?.sub(&image.pow(n))
}

/// The Jordan defect evaluated on `Σ_{i∈S} x_i`.
pub fn phi(s: SubsetId, cfg: &JordanConfig) -> Result<BPolynomial> {
    cfg.check_subset(s)?;
    jordan_defect(&sum_of_generators(s.set(), cfg.modes.a)?, cfg)
}

/// `h(x1 x2 ... xn) - h(x1) h(x2) ... h(xn)`.
pub fn plain_defect(cfg: &JordanConfig) -> BPolynomial {
    let gens = generators(cfg.n);
    ordered_defect(&gens, cfg.modes)
}

fn generators(n: usize) -> Vec<Generator> {
    (1..=n).map(Generator::from_index).collect()
}

fn ordered_defect(gens: &[Generator], modes: Modes) -> BPolynomial {
    let word = Word::new(gens.to_vec(), modes.a);
    let lifted = BPolynomial::from_terms(
        [(Word::letter(HSymbol::new(word)), Coefficient::one())],
        modes,
    );
    lifted.sub(&h_product(gens, modes)).expect("same modes")
}

/// `Σ_{σ ∈ S_n} h(x_σ(1) ... x_σ(n)) - h(x_σ(1)) ... h(x_σ(n))`.
pub fn symmetrized_defect(cfg: &JordanConfig) -> BPolynomial {
    let gens = generators(cfg.n);
    let mut acc = BPolynomial::zero(cfg.modes);
    for perm in gens.iter().copied().permutations(cfg.n) {
        acc.add_scaled_assign(&ordered_defect(&perm, cfg.modes), &Coefficient::one())
            .expect("same modes");
    }
    acc
}

/// `phi` on every nonempty subset of a universe, and the components `psi`
/// obtained from them by recursive subtraction.
#[derive(Clone, Debug)]
pub struct Lattice {
    cfg: JordanConfig,
    universe: SubsetId,
    phi: HashMap<VarSet, BPolynomial>,
    psi: HashMap<VarSet, BPolynomial>,
}

impl Lattice {
    pub fn new(cfg: &JordanConfig, universe: SubsetId) -> Result<Self> {
        cfg.check_subset(universe)?;
        let subsets: Vec<VarSet> = universe.set().nonempty_subsets().collect();
        let phi = subsets
            .par_iter()
            .map(|&s| Ok((s, phi(SubsetId(s), cfg)?)))
            .collect::<Result<HashMap<_, _>>>()?;

        let mut psi: HashMap<VarSet, BPolynomial> = HashMap::with_capacity(subsets.len());
        for size in 1..=universe.len() {
            let level: Vec<VarSet> = subsets.iter().copied().filter(|s| s.len() == size).collect();
            let computed = level
                .par_iter()
                .map(|&s| {
                    let mut value = phi[&s].clone();
                    for t in s.nonempty_subsets().filter(|&t| t != s) {
                        value.add_scaled_assign(&psi[&t], &-Coefficient::one())?;
                    }
                    Ok((s, value))
                })
                .collect::<Result<Vec<_>>>()?;
            psi.extend(computed);
        }
        Ok(Lattice {
            cfg: *cfg,
            universe,
            phi,
            psi,
        })
    }

    pub fn config(&self) -> &JordanConfig {
        &self.cfg
    }

    pub fn universe(&self) -> SubsetId {
        self.universe
    }

    pub fn phi(&self, s: SubsetId) -> &BPolynomial {
        &self.phi[&s.set()]
    }

    pub fn psi(&self, s: SubsetId) -> &BPolynomial {
        &self.psi[&s.set()]
    }

    /// `Σ_{∅≠T⊆S} (-1)^{|S|-|T|} phi(T)`.
    pub fn mobius(&self, s: SubsetId) -> BPolynomial {
        let mut acc = BPolynomial::zero(self.cfg.modes);
        for t in s.set().nonempty_subsets() {
            acc.add_scaled_assign(&self.phi[&t], &inclusion_exclusion_sign(s.len(), t.len()))
                .expect("same modes");
        }
        acc
    }

    pub fn subsets(&self) -> impl Iterator<Item = SubsetId> + '_ {
        self.universe.set().nonempty_subsets().map(SubsetId)
    }
}

fn inclusion_exclusion_sign(outer: usize, inner: usize) -> Coefficient {
    if (outer - inner).is_multiple_of(2) {
        Coefficient::one()
    } else {
        -Coefficient::one()
    }
}

/// The component of `phi(S)` mentioning exactly `S`, by recursive
/// subtraction of all lower components.
pub fn psi_recursive(s: SubsetId, cfg: &JordanConfig) -> Result<BPolynomial> {
    Ok(Lattice::new(cfg, s)?.psi(s).clone())
}

/// The component of `phi(S)` mentioning exactly `S`, read off directly.
pub fn psi_extract(s: SubsetId, cfg: &JordanConfig) -> Result<BPolynomial> {
    Ok(phi(s, cfg)?.exact_varset_component(s.set()))
}

/// The inclusion–exclusion form `Σ_{∅≠T⊆S} (-1)^{|S|-|T|} phi(T)`.
pub fn mobius_psi(s: SubsetId, cfg: &JordanConfig) -> Result<BPolynomial> {
    cfg.check_subset(s)?;
    let mut acc = BPolynomial::zero(cfg.modes);
    for t in s.set().nonempty_subsets() {
        acc.add_scaled_assign(&phi(SubsetId(t), cfg)?, &inclusion_exclusion_sign(s.len(), t.len()))?;
    }
    Ok(acc)
}

/// Two sides of a claimed identity and their difference.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub lhs: BPolynomial,
    pub rhs: BPolynomial,
    pub difference: BPolynomial,
}

impl IdentityCheck {
    fn new(lhs: BPolynomial, rhs: BPolynomial) -> Result<Self> {
        let difference = lhs.sub(&rhs)?;
        Ok(IdentityCheck {
            lhs,
            rhs,
            difference,
        })
    }

    pub fn holds(&self) -> bool {
        self.difference.is_zero()
    }
}

/// `phi({1..n}) = Σ_{∅≠S⊆{1..n}} psi(S)`.
pub fn verify_decomposition(cfg: &JordanConfig) -> Result<IdentityCheck> {
    decomposition_on(&Lattice::new(cfg, cfg.full())?)
}

pub fn decomposition_on(lattice: &Lattice) -> Result<IdentityCheck> {
    let mut rhs = BPolynomial::zero(lattice.cfg.modes);
    for s in lattice.subsets() {
        rhs.add_scaled_assign(lattice.psi(s), &Coefficient::one())?;
    }
    IdentityCheck::new(lattice.phi(lattice.universe).clone(), rhs)
}

/// `psi({1..n}) = symmetrized_defect`.
pub fn verify_theorem(cfg: &JordanConfig) -> Result<IdentityCheck> {
    theorem_on(&Lattice::new(cfg, cfg.full())?)
}

pub fn theorem_on(lattice: &Lattice) -> Result<IdentityCheck> {
    IdentityCheck::new(
        lattice.psi(lattice.universe).clone(),
        symmetrized_defect(&lattice.cfg),
    )
}

#[derive(Clone, Debug)]
pub struct CollapseCheck {
    pub symmetrized: BPolynomial,
    pub plain: BPolynomial,
    /// `c` with `symmetrized = c * plain`, if one exists.
    pub factor: Option<Coefficient>,
    pub expected: Coefficient,
}

impl CollapseCheck {
    pub fn holds(&self) -> bool {
        self.factor.as_ref() == Some(&self.expected)
    }

    pub fn difference(&self) -> BPolynomial {
        self.symmetrized
            .sub(&self.plain.scale(&self.expected))
            .expect("same modes")
    }
}

/// With both algebras commutative, `symmetrized_defect = n! * plain_defect`.
pub fn verify_collapse(cfg: &JordanConfig) -> Result<CollapseCheck> {
    let modes = cfg.modes;
    if !(modes.a.is_commutative() && modes.b.is_commutative()) {
        return Err(Error::RequiresCommutative {
            a_mode: modes.a,
            b_mode: modes.b,
        });
    }
    let symmetrized = symmetrized_defect(cfg);
    let plain = plain_defect(cfg);
    let factor = symmetrized.scalar_ratio(&plain);
    Ok(CollapseCheck {
        symmetrized,
        plain,
        factor,
        expected: factorial(cfg.n),
    })
}

fn require_refutable(cfg: &JordanConfig) -> Result<()> {
    if cfg.n < 4 {
        return Err(Error::InvalidDegree {
            n: cfg.n,
            reason: "the intermediate-phi decomposition is only stated for n >= 4",
        });
    }
    Ok(())
}

/// Subsets `S` with `2 <= |S| <= n - 1`, in listing order.
fn intermediate_subsets(n: usize) -> Vec<SubsetId> {
    VarSet::full(n)
        .nonempty_subsets()
        .filter(|s| (2..n).contains(&s.len()))
        .map(SubsetId)
        .sorted_by_key(|s| s.listing_key())
        .collect()
}

/// `Σ_{2<=|S|<=n-1} phi(S) + n! * plain_defect`.
pub fn cheshmavar_rhs(cfg: &JordanConfig) -> Result<BPolynomial> {
    require_refutable(cfg)?;
    let lattice = Lattice::new(cfg, cfg.full())?;
    Ok(rhs_on(&lattice))
}

fn rhs_on(lattice: &Lattice) -> BPolynomial {
    let cfg = &lattice.cfg;
    let mut acc = plain_defect(cfg).scale(&factorial(cfg.n));
    for s in intermediate_subsets(cfg.n) {
        acc.add_scaled_assign(lattice.phi(s), &Coefficient::one())
            .expect("same modes");
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Multiplicity {
    pub lhs: usize,
    pub rhs: usize,
}

/// Why `phi({1..n}) = Σ_{2<=|S|<=n-1} phi(S) + n! * plain_defect` fails.
#[derive(Clone, Debug)]
pub struct RefutationReport {
    pub n: usize,
    /// `phi({1..n})` minus the claimed right-hand side.
    pub residual: BPolynomial,
    /// For every pair `P`: how many instances on each side carry a nonzero
    /// exact-`P` component.
    pub multiplicities: BTreeMap<SubsetId, Multiplicity>,
    /// Exact-`{1,2}` component of the residual.
    pub pair_component: BPolynomial,
    /// `c` with `pair_component = c * psi({1,2})`, if one exists.
    pub pair_factor: Option<Coefficient>,
}

impl RefutationReport {
    pub fn refuted(&self) -> bool {
        !self.residual.is_zero()
    }

    /// The factor implied by the multiplicities: `lhs - rhs` copies of `psi({1,2})`.
    pub fn expected_pair_factor(&self) -> Coefficient {
        let m = self.multiplicities[&SubsetId(VarSet::full(2))];
        integer(m.lhs as i64 - m.rhs as i64)
    }
}

pub fn refute_cheshmavar(cfg: &JordanConfig) -> Result<RefutationReport> {
    require_refutable(cfg)?;
    let n = cfg.n;
    let lattice = Lattice::new(cfg, cfg.full())?;
    let lhs = lattice.phi(cfg.full());
    let residual = lhs.sub(&rhs_on(&lattice))?;

    let mut rhs_instances: Vec<BPolynomial> = intermediate_subsets(n)
        .into_iter()
        .map(|s| lattice.phi(s).clone())
        .collect();
    rhs_instances.push(plain_defect(cfg).scale(&factorial(n)));

    let carries = |p: &BPolynomial, pair: VarSet| !p.exact_varset_component(pair).is_zero();
    let multiplicities = VarSet::full(n)
        .nonempty_subsets()
        .filter(|s| s.len() == 2)
        .map(|pair| {
            let m = Multiplicity {
                lhs: usize::from(carries(lhs, pair)),
                rhs: rhs_instances.iter().filter(|p| carries(p, pair)).count(),
            };
            (SubsetId(pair), m)
        })
        .collect();

    let pair = VarSet::full(2);
    let pair_component = residual.exact_varset_component(pair);
    let psi_pair = lhs.exact_varset_component(pair);
    let pair_factor = pair_component.scalar_ratio(&psi_pair);
    Ok(RefutationReport {
        n,
        residual,
        multiplicities,
        pair_component,
        pair_factor,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertificateEntry {
    /// `+1` or `-1`.
    pub sign: i8,
    pub subset: SubsetId,
}

/// A signed list of `phi` instances together with the hash of the
/// expression they sum to. Since every `phi` vanishes for an `n`-Jordan map,
/// so does the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub entries: Vec<CertificateEntry>,
    pub target_hash: String,
}

pub fn render_hash(p: &BPolynomial) -> String {
    hex::encode(Sha256::digest(p.to_string().as_bytes()))
}

impl Certificate {
    /// `Σ sign * phi(subset)`.
    pub fn evaluate(&self, cfg: &JordanConfig) -> Result<BPolynomial> {
        let mut acc = BPolynomial::zero(cfg.modes);
        for entry in &self.entries {
            acc.add_scaled_assign(&phi(entry.subset, cfg)?, &integer(entry.sign.into()))?;
        }
        Ok(acc)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let sign = if e.sign > 0 { "+1" } else { "-1" };
            out.push_str(&format!("{sign} phi {}\n", e.subset));
        }
        out.push_str(&format!("target {}\n", self.target_hash));
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut target_hash = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::Parse(format!("line {}: {what}: `{raw}`", lineno + 1));
            if target_hash.is_some() {
                return Err(bad("content after target line"));
            }
            if let Some(hash) = line.strip_prefix("target ") {
                target_hash = Some(hash.trim().to_string());
                continue;
            }
            let (sign, rest) = line.split_once(' ').ok_or_else(|| bad("malformed entry"))?;
            let sign = match sign {
                "+1" => 1,
                "-1" => -1,
                _ => return Err(bad("sign must be +1 or -1")),
            };
            let subset = rest
                .trim()
                .strip_prefix("phi ")
                .ok_or_else(|| bad("expected `phi {...}`"))?
                .parse::<SubsetId>()?;
            entries.push(CertificateEntry { sign, subset });
        }
        let target_hash = target_hash.ok_or_else(|| Error::Parse("missing target line".into()))?;
        Ok(Certificate {
            entries,
            target_hash,
        })
    }

    /// Evaluates the entries and compares against both the recorded hash
    /// and the symmetrized defect.
    pub fn check(&self, cfg: &JordanConfig) -> Result<CertificateCheck> {
        let value = self.evaluate(cfg)?;
        let evaluated_hash = render_hash(&value);
        let n = cfg.n;
        let signs_alternate = self.entries.iter().all(|e| {
            let expected = if (n - e.subset.len()).is_multiple_of(2) { 1 } else { -1 };
            e.sign == expected
        });
        let mut listed: Vec<VarSet> = self.entries.iter().map(|e| e.subset.set()).collect();
        listed.sort();
        let mut all: Vec<VarSet> = VarSet::full(n).nonempty_subsets().collect();
        all.sort();
        Ok(CertificateCheck {
            hash_matches: evaluated_hash == self.target_hash,
            reproduces_symmetrized: value == symmetrized_defect(cfg),
            signs_alternate,
            covers_lattice: listed == all,
            evaluated_hash,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub evaluated_hash: String,
    pub hash_matches: bool,
    pub reproduces_symmetrized: bool,
    pub signs_alternate: bool,
    pub covers_lattice: bool,
}

impl CertificateCheck {
    pub fn passed(&self) -> bool {
        self.hash_matches && self.reproduces_symmetrized && self.signs_alternate && self.covers_lattice
    }
}

/// `{((-1)^{n-|T|}, T) : ∅ ≠ T ⊆ {1..n}}`, re-verified by evaluation before
/// it is returned.
pub fn emit_certificate(cfg: &JordanConfig) -> Result<Certificate> {
    let n = cfg.n;
    let entries: Vec<CertificateEntry> = VarSet::full(n)
        .nonempty_subsets()
        .map(SubsetId)
        .sorted_by_key(|s| s.listing_key())
        .map(|subset| CertificateEntry {
            sign: if (n - subset.len()).is_multiple_of(2) { 1 } else { -1 },
            subset,
        })
        .collect();
    let target = symmetrized_defect(cfg);
    let cert = Certificate {
        entries,
        target_hash: render_hash(&target),
    };
    let value = cert.evaluate(cfg)?;
    if value != target {
        return Err(Error::CertificateMismatch(
            value.sub(&target)?.to_string(),
        ));
    }
    Ok(cert)
}
