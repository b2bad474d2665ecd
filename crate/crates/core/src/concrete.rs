//! Finite-dimensional algebras given by structure constants, and concrete
//! linear maps between them. Used to evaluate symbolic expressions with exact
//! rational arithmetic.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::blift::{BPolynomial, HSymbol};
use crate::error::{Error, Result};
use crate::freealg::{rational, Coefficient, Generator, Mode, Polynomial, Word};
use crate::jordan::{symmetrized_defect, JordanConfig, Lattice};

pub const ALGEBRA_FILE_HEADER: &str = "njordan-algebra v1";

/// Coordinates of an algebra element in its basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorElem(Vec<Coefficient>);

impl VectorElem {
    pub fn new(coords: Vec<Coefficient>) -> Self {
        VectorElem(coords)
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        VectorElem(coords.iter().map(|&c| rational(c, 1)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        VectorElem(vec![Coefficient::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Coefficient::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Coefficient] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(VectorElem(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(VectorElem(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        VectorElem(self.0.iter().map(|a| a * c).collect())
    }

    fn add_scaled_assign(&mut self, other: &Self, c: &Coefficient) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b * c;
        }
    }
}

impl fmt::Display for VectorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// An associative algebra on a basis `e_1..e_d` with
/// `e_i * e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    name: String,
    dim: usize,
    labels: Vec<String>,
    constants: Vec<Coefficient>,
    commutative: bool,
    unit: Option<VectorElem>,
}

/// Checks associativity on all basis triples and computes the commutativity
/// flag and the unit, if any.
pub fn build_algebra(
    name: impl Into<String>,
    dim: usize,
    constants: Vec<Coefficient>,
    labels: Option<Vec<String>>,
) -> Result<StructureAlgebra> {
    if dim == 0 {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    if constants.len() != dim * dim * dim {
        return Err(Error::DimensionMismatch {
            expected: dim * dim * dim,
            got: constants.len(),
        });
    }
    let labels = match labels {
        Some(l) if l.len() != dim => {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: l.len(),
            })
        }
        Some(l) => l,
        None => (1..=dim).map(|i| format!("e{i}")).collect(),
    };
    let mut alg = StructureAlgebra {
        name: name.into(),
        dim,
        labels,
        constants,
        commutative: false,
        unit: None,
    };
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let left = alg.multiply_basis_vec(&alg.product_basis(i, j), k);
                let right = alg.basis_multiply_vec(i, &alg.product_basis(j, k));
                if left != right {
                    return Err(Error::NonAssociative {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                    });
                }
            }
        }
    }
    alg.commutative = (0..dim).all(|i| (0..dim).all(|j| alg.product_basis(i, j) == alg.product_basis(j, i)));
    alg.unit = alg.solve_unit();
    Ok(alg)
}

impl StructureAlgebra {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_associative(&self) -> bool {
        // Rejected at construction otherwise.
        true
    }

    pub fn unit(&self) -> Option<&VectorElem> {
        self.unit.as_ref()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Coefficient {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis(&self, i: usize) -> VectorElem {
        VectorElem::basis(self.dim, i)
    }

    fn product_basis(&self, i: usize, j: usize) -> VectorElem {
        VectorElem((0..self.dim).map(|k| self.constant(i, j, k).clone()).collect())
    }

    fn multiply_basis_vec(&self, u: &VectorElem, k: usize) -> VectorElem {
        self.multiply(u, &self.basis(k)).expect("dims agree")
    }

    fn basis_multiply_vec(&self, i: usize, v: &VectorElem) -> VectorElem {
        self.multiply(&self.basis(i), v).expect("dims agree")
    }

    fn check_dim(&self, v: &VectorElem) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, u: &VectorElem, v: &VectorElem) -> Result<VectorElem> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        let mut out = VectorElem::zeros(self.dim);
        for (i, ui) in u.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, vj) in v.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let uv = ui * vj;
                for k in 0..self.dim {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        out.0[k] += &uv * c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `u^n` by iterated multiplication; `u^0` is the unit.
    pub fn power(&self, u: &VectorElem, n: u32) -> Result<VectorElem> {
        self.check_dim(u)?;
        if n == 0 {
            return self.unit.clone().ok_or(Error::NoUnit);
        }
        let mut acc = u.clone();
        for _ in 1..n {
            acc = self.multiply(&acc, u)?;
        }
        Ok(acc)
    }

    /// Left-to-right product; the empty product is the unit.
    pub fn product<'a, I>(&self, factors: I) -> Result<VectorElem>
    where
        I: IntoIterator<Item = &'a VectorElem>,
    {
        let mut iter = factors.into_iter();
        let Some(first) = iter.next() else {
            return self.unit.clone().ok_or(Error::NoUnit);
        };
        self.check_dim(first)?;
        let mut acc = first.clone();
        for f in iter {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// Solves `u e_j = e_j u = e_j` for all `j`.
    fn solve_unit(&self) -> Option<VectorElem> {
        let d = self.dim;
        let mut rows: Vec<Vec<Coefficient>> = Vec::with_capacity(2 * d * d);
        for j in 0..d {
            for k in 0..d {
                let target = if j == k { Coefficient::one() } else { Coefficient::zero() };
                let mut left: Vec<Coefficient> = (0..d).map(|i| self.constant(i, j, k).clone()).collect();
                left.push(target.clone());
                let mut right: Vec<Coefficient> = (0..d).map(|i| self.constant(j, i, k).clone()).collect();
                right.push(target);
                rows.push(left);
                rows.push(right);
            }
        }
        solve_linear(rows, d).map(VectorElem)
    }

    /// Versioned text format: header, `dim d`, optional `labels ...`, then
    /// `d^3` rationals in `(i, j, k)` row-major order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{ALGEBRA_FILE_HEADER}\ndim {}\nlabels {}\n", self.dim, self.labels.join(" "));
        for i in 0..self.dim {
            for j in 0..self.dim {
                let row: Vec<String> = (0..self.dim).map(|k| self.constant(i, j, k).to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }

    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        match lines.next() {
            Some(h) if h == ALGEBRA_FILE_HEADER => {}
            other => {
                return Err(Error::Parse(format!(
                    "expected header `{ALGEBRA_FILE_HEADER}`, found `{}`",
                    other.unwrap_or("")
                )))
            }
        }
        let dim = lines
            .next()
            .and_then(|l| l.strip_prefix("dim "))
            .and_then(|d| d.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse("expected `dim <d>`".into()))?;
        let mut labels = None;
        let mut constants = Vec::new();
        for line in lines {
            if let Some(rest) = line.strip_prefix("labels") {
                labels = Some(rest.split_whitespace().map(str::to_string).collect());
                continue;
            }
            for token in line.split_whitespace() {
                constants.push(
                    token
                        .parse::<Coefficient>()
                        .map_err(|_| Error::Parse(format!("bad rational `{token}`")))?,
                );
            }
        }
        build_algebra(name, dim, constants, labels)
    }
}

/// Gaussian elimination on an augmented system with `unknowns` columns.
/// Returns one solution if the system is consistent and has a unique solution.
fn solve_linear(mut rows: Vec<Vec<Coefficient>>, unknowns: usize) -> Option<Vec<Coefficient>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = Coefficient::one() / &rows[pivot_row][col];
        for c in rows[pivot_row].iter_mut() {
            *c *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (c, p) in row.iter_mut().zip(&pivot) {
                    *c -= p * &factor;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[unknowns].is_zero()) || pivots.len() < unknowns {
        return None;
    }
    Some((0..unknowns).map(|i| rows[i][unknowns].clone()).collect())
}

/// `ℚ^d` with `e_i e_j = δ_ij e_i`.
pub fn diagonal(d: usize) -> StructureAlgebra {
    let mut c = vec![Coefficient::zero(); d * d * d];
    for i in 0..d {
        c[(i * d + i) * d + i] = Coefficient::one();
    }
    build_algebra(format!("diag{d}"), d, c, None).expect("diagonal algebra is associative")
}

/// `ℚ[t]/(t^d)` on the basis `1, t, ..., t^(d-1)`.
pub fn truncated(d: usize) -> StructureAlgebra {
    let mut c = vec![Coefficient::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d - i {
            c[(i * d + j) * d + i + j] = Coefficient::one();
        }
    }
    let labels = (0..d)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        })
        .collect();
    build_algebra(format!("trunc{d}"), d, c, Some(labels)).expect("truncated algebra is associative")
}

/// Basis position of the matrix unit `E_ij` (1-based) in `M2`.
pub fn m2_index(i: usize, j: usize) -> usize {
    2 * (i - 1) + (j - 1)
}

/// `M_2(ℚ)` on the matrix units `E11, E12, E21, E22`.
pub fn matrix2() -> StructureAlgebra {
    let d = 4;
    let mut c = vec![Coefficient::zero(); d * d * d];
    for (i, j, k, l) in itertools::iproduct!(1..=2, 1..=2, 1..=2, 1..=2) {
        if j == k {
            c[(m2_index(i, j) * d + m2_index(k, l)) * d + m2_index(i, l)] = Coefficient::one();
        }
    }
    let labels = ["E11", "E12", "E21", "E22"].map(String::from).to_vec();
    build_algebra("m2", d, c, Some(labels)).expect("matrix units are associative")
}

/// `diag1..diag4`, `trunc1..trunc5`, `m2`.
pub fn builtin(name: &str) -> Result<StructureAlgebra> {
    let sized = |prefix: &str, max: usize| {
        name.strip_prefix(prefix)
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|d| (1..=max).contains(d))
    };
    if name == "m2" {
        Ok(matrix2())
    } else if let Some(d) = sized("diag", 4) {
        Ok(diagonal(d))
    } else if let Some(d) = sized("trunc", 5) {
        Ok(truncated(d))
    } else {
        Err(Error::UnknownAlgebra(name.to_string()))
    }
}

pub const BUILTIN_NAMES: &[&str] = &[
    "diag1", "diag2", "diag3", "diag4", "trunc1", "trunc2", "trunc3", "trunc4", "trunc5", "m2",
];

/// A linear map `A → B` as a `dim B × dim A` matrix acting on coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMapMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Coefficient>,
}

impl LinearMapMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Coefficient>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(LinearMapMatrix { rows, cols, entries })
    }

    pub fn identity(d: usize) -> Self {
        let mut entries = vec![Coefficient::zero(); d * d];
        for i in 0..d {
            entries[i * d + i] = Coefficient::one();
        }
        LinearMapMatrix { rows: d, cols: d, entries }
    }

    /// The map sending the `j`-th source basis vector to `images[j]`.
    pub fn from_columns(images: &[VectorElem]) -> Result<Self> {
        let cols = images.len();
        let rows = images.first().map_or(0, VectorElem::dim);
        let mut entries = vec![Coefficient::zero(); rows * cols];
        for (j, img) in images.iter().enumerate() {
            if img.dim() != rows {
                return Err(Error::DimensionMismatch { expected: rows, got: img.dim() });
            }
            for (i, c) in img.0.iter().enumerate() {
                entries[i * cols + j] = c.clone();
            }
        }
        Self::new(rows, cols, entries)
    }

    /// Matrix transpose on `M2`, a Jordan but not an ordinary homomorphism.
    pub fn m2_transpose() -> Self {
        let images: Vec<VectorElem> = (1..=2)
            .flat_map(|i| (1..=2).map(move |j| (i, j)))
            .map(|(i, j)| VectorElem::basis(4, m2_index(j, i)))
            .collect();
        Self::from_columns(&images).expect("square")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn apply(&self, v: &VectorElem) -> Result<VectorElem> {
        if v.dim() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.dim() });
        }
        Ok(VectorElem(
            (0..self.rows)
                .map(|r| {
                    let row = &self.entries[r * self.cols..(r + 1) * self.cols];
                    row.iter()
                        .zip(&v.0)
                        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                        .fold(Coefficient::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        ))
    }

    fn check_shape(&self, a: &StructureAlgebra, b: &StructureAlgebra) -> Result<()> {
        if self.cols != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), got: self.cols });
        }
        if self.rows != b.dim() {
            return Err(Error::DimensionMismatch { expected: b.dim(), got: self.rows });
        }
        Ok(())
    }

    /// `h(e_i e_j) = h(e_i) h(e_j)` on every basis pair.
    pub fn is_homomorphism(&self, a: &StructureAlgebra, b: &StructureAlgebra) -> Result<bool> {
        self.check_shape(a, b)?;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let defect = hom_defect_concrete(self, a, b, &[a.basis(i), a.basis(j)])?;
                if !defect.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn check_evaluable(mode: Mode, alg: &StructureAlgebra) -> Result<()> {
    if mode.is_commutative() && !alg.is_commutative() {
        return Err(Error::CommutativeInNoncommutative);
    }
    Ok(())
}

fn eval_word(word: &Word<Generator>, assignment: &[VectorElem], alg: &StructureAlgebra) -> Result<VectorElem> {
    let factors = word
        .letters()
        .iter()
        .map(|g| {
            assignment
                .get(g.index() - 1)
                .ok_or(Error::MissingAssignment(g.index()))
        })
        .collect::<Result<Vec<_>>>()?;
    alg.product(factors)
}

/// Substitutes `x_i ↦ assignment[i - 1]` and evaluates in `alg`.
pub fn eval_a_poly(p: &Polynomial, assignment: &[VectorElem], alg: &StructureAlgebra) -> Result<VectorElem> {
    check_evaluable(p.mode(), alg)?;
    for v in assignment {
        alg.check_dim(v)?;
    }
    let mut out = VectorElem::zeros(alg.dim());
    for (w, c) in p.terms() {
        out.add_scaled_assign(&eval_word(w, assignment, alg)?, c);
    }
    Ok(out)
}

/// Interprets each `h(w)` as `hmat · eval(w)` and multiplies factors in `alg_b`.
pub fn eval_b_poly(
    bp: &BPolynomial,
    assignment: &[VectorElem],
    hmat: &LinearMapMatrix,
    alg_a: &StructureAlgebra,
    alg_b: &StructureAlgebra,
) -> Result<VectorElem> {
    check_evaluable(bp.a_mode(), alg_a)?;
    check_evaluable(bp.b_mode(), alg_b)?;
    hmat.check_shape(alg_a, alg_b)?;
    for v in assignment {
        alg_a.check_dim(v)?;
    }
    let mut images: HashMap<&HSymbol, VectorElem> = HashMap::new();
    let mut out = VectorElem::zeros(alg_b.dim());
    for (bw, c) in bp.terms() {
        for h in bw.letters() {
            if !images.contains_key(h) {
                let value = hmat.apply(&eval_word(h.arg(), assignment, alg_a)?)?;
                images.insert(h, value);
            }
        }
        let value = alg_b.product(bw.letters().iter().map(|h| &images[h]))?;
        out.add_scaled_assign(&value, c);
    }
    Ok(out)
}

/// `h(a^n) - h(a)^n`.
pub fn jordan_defect_concrete(
    hmat: &LinearMapMatrix,
    alg_a: &StructureAlgebra,
    alg_b: &StructureAlgebra,
    a: &VectorElem,
    n: u32,
) -> Result<VectorElem> {
    hmat.check_shape(alg_a, alg_b)?;
    let left = hmat.apply(&alg_a.power(a, n)?)?;
    let right = alg_b.power(&hmat.apply(a)?, n)?;
    left.sub(&right)
}

/// `h(a_1 ... a_n) - h(a_1) ... h(a_n)`.
pub fn hom_defect_concrete(
    hmat: &LinearMapMatrix,
    alg_a: &StructureAlgebra,
    alg_b: &StructureAlgebra,
    factors: &[VectorElem],
) -> Result<VectorElem> {
    hmat.check_shape(alg_a, alg_b)?;
    let left = hmat.apply(&alg_a.product(factors)?)?;
    let images = factors.iter().map(|f| hmat.apply(f)).collect::<Result<Vec<_>>>()?;
    left.sub(&alg_b.product(&images)?)
}

/// Numerator in `[-9, 9]`, denominator in `{1, 2, 3}`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Coefficient {
    rational(rng.gen_range(-9..=9), rng.gen_range(1..=3))
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> VectorElem {
    VectorElem((0..dim).map(|_| random_rational(rng)).collect())
}

pub fn random_map<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> LinearMapMatrix {
    LinearMapMatrix {
        rows,
        cols,
        entries: (0..rows * cols).map(|_| random_rational(rng)).collect(),
    }
}

/// Independent random stream for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `diag3` for commutative mode, `m2` otherwise.
pub fn default_algebra(mode: Mode) -> StructureAlgebra {
    match mode {
        Mode::Commutative => diagonal(3),
        Mode::Noncommutative => matrix2(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: u64,
    pub identity: &'static str,
    pub assignment: Vec<VectorElem>,
    pub lhs: VectorElem,
    pub rhs: VectorElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossValidation {
    pub algebra_a: String,
    pub algebra_b: String,
    pub trials: u64,
    pub theorem_equal: u64,
    pub decomposition_equal: u64,
    pub failures: Vec<TrialFailure>,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.theorem_equal == self.trials && self.decomposition_equal == self.trials
    }
}

/// Evaluates both sides of the top-component identity and of the
/// decomposition identity at random points for random linear maps.
pub fn cross_validate(
    cfg: &JordanConfig,
    trials: u64,
    seed: u64,
    alg_a: &StructureAlgebra,
    alg_b: &StructureAlgebra,
) -> Result<CrossValidation> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let modes = cfg.modes();
    check_evaluable(modes.a, alg_a)?;
    check_evaluable(modes.b, alg_b)?;

    let lattice = Lattice::new(cfg, cfg.full())?;
    let top = lattice.psi(cfg.full());
    let symmetrized = symmetrized_defect(cfg);
    let whole = lattice.phi(cfg.full());
    let parts: Vec<&BPolynomial> = lattice.subsets().map(|s| lattice.psi(s)).collect();

    let outcomes = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<Vec<TrialFailure>> {
            let mut rng = trial_rng(seed, trial);
            let assignment: Vec<VectorElem> = (0..cfg.n()).map(|_| random_vector(&mut rng, alg_a.dim())).collect();
            let hmat = random_map(&mut rng, alg_b.dim(), alg_a.dim());
            let eval = |p: &BPolynomial| eval_b_poly(p, &assignment, &hmat, alg_a, alg_b);

            let mut failures = Vec::new();
            let (lhs, rhs) = (eval(top)?, eval(&symmetrized)?);
            if lhs != rhs {
                failures.push(TrialFailure { trial, identity: "theorem", assignment: assignment.clone(), lhs, rhs });
            }
            let lhs = eval(whole)?;
            let mut rhs = VectorElem::zeros(alg_b.dim());
            for p in &parts {
                rhs = rhs.add(&eval(p)?)?;
            }
            if lhs != rhs {
                failures.push(TrialFailure { trial, identity: "decomposition", assignment, lhs, rhs });
            }
            Ok(failures)
        })
        .collect::<Result<Vec<_>>>()?;

    let failures: Vec<TrialFailure> = outcomes.into_iter().flatten().collect();
    let failed = |name: &str| failures.iter().filter(|f| f.identity == name).count() as u64;
    Ok(CrossValidation {
        algebra_a: alg_a.name().to_string(),
        algebra_b: alg_b.name().to_string(),
        trials,
        theorem_equal: trials - failed("theorem"),
        decomposition_equal: trials - failed("decomposition"),
        failures,
    })
}

/// Transpose on `M2`: Jordan defect sampled at random points, plus the
/// homomorphism defect at `(E12, E21)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransposeCounterexample {
    pub samples: u64,
    pub jordan_zero: u64,
    pub witness: VectorElem,
    pub expected_witness: VectorElem,
}

impl TransposeCounterexample {
    pub fn demonstrated(&self) -> bool {
        self.jordan_zero == self.samples && !self.witness.is_zero() && self.witness == self.expected_witness
    }
}

pub fn transpose_counterexample(samples: u64, seed: u64) -> Result<TransposeCounterexample> {
    if samples == 0 {
        return Err(Error::NoTrials);
    }
    let m2 = matrix2();
    let t = LinearMapMatrix::m2_transpose();
    let mut jordan_zero = 0;
    for s in 0..samples {
        let mut rng = trial_rng(seed, s);
        let a = random_vector(&mut rng, 4);
        if jordan_defect_concrete(&t, &m2, &m2, &a, 2)?.is_zero() {
            jordan_zero += 1;
        }
    }
    let e = |i, j| m2.basis(m2_index(i, j));
    let witness = hom_defect_concrete(&t, &m2, &m2, &[e(1, 2), e(2, 1)])?;
    Ok(TransposeCounterexample {
        samples,
        jordan_zero,
        witness,
        expected_witness: e(1, 1).sub(&e(2, 2))?,
    })
}
