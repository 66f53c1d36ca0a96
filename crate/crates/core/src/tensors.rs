//! Symmetric 2-tensors, bundle maps and the operations they induce on a
//! left-symmetric algebroid and its dual.
//!
//! Matrices are written in the frame `e_i` / coframe `ε^i`:
//!
//! * contravariant `H`: `H(α, β) = αᵀ h β`, `H♯(α) = h α`;
//! * covariant `B`: `B(x, y) = xᵀ b y`, `B♮(x) = b x`;
//! * bundle map `N`: `N(e_j) = Σ_i m[i][j] e_i`, and `N*` acts on dual sections by `mᵀ`.

use std::fmt;

use crate::algebroid::{pair, Algebroid, CoSection, Cochain, Section};
use crate::arith::RatFunc;
use crate::error::{Error, Result};

/// Dense square matrix of rational functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    nvars: usize,
    rows: Vec<Vec<RatFunc>>,
}

impl Matrix {
    pub fn from_rows(nvars: usize, rows: Vec<Vec<RatFunc>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Validation("matrix must be square".into()));
        }
        if rows.iter().flatten().any(|f| f.nvars() != nvars) {
            return Err(Error::Validation("matrix entry over a different chart".into()));
        }
        Ok(Matrix { nvars, rows })
    }

    pub fn zero(n: usize, nvars: usize) -> Self {
        Matrix {
            nvars,
            rows: vec![vec![RatFunc::zero(nvars); n]; n],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zero(n, nvars);
        for i in 0..n {
            m.rows[i][i] = RatFunc::one(nvars);
        }
        m
    }

    pub fn diagonal(entries: Vec<RatFunc>) -> Self {
        let n = entries.len();
        let nvars = entries.first().map_or(0, RatFunc::nvars);
        let mut m = Self::zero(n, nvars);
        for (i, e) in entries.into_iter().enumerate() {
            m.rows[i][i] = e;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<RatFunc>] {
        &self.rows
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.size();
        Matrix {
            nvars: self.nvars,
            rows: (0..n)
                .map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.size();
        assert_eq!(n, other.size());
        let mut out = Self::zero(n, self.nvars);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RatFunc::zero(self.nvars);
                for l in 0..n {
                    let (a, b) = (&self.rows[i][l], &other.rows[l][j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.rows[i][j] = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, f: &RatFunc) -> Matrix {
        Matrix {
            nvars: self.nvars,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|e| e * f).collect())
                .collect(),
        }
    }

    fn zip(&self, other: &Matrix, op: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> Matrix {
        assert_eq!(self.size(), other.size());
        Matrix {
            nvars: self.nvars,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| op(x, y)).collect())
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Matrix {
        (0..k).fold(Self::identity(self.size(), self.nvars), |acc, _| acc.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(RatFunc::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (i + 1..n).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    /// `M v`.
    pub fn apply(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(RatFunc::zero(self.nvars), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// `Mᵀ v`.
    pub fn apply_transpose(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        let n = self.size();
        (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&i| !self.rows[i][j].is_zero() && !v[i].is_zero())
                    .fold(RatFunc::zero(self.nvars), |acc, i| {
                        &acc + &(&self.rows[i][j] * &v[i])
                    })
            })
            .collect()
    }

    /// Clears the denominators of every row, returning the polynomial matrix
    /// `P = D M` and the row multipliers `D`.
    fn clear_row_denominators(&self) -> (Vec<Vec<RatFunc>>, Vec<RatFunc>) {
        let mut rows = Vec::with_capacity(self.size());
        let mut scales = Vec::with_capacity(self.size());
        for row in &self.rows {
            let mut d = RatFunc::one(self.nvars);
            for e in row {
                let den = RatFunc::from_poly(e.denom().clone());
                if (&d * &den.recip().expect("denominator is nonzero")).denom().is_one() {
                    continue;
                }
                d = &d * &den;
            }
            rows.push(row.iter().map(|e| e * &d).collect());
            scales.push(d);
        }
        (rows, scales)
    }

    /// Fraction-free Gauss-Jordan elimination on `[P | I]`.
    ///
    /// Returns `(det P, adj P)` with `P = D M` polynomial, along with `D`.
    fn bareiss(&self) -> Option<(RatFunc, Vec<Vec<RatFunc>>, Vec<RatFunc>)> {
        let n = self.size();
        let (p, scales) = self.clear_row_denominators();
        let mut a: Vec<Vec<RatFunc>> = p
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| {
                    if i == j {
                        RatFunc::one(self.nvars)
                    } else {
                        RatFunc::zero(self.nvars)
                    }
                }));
                row
            })
            .collect();
        let mut prev = RatFunc::one(self.nvars);
        let mut negate = false;
        for k in 0..n {
            let pivot = (k..n).find(|&r| !a[r][k].is_zero())?;
            if pivot != k {
                a.swap(pivot, k);
                negate = !negate;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                for j in 0..2 * n {
                    if j == k {
                        continue;
                    }
                    let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = v.try_div(&prev).expect("previous pivot is nonzero");
                }
                a[i][k] = RatFunc::zero(self.nvars);
            }
            prev = a[k][k].clone();
        }
        // Every diagonal entry now equals ±det P (the sign tracks row swaps); the
        // right block is diag · P⁻¹.
        let adj = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| a[i][n + j].try_div(&a[i][i]).expect("pivot is nonzero"))
                    .collect()
            })
            .collect();
        let det_p = if negate { -&prev } else { prev };
        Some((det_p, adj, scales))
    }

    pub fn determinant(&self) -> RatFunc {
        if self.size() == 0 {
            return RatFunc::one(self.nvars);
        }
        match self.bareiss() {
            None => RatFunc::zero(self.nvars),
            Some((det_p, _, scales)) => {
                let d = scales
                    .iter()
                    .fold(RatFunc::one(self.nvars), |acc, s| &acc * s);
                det_p.try_div(&d).expect("row multipliers are nonzero")
            }
        }
    }

    /// Exact inverse, or [`Error::Degenerate`] when the determinant vanishes identically.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.size();
        let (_, p_inv, scales) = self.bareiss().ok_or(Error::Degenerate)?;
        // M = D⁻¹ P, so M⁻¹ = P⁻¹ D.
        let rows = (0..n)
            .map(|i| (0..n).map(|j| &p_inv[i][j] * &scales[j]).collect())
            .collect();
        Ok(Matrix {
            nvars: self.nvars,
            rows,
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|e| crate::expr::print_expr(e, &names))
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A symmetric contravariant 2-tensor `H ∈ Sym²(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensorContra(Matrix);

/// A symmetric covariant 2-tensor `B ∈ Sym²(A*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensorCo(Matrix);

/// A bundle map `N: A → A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleMap(Matrix);

macro_rules! symmetric_tensor {
    ($name:ident, $label:literal) => {
        impl $name {
            /// Wraps a matrix, rejecting it unless it is symmetric.
            pub fn new(m: Matrix) -> Result<Self> {
                if !m.is_symmetric() {
                    return Err(Error::SymmetryViolation(format!(
                        "{} matrix is not symmetric",
                        $label
                    )));
                }
                Ok($name(m))
            }

            pub fn identity(n: usize, nvars: usize) -> Self {
                $name(Matrix::identity(n, nvars))
            }

            pub fn zero(n: usize, nvars: usize) -> Self {
                $name(Matrix::zero(n, nvars))
            }

            pub fn diagonal(entries: Vec<RatFunc>) -> Self {
                $name(Matrix::diagonal(entries))
            }

            pub fn matrix(&self) -> &Matrix {
                &self.0
            }

            pub fn rank(&self) -> usize {
                self.0.size()
            }

            pub fn entry(&self, i: usize, j: usize) -> &RatFunc {
                self.0.get(i, j)
            }
        }
    };
}

symmetric_tensor!(SymTensorContra, "contravariant");
symmetric_tensor!(SymTensorCo, "covariant");

impl SymTensorContra {
    /// `H♯(α) = h α`.
    pub fn sharp(&self, alpha: &CoSection) -> Section {
        Section(self.0.apply(alpha.coeffs()))
    }

    /// `H(α, β)`.
    pub fn eval(&self, alpha: &CoSection, beta: &CoSection) -> RatFunc {
        pair(beta, &self.sharp(alpha))
    }

    /// `H⁻¹ ∈ Sym²(A*)`.
    pub fn invert(&self) -> Result<SymTensorCo> {
        Ok(SymTensorCo(self.0.inverse()?))
    }
}

impl SymTensorCo {
    /// `B♮(x) = b x`.
    pub fn natural(&self, x: &Section) -> CoSection {
        CoSection(self.0.apply(x.coeffs()))
    }

    /// `B(x, y)`.
    pub fn eval(&self, x: &Section, y: &Section) -> RatFunc {
        pair(&self.natural(x), y)
    }

    pub fn invert(&self) -> Result<SymTensorContra> {
        Ok(SymTensorContra(self.0.inverse()?))
    }

    /// The same tensor seen as a degree-2 cochain.
    pub fn to_cochain(&self) -> Cochain {
        Cochain::from_matrix(self.0.rows(), self.0.nvars())
    }
}

impl BundleMap {
    pub fn new(m: Matrix) -> Self {
        BundleMap(m)
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        BundleMap(Matrix::identity(n, nvars))
    }

    pub fn zero(n: usize, nvars: usize) -> Self {
        BundleMap(Matrix::zero(n, nvars))
    }

    pub fn diagonal(entries: Vec<RatFunc>) -> Self {
        BundleMap(Matrix::diagonal(entries))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.size()
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatFunc {
        self.0.get(i, j)
    }

    pub fn apply(&self, x: &Section) -> Result<Section> {
        if x.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: x.rank(),
            });
        }
        Ok(Section(self.0.apply(x.coeffs())))
    }

    /// `N*(α)`.
    pub fn dual_apply(&self, alpha: &CoSection) -> Result<CoSection> {
        if alpha.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: alpha.rank(),
            });
        }
        Ok(CoSection(self.0.apply_transpose(alpha.coeffs())))
    }

    /// `N^k`.
    pub fn power(&self, k: u32) -> BundleMap {
        BundleMap(self.0.pow(k))
    }

    pub fn compose(&self, other: &BundleMap) -> BundleMap {
        BundleMap(self.0.mul(&other.0))
    }
}

/// An element of `Γ(∧²A ⊗ A)` given by its values on coframe triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriTensor {
    rank: usize,
    components: Vec<RatFunc>,
}

impl TriTensor {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &RatFunc {
        &self.components[(i * self.rank + j) * self.rank + k]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RatFunc::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.rank;
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| *self.get(i, j, k) == -self.get(j, i, k)))
        })
    }

    /// Nonzero components as `([i, j, k], value)` in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = ([usize; 3], &RatFunc)> {
        let n = self.rank;
        self.components
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(p, v)| ([p / (n * n), (p / n) % n, p % n], v))
    }
}

fn same_rank(a: &Algebroid, found: usize) -> Result<()> {
    if a.rank() != found {
        return Err(Error::RankMismatch {
            expected: a.rank(),
            found,
        });
    }
    Ok(())
}

/// `⟦H₁, H₂⟧(α₁, α₂, α₃)` on arbitrary dual sections.
pub fn kv_bracket_eval(
    a: &Algebroid,
    h1: &SymTensorContra,
    h2: &SymTensorContra,
    a1: &CoSection,
    a2: &CoSection,
    a3: &CoSection,
) -> Result<RatFunc> {
    same_rank(a, h1.rank())?;
    same_rank(a, h2.rank())?;
    let (h1a1, h2a1) = (h1.sharp(a1), h2.sharp(a1));
    let (h1a2, h2a2) = (h1.sharp(a2), h2.sharp(a2));
    let (h1a3, h2a3) = (h1.sharp(a3), h2.sharp(a3));
    let terms = [
        a.anchor_apply(&h1a1, &h2.eval(a2, a3))?,
        a.anchor_apply(&h2a1, &h1.eval(a2, a3))?,
        -a.anchor_apply(&h1a2, &h2.eval(a1, a3))?,
        -a.anchor_apply(&h2a2, &h1.eval(a1, a3))?,
        pair(a1, &a.multiply(&h1a2, &h2a3)?),
        pair(a1, &a.multiply(&h2a2, &h1a3)?),
        -pair(a2, &a.multiply(&h1a1, &h2a3)?),
        -pair(a2, &a.multiply(&h2a1, &h1a3)?),
        -pair(a3, &a.bracket(&h1a1, &h2a2)?),
        -pair(a3, &a.bracket(&h2a1, &h1a2)?),
    ];
    let sum = terms
        .into_iter()
        .fold(a.zero_fn(), |acc, t| &acc + &t);
    Ok(sum.scale(&crate::arith::ratio(1, 2)))
}

/// `⟦H₁, H₂⟧` on all coframe triples.
pub fn kv_bracket(a: &Algebroid, h1: &SymTensorContra, h2: &SymTensorContra) -> Result<TriTensor> {
    same_rank(a, h1.rank())?;
    same_rank(a, h2.rank())?;
    let n = a.rank();
    let mut components = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = if i == j {
                    a.zero_fn()
                } else if j < i {
                    -&components[(j * n + i) * n + k]
                } else {
                    kv_bracket_eval(a, h1, h2, &a.cobasis(i), &a.cobasis(j), &a.cobasis(k))?
                };
                components.push(v);
            }
        }
    }
    Ok(TriTensor { rank: n, components })
}

/// `α ·^{H♯} β = 𝓛_{H♯α} β − R_{H♯β} α − d_A H(α, β)`.
pub fn dual_product(a: &Algebroid, h: &SymTensorContra, alpha: &CoSection, beta: &CoSection) -> Result<CoSection> {
    same_rank(a, h.rank())?;
    let l = a.lie_derivative(&h.sharp(alpha), beta)?;
    let r = a.dual_r(&h.sharp(beta), alpha)?;
    let d = a.d(&h.eval(alpha, beta));
    Ok(&(&l - &r) - &d)
}

/// `𝓛^N_x α = 𝓛_{Nx} α + N*(𝓛_x α) − 𝓛_x N*(α)`.
pub fn twisted_lie_derivative(a: &Algebroid, n: &BundleMap, x: &Section, alpha: &CoSection) -> Result<CoSection> {
    let t1 = a.lie_derivative(&n.apply(x)?, alpha)?;
    let t2 = n.dual_apply(&a.lie_derivative(x, alpha)?)?;
    let t3 = a.lie_derivative(x, &n.dual_apply(alpha)?)?;
    Ok(&(&t1 + &t2) - &t3)
}

/// `R^N_x α = R_{Nx} α + N*(R_x α) − R_x N*(α)`.
pub fn twisted_dual_r(a: &Algebroid, n: &BundleMap, x: &Section, alpha: &CoSection) -> Result<CoSection> {
    let t1 = a.dual_r(&n.apply(x)?, alpha)?;
    let t2 = n.dual_apply(&a.dual_r(x, alpha)?)?;
    let t3 = a.dual_r(x, &n.dual_apply(alpha)?)?;
    Ok(&(&t1 + &t2) - &t3)
}

/// Differential of the deformed Lie algebroid: `d^N f = N*(d_A f)`.
pub fn twisted_d(a: &Algebroid, n: &BundleMap, f: &RatFunc) -> Result<CoSection> {
    n.dual_apply(&a.d(f))
}

/// `α ⋆^{H♯} β = 𝓛^N_{H♯α} β − R^N_{H♯β} α − d^N H(α, β)`.
///
/// Evaluated through the twisted-operator formulas and again through the
/// ordinary operations of `deform(A, N)`; the two must agree.
pub fn star_product(
    a: &Algebroid,
    h: &SymTensorContra,
    n: &BundleMap,
    alpha: &CoSection,
    beta: &CoSection,
) -> Result<CoSection> {
    let deformed = a.deform(n)?;
    star_product_with(a, &deformed, h, n, alpha, beta)
}

pub(crate) fn star_product_with(
    a: &Algebroid,
    deformed: &Algebroid,
    h: &SymTensorContra,
    n: &BundleMap,
    alpha: &CoSection,
    beta: &CoSection,
) -> Result<CoSection> {
    same_rank(a, h.rank())?;
    same_rank(a, n.rank())?;
    let (ha, hb) = (h.sharp(alpha), h.sharp(beta));
    let hab = h.eval(alpha, beta);

    let twisted = &(&twisted_lie_derivative(a, n, &ha, beta)? - &twisted_dual_r(a, n, &hb, alpha)?)
        - &twisted_d(a, n, &hab)?;
    let direct = &(&deformed.lie_derivative(&ha, beta)? - &deformed.dual_r(&hb, alpha)?)
        - &deformed.d(&hab);
    if twisted != direct {
        return Err(Error::CrossCheckMismatch(
            "twisted and deformed-algebroid evaluations of the star product differ".into(),
        ));
    }
    Ok(twisted)
}

/// `α ·^{H♯}_{N*} β = N*α ·^{H♯} β + α ·^{H♯} N*β − N*(α ·^{H♯} β)`.
pub fn deformed_dual_product(
    a: &Algebroid,
    h: &SymTensorContra,
    n: &BundleMap,
    alpha: &CoSection,
    beta: &CoSection,
) -> Result<CoSection> {
    same_rank(a, n.rank())?;
    let t1 = dual_product(a, h, &n.dual_apply(alpha)?, beta)?;
    let t2 = dual_product(a, h, alpha, &n.dual_apply(beta)?)?;
    let t3 = n.dual_apply(&dual_product(a, h, alpha, beta)?)?;
    Ok(&(&t1 + &t2) - &t3)
}

/// `[α, β]^{H♯}`.
pub fn dual_bracket(a: &Algebroid, h: &SymTensorContra, alpha: &CoSection, beta: &CoSection) -> Result<CoSection> {
    Ok(&dual_product(a, h, alpha, beta)? - &dual_product(a, h, beta, alpha)?)
}

/// `{α, β}^{H♯}`, the commutator of `⋆^{H♯}`.
pub fn star_bracket(
    a: &Algebroid,
    h: &SymTensorContra,
    n: &BundleMap,
    alpha: &CoSection,
    beta: &CoSection,
) -> Result<CoSection> {
    Ok(&star_product(a, h, n, alpha, beta)? - &star_product(a, h, n, beta, alpha)?)
}

/// `[α, β]^{H♯}_{N*}`.
pub fn deformed_dual_bracket(
    a: &Algebroid,
    h: &SymTensorContra,
    n: &BundleMap,
    alpha: &CoSection,
    beta: &CoSection,
) -> Result<CoSection> {
    Ok(&deformed_dual_product(a, h, n, alpha, beta)? - &deformed_dual_product(a, h, n, beta, alpha)?)
}

/// `N^k`.
pub fn n_power(n: &BundleMap, k: u32) -> BundleMap {
    n.power(k)
}

/// `H_{N^k}` with `(H_{N^k})♯ = N^k ∘ H♯`, i.e. matrix `N^k h`.
pub fn h_deform(h: &SymTensorContra, n: &BundleMap, k: u32) -> Result<SymTensorContra> {
    let m = n.0.pow(k).mul(&h.0);
    if !m.is_symmetric() {
        return Err(Error::SymmetryViolation(format!(
            "N^{k} H♯ is not symmetric (N does not commute with H♯)"
        )));
    }
    Ok(SymTensorContra(m))
}

/// `B_{N^k}` with `(B_{N^k})♮ = B♮ ∘ N^k`, i.e. matrix `b N^k`.
pub fn b_deform(b: &SymTensorCo, n: &BundleMap, k: u32) -> Result<SymTensorCo> {
    let m = b.0.mul(&n.0.pow(k));
    if !m.is_symmetric() {
        return Err(Error::SymmetryViolation(format!(
            "B♮ N^{k} is not symmetric (B(Nx, y) ≠ B(x, Ny))"
        )));
    }
    Ok(SymTensorCo(m))
}

/// `B_{N^k}(x, y) = B(N^k x, y)` as a degree-2 cochain, symmetric or not.
pub fn b_deform_cochain(b: &SymTensorCo, n: &BundleMap, k: u32) -> Cochain {
    let m = n.0.pow(k).transpose().mul(&b.0);
    Cochain::from_matrix(m.rows(), m.nvars())
}

/// The left-symmetric algebroid `(A*, ·^{H♯}, a ∘ H♯)`.
///
/// Its frame is the coframe `ε^i` of `A`; the caller is responsible for `H`
/// being a Koszul-Vinberg structure.
pub fn dual_algebroid(a: &Algebroid, h: &SymTensorContra) -> Result<Algebroid> {
    same_rank(a, h.rank())?;
    let n = a.rank();
    let mut gamma = vec![vec![Vec::new(); n]; n];
    for (i, row) in gamma.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = dual_product(a, h, &a.cobasis(i), &a.cobasis(j))?.0;
        }
    }
    let anchor = a
        .anchor_matrix()
        .iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .enumerate()
                        .map(|(l, x)| x * h.entry(l, j))
                        .fold(a.zero_fn(), |acc, t| &acc + &t)
                })
                .collect()
        })
        .collect();
    Algebroid::new(a.chart().clone(), n, gamma, anchor)
}
