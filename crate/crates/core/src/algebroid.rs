//! Left-symmetric algebroids over a flat coordinate chart.
//!
//! An [`Algebroid`] of rank `n` is described in a global frame `e_1, ..., e_n` by
//! structure functions `e_i · e_j = Σ_k Γ^k_{ij} e_k` and an anchor matrix whose
//! column `i` is `a(e_i)` in the coordinate frame. Sections multiply
//! C∞-linearly in the left slot and by the Leibniz rule in the right slot.
//!
//! A chart with no variables models a point, in which case the same code
//! handles finite-dimensional left-symmetric algebras over the rationals.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::arith::RatFunc;
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::expr;
use crate::tensors::{BundleMap, Matrix};

/// Ordered list of distinct coordinate names.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Chart {
    variables: Vec<String>,
}

impl Chart {
    pub fn new<S: Into<String>>(variables: impl IntoIterator<Item = S>) -> Result<Self> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        for (i, v) in variables.iter().enumerate() {
            if !expr::is_valid_variable(v) {
                return Err(Error::InvalidChart(format!("bad variable name `{v}`")));
            }
            if variables[..i].contains(v) {
                return Err(Error::InvalidChart(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Chart { variables })
    }

    /// The zero-dimensional chart.
    pub fn point() -> Self {
        Chart::default()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn var(&self, name: &str) -> Result<RatFunc> {
        Ok(RatFunc::var(self.dim(), self.index_of(name)?))
    }

    pub fn constant(&self, n: i64) -> RatFunc {
        RatFunc::integer(self.dim(), n)
    }

    pub fn zero(&self) -> RatFunc {
        RatFunc::zero(self.dim())
    }

    pub fn parse(&self, text: &str) -> Result<RatFunc> {
        expr::parse_expr(text, &self.variables)
    }

    pub fn print(&self, f: &RatFunc) -> String {
        expr::print_expr(f, &self.variables)
    }

    /// One bracketed line per row, entries printed over this chart.
    pub fn print_matrix(&self, m: &Matrix) -> String {
        m.rows()
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|e| self.print(e)).collect();
                format!("[{}]\n", cells.join(", "))
            })
            .collect()
    }

    /// Partial derivative by variable name.
    pub fn partial(&self, f: &RatFunc, name: &str) -> Result<RatFunc> {
        Ok(f.partial(self.index_of(name)?))
    }
}

macro_rules! coefficient_vector {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name(pub Vec<RatFunc>);

        impl $name {
            pub fn zero(rank: usize, nvars: usize) -> Self {
                $name(vec![RatFunc::zero(nvars); rank])
            }

            /// The `i`-th frame element.
            pub fn basis(rank: usize, nvars: usize, i: usize) -> Self {
                let mut v = Self::zero(rank, nvars);
                v.0[i] = RatFunc::one(nvars);
                v
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            pub fn coeffs(&self) -> &[RatFunc] {
                &self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(RatFunc::is_zero)
            }

            pub fn scale(&self, f: &RatFunc) -> Self {
                $name(self.0.iter().map(|c| c * f).collect())
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                assert_eq!(self.rank(), rhs.rank());
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                assert_eq!(self.rank(), rhs.rank());
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }
    };
}

coefficient_vector!(Section, "A section `Σ f_i e_i` given by its frame coefficients.");
coefficient_vector!(CoSection, "A dual section `Σ g_i ε^i` given by its coframe coefficients.");

/// `⟨α, x⟩`.
pub fn pair(alpha: &CoSection, x: &Section) -> RatFunc {
    assert_eq!(alpha.rank(), x.rank());
    alpha
        .0
        .iter()
        .zip(&x.0)
        .map(|(a, b)| a * b)
        .reduce(|acc, t| &acc + &t)
        .unwrap_or_else(|| RatFunc::zero(0))
}

/// Rank-`n` left-symmetric algebroid data over a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebroid {
    chart: Chart,
    rank: usize,
    /// `gamma[i][j][k] = Γ^k_{ij}`.
    gamma: Vec<Vec<Vec<RatFunc>>>,
    /// `anchor[μ][i]`: component `μ` of `a(e_i)`.
    anchor: Vec<Vec<RatFunc>>,
}

impl Algebroid {
    /// Builds an algebroid from structure functions and anchor.
    ///
    /// Only shapes are validated here; run [`Algebroid::check_axioms`] before
    /// trusting the result.
    pub fn new(
        chart: Chart,
        rank: usize,
        gamma: Vec<Vec<Vec<RatFunc>>>,
        anchor: Vec<Vec<RatFunc>>,
    ) -> Result<Self> {
        let m = chart.dim();
        let shape_ok = gamma.len() == rank
            && gamma
                .iter()
                .all(|row| row.len() == rank && row.iter().all(|v| v.len() == rank))
            && anchor.len() == m
            && anchor.iter().all(|row| row.len() == rank);
        if !shape_ok {
            return Err(Error::Validation(format!(
                "algebroid data must be {rank}x{rank}x{rank} structure functions and a {m}x{rank} anchor"
            )));
        }
        let nvars_ok = gamma.iter().flatten().flatten().chain(anchor.iter().flatten())
            .all(|f| f.nvars() == m);
        if !nvars_ok {
            return Err(Error::Validation("coefficient over a different chart".into()));
        }
        Ok(Algebroid {
            chart,
            rank,
            gamma,
            anchor,
        })
    }

    /// The tangent algebroid of a flat chart: `Γ ≡ 0`, identity anchor.
    pub fn flat_tangent(chart: Chart) -> Self {
        let n = chart.dim();
        let gamma = vec![vec![vec![RatFunc::zero(n); n]; n]; n];
        let anchor = (0..n)
            .map(|mu| {
                (0..n)
                    .map(|i| {
                        if mu == i {
                            RatFunc::one(n)
                        } else {
                            RatFunc::zero(n)
                        }
                    })
                    .collect()
            })
            .collect();
        Algebroid {
            chart,
            rank: n,
            gamma,
            anchor,
        }
    }

    /// Finite-dimensional left-symmetric algebra with constant structure constants.
    pub fn point_algebra(gamma: Vec<Vec<Vec<RatFunc>>>) -> Result<Self> {
        let rank = gamma.len();
        Self::new(Chart::point(), rank, gamma, Vec::new())
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.chart.dim()
    }

    /// `Γ^k_{ij}`.
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &RatFunc {
        &self.gamma[i][j][k]
    }

    pub fn gamma_table(&self) -> &[Vec<Vec<RatFunc>>] {
        &self.gamma
    }

    pub fn anchor_matrix(&self) -> &[Vec<RatFunc>] {
        &self.anchor
    }

    /// True when this is literally the flat tangent algebroid of its chart.
    pub fn is_flat_tangent(&self) -> bool {
        *self == Algebroid::flat_tangent(self.chart.clone())
    }

    pub fn zero_fn(&self) -> RatFunc {
        RatFunc::zero(self.nvars())
    }

    pub fn basis(&self, i: usize) -> Section {
        Section::basis(self.rank, self.nvars(), i)
    }

    pub fn cobasis(&self, i: usize) -> CoSection {
        CoSection::basis(self.rank, self.nvars(), i)
    }

    pub fn zero_section(&self) -> Section {
        Section::zero(self.rank, self.nvars())
    }

    pub fn zero_cosection(&self) -> CoSection {
        CoSection::zero(self.rank, self.nvars())
    }

    pub(crate) fn check_rank(&self, found: usize) -> Result<()> {
        if found != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found,
            });
        }
        Ok(())
    }

    /// `a(X)` as a coordinate vector field.
    pub fn anchor_vector(&self, x: &Section) -> Result<Vec<RatFunc>> {
        self.check_rank(x.rank())?;
        Ok(self
            .anchor
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&x.0)
                    .map(|(a, f)| a * f)
                    .fold(self.zero_fn(), |acc, t| &acc + &t)
            })
            .collect())
    }

    /// `a(X)(f)`.
    pub fn anchor_apply(&self, x: &Section, f: &RatFunc) -> Result<RatFunc> {
        let v = self.anchor_vector(x)?;
        Ok(apply_vector_field(&v, f))
    }

    /// `X ·_A Y`.
    pub fn multiply(&self, x: &Section, y: &Section) -> Result<Section> {
        self.check_rank(x.rank())?;
        self.check_rank(y.rank())?;
        let n = self.rank;
        let mut out = vec![self.zero_fn(); n];
        for (i, fi) in x.0.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in y.0.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                let fg = fi * gj;
                for (k, slot) in out.iter_mut().enumerate() {
                    let g = &self.gamma[i][j][k];
                    if !g.is_zero() {
                        *slot = &*slot + &(&fg * g);
                    }
                }
            }
        }
        if self.nvars() > 0 {
            let v = self.anchor_vector(x)?;
            for (j, gj) in y.0.iter().enumerate() {
                let d = apply_vector_field(&v, gj);
                if !d.is_zero() {
                    out[j] = &out[j] + &d;
                }
            }
        }
        Ok(Section(out))
    }

    /// Commutator bracket of the sub-adjacent Lie algebroid.
    pub fn bracket(&self, x: &Section, y: &Section) -> Result<Section> {
        Ok(&self.multiply(x, y)? - &self.multiply(y, x)?)
    }

    /// Associator `(x, y, z) = x·(y·z) − (x·y)·z`.
    pub fn associator(&self, x: &Section, y: &Section, z: &Section) -> Result<Section> {
        let yz = self.multiply(y, z)?;
        let xy = self.multiply(x, y)?;
        Ok(&self.multiply(x, &yz)? - &self.multiply(&xy, z)?)
    }

    /// Verifies left-symmetry of the associator and that the anchor maps the
    /// bracket to the commutator of vector fields, both on frame elements.
    ///
    /// Expanding `(x,y,fz) − (y,x,fz)` gives `f[(x,y,z) − (y,x,z)]` plus
    /// `[a(x)a(y) − a(y)a(x) − a([x,y])](f) z`, so these two frame checks imply
    /// the axioms for every section with rational-function coefficients.
    pub fn check_axioms(&self) -> Certificate {
        let n = self.rank;
        let mut cert = Certificate::new();
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (self.basis(i), self.basis(j));
                for k in 0..n {
                    let ek = self.basis(k);
                    let lhs = self.associator(&ei, &ej, &ek).expect("rank checked");
                    let rhs = self.associator(&ej, &ei, &ek).expect("rank checked");
                    let diff = &lhs - &rhs;
                    for (c, r) in diff.0.into_iter().enumerate() {
                        cert.push("associator", vec![i, j, k, c], r);
                    }
                }
                if j > i && self.nvars() > 0 {
                    let br = self.bracket(&ei, &ej).expect("rank checked");
                    let lhs = self.anchor_vector(&br).expect("rank checked");
                    let vi = self.anchor_vector(&ei).expect("rank checked");
                    let vj = self.anchor_vector(&ej).expect("rank checked");
                    let rhs = vector_field_bracket(&vi, &vj);
                    for (mu, (l, r)) in lhs.iter().zip(&rhs).enumerate() {
                        cert.push("anchor", vec![i, j, mu], l - r);
                    }
                }
            }
        }
        // Implied by the two checks above; kept as an independent guard against
        // inconsistent structure functions.
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let (ei, ej, ek) = (self.basis(i), self.basis(j), self.basis(k));
                    let cyc = |x: &Section, y: &Section, z: &Section| {
                        let xy = self.bracket(x, y).expect("rank checked");
                        self.bracket(&xy, z).expect("rank checked")
                    };
                    let jac = &(&cyc(&ei, &ej, &ek) + &cyc(&ej, &ek, &ei)) + &cyc(&ek, &ei, &ej);
                    for (c, r) in jac.0.into_iter().enumerate() {
                        cert.push("jacobi", vec![i, j, k, c], r);
                    }
                }
            }
        }
        cert
    }

    /// `d_A f`, the differential of a function: `(d_A f)(e_i) = a(e_i)(f)`.
    pub fn d(&self, f: &RatFunc) -> CoSection {
        CoSection(
            (0..self.rank)
                .map(|i| self.anchor_apply(&self.basis(i), f).expect("rank checked"))
                .collect(),
        )
    }

    /// Builds the dual section with components `⟨·, e_j⟩ = eval(e_j)`.
    fn covector_from(&self, mut eval: impl FnMut(&Section) -> Result<RatFunc>) -> Result<CoSection> {
        let comps = (0..self.rank)
            .map(|j| eval(&self.basis(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoSection(comps))
    }

    /// Lie derivative of the sub-adjacent Lie algebroid:
    /// `⟨𝓛_x α, y⟩ = a(x)⟨α, y⟩ − ⟨α, [x, y]⟩`.
    pub fn lie_derivative(&self, x: &Section, alpha: &CoSection) -> Result<CoSection> {
        self.check_rank(x.rank())?;
        self.check_rank(alpha.rank())?;
        self.covector_from(|y| {
            let first = self.anchor_apply(x, &pair(alpha, y))?;
            Ok(&first - &pair(alpha, &self.bracket(x, y)?))
        })
    }

    /// Dual left action: `⟨L_x ξ, y⟩ = a(x)⟨ξ, y⟩ − ⟨ξ, x·y⟩`.
    pub fn dual_l(&self, x: &Section, xi: &CoSection) -> Result<CoSection> {
        self.check_rank(x.rank())?;
        self.check_rank(xi.rank())?;
        self.covector_from(|y| {
            let first = self.anchor_apply(x, &pair(xi, y))?;
            Ok(&first - &pair(xi, &self.multiply(x, y)?))
        })
    }

    /// Dual right action: `⟨R_x ξ, y⟩ = −⟨ξ, y·x⟩`.
    pub fn dual_r(&self, x: &Section, xi: &CoSection) -> Result<CoSection> {
        self.check_rank(x.rank())?;
        self.check_rank(xi.rank())?;
        self.covector_from(|y| Ok(-pair(xi, &self.multiply(y, x)?)))
    }

    /// Coboundary `δ_A` with trivial coefficients, for cochains of degree ≥ 1.
    pub fn delta(&self, phi: &Cochain) -> Result<Cochain> {
        self.check_rank(phi.rank())?;
        if phi.nvars() != self.nvars() {
            return Err(Error::Validation("cochain over a different chart".into()));
        }
        let k = phi.degree();
        let mut out = Cochain::zero(k + 1, self.rank, self.nvars());
        for idx in Cochain::canonical_indices(k + 1, self.rank) {
            let args: Vec<Section> = idx.iter().map(|&i| self.basis(i)).collect();
            let value = self.delta_eval(phi, &args)?;
            out.set(&idx, value);
        }
        Ok(out)
    }

    /// `δφ(x_1, ..., x_{k+1})` for a degree-`k` cochain on arbitrary sections.
    pub fn delta_eval(&self, phi: &Cochain, args: &[Section]) -> Result<RatFunc> {
        let k = phi.degree();
        assert_eq!(args.len(), k + 1, "δφ takes degree + 1 arguments");
        let last = &args[k];
        let mut acc = self.zero_fn();
        for i in 0..k {
            let sign_pos = i % 2 == 0;
            let omit_i: Vec<Section> = args
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != i)
                .map(|(_, s)| s.clone())
                .collect();
            let t1 = self.anchor_apply(&args[i], &phi.eval(&omit_i))?;
            let mut moved: Vec<Section> = omit_i[..k - 1].to_vec();
            moved.push(self.multiply(&args[i], last)?);
            let t2 = phi.eval(&moved);
            let term = &t1 - &t2;
            acc = if sign_pos { &acc + &term } else { &acc - &term };
        }
        for i in 0..k {
            for j in (i + 1)..k {
                let mut rest = vec![self.bracket(&args[i], &args[j])?];
                rest.extend(
                    args.iter()
                        .enumerate()
                        .filter(|(p, _)| *p != i && *p != j)
                        .map(|(_, s)| s.clone()),
                );
                let t = phi.eval(&rest);
                acc = if (i + j) % 2 == 0 { &acc + &t } else { &acc - &t };
            }
        }
        Ok(acc)
    }

    /// `x ·_N y = N(x)·y + x·N(y) − N(x·y)`.
    pub fn deformed_product(&self, n: &BundleMap, x: &Section, y: &Section) -> Result<Section> {
        self.check_rank(n.rank())?;
        let a = self.multiply(&n.apply(x)?, y)?;
        let b = self.multiply(x, &n.apply(y)?)?;
        let c = n.apply(&self.multiply(x, y)?)?;
        Ok(&(&a + &b) - &c)
    }

    /// The algebroid `(A, ·_N, a∘N)`.
    pub fn deform(&self, n: &BundleMap) -> Result<Algebroid> {
        self.check_rank(n.rank())?;
        let r = self.rank;
        let mut gamma = vec![vec![Vec::new(); r]; r];
        for (i, row) in gamma.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = self
                    .deformed_product(n, &self.basis(i), &self.basis(j))?
                    .0;
            }
        }
        let anchor = self
            .anchor
            .iter()
            .map(|row| {
                (0..r)
                    .map(|j| {
                        row.iter()
                            .enumerate()
                            .map(|(l, a)| a * n.entry(l, j))
                            .fold(self.zero_fn(), |acc, t| &acc + &t)
                    })
                    .collect()
            })
            .collect();
        Algebroid::new(self.chart.clone(), r, gamma, anchor)
    }
}

/// `V(f) = Σ_μ V^μ ∂f/∂x^μ`.
pub fn apply_vector_field(v: &[RatFunc], f: &RatFunc) -> RatFunc {
    let mut acc = RatFunc::zero(f.nvars());
    if f.as_constant().is_some() {
        return acc;
    }
    for (mu, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = f.partial(mu);
        if !d.is_zero() {
            acc = &acc + &(c * &d);
        }
    }
    acc
}

/// Commutator of coordinate vector fields.
pub fn vector_field_bracket(v: &[RatFunc], w: &[RatFunc]) -> Vec<RatFunc> {
    v.iter()
        .zip(w)
        .map(|(vm, wm)| &apply_vector_field(v, wm) - &apply_vector_field(w, vm))
        .collect()
}

/// An element of `Γ(∧^{k-1} A* ⊗ A*)`: antisymmetric in the first `k − 1`
/// arguments, unconstrained in the last.
///
/// Only index tuples whose first `k − 1` entries strictly increase are stored;
/// all other components are recovered by antisymmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    rank: usize,
    nvars: usize,
    components: BTreeMap<Vec<usize>, RatFunc>,
}

impl Cochain {
    pub fn zero(degree: usize, rank: usize, nvars: usize) -> Self {
        assert!(degree >= 1, "cochains start at degree 1");
        Cochain {
            degree,
            rank,
            nvars,
            components: BTreeMap::new(),
        }
    }

    /// Degree-2 cochain from a matrix: `φ(e_i, e_j) = m[i][j]`.
    pub fn from_matrix(m: &[Vec<RatFunc>], nvars: usize) -> Self {
        let mut c = Cochain::zero(2, m.len(), nvars);
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                c.set(&[i, j], v.clone());
            }
        }
        c
    }

    /// Degree-1 cochain (a dual section).
    pub fn from_cosection(alpha: &CoSection, nvars: usize) -> Self {
        let mut c = Cochain::zero(1, alpha.rank(), nvars);
        for (i, v) in alpha.0.iter().enumerate() {
            c.set(&[i], v.clone());
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// All stored index tuples: strictly increasing prefix, free last index.
    pub fn canonical_indices(degree: usize, rank: usize) -> Vec<Vec<usize>> {
        fn prefixes(len: usize, start: usize, rank: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            for i in start..rank {
                cur.push(i);
                prefixes(len, i + 1, rank, cur, out);
                cur.pop();
            }
        }
        let mut pre = Vec::new();
        prefixes(degree - 1, 0, rank, &mut Vec::new(), &mut pre);
        let mut out = Vec::new();
        for p in pre {
            for last in 0..rank {
                let mut idx = p.clone();
                idx.push(last);
                out.push(idx);
            }
        }
        out
    }

    /// Sorts the antisymmetric prefix; `None` when it repeats an index.
    fn canonicalize(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
        let k = idx.len();
        let mut prefix = idx[..k - 1].to_vec();
        let mut negate = false;
        for i in 0..prefix.len() {
            for j in 0..prefix.len() - 1 - i {
                if prefix[j] > prefix[j + 1] {
                    prefix.swap(j, j + 1);
                    negate = !negate;
                }
            }
        }
        if prefix.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        prefix.push(idx[k - 1]);
        Some((prefix, negate))
    }

    pub fn get(&self, idx: &[usize]) -> RatFunc {
        assert_eq!(idx.len(), self.degree);
        match Self::canonicalize(idx) {
            None => RatFunc::zero(self.nvars),
            Some((key, negate)) => match self.components.get(&key) {
                None => RatFunc::zero(self.nvars),
                Some(v) if negate => -v,
                Some(v) => v.clone(),
            },
        }
    }

    /// Sets a component (and implicitly its antisymmetric images).
    ///
    /// Panics when the prefix repeats an index and the value is nonzero.
    pub fn set(&mut self, idx: &[usize], value: RatFunc) {
        assert_eq!(idx.len(), self.degree);
        match Self::canonicalize(idx) {
            None => assert!(value.is_zero(), "nonzero value on a repeated antisymmetric index"),
            Some((key, negate)) => {
                let v = if negate { -value } else { value };
                if v.is_zero() {
                    self.components.remove(&key);
                } else {
                    self.components.insert(key, v);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Nonzero stored components in canonical order.
    pub fn nonzero_components(&self) -> impl Iterator<Item = (&Vec<usize>, &RatFunc)> {
        self.components.iter()
    }

    /// Multilinear evaluation on arbitrary sections.
    pub fn eval(&self, args: &[Section]) -> RatFunc {
        assert_eq!(args.len(), self.degree);
        let mut acc = RatFunc::zero(self.nvars);
        let mut idx = vec![0usize; self.degree];
        loop {
            let coeff = args
                .iter()
                .zip(&idx)
                .try_fold(RatFunc::one(self.nvars), |c, (s, &i)| {
                    let f = &s.0[i];
                    (!f.is_zero()).then(|| &c * f)
                });
            if let Some(c) = coeff {
                let v = self.get(&idx);
                if !v.is_zero() {
                    acc = &acc + &(&c * &v);
                }
            }
            let mut p = self.degree;
            loop {
                if p == 0 {
                    return acc;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < self.rank {
                    break;
                }
                idx[p] = 0;
            }
        }
    }

    /// Linear combination helpers for cochains of equal shape.
    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.degree, self.rank), (other.degree, other.rank));
        let mut out = self.clone();
        for (k, v) in &other.components {
            let cur = out.get(k);
            out.set(k, &cur + v);
        }
        out
    }

    pub fn scale(&self, f: &RatFunc) -> Cochain {
        let mut out = Cochain::zero(self.degree, self.rank, self.nvars);
        for (k, v) in &self.components {
            out.set(k, v * f);
        }
        out
    }
}
