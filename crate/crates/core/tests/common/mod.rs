//! Seeded random corpus and coordinate oracles shared by the integration tests.
//!
//! The oracles use nothing from the library beyond `RatFunc` arithmetic and
//! partial derivatives, so they are independent of the algebroid machinery.

#![allow(dead_code)]

use lsalgebroid::arith::{rational, MultiPoly, RatFunc};
use lsalgebroid::document::{self, InputDocument};
use lsalgebroid::{Algebroid, BundleMap, Chart, Matrix, SymTensorCo, SymTensorContra};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_1a5a;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

pub fn flat(rank: usize) -> Algebroid {
    let names = ["x", "y", "z"];
    Algebroid::flat_tangent(Chart::new(names[..rank].iter().copied()).unwrap())
}

pub fn parse_matrix(a: &Algebroid, rows: &[&[&str]]) -> Matrix {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|e| a.chart().parse(e).unwrap()).collect())
        .collect();
    Matrix::from_rows(a.nvars(), rows).unwrap()
}

pub fn load_fixture(name: &str) -> InputDocument {
    let path = format!("{}/fixtures/{name}.toml", env!("CARGO_MANIFEST_DIR"));
    document::load(path).unwrap()
}

/// Names of every loadable fixture.
pub fn fixture_names() -> Vec<String> {
    let dir = format!("{}/fixtures", env!("CARGO_MANIFEST_DIR"));
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "toml").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .filter(|n| n != "asymmetric")
        .collect();
    names.sort();
    names
}

pub fn small_int(rng: &mut impl Rng) -> i64 {
    loop {
        let c = rng.gen_range(-3..=3);
        if c != 0 {
            return c;
        }
    }
}

/// Random polynomial of total degree ≤ `max_deg` with up to `terms` terms.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, max_deg: u32, terms: usize) -> RatFunc {
    let count = rng.gen_range(1..=terms);
    let monomials = (0..count).map(|_| {
        let mut exps = vec![0u32; nvars];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            if nvars > 0 {
                exps[rng.gen_range(0..nvars)] += 1;
            }
        }
        (exps, rational(small_int(rng)))
    });
    RatFunc::from_poly(MultiPoly::from_terms(nvars, monomials.collect::<Vec<_>>()))
}

/// Random polynomial in the single variable `var` of degree ≤ 2 with nonzero constant term.
pub fn random_univariate(rng: &mut impl Rng, nvars: usize, var: usize) -> RatFunc {
    let x = RatFunc::var(nvars, var);
    let c0 = RatFunc::integer(nvars, small_int(rng));
    let c1 = RatFunc::integer(nvars, rng.gen_range(-2..=2));
    let c2 = RatFunc::integer(nvars, rng.gen_range(-2..=2));
    &(&c0 + &(&c1 * &x)) + &(&c2 * &(&x * &x))
}

/// Symmetric matrix whose upper triangle is drawn row by row from `entry`.
fn symmetric_with(n: usize, mut entry: impl FnMut() -> RatFunc) -> Matrix {
    let upper: Vec<Vec<RatFunc>> = (0..n).map(|i| (i..n).map(|_| entry()).collect()).collect();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if j >= i { upper[i][j - i].clone() } else { upper[j][i - j].clone() })
                .collect()
        })
        .collect();
    Matrix::from_rows(n, rows).unwrap()
}

pub fn constant_symmetric(rng: &mut impl Rng, n: usize) -> Matrix {
    symmetric_with(n, || RatFunc::integer(n, rng.gen_range(-3..=3)))
}

pub fn polynomial_symmetric(rng: &mut impl Rng, n: usize, max_deg: u32) -> Matrix {
    symmetric_with(n, || random_poly(rng, n, max_deg, 2))
}

pub fn polynomial_square(rng: &mut impl Rng, n: usize, max_deg: u32) -> Matrix {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| random_poly(rng, n, max_deg, 2)).collect())
        .collect();
    Matrix::from_rows(n, rows).unwrap()
}

/// `diag(f_1(x_1), …, f_n(x_n))`.
pub fn separable_diagonal(rng: &mut impl Rng, n: usize) -> Matrix {
    Matrix::diagonal((0..n).map(|i| random_univariate(rng, n, i)).collect())
}

/// Hessian of a random potential with quadratic and cubic terms.
pub fn random_hessian(rng: &mut impl Rng, n: usize) -> Matrix {
    let quad = random_poly(rng, n, 2, 3);
    let cubic = random_poly(rng, n, 3, 2);
    let mut phi = &quad + &cubic;
    for i in 0..n {
        // Keeps the Hessian generically nondegenerate.
        let x = RatFunc::var(n, i);
        phi = &phi + &(&x * &x).scale(&rational(small_int(rng)));
    }
    let rows = (0..n)
        .map(|i| (0..n).map(|j| phi.partial(i).partial(j)).collect())
        .collect();
    Matrix::from_rows(n, rows).unwrap()
}

pub fn is_nondegenerate(m: &Matrix) -> bool {
    !m.determinant().is_zero()
}

/// Oracle: `Σ_l (h_jl ∂_l h_ik − h_il ∂_l h_jk)`.
pub fn oracle_kv(h: &Matrix, i: usize, j: usize, k: usize) -> RatFunc {
    let n = h.size();
    let mut acc = RatFunc::zero(h.nvars());
    for l in 0..n {
        acc = &acc + &(h.get(j, l) * &h.get(i, k).partial(l));
        acc = &acc - &(h.get(i, l) * &h.get(j, k).partial(l));
    }
    acc
}

pub fn oracle_is_kv(h: &Matrix) -> bool {
    let n = h.size();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| oracle_kv(h, i, j, k).is_zero())))
}

/// Oracle: `∂_k B_ij = ∂_i B_kj` for all indices.
pub fn oracle_is_cocycle(b: &Matrix) -> bool {
    let n = b.size();
    (0..n).all(|i| {
        (0..n).all(|j| (0..n).all(|k| b.get(i, j).partial(k) == b.get(k, j).partial(i)))
    })
}

/// Oracle: flat-chart Nijenhuis torsion component
/// `Σ_l N_li ∂_l N_kj − Σ_p N_kp ∂_i N_pj`.
pub fn oracle_torsion(m: &Matrix, i: usize, j: usize, k: usize) -> RatFunc {
    let n = m.size();
    let mut acc = RatFunc::zero(m.nvars());
    // N e_i · N e_j
    for l in 0..n {
        acc = &acc + &(m.get(l, i) * &m.get(k, j).partial(l));
    }
    // − N(e_i · N e_j); the other products of frame fields vanish
    for p in 0..n {
        acc = &acc - &(m.get(k, p) * &m.get(p, j).partial(i));
    }
    acc
}

pub fn oracle_is_nijenhuis(m: &Matrix) -> bool {
    let n = m.size();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| oracle_torsion(m, i, j, k).is_zero())))
}

/// Oracle matrix product by explicit sums.
pub fn oracle_mul(a: &Matrix, b: &Matrix) -> Vec<Vec<RatFunc>> {
    let n = a.size();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(RatFunc::zero(a.nvars()), |acc, l| &acc + &(a.get(i, l) * b.get(l, j)))
                })
                .collect()
        })
        .collect()
}

pub struct KvInstance {
    pub name: String,
    pub algebroid: Algebroid,
    pub h: SymTensorContra,
}

pub struct KvbInstance {
    pub name: String,
    pub algebroid: Algebroid,
    pub h: SymTensorContra,
    pub b: SymTensorCo,
}

pub struct HnInstance {
    pub name: String,
    pub algebroid: Algebroid,
    pub b: SymTensorCo,
    pub n: BundleMap,
}

pub struct NijenhuisInstance {
    pub name: String,
    pub algebroid: Algebroid,
    pub n: BundleMap,
}

/// Symmetric contravariant tensors: constants, inverse Hessians, separable
/// diagonals and unconstrained polynomials.
pub fn kv_corpus(rng: &mut impl Rng, per_kind: usize) -> Vec<KvInstance> {
    let mut out = Vec::new();
    for t in 0..per_kind {
        let n = 1 + t % 3;
        let a = flat(n);
        let mut push = |kind: &str, m: Matrix| {
            out.push(KvInstance {
                name: format!("{kind}#{t} rank {n}"),
                algebroid: a.clone(),
                h: SymTensorContra::new(m).unwrap(),
            })
        };
        push("constant", constant_symmetric(rng, n));
        let hess = random_hessian(rng, n);
        if let Ok(inv) = hess.inverse() {
            push("inverse-hessian", inv);
        }
        push("separable", separable_diagonal(rng, n));
        push("polynomial", polynomial_symmetric(rng, n, 2));
    }
    out
}

/// KV tensor with symmetric covariant partner, mixing genuine KVB pairs with
/// random ones.
pub fn kvb_corpus(rng: &mut impl Rng, per_kind: usize) -> Vec<KvbInstance> {
    let mut out = Vec::new();
    for t in 0..per_kind {
        let n = 1 + t % 3;
        let a = flat(n);
        let mut push = |kind: &str, h: Matrix, b: Matrix| {
            out.push(KvbInstance {
                name: format!("{kind}#{t} rank {n}"),
                algebroid: a.clone(),
                h: SymTensorContra::new(h).unwrap(),
                b: SymTensorCo::new(b).unwrap(),
            })
        };
        let cdiag = Matrix::diagonal((0..n).map(|_| RatFunc::integer(n, rng.gen_range(-2..=2))).collect());
        push("constant-diag/separable", cdiag, separable_diagonal(rng, n));
        let hess = random_hessian(rng, n);
        if let Ok(inv) = hess.inverse() {
            push("inverse-hessian/hessian", inv, hess);
        }
        push("separable/separable", separable_diagonal(rng, n), separable_diagonal(rng, n));
        push("constant/polynomial", constant_symmetric(rng, n), polynomial_symmetric(rng, n, 2));
        push("identity/hessian", Matrix::identity(n, n), random_hessian(rng, n));
    }
    out
}

/// Nondegenerate covariant tensors with bundle maps.
pub fn hn_corpus(rng: &mut impl Rng, per_kind: usize) -> Vec<HnInstance> {
    let mut out = Vec::new();
    for t in 0..per_kind {
        let n = 1 + t % 3;
        let a = flat(n);
        let mut push = |kind: &str, b: Matrix, m: Matrix| {
            if is_nondegenerate(&b) {
                out.push(HnInstance {
                    name: format!("{kind}#{t} rank {n}"),
                    algebroid: a.clone(),
                    b: SymTensorCo::new(b).unwrap(),
                    n: BundleMap::new(m),
                });
            }
        };
        push("identity/separable", Matrix::identity(n, n), separable_diagonal(rng, n));
        push("separable/separable", separable_diagonal(rng, n), separable_diagonal(rng, n));
        let c = RatFunc::integer(n, small_int(rng));
        push("hessian/scalar", random_hessian(rng, n), Matrix::identity(n, n).scale(&c));
        let b = constant_symmetric(rng, n);
        if let Ok(binv) = b.inverse() {
            let s = constant_symmetric(rng, n);
            push("constant/constant", b, binv.mul(&s));
        }
        push("identity/polynomial", Matrix::identity(n, n), polynomial_symmetric(rng, n, 2));
        push("identity/hessian", Matrix::identity(n, n), random_hessian(rng, n));
        push("constant/unconstrained", constant_symmetric(rng, n), polynomial_square(rng, n, 1));
    }
    out
}

pub fn nijenhuis_corpus(rng: &mut impl Rng, per_kind: usize) -> Vec<NijenhuisInstance> {
    let mut out = Vec::new();
    for t in 0..per_kind {
        let n = 1 + t % 3;
        let a = flat(n);
        let mut push = |kind: &str, m: Matrix| {
            out.push(NijenhuisInstance {
                name: format!("{kind}#{t} rank {n}"),
                algebroid: a.clone(),
                n: BundleMap::new(m),
            })
        };
        push("separable", separable_diagonal(rng, n));
        push("constant", polynomial_square(rng, n, 0));
        push("polynomial", polynomial_square(rng, n, 2));
        push("hessian", random_hessian(rng, n));
    }
    out
}
