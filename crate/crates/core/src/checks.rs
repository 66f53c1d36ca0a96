//! Certificate-producing checkers for every structure notion, the
//! constructions transferring between them, and hierarchy generation.
//!
//! Every checker re-verifies its preconditions. Failed preconditions become
//! labelled residuals, except where a checker has no meaningful verdict
//! without them (those return [`Error::PreconditionFailed`]).

use crate::algebroid::{Algebroid, Cochain, Section};
use crate::arith::RatFunc;
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::tensors::{
    b_deform, b_deform_cochain, deformed_dual_product, dual_algebroid, h_deform, kv_bracket,
    star_product_with, BundleMap, Matrix, SymTensorCo, SymTensorContra,
};

fn same_rank(a: &Algebroid, found: usize) -> Result<()> {
    if a.rank() != found {
        return Err(Error::RankMismatch {
            expected: a.rank(),
            found,
        });
    }
    Ok(())
}

fn push_matrix(cert: &mut Certificate, label: &str, m: &Matrix) {
    for i in 0..m.size() {
        for j in 0..m.size() {
            cert.push(label, vec![i, j], m.get(i, j).clone());
        }
    }
}

/// `Σ_l (h_jl ∂_l h_ik − h_il ∂_l h_jk)`, the flat-chart form of `⟦H, H⟧(εⁱ, εʲ, εᵏ)`.
pub fn kv_coordinate_criterion(h: &Matrix, i: usize, j: usize, k: usize) -> RatFunc {
    let nvars = h.nvars();
    (0..h.size()).fold(RatFunc::zero(nvars), |acc, l| {
        let t1 = h.get(j, l) * &h.get(i, k).partial(l);
        let t2 = h.get(i, l) * &h.get(j, k).partial(l);
        &acc + &(&t1 - &t2)
    })
}

/// `⟦H, H⟧ = 0`. On flat tangent algebroids the coordinate criterion is
/// evaluated as well and must agree entrywise.
pub fn check_koszul_vinberg(a: &Algebroid, h: &SymTensorContra) -> Result<Certificate> {
    same_rank(a, h.rank())?;
    let t = kv_bracket(a, h, h)?;
    if a.is_flat_tangent() {
        let n = a.rank();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if *t.get(i, j, k) != kv_coordinate_criterion(h.matrix(), i, j, k) {
                        return Err(Error::CrossCheckMismatch(format!(
                            "KV bracket and coordinate criterion differ at [{i}, {j}, {k}]"
                        )));
                    }
                }
            }
        }
    }
    let mut cert = Certificate::new();
    for (idx, v) in t.nonzero() {
        cert.push("bracket", idx.to_vec(), v.clone());
    }
    Ok(cert)
}

/// `⟦H₁, H₂⟧ = 0`.
pub fn check_compatible(a: &Algebroid, h1: &SymTensorContra, h2: &SymTensorContra) -> Result<Certificate> {
    let t = kv_bracket(a, h1, h2)?;
    let mut cert = Certificate::new();
    for (idx, v) in t.nonzero() {
        cert.push("bracket", idx.to_vec(), v.clone());
    }
    Ok(cert)
}

/// `T_N(x, y) = Nx·Ny − N(Nx·y + x·Ny − N(x·y))`.
pub fn nijenhuis_torsion(a: &Algebroid, n: &BundleMap, x: &Section, y: &Section) -> Result<Section> {
    let lhs = a.multiply(&n.apply(x)?, &n.apply(y)?)?;
    let rhs = n.apply(&a.deformed_product(n, x, y)?)?;
    Ok(&lhs - &rhs)
}

/// Vanishing of the Nijenhuis torsion on all frame pairs.
pub fn check_nijenhuis(a: &Algebroid, n: &BundleMap) -> Result<Certificate> {
    same_rank(a, n.rank())?;
    let mut cert = Certificate::new();
    for i in 0..a.rank() {
        for j in 0..a.rank() {
            let t = nijenhuis_torsion(a, n, &a.basis(i), &a.basis(j))?;
            for (k, v) in t.0.into_iter().enumerate() {
                cert.push("torsion", vec![i, j, k], v);
            }
        }
    }
    Ok(cert)
}

/// `N ∘ H♯ = H♯ ∘ N*` and `⋆^{H♯} = ·^{H♯}_{N*}`, with `H` Koszul-Vinberg and
/// `N` Nijenhuis re-verified.
///
/// The product condition is only evaluated on frame pairs once the matrix
/// condition holds, since only then is `⋆ − ·_{N*}` tensorial.
pub fn check_kvn(a: &Algebroid, h: &SymTensorContra, n: &BundleMap) -> Result<Certificate> {
    same_rank(a, h.rank())?;
    same_rank(a, n.rank())?;
    let mut cert = Certificate::new();
    cert.absorb_prefixed("kv", check_koszul_vinberg(a, h)?);
    cert.absorb_prefixed("nijenhuis", check_nijenhuis(a, n)?);

    let commute = n.matrix().mul(h.matrix()).sub(&h.matrix().mul(&n.matrix().transpose()));
    if !commute.is_zero() {
        push_matrix(&mut cert, "commute", &commute);
        return Ok(cert);
    }
    let deformed = a.deform(n)?;
    for i in 0..a.rank() {
        for j in 0..a.rank() {
            let (al, be) = (a.cobasis(i), a.cobasis(j));
            let star = star_product_with(a, &deformed, h, n, &al, &be)?;
            let dual = deformed_dual_product(a, h, n, &al, &be)?;
            for (k, v) in (&star - &dual).0.into_iter().enumerate() {
                cert.push("star", vec![i, j, k], v);
            }
        }
    }
    Ok(cert)
}

/// `∂_i φ_jk − ∂_j φ_ik`, the flat-chart form of `δφ(e_i, e_j, e_k)`.
pub fn cocycle_coordinate_criterion(m: &Matrix, i: usize, j: usize, k: usize) -> RatFunc {
    &m.get(j, k).partial(i) - &m.get(i, k).partial(j)
}

/// Pushes the nonzero components of `δφ` for a degree-2 cochain with matrix `m`.
fn cocycle_residuals(a: &Algebroid, m: &Matrix, label: &str, cert: &mut Certificate) -> Result<()> {
    let phi = Cochain::from_matrix(m.rows(), m.nvars());
    let d = a.delta(&phi)?;
    if a.is_flat_tangent() {
        for idx in Cochain::canonical_indices(3, a.rank()) {
            if d.get(&idx) != cocycle_coordinate_criterion(m, idx[0], idx[1], idx[2]) {
                return Err(Error::CrossCheckMismatch(format!(
                    "coboundary and coordinate criterion differ at {idx:?}"
                )));
            }
        }
    }
    for (idx, v) in d.nonzero_components() {
        cert.push(label, idx.clone(), v.clone());
    }
    Ok(())
}

/// `δ_A 𝔅 = 0`. On flat tangent algebroids `∂_k 𝔅_ij = ∂_i 𝔅_kj` is evaluated
/// as well and must agree.
pub fn check_pseudo_hessian(a: &Algebroid, b: &SymTensorCo) -> Result<Certificate> {
    same_rank(a, b.rank())?;
    let mut cert = Certificate::new();
    cocycle_residuals(a, b.matrix(), "delta", &mut cert)?;
    Ok(cert)
}

/// `H` Koszul-Vinberg, `δ𝔅 = 0` and `δ𝔅_N = 0` for `N = H♯ ∘ 𝔅♮`.
///
/// The certificate carries `N` and `𝔅_N` as derived tensors.
pub fn check_kvb(a: &Algebroid, h: &SymTensorContra, b: &SymTensorCo) -> Result<Certificate> {
    same_rank(a, h.rank())?;
    same_rank(a, b.rank())?;
    let mut cert = Certificate::new();
    cert.absorb_prefixed("kv", check_koszul_vinberg(a, h)?);
    cert.absorb_prefixed("hessian", check_pseudo_hessian(a, b)?);
    let n = BundleMap::new(h.matrix().mul(b.matrix()));
    let bn = n.matrix().transpose().mul(b.matrix());
    cocycle_residuals(a, &bn, "delta_bn", &mut cert)?;
    cert.add_derived("N", n.matrix().clone());
    cert.add_derived("B_N", bn);
    Ok(cert)
}

/// The ten-term expression whose vanishing on all triples characterises a
/// complementary 2-tensor, evaluated directly on `A` with `N = H♯ ∘ 𝔅♮`.
pub fn complementary_direct(
    a: &Algebroid,
    b: &SymTensorCo,
    n: &BundleMap,
    x: &Section,
    y: &Section,
    z: &Section,
) -> Result<RatFunc> {
    let (nx, ny, nz) = (n.apply(x)?, n.apply(y)?, n.apply(z)?);
    let terms = [
        a.anchor_apply(&ny, &b.eval(x, z))?,
        -a.anchor_apply(&nx, &b.eval(y, z))?,
        -a.anchor_apply(x, &b.eval(&ny, z))?,
        a.anchor_apply(y, &b.eval(&nx, z))?,
        -b.eval(&a.multiply(&ny, z)?, x),
        -b.eval(&a.multiply(y, &nz)?, x),
        b.eval(&a.multiply(&nx, z)?, y),
        b.eval(&a.multiply(x, &nz)?, y),
        b.eval(&a.bracket(&nx, y)?, z),
        -b.eval(&a.bracket(&ny, x)?, z),
    ];
    Ok(terms.into_iter().fold(a.zero_fn(), |acc, t| &acc + &t))
}

/// `⟦𝔅, 𝔅⟧_{A*} = 0` over the dual algebroid of `H`, cross-checked against
/// [`complementary_direct`].
pub fn check_complementary(a: &Algebroid, h: &SymTensorContra, b: &SymTensorCo) -> Result<Certificate> {
    same_rank(a, b.rank())?;
    if !check_koszul_vinberg(a, h)?.holds() {
        return Err(Error::PreconditionFailed(
            "H is not a Koszul-Vinberg structure".into(),
        ));
    }
    let dual = dual_algebroid(a, h)?;
    let as_contra = SymTensorContra::new(b.matrix().clone())?;
    let t = kv_bracket(&dual, &as_contra, &as_contra)?;
    let n = BundleMap::new(h.matrix().mul(b.matrix()));
    let r = a.rank();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let direct = complementary_direct(a, b, &n, &a.basis(i), &a.basis(j), &a.basis(k))?;
                if *t.get(i, j, k) != direct {
                    return Err(Error::CrossCheckMismatch(format!(
                        "dual bracket and direct complementary formula differ at [{i}, {j}, {k}]"
                    )));
                }
            }
        }
    }
    let mut cert = Certificate::new();
    for (idx, v) in t.nonzero() {
        cert.push("bracket", idx.to_vec(), v.clone());
    }
    Ok(cert)
}

/// `𝔅(Nx, y) = 𝔅(x, Ny)`, `δ𝔅 = 0`, `δ𝔅_N = 0` and `N` Nijenhuis.
pub fn check_hn(a: &Algebroid, b: &SymTensorCo, n: &BundleMap) -> Result<Certificate> {
    same_rank(a, b.rank())?;
    same_rank(a, n.rank())?;
    let mut cert = Certificate::new();
    let sym = b.matrix().mul(n.matrix()).sub(&n.matrix().transpose().mul(b.matrix()));
    if !sym.is_zero() {
        push_matrix(&mut cert, "symmetric", &sym);
        return Ok(cert);
    }
    cert.absorb_prefixed("hessian", check_pseudo_hessian(a, b)?);
    let bn = b_deform_cochain_matrix(b, n, 1);
    cocycle_residuals(a, &bn, "delta_bn", &mut cert)?;
    cert.absorb_prefixed("nijenhuis", check_nijenhuis(a, n)?);
    Ok(cert)
}

/// Matrix of the cochain `𝔅_{N^k}(x, y) = 𝔅(N^k x, y)`, symmetric or not.
fn b_deform_cochain_matrix(b: &SymTensorCo, n: &BundleMap, k: u32) -> Matrix {
    let c = b_deform_cochain(b, n, k);
    let r = b.rank();
    let rows = (0..r).map(|i| (0..r).map(|j| c.get(&[i, j])).collect()).collect();
    Matrix::from_rows(b.matrix().nvars(), rows).expect("square by construction")
}

/// HN through the squares criterion: given `𝔅(Nx, y) = 𝔅(x, Ny)` and
/// `δ𝔅 = 0`, the verdict comes from `δ𝔅_N = δ𝔅_{N²} = 0` alone.
///
/// When `𝔅` is nondegenerate the verdict is compared with [`check_hn`].
pub fn check_hn_via_squares(a: &Algebroid, b: &SymTensorCo, n: &BundleMap) -> Result<Certificate> {
    same_rank(a, b.rank())?;
    same_rank(a, n.rank())?;
    let sym = b.matrix().mul(n.matrix()).sub(&n.matrix().transpose().mul(b.matrix()));
    if !sym.is_zero() {
        return Err(Error::PreconditionFailed("B(Nx, y) ≠ B(x, Ny)".into()));
    }
    if !check_pseudo_hessian(a, b)?.holds() {
        return Err(Error::PreconditionFailed("B is not a 2-cocycle".into()));
    }
    let mut cert = Certificate::new();
    cocycle_residuals(a, &b_deform_cochain_matrix(b, n, 1), "delta_bn", &mut cert)?;
    cocycle_residuals(a, &b_deform_cochain_matrix(b, n, 2), "delta_bn2", &mut cert)?;
    if !b.matrix().determinant().is_zero() && check_hn(a, b, n)?.holds() != cert.holds() {
        return Err(Error::CrossCheckMismatch(
            "squares criterion and direct HN check disagree".into(),
        ));
    }
    Ok(cert)
}

/// `N = H₁♯ ∘ (H♯)⁻¹`; makes no claim about the result.
pub fn derive_nijenhuis(h1: &SymTensorContra, h: &SymTensorContra) -> Result<BundleMap> {
    if h1.rank() != h.rank() {
        return Err(Error::RankMismatch {
            expected: h.rank(),
            found: h1.rank(),
        });
    }
    Ok(BundleMap::new(h1.matrix().mul(&h.matrix().inverse()?)))
}

/// Base tensor of a hierarchy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HierarchyBase {
    Contravariant(SymTensorContra),
    Covariant(SymTensorCo),
}

/// The family `H_{N^k}` (or `𝔅_{N^k}`), `k = 0..=K`, with every member and
/// every pair certified.
#[derive(Clone, Debug)]
pub struct Hierarchy {
    pub base: HierarchyBase,
    pub n: BundleMap,
    pub depth: u32,
    pub members: Vec<Matrix>,
    pub member_certificates: Vec<Certificate>,
    /// Symmetric `(K+1) × (K+1)` table.
    pub pairwise: Vec<Vec<Certificate>>,
}

impl Hierarchy {
    /// Number of distinct pair verdicts, `(K+1)(K+2)/2`.
    pub fn pair_count(&self) -> usize {
        let m = self.members.len();
        m * (m + 1) / 2
    }

    pub fn holds(&self) -> bool {
        self.member_certificates.iter().all(Certificate::holds)
            && self.pairwise.iter().flatten().all(Certificate::holds)
    }
}

/// Builds and certifies the hierarchy generated by a KVN pair `(H, N)` or an
/// HN pair `(𝔅, N)`.
///
/// Covariant pairs are certified through linearity of `δ_A`: a combination
/// `c₁𝔅_{N^k} + c₂𝔅_{N^l}` is a cocycle for every `c₁, c₂` exactly when both
/// members are, so the pair certificate collects both members' residuals.
pub fn hierarchy(a: &Algebroid, base: &HierarchyBase, n: &BundleMap, depth: u32) -> Result<Hierarchy> {
    let size = depth as usize + 1;
    let mut members = Vec::with_capacity(size);
    let mut member_certificates = Vec::with_capacity(size);
    let mut pairwise = vec![vec![Certificate::new(); size]; size];
    match base {
        HierarchyBase::Contravariant(h) => {
            if !check_kvn(a, h, n)?.holds() {
                return Err(Error::PreconditionFailed("(H, N) is not a KVN structure".into()));
            }
            let hs = (0..=depth)
                .map(|k| h_deform(h, n, k))
                .collect::<Result<Vec<_>>>()?;
            for hk in &hs {
                member_certificates.push(check_koszul_vinberg(a, hk)?);
                members.push(hk.matrix().clone());
            }
            for k in 0..size {
                for l in k..size {
                    let c = check_compatible(a, &hs[k], &hs[l])?;
                    pairwise[l][k] = c.clone();
                    pairwise[k][l] = c;
                }
            }
        }
        HierarchyBase::Covariant(b) => {
            if !check_hn(a, b, n)?.holds() {
                return Err(Error::PreconditionFailed("(B, N) is not an HN structure".into()));
            }
            let bs = (0..=depth)
                .map(|k| b_deform(b, n, k))
                .collect::<Result<Vec<_>>>()?;
            for bk in &bs {
                member_certificates.push(check_pseudo_hessian(a, bk)?);
                members.push(bk.matrix().clone());
            }
            for k in 0..size {
                for l in k..size {
                    let mut c = Certificate::new();
                    c.absorb_prefixed(&format!("member{k}"), member_certificates[k].clone());
                    if l != k {
                        c.absorb_prefixed(&format!("member{l}"), member_certificates[l].clone());
                    }
                    pairwise[l][k] = c.clone();
                    pairwise[k][l] = c;
                }
            }
        }
    }
    Ok(Hierarchy {
        base: base.clone(),
        n: n.clone(),
        depth,
        members,
        member_certificates,
        pairwise,
    })
}
