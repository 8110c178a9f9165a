//! Graded derivation spaces of the nilradical and the Borel subalgebra.
//!
//! A degree-beta derivation of the nilradical is determined by its images
//! d(e_i) in the components beta + alpha_i; the generator assignment extends
//! uniquely to the free Lie algebra and descends to the quotient exactly
//! when the Leibniz image of every Serre element vanishes. Those images are
//! expanded symbolically on bracket words and evaluated in the quotient, so
//! whenever the cap precondition holds the resulting linear system
//! characterizes the derivation space of the full, untruncated algebra, not
//! just of the truncation. Inner subspaces come from explicit ad witnesses
//! and exact rank, which keeps the finite-type degeneracy (ad kills the
//! highest root space) handled automatically.

use crate::gcm::{classify, GcmError, GcmType};
use crate::liealg::{BorelAlgebra, GradedAlgebra, LieElt, LieError};
use crate::qlinalg::{Echelon, QMatrix};
use crate::rat::{rat, Rat};
use crate::roots::{highest_root, reflect, RootVec, RootsError};
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DerivError {
    #[error("height cap too small: {0}")]
    CapTooSmall(String),
    #[error("wrong matrix type: {0}")]
    WrongType(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("gcm error: {0}")]
    Gcm(#[from] GcmError),
    #[error("roots error: {0}")]
    Roots(#[from] RootsError),
}

/// One unknown block: the coordinates of d(e_i) in the degree beta+alpha_i.
#[derive(Debug, Clone)]
struct Block {
    offset: usize,
    dim: usize,
    degree: RootVec,
}

#[derive(Debug, Clone)]
struct Layout {
    blocks: Vec<Option<Block>>,
    total: usize,
}

impl Layout {
    fn for_degree(alg: &GradedAlgebra, beta: &RootVec) -> Result<Layout, LieError> {
        let n = alg.gcm().size();
        let mut blocks = Vec::with_capacity(n);
        let mut total = 0;
        for i in 0..n {
            let deg = beta.plus_simple(i);
            let dim = if deg.is_positive() {
                alg.mult(&deg)?
            } else {
                0
            };
            if dim > 0 {
                blocks.push(Some(Block {
                    offset: total,
                    dim,
                    degree: deg,
                }));
                total += dim;
            } else {
                blocks.push(None);
            }
        }
        Ok(Layout { blocks, total })
    }

    fn unpack(&self, beta: &RootVec, v: &[Rat]) -> Derivation {
        let n = self.blocks.len();
        let images = (0..n)
            .map(|i| {
                let deg = beta.plus_simple(i);
                match &self.blocks[i] {
                    None => LieElt::zero(deg),
                    Some(b) => {
                        let mut elt = LieElt::zero(deg);
                        for k in 0..b.dim {
                            if !v[b.offset + k].is_zero() {
                                elt.coords.insert(k, v[b.offset + k].clone());
                            }
                        }
                        elt
                    }
                }
            })
            .collect();
        Derivation {
            degree: beta.clone(),
            images,
        }
    }

    fn pack(&self, d: &Derivation) -> Option<Vec<Rat>> {
        let mut v = vec![Rat::zero(); self.total];
        for (i, img) in d.images.iter().enumerate() {
            match &self.blocks[i] {
                Some(b) => {
                    for (k, c) in &img.coords {
                        v[b.offset + k] = c.clone();
                    }
                }
                None => {
                    if !img.is_zero() {
                        return None;
                    }
                }
            }
        }
        Some(v)
    }
}

/// A degree-beta derivation of the nilradical, stored by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub degree: RootVec,
    /// images[i] = d(e_i), of degree beta + alpha_i.
    pub images: Vec<LieElt>,
}

/// Basis of the degree-beta derivations with the inner/outer split.
#[derive(Debug)]
pub struct DerivationSpace {
    pub degree: RootVec,
    pub basis: Vec<Derivation>,
    /// dim of ad(b+) restricted to this degree (ad h at degree 0).
    pub inner_dim: usize,
    /// dim of ad(n+) alone; differs from inner_dim only at degree 0.
    pub nil_inner_dim: usize,
    pub outer_dim: usize,
    /// Height cap under which the constraints were evaluated; the answer is
    /// exact for the untruncated algebra under this cap.
    pub validity_cap: usize,
    layout: Layout,
    solution: Echelon,
    inner: Echelon,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, d: &Derivation) -> bool {
        match self.layout.pack(d) {
            None => false,
            Some(v) => self.solution.contains(&v),
        }
    }

    pub fn is_inner(&self, d: &Derivation) -> bool {
        match self.layout.pack(d) {
            None => false,
            Some(v) => self.inner.contains(&v),
        }
    }
}

fn check_cap(alg: &GradedAlgebra, beta: &RootVec) -> Result<(), DerivError> {
    let need = beta.height() + alg.gcm().max_serre_height() as i64;
    if need > alg.height_cap() as i64 {
        return Err(DerivError::CapTooSmall(format!(
            "derivation degree {} needs cap {}, algebra has {}",
            beta,
            need,
            alg.height_cap()
        )));
    }
    Ok(())
}

/// Rows of the Leibniz image of every Serre element, over the unknown
/// layout. For the pair (i, j) with r = -a_ij the constraint is
/// sum_s (ad e_i)^s (ad y_i) (ad e_i)^{r-s} e_j + (ad e_i)^{r+1} y_j = 0.
fn serre_constraint_rows(
    alg: &GradedAlgebra,
    beta: &RootVec,
    layout: &Layout,
) -> Result<Vec<Vec<Rat>>, DerivError> {
    let n = alg.gcm().size();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let r = (-alg.gcm().entry(i, j)) as usize;
            let mut tau = beta.clone();
            tau.0[i] += (r + 1) as i64;
            tau.0[j] += 1;
            if !tau.is_positive() {
                continue;
            }
            let target_dim = alg.mult(&tau)?;
            if target_dim == 0 {
                continue;
            }
            let mut cols: Vec<(usize, Vec<Rat>)> = Vec::new();
            if let Some(b) = &layout.blocks[i] {
                // (ad e_i)^m e_j chains, m = 0..r.
                let mut chains = Vec::with_capacity(r + 1);
                let mut cur = alg.generator(j);
                chains.push(cur.clone());
                for _ in 0..r {
                    cur = alg.ad_generator(i, &cur)?;
                    chains.push(cur.clone());
                }
                for k in 0..b.dim {
                    let y = LieElt::basis(b.degree.clone(), k);
                    let mut acc = LieElt::zero(tau.clone());
                    for s in 0..=r {
                        let mut term = alg.bracket(&y, &chains[r - s])?;
                        for _ in 0..s {
                            term = alg.ad_generator(i, &term)?;
                        }
                        acc.add_scaled(&term, &rat(1));
                    }
                    cols.push((b.offset + k, acc.dense(target_dim)));
                }
            }
            if let Some(b) = &layout.blocks[j] {
                for k in 0..b.dim {
                    let mut term = LieElt::basis(b.degree.clone(), k);
                    for _ in 0..=r {
                        term = alg.ad_generator(i, &term)?;
                    }
                    cols.push((b.offset + k, term.dense(target_dim)));
                }
            }
            for t in 0..target_dim {
                let mut row = vec![Rat::zero(); layout.total];
                let mut nonzero = false;
                for (off, col) in &cols {
                    if !col[t].is_zero() {
                        row[*off] = col[t].clone();
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    Ok(rows)
}

fn nil_inner_witnesses(
    alg: &GradedAlgebra,
    beta: &RootVec,
    layout: &Layout,
) -> Result<Vec<Vec<Rat>>, DerivError> {
    let mut out = Vec::new();
    if beta.is_positive() && alg.mult(beta)? > 0 {
        for k in 0..alg.mult(beta)? {
            let x = LieElt::basis(beta.clone(), k);
            let mut v = vec![Rat::zero(); layout.total];
            for (i, block) in layout.blocks.iter().enumerate() {
                let img = alg.bracket(&x, &alg.generator(i))?;
                match block {
                    Some(b) => {
                        for (t, c) in &img.coords {
                            v[b.offset + t] = c.clone();
                        }
                    }
                    None => debug_assert!(img.is_zero()),
                }
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Solve for the degree-beta derivations of the nilradical.
pub fn der_space_n(alg: &GradedAlgebra, beta: &RootVec) -> Result<DerivationSpace, DerivError> {
    check_cap(alg, beta)?;
    let layout = Layout::for_degree(alg, beta)?;
    let solutions: Vec<Vec<Rat>> = if layout.total == 0 {
        Vec::new()
    } else {
        let rows = serre_constraint_rows(alg, beta, &layout)?;
        if rows.is_empty() {
            (0..layout.total)
                .map(|k| {
                    let mut v = vec![Rat::zero(); layout.total];
                    v[k] = rat(1);
                    v
                })
                .collect()
        } else {
            QMatrix::from_rows(rows).kernel_basis()
        }
    };
    let mut solution_span = Echelon::new(layout.total.max(1));
    for v in &solutions {
        solution_span.insert_rational(v);
    }

    let mut inner = Echelon::new(layout.total.max(1));
    let mut nil_inner = Echelon::new(layout.total.max(1));
    for w in nil_inner_witnesses(alg, beta, &layout)? {
        debug_assert!(
            solution_span.contains(&w),
            "ad witness satisfies constraints"
        );
        inner.insert_rational(&w);
        nil_inner.insert_rational(&w);
    }
    if beta.is_zero() {
        // ad h gives every diagonal derivation e_i -> c_i e_i: the alpha_i
        // are linearly independent on h, so the image is all of them.
        for block in layout.blocks.iter().flatten() {
            debug_assert_eq!(block.dim, 1);
            let mut v = vec![Rat::zero(); layout.total];
            v[block.offset] = rat(1);
            debug_assert!(solution_span.contains(&v));
            inner.insert_rational(&v);
        }
    }

    let inner_dim = inner.rank();
    let nil_inner_dim = nil_inner.rank();
    let basis: Vec<Derivation> = solutions.iter().map(|v| layout.unpack(beta, v)).collect();
    let outer_dim = basis.len() - inner_dim;
    Ok(DerivationSpace {
        degree: beta.clone(),
        outer_dim,
        inner_dim,
        nil_inner_dim,
        validity_cap: alg.height_cap(),
        basis,
        layout,
        solution: solution_span,
        inner,
    })
}

/// All degrees beta with beta + alpha_i a nonzero component of height <= h
/// for some i: the only degrees where a derivation can be nonzero on a
/// generator. Sorted by height, then coordinates.
pub fn candidate_degrees_n(alg: &GradedAlgebra, h: i64) -> Result<Vec<RootVec>, DerivError> {
    if h > alg.height_cap() as i64 {
        return Err(DerivError::CapTooSmall(format!(
            "candidate height {} exceeds cap {}",
            h,
            alg.height_cap()
        )));
    }
    let n = alg.gcm().size();
    let mut set = std::collections::BTreeSet::new();
    for (gamma, _) in alg.graded_dims() {
        if gamma.height() > h {
            continue;
        }
        for i in 0..n {
            set.insert(gamma.minus_simple(i));
        }
    }
    let mut out: Vec<RootVec> = set.into_iter().collect();
    out.sort_by_key(|d| (d.height(), d.clone()));
    Ok(out)
}

/// The finite-type outer derivations d_i: e_j -> delta_ij e_{s_i(theta)},
/// each validated against the solved derivation space at its degree
/// beta_i = s_i(theta) - alpha_i.
pub fn outer_finite(alg: &GradedAlgebra) -> Result<Vec<(usize, RootVec, Derivation)>, DerivError> {
    let gcm = alg.gcm();
    if !matches!(classify(gcm)?, GcmType::Finite(_)) {
        return Err(DerivError::WrongType(
            "outer_finite needs finite type".into(),
        ));
    }
    let theta = highest_root(gcm)?;
    let n = gcm.size();
    let mut out = Vec::new();
    for i in 0..n {
        let si_theta = reflect(gcm, i, &theta);
        let beta = si_theta.minus_simple(i);
        if alg.mult(&si_theta)? != 1 {
            return Err(DerivError::Lie(LieError::Internal(format!(
                "real root {} should have multiplicity 1",
                si_theta
            ))));
        }
        let images = (0..n)
            .map(|j| {
                if j == i {
                    LieElt::basis(si_theta.clone(), 0)
                } else {
                    LieElt::zero(beta.plus_simple(j))
                }
            })
            .collect();
        let d = Derivation {
            degree: beta.clone(),
            images,
        };
        let space = der_space_n(alg, &beta)?;
        if !space.contains(&d) {
            return Err(DerivError::Lie(LieError::Internal(format!(
                "constructed d_{} is not a derivation at {}",
                i, beta
            ))));
        }
        if space.is_inner(&d) || space.outer_dim == 0 {
            return Err(DerivError::Lie(LieError::Internal(format!(
                "constructed d_{} is not outer at {}",
                i, beta
            ))));
        }
        out.push((i, beta, d));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeLine {
    pub degree: RootVec,
    pub dim: usize,
    pub inner: usize,
    pub outer: usize,
    pub expected_dim: usize,
    pub expected_outer: usize,
    pub status: String,
}

impl DegreeLine {
    pub fn new(space: &DerivationSpace, expected_dim: usize, expected_outer: usize) -> Self {
        let pass = space.dim() == expected_dim && space.outer_dim == expected_outer;
        DegreeLine {
            degree: space.degree.clone(),
            dim: space.dim(),
            inner: space.inner_dim,
            outer: space.outer_dim,
            expected_dim,
            expected_outer,
            status: if pass { "pass" } else { "fail" }.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub theorem: String,
    pub pass: bool,
    pub lines: Vec<DegreeLine>,
}

/// Expected total dimension of Der(n+)_beta when every derivation is inner:
/// mult(beta) away from zero, l+1 at zero, zero off the positive cone.
pub fn inner_expected_dim(alg: &GradedAlgebra, beta: &RootVec) -> Result<usize, DerivError> {
    Ok(if beta.is_zero() {
        alg.gcm().size()
    } else if beta.is_positive() {
        alg.mult(beta)?
    } else {
        0
    })
}

/// Moody's conjecture at desk scale: for indefinite type every derivation
/// is inner, with total dimension mult(beta) away from zero and l+1 at zero.
pub fn verify_moody(alg: &GradedAlgebra, h: i64) -> Result<SweepReport, DerivError> {
    let gcm = alg.gcm();
    if classify(gcm)? != GcmType::Indefinite {
        return Err(DerivError::WrongType(
            "verify_moody needs indefinite type".into(),
        ));
    }
    if h + gcm.max_serre_height() as i64 > alg.height_cap() as i64 {
        return Err(DerivError::CapTooSmall(format!(
            "sweep height {} + max Serre height {} exceeds cap {}",
            h,
            gcm.max_serre_height(),
            alg.height_cap()
        )));
    }
    let mut lines = Vec::new();
    for beta in candidate_degrees_n(alg, h)? {
        let space = der_space_n(alg, &beta)?;
        let expected = inner_expected_dim(alg, &beta)?;
        lines.push(DegreeLine::new(&space, expected, 0));
    }
    let pass = lines.iter().all(|l| l.passed());
    Ok(SweepReport {
        theorem: "Der(n+) = ad(b+)|n+ for indefinite type".into(),
        pass,
        lines,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AffineOuterReport {
    pub theorem: String,
    pub pass: bool,
    pub lines: Vec<DegreeLine>,
    /// Per multiple of r delta: whether the outer representative can be
    /// normalized to vanish on every generator except epsilon.
    pub normalizations: Vec<(RootVec, bool)>,
}

/// Affine check: at beta = m delta with r | m exactly one outer derivation,
/// normalizable to d(e_i) = delta_{i,eps} e_{beta+alpha_eps} modulo inner;
/// at the other multiples of delta (twisted cases) none.
pub fn affine_outer_check(alg: &GradedAlgebra, k: usize) -> Result<AffineOuterReport, DerivError> {
    let gcm = alg.gcm();
    let GcmType::Affine(info) = classify(gcm)? else {
        return Err(DerivError::WrongType(
            "affine_outer_check needs affine type".into(),
        ));
    };
    let delta = RootVec(
        info.marks
            .iter()
            .map(|m| i64::try_from(m).expect("mark fits in i64"))
            .collect(),
    );
    let r = info.r as usize;
    let eps = info.epsilon;
    let top = delta.scale((k * r) as i64);
    let need = top.plus_simple(eps).height() + gcm.max_serre_height() as i64;
    if need > alg.height_cap() as i64 {
        return Err(DerivError::CapTooSmall(format!(
            "k = {} needs cap {}, algebra has {}",
            k,
            need,
            alg.height_cap()
        )));
    }
    let mut lines = Vec::new();
    let mut normalizations = Vec::new();
    for m in 1..=(k * r) {
        let beta = delta.scale(m as i64);
        let space = der_space_n(alg, &beta)?;
        let mult = alg.mult(&beta)?;
        if m % r == 0 {
            lines.push(DegreeLine::new(&space, mult + 1, 1));
            normalizations.push((beta.clone(), normalized_outer_exists(&space, eps)));
        } else {
            lines.push(DegreeLine::new(&space, mult, 0));
        }
    }
    let pass = lines.iter().all(|l| l.passed()) && normalizations.iter().all(|(_, ok)| *ok);
    Ok(AffineOuterReport {
        theorem: "outer derivations d_k at k r delta (affine type)".into(),
        pass,
        lines,
        normalizations,
    })
}

/// Does the solution space contain a non-inner element supported only on
/// the epsilon block?
fn normalized_outer_exists(space: &DerivationSpace, eps: usize) -> bool {
    let layout = &space.layout;
    let rows: Vec<Vec<Rat>> = space
        .basis
        .iter()
        .map(|d| layout.pack(d).expect("basis packs"))
        .collect();
    if rows.is_empty() {
        return false;
    }
    // Combinations of solution vectors vanishing outside block eps.
    let cols = rows.len();
    let mut constraint_rows = Vec::new();
    for t in 0..layout.total {
        let in_eps = layout.blocks[eps]
            .as_ref()
            .map(|b| t >= b.offset && t < b.offset + b.dim)
            .unwrap_or(false);
        if in_eps {
            continue;
        }
        constraint_rows.push((0..cols).map(|c| rows[c][t].clone()).collect::<Vec<_>>());
    }
    let combos = if constraint_rows.is_empty() {
        (0..cols)
            .map(|k| {
                let mut v = vec![Rat::zero(); cols];
                v[k] = rat(1);
                v
            })
            .collect()
    } else {
        QMatrix::from_rows(constraint_rows).kernel_basis()
    };
    for combo in &combos {
        let mut v = vec![Rat::zero(); layout.total];
        for (c, coeff) in combo.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for t in 0..layout.total {
                let add = &rows[c][t] * coeff;
                let cur = std::mem::replace(&mut v[t], Rat::zero());
                v[t] = cur + add;
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        if !space.inner.contains(&v) {
            return true;
        }
    }
    false
}

/// Borel derivation space at one degree.
#[derive(Debug)]
pub struct BorelDerivationSpace {
    pub degree: RootVec,
    pub dim: usize,
    pub inner_dim: usize,
    pub outer_dim: usize,
}

/// Solve for the degree-beta derivations of the Borel subalgebra.
///
/// Unknowns are d(h_a) (in h at degree zero, in the nilradical component
/// otherwise) and d(e_i). Constraints: [h_a, h_b] = 0 gives
/// beta(h_a) d(h_b) = beta(h_b) d(h_a); [h_a, e_i] = alpha_i(h_a) e_i gives
/// [d(h_a), e_i] + beta(h_a) d(e_i) = 0 away from zero and
/// alpha_i(d(h_a)) = 0 at zero; plus the Serre constraints on the d(e_i).
pub fn der_space_b(bor: &BorelAlgebra, beta: &RootVec) -> Result<BorelDerivationSpace, DerivError> {
    let alg = &bor.nil;
    let n = alg.gcm().size();
    let hd = bor.h_dim;
    if beta.is_zero() {
        // d(h_a) constrained into c; d(e_i) = c_i e_i free.
        let total = hd * hd + n;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for a in 0..hd {
            for i in 0..n {
                let mut row = vec![Rat::zero(); total];
                for b in 0..hd {
                    row[a * hd + b] = bor.pairing()[(i, b)].clone();
                }
                rows.push(row);
            }
        }
        let kernel = QMatrix::from_rows(rows).kernel_basis();
        let dim = kernel.len();
        // Inner: ad h_a has d(h_b) = 0 and c_i = alpha_i(h_a).
        let mut inner = Echelon::new(total);
        for a in 0..hd {
            let mut v = vec![Rat::zero(); total];
            for i in 0..n {
                v[hd * hd + i] = bor.pairing()[(i, a)].clone();
            }
            inner.insert_rational(&v);
        }
        let inner_dim = inner.rank();
        debug_assert_eq!(dim, hd * bor.center_dim() + n);
        return Ok(BorelDerivationSpace {
            degree: beta.clone(),
            dim,
            inner_dim,
            outer_dim: dim - inner_dim,
        });
    }
    if !beta.is_positive() {
        // Off the positive cone d(h) must land in b+_beta = 0, and then
        // beta(h_a) d(e_i) = 0 with beta nonzero on h forces d(e_i) = 0.
        return Ok(BorelDerivationSpace {
            degree: beta.clone(),
            dim: 0,
            inner_dim: 0,
            outer_dim: 0,
        });
    }
    check_cap(alg, beta)?;
    let mb = alg.mult(beta)?;
    let e_layout = Layout::for_degree(alg, beta)?;
    let h_total = hd * mb;
    let total = h_total + e_layout.total;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let beta_of = |a: usize| -> Rat {
        let mut h = vec![Rat::zero(); hd];
        h[a] = rat(1);
        bor.beta_on(beta, &h)
    };
    // [h_a, h_b] = 0: beta(h_a) d(h_b) - beta(h_b) d(h_a) = 0.
    for a in 0..hd {
        for b in a + 1..hd {
            let (ca, cb) = (beta_of(a), beta_of(b));
            for t in 0..mb {
                let mut row = vec![Rat::zero(); total];
                row[b * mb + t] = ca.clone();
                row[a * mb + t] = -cb.clone();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    // [d(h_a), e_i] + beta(h_a) d(e_i) = 0 in degree beta + alpha_i.
    for a in 0..hd {
        let ca = beta_of(a);
        for i in 0..n {
            let target = beta.plus_simple(i);
            let target_dim = alg.mult(&target)?;
            if target_dim == 0 {
                continue;
            }
            let cols: Vec<Vec<Rat>> = (0..mb)
                .map(|kk| {
                    alg.bracket(&LieElt::basis(beta.clone(), kk), &alg.generator(i))
                        .map(|img| img.dense(target_dim))
                })
                .collect::<Result<_, _>>()?;
            for t in 0..target_dim {
                let mut row = vec![Rat::zero(); total];
                for kk in 0..mb {
                    row[a * mb + kk] = cols[kk][t].clone();
                }
                if let Some(b) = &e_layout.blocks[i] {
                    row[h_total + b.offset + t] = ca.clone();
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    // Serre constraints on the d(e_i), shifted into the combined layout.
    for row in serre_constraint_rows(alg, beta, &e_layout)? {
        let mut full = vec![Rat::zero(); total];
        full[h_total..].clone_from_slice(&row);
        rows.push(full);
    }
    let kernel = if rows.is_empty() {
        (0..total)
            .map(|kk| {
                let mut v = vec![Rat::zero(); total];
                v[kk] = rat(1);
                v
            })
            .collect()
    } else {
        QMatrix::from_rows(rows).kernel_basis()
    };
    let dim = kernel.len();
    // Inner witnesses ad x for x in the beta component:
    // d(h_a) = [x, h_a] = -beta(h_a) x, d(e_i) = [x, e_i].
    let mut inner = Echelon::new(total.max(1));
    for kk in 0..mb {
        let x = LieElt::basis(beta.clone(), kk);
        let mut v = vec![Rat::zero(); total];
        for a in 0..hd {
            let c = -beta_of(a);
            if !c.is_zero() {
                v[a * mb + kk] = c;
            }
        }
        for (i, block) in e_layout.blocks.iter().enumerate() {
            let img = alg.bracket(&x, &alg.generator(i))?;
            if let Some(b) = block {
                for (t, c) in &img.coords {
                    v[h_total + b.offset + t] = c.clone();
                }
            }
        }
        inner.insert_rational(&v);
    }
    let inner_dim = inner.rank();
    Ok(BorelDerivationSpace {
        degree: beta.clone(),
        dim,
        inner_dim,
        outer_dim: dim - inner_dim,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct H1Line {
    pub degree: RootVec,
    pub dim: usize,
    pub nil_inner: usize,
    pub h1: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct H1Report {
    pub lines: Vec<H1Line>,
    pub total: usize,
}

/// Degree-wise dim H^1(n+, n+) = Der/ad(n+) over candidates of height <= h.
/// Finite type sums to 2(l+1): the l+1 outer d_i plus l+1 at degree zero,
/// where ad(n+) has no degree-zero part at all. Indefinite type sums to
/// l+1; affine type grows by one at each k r delta.
pub fn h1_report(alg: &GradedAlgebra, h: i64) -> Result<H1Report, DerivError> {
    let mut lines = Vec::new();
    let mut total = 0;
    for beta in candidate_degrees_n(alg, h)? {
        let space = der_space_n(alg, &beta)?;
        let h1 = space.dim() - space.nil_inner_dim;
        if space.dim() > 0 {
            total += h1;
            lines.push(H1Line {
                degree: beta,
                dim: space.dim(),
                nil_inner: space.nil_inner_dim,
                h1,
            });
        }
    }
    Ok(H1Report { lines, total })
}
