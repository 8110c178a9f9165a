//! Generalized Cartan matrices: validation, symmetrizers, type
//! classification, diagram automorphisms and affine marks.
//!
//! Conventions follow Kac: `a[i][j] = alpha_j(alpha_i_covee)`, so the
//! pairing of a root-lattice element with the i-th simple coroot reads off
//! row i of the matrix. Canonical numbering of catalog types is Kac's
//! (finite types 1..l mapped to positions 0..l-1, affine types 0..l).

mod catalog;

pub use catalog::catalog_entries;

use crate::qlinalg::QMatrix;
use crate::rat::{rat, Rat};
use crate::roots::RootVec;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GcmError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix must have size at least 2")]
    TooSmall,
    #[error("diagonal entry at ({0},{0}) is not 2")]
    DiagonalNotTwo(usize),
    #[error("positive off-diagonal entry at ({0},{1})")]
    PositiveOffDiagonal(usize, usize),
    #[error("zero pattern asymmetric at ({0},{1})")]
    ZeroPatternAsymmetric(usize, usize),
    #[error("matrix is decomposable; component {0:?} is disconnected from the rest")]
    Decomposable(Vec<usize>),
    #[error("matrix is not symmetrizable; ratios conflict around cycle {0:?}")]
    NotSymmetrizable(Vec<usize>),
    #[error("internal classification inconsistency: {0}")]
    Internal(String),
}

/// A validated indecomposable generalized Cartan matrix of size l+1 >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gcm {
    entries: Vec<Vec<i64>>,
}

impl Gcm {
    /// Validate an integer matrix as a GCM.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, GcmError> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(GcmError::NotSquare);
        }
        if n < 2 {
            return Err(GcmError::TooSmall);
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(GcmError::DiagonalNotTwo(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && entries[i][j] > 0 {
                    return Err(GcmError::PositiveOffDiagonal(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    return Err(GcmError::ZeroPatternAsymmetric(i, j));
                }
            }
        }
        // Connectivity of the Dynkin graph.
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && entries[i][j] != 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            let component: Vec<usize> = (0..n).filter(|&i| seen[i]).collect();
            return Err(GcmError::Decomposable(component));
        }
        Ok(Gcm { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// l with simple roots indexed 0..l; equals size - 1.
    pub fn l(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &Vec<Vec<i64>> {
        &self.entries
    }

    /// <beta, alpha_i_covee> = row i of A against the coordinates of beta.
    pub fn pairing(&self, beta: &RootVec, i: usize) -> i64 {
        self.entries[i]
            .iter()
            .zip(&beta.0)
            .map(|(a, c)| a * c)
            .sum()
    }

    pub fn transpose(&self) -> Gcm {
        let n = self.size();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| self.entries[j][i]).collect())
            .collect();
        Gcm { entries }
    }

    /// Largest 2 - a_ij over i != j: the height of the tallest Serre relation
    /// minus the height of e_j, i.e. the minimum sensible truncation height.
    pub fn max_serre_height(&self) -> usize {
        let n = self.size();
        let mut m = 0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m = m.max((2 - self.entries[i][j]) as usize);
                }
            }
        }
        m
    }

    pub fn as_qmatrix(&self) -> QMatrix {
        QMatrix::from_int_rows(&self.entries)
    }
}

/// Positive diagonal D with DA symmetric, normalized to integer entries
/// with gcd 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetrizer {
    pub d: Vec<BigInt>,
}

/// Symmetrizer found by spanning-tree propagation of the ratios
/// d_j / d_i = a_ij / a_ji, with every non-tree edge checked for
/// consistency.
pub fn symmetrizer(g: &Gcm) -> Result<Symmetrizer, GcmError> {
    let n = g.size();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    let mut parent: Vec<usize> = (0..n).collect();
    d[0] = Some(rat(1));
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut order = vec![0usize];
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i == j || g.entry(i, j) == 0 {
                continue;
            }
            let ratio = crate::rat::rat_frac(g.entry(i, j), g.entry(j, i));
            let dj = d[i].as_ref().unwrap() * &ratio;
            match &d[j] {
                None => {
                    d[j] = Some(dj);
                    parent[j] = i;
                    order.push(j);
                    queue.push_back(j);
                }
                Some(existing) => {
                    if *existing != dj {
                        // Conflict: walk tree paths to the root to report a cycle.
                        let path = |mut k: usize| {
                            let mut p = vec![k];
                            while parent[k] != k {
                                k = parent[k];
                                p.push(k);
                            }
                            p
                        };
                        let mut cycle = path(i);
                        cycle.reverse();
                        let mut back = path(j);
                        // Trim the shared prefix of the two root paths.
                        while cycle.len() > 1
                            && back.len() > 1
                            && cycle[cycle.len() - 2] == back[back.len() - 2]
                        {
                            cycle.pop();
                            back.pop();
                        }
                        back.pop();
                        cycle.extend(back.iter().rev());
                        return Err(GcmError::NotSymmetrizable(cycle));
                    }
                }
            }
        }
    }
    debug_assert_eq!(order.len(), n);
    let vals: Vec<Rat> = (0..n).map(|i| d[i].clone().unwrap()).collect();
    let prim = crate::rat::to_primitive_integer(&vals);
    debug_assert!(prim.iter().all(|x| x.is_positive()));
    // Direct check of the defining identity.
    for i in 0..n {
        for j in 0..n {
            debug_assert_eq!(
                &prim[i] * BigInt::from(g.entry(i, j)),
                &prim[j] * BigInt::from(g.entry(j, i))
            );
        }
    }
    Ok(Symmetrizer { d: prim })
}

/// Classification data for an affine GCM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineInfo {
    /// Canonical Kac label, e.g. "A1~1" for A_1^(1).
    pub label: String,
    /// perm[input index] = canonical node number (0-based, Kac affine numbering).
    pub perm: Vec<usize>,
    /// Twist order r in X_N^(r).
    pub r: u32,
    /// Positive integer right null vector with gcd 1, input coordinates.
    pub marks: Vec<BigInt>,
    /// Same for the transpose.
    pub comarks: Vec<BigInt>,
    /// The epsilon node (degree-one generator of the twisted loop
    /// realization), in input coordinates.
    pub epsilon: usize,
}

/// Classification data for a finite-type GCM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInfo {
    /// Canonical Kac label, e.g. "B3".
    pub label: String,
    /// perm[input index] = canonical position (0-based; Kac node number minus 1).
    pub perm: Vec<usize>,
}

impl FiniteInfo {
    /// Kac's 1-based node number of an input index.
    pub fn kac_node(&self, input_index: usize) -> usize {
        self.perm[input_index] + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GcmType {
    Finite(FiniteInfo),
    Affine(AffineInfo),
    Indefinite,
}

impl GcmType {
    pub fn label(&self) -> &str {
        match self {
            GcmType::Finite(f) => &f.label,
            GcmType::Affine(a) => &a.label,
            GcmType::Indefinite => "INDEFINITE",
        }
    }
}

/// Numeric Vinberg trichotomy witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
enum VinbergClass {
    /// u > 0 with Au > 0.
    Finite(Vec<Rat>),
    /// Corank 1 with positive null vector.
    Affine(Vec<Rat>),
    /// u > 0 with Au < 0.
    Indefinite(Vec<Rat>),
}

fn vinberg_classify(g: &Gcm) -> Result<VinbergClass, GcmError> {
    let a = g.as_qmatrix();
    let kernel = a.kernel_basis();
    if kernel.len() == 1 {
        let v = &kernel[0];
        if v.iter().all(|x| x.is_positive()) {
            return Ok(VinbergClass::Affine(v.clone()));
        }
        if v.iter().all(|x| x.is_negative()) {
            return Ok(VinbergClass::Affine(v.iter().map(|x| -x).collect()));
        }
    }
    if kernel.is_empty() {
        let inv = a
            .inverse()
            .ok_or_else(|| GcmError::Internal("empty kernel but singular".into()))?;
        let nonneg = (0..inv.rows()).all(|i| inv.row(i).iter().all(|x| !x.is_negative()));
        if nonneg {
            let ones = vec![rat(1); g.size()];
            let u = inv.mul_vec(&ones).unwrap();
            debug_assert!(u.iter().all(|x| x.is_positive()));
            return Ok(VinbergClass::Finite(u));
        }
    }
    // Indefinite: find u > 0 with Au < 0.
    let candidates: Vec<Vec<Rat>> = {
        let mut c = vec![vec![rat(1); g.size()]];
        if let Some(inv) = a.inverse() {
            let minus_ones = vec![rat(-1); g.size()];
            c.push(inv.mul_vec(&minus_ones).unwrap());
        }
        c
    };
    for u in candidates {
        if u.iter().all(|x| x.is_positive()) {
            let au = a.mul_vec(&u).unwrap();
            if au.iter().all(|x| x.is_negative()) {
                return Ok(VinbergClass::Indefinite(u));
            }
        }
    }
    // Power iteration towards the Perron vector of 3I - A; for indefinite
    // matrices its eigenvalue exceeds 3, so Au eventually turns negative.
    let n = g.size();
    let m = {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = if i == j {
                    rat(3 - g.entry(i, j))
                } else {
                    rat(-g.entry(i, j))
                };
            }
        }
        m
    };
    let mut u = vec![rat(1); n];
    for _ in 0..500 {
        u = m.mul_vec(&u).unwrap();
        let max = u.iter().cloned().fold(Rat::zero(), |a, b| a.max(b));
        if max.is_zero() {
            break;
        }
        for x in u.iter_mut() {
            *x = &*x / &max;
        }
        if u.iter().all(|x| x.is_positive()) {
            let au = a.mul_vec(&u).unwrap();
            if au.iter().all(|x| x.is_negative()) {
                return Ok(VinbergClass::Indefinite(u));
            }
        }
    }
    Err(GcmError::Internal(
        "Vinberg witness search failed to converge".into(),
    ))
}

/// Signature used to prune the catalog-matching backtracking: the diagonal
/// is fixed, so nodes are compared by the multiset of incident edge pairs.
fn node_signature(m: &[Vec<i64>], i: usize) -> Vec<(i64, i64)> {
    let n = m.len();
    let mut sig: Vec<(i64, i64)> = (0..n)
        .filter(|&j| j != i && m[i][j] != 0)
        .map(|j| (m[i][j], m[j][i]))
        .collect();
    sig.sort_unstable();
    sig
}

/// Find phi: canonical index -> input index with
/// input[phi(a)][phi(b)] = canonical[a][b], by backtracking.
fn find_isomorphism(input: &[Vec<i64>], canonical: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = input.len();
    if canonical.len() != n {
        return None;
    }
    let sig_in: Vec<_> = (0..n).map(|i| node_signature(input, i)).collect();
    let sig_can: Vec<_> = (0..n).map(|i| node_signature(canonical, i)).collect();
    {
        let mut a = sig_in.clone();
        let mut b = sig_can.clone();
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
    }
    let mut phi: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(
        a: usize,
        n: usize,
        input: &[Vec<i64>],
        canonical: &[Vec<i64>],
        sig_in: &[Vec<(i64, i64)>],
        sig_can: &[Vec<(i64, i64)>],
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if a == n {
            return true;
        }
        for i in 0..n {
            if used[i] || sig_in[i] != sig_can[a] {
                continue;
            }
            if (0..a)
                .any(|b| input[phi[b]][i] != canonical[b][a] || input[i][phi[b]] != canonical[a][b])
            {
                continue;
            }
            used[i] = true;
            phi.push(i);
            if go(a + 1, n, input, canonical, sig_in, sig_can, phi, used) {
                return true;
            }
            phi.pop();
            used[i] = false;
        }
        false
    }
    if go(
        0, n, input, canonical, &sig_in, &sig_can, &mut phi, &mut used,
    ) {
        Some(phi)
    } else {
        None
    }
}

/// All permutations sigma of the index set with a[sigma(i)][sigma(j)] = a[i][j],
/// in lexicographic order as one-line permutations.
pub fn diagram_automorphisms(g: &Gcm) -> Vec<Vec<usize>> {
    let n = g.size();
    let m = g.entries();
    let sigs: Vec<_> = (0..n).map(|i| node_signature(m, i)).collect();
    let mut out = Vec::new();
    let mut sigma: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(
        i: usize,
        n: usize,
        m: &[Vec<i64>],
        sigs: &[Vec<(i64, i64)>],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == n {
            out.push(sigma.clone());
            return;
        }
        for t in 0..n {
            if used[t] || sigs[t] != sigs[i] {
                continue;
            }
            if (0..i).any(|j| m[sigma[j]][t] != m[j][i] || m[t][sigma[j]] != m[i][j]) {
                continue;
            }
            used[t] = true;
            sigma.push(t);
            go(i + 1, n, m, sigs, sigma, used, out);
            sigma.pop();
            used[t] = false;
        }
    }
    go(0, n, m, &sigs, &mut sigma, &mut used, &mut out);
    out.sort();
    debug_assert!(out.contains(&(0..n).collect::<Vec<_>>()));
    out
}

/// Positive integer kernel vector with gcd 1, or None.
fn positive_null_vector(m: &QMatrix) -> Option<Vec<BigInt>> {
    let kernel = m.kernel_basis();
    if kernel.len() != 1 {
        return None;
    }
    let mut v = crate::rat::to_primitive_integer(&kernel[0]);
    if v.iter().all(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
    if v.iter().all(|x| x.is_positive()) {
        Some(v)
    } else {
        None
    }
}

/// Classify a GCM as finite, affine (with label, marks, epsilon) or
/// indefinite. Catalog matching is the primary classifier; the numeric
/// Vinberg trichotomy is run as a cross-check and any disagreement is an
/// internal error.
pub fn classify(g: &Gcm) -> Result<GcmType, GcmError> {
    let vinberg = vinberg_classify(g)?;
    for entry in catalog::catalog_entries(g.size()) {
        let Some(phi) = find_isomorphism(g.entries(), &entry.matrix) else {
            continue;
        };
        // perm[input] = canonical
        let mut perm = vec![0usize; g.size()];
        for (canonical, &input) in phi.iter().enumerate() {
            perm[input] = canonical;
        }
        match entry.kind {
            catalog::EntryKind::Finite => {
                if !matches!(vinberg, VinbergClass::Finite(_)) {
                    return Err(GcmError::Internal(format!(
                        "catalog says {} but Vinberg test disagrees",
                        entry.label
                    )));
                }
                return Ok(GcmType::Finite(FiniteInfo {
                    label: entry.label,
                    perm,
                }));
            }
            catalog::EntryKind::Affine {
                r,
                epsilon,
                ref marks,
            } => {
                let VinbergClass::Affine(_) = vinberg else {
                    return Err(GcmError::Internal(format!(
                        "catalog says {} but Vinberg test disagrees",
                        entry.label
                    )));
                };
                let computed = positive_null_vector(&g.as_qmatrix()).ok_or_else(|| {
                    GcmError::Internal("affine match without positive null vector".into())
                })?;
                // Cross-check the kernel against the catalog's stored marks.
                for input in 0..g.size() {
                    if computed[input] != BigInt::from(marks[perm[input]]) {
                        return Err(GcmError::Internal(format!(
                            "marks mismatch for {}: kernel {:?} vs catalog {:?}",
                            entry.label, computed, marks
                        )));
                    }
                }
                let comarks = positive_null_vector(&g.transpose().as_qmatrix())
                    .ok_or_else(|| GcmError::Internal("no positive comark vector".into()))?;
                let epsilon_input = phi[epsilon];
                return Ok(GcmType::Affine(AffineInfo {
                    label: entry.label,
                    perm,
                    r,
                    marks: computed,
                    comarks,
                    epsilon: epsilon_input,
                }));
            }
        }
    }
    match vinberg {
        VinbergClass::Indefinite(_) => Ok(GcmType::Indefinite),
        other => Err(GcmError::Internal(format!(
            "no catalog match but Vinberg test returned {:?}",
            other
        ))),
    }
}

/// Affine marks, comarks and delta = sum marks_i alpha_i.
pub fn affine_marks(g: &Gcm) -> Result<(Vec<BigInt>, Vec<BigInt>, RootVec), GcmError> {
    match classify(g)? {
        GcmType::Affine(info) => {
            let delta = RootVec(
                info.marks
                    .iter()
                    .map(|m| i64::try_from(m).expect("mark fits in i64"))
                    .collect(),
            );
            Ok((info.marks, info.comarks, delta))
        }
        other => Err(GcmError::Internal(format!(
            "affine_marks called on {} matrix",
            other.label()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcm(m: &[&[i64]]) -> Gcm {
        Gcm::new(m.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(Gcm::new(vec![vec![2, -1], vec![-1, 2]]).is_ok());
        assert_eq!(
            Gcm::new(vec![vec![2, 1], vec![-1, 2]]),
            Err(GcmError::PositiveOffDiagonal(0, 1))
        );
        assert_eq!(
            Gcm::new(vec![vec![2, -1, 0], vec![-1, 2, 0], vec![0, 0, 2]]),
            Err(GcmError::Decomposable(vec![0, 1]))
        );
        assert_eq!(
            Gcm::new(vec![vec![2, 0], vec![-1, 2]]),
            Err(GcmError::ZeroPatternAsymmetric(0, 1))
        );
        assert_eq!(
            Gcm::new(vec![vec![1, -1], vec![-1, 2]]),
            Err(GcmError::DiagonalNotTwo(0))
        );
        assert_eq!(Gcm::new(vec![vec![2]]), Err(GcmError::TooSmall));
    }

    #[test]
    fn symmetrizer_examples() {
        let d = |m: &[&[i64]]| symmetrizer(&gcm(m)).unwrap().d;
        assert_eq!(
            d(&[&[2, -1], &[-1, 2]]),
            vec![BigInt::from(1), BigInt::from(1)]
        );
        assert_eq!(
            d(&[&[2, -4], &[-1, 2]]),
            vec![BigInt::from(1), BigInt::from(4)]
        );
        assert_eq!(
            d(&[&[2, -2], &[-1, 2]]),
            vec![BigInt::from(1), BigInt::from(2)]
        );
    }

    #[test]
    fn symmetrizer_conflict_cycle() {
        // 3-cycle with ratio product != 1.
        let g = gcm(&[&[2, -2, -1], &[-1, 2, -2], &[-2, -1, 2]]);
        match symmetrizer(&g) {
            Err(GcmError::NotSymmetrizable(cycle)) => assert!(cycle.len() >= 3),
            other => panic!("expected NotSymmetrizable, got {:?}", other),
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&gcm(&[&[2, -1], &[-1, 2]])).unwrap().label(), "A2");
        let t = classify(&gcm(&[&[2, -2], &[-2, 2]])).unwrap();
        match &t {
            GcmType::Affine(a) => {
                assert_eq!(a.label, "A1~1");
                assert_eq!(a.marks, vec![BigInt::from(1), BigInt::from(1)]);
                assert_eq!(a.epsilon, 0);
                assert_eq!(a.r, 1);
            }
            _ => panic!("expected affine"),
        }
        assert_eq!(
            classify(&gcm(&[&[2, -3], &[-3, 2]])).unwrap(),
            GcmType::Indefinite
        );
    }

    #[test]
    fn classify_twisted_and_shapes() {
        // The transposed B2 shape is permutation-equivalent to Kac's B2.
        let t = classify(&gcm(&[&[2, -2], &[-1, 2]])).unwrap();
        assert_eq!(t.label(), "B2");
        let t = classify(&gcm(&[&[2, -3], &[-1, 2]])).unwrap();
        assert_eq!(t.label(), "G2");
        let t = classify(&gcm(&[&[2, -4], &[-1, 2]])).unwrap();
        match &t {
            GcmType::Affine(a) => {
                assert_eq!(a.label, "A2~2");
                assert_eq!(a.r, 2);
                assert_eq!(a.marks, vec![BigInt::from(2), BigInt::from(1)]);
                // epsilon = l for A_{2l}^(2); here canonical node 1, identity match.
                assert_eq!(a.epsilon, 1);
            }
            _ => panic!("expected affine"),
        }
        // A2~1 cycle.
        let t = classify(&gcm(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])).unwrap();
        match &t {
            GcmType::Affine(a) => {
                assert_eq!(a.label, "A2~1");
                assert_eq!(a.marks, vec![BigInt::from(1); 3]);
            }
            _ => panic!("expected affine"),
        }
    }

    #[test]
    fn catalog_round_trip() {
        // Every catalog entry classifies to its own label.
        for n in 2..=9 {
            for entry in catalog_entries(n) {
                let g = Gcm::new(entry.matrix.clone()).unwrap();
                let t = classify(&g).unwrap();
                assert_eq!(t.label(), entry.label, "catalog entry size {}", n);
                // Affine catalog matrices annihilate their marks exactly.
                if let GcmType::Affine(a) = &t {
                    let m = g.as_qmatrix();
                    let marks: Vec<Rat> = a
                        .marks
                        .iter()
                        .map(|x| Rat::from_integer(x.clone()))
                        .collect();
                    let prod = m.mul_vec(&marks).unwrap();
                    assert!(prod.iter().all(|x| x.is_zero()));
                }
            }
        }
    }

    #[test]
    fn diagram_automorphism_examples() {
        let auts = diagram_automorphisms(&gcm(&[&[2, -1], &[-1, 2]]));
        assert_eq!(auts, vec![vec![0, 1], vec![1, 0]]);
        let auts = diagram_automorphisms(&gcm(&[&[2, -2], &[-1, 2]]));
        assert_eq!(auts, vec![vec![0, 1]]);
        let auts = diagram_automorphisms(&gcm(&[&[2, -2], &[-2, 2]]));
        assert_eq!(auts, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn automorphisms_form_group() {
        for m in [
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]],
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        ] {
            let g = Gcm::new(m).unwrap();
            let auts = diagram_automorphisms(&g);
            assert!(auts.contains(&(0..g.size()).collect::<Vec<_>>()));
            for a in &auts {
                for b in &auts {
                    let comp: Vec<usize> = (0..g.size()).map(|i| a[b[i]]).collect();
                    assert!(auts.contains(&comp));
                }
                let mut inv = vec![0usize; g.size()];
                for (i, &ai) in a.iter().enumerate() {
                    inv[ai] = i;
                }
                assert!(auts.contains(&inv));
            }
        }
    }

    #[test]
    fn affine_marks_examples() {
        let (marks, comarks, delta) = affine_marks(&gcm(&[&[2, -2], &[-2, 2]])).unwrap();
        assert_eq!(marks, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(comarks, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(delta, RootVec(vec![1, 1]));

        let (marks, comarks, _) = affine_marks(&gcm(&[&[2, -4], &[-1, 2]])).unwrap();
        assert_eq!(marks, vec![BigInt::from(2), BigInt::from(1)]);
        assert_eq!(comarks, vec![BigInt::from(1), BigInt::from(2)]);

        let (marks, _, delta) =
            affine_marks(&gcm(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])).unwrap();
        assert_eq!(marks, vec![BigInt::from(1); 3]);
        assert_eq!(delta, RootVec(vec![1, 1, 1]));
    }
}
