//! Root-lattice arithmetic: reflections, real-root enumeration, highest and
//! highest-short roots, the invariant bilinear form.

use crate::gcm::{classify, symmetrizer, Gcm, GcmType};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootsError {
    #[error("operation requires a finite-type GCM")]
    NotFiniteType,
    #[error("simply-laced root system has no short/long distinction")]
    SimplyLaced,
    #[error("gcm error: {0}")]
    Gcm(#[from] crate::gcm::GcmError),
}

/// Element of the root lattice Q as integer coordinates over the simple
/// roots. Coordinates may be negative (derivation degrees use that).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn zero(n: usize) -> Self {
        RootVec(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// All coordinates nonnegative and not all zero: lies in Q+ \ {0}.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn plus_simple(&self, i: usize) -> RootVec {
        let mut v = self.clone();
        v.0[i] += 1;
        v
    }

    pub fn minus_simple(&self, i: usize) -> RootVec {
        let mut v = self.clone();
        v.0[i] -= 1;
        v
    }

    pub fn scale(&self, k: i64) -> RootVec {
        RootVec(self.0.iter().map(|c| c * k).collect())
    }
}

impl std::fmt::Display for RootVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

/// s_i(beta) = beta - <beta, alpha_i_covee> alpha_i.
pub fn reflect(g: &Gcm, i: usize, beta: &RootVec) -> RootVec {
    let pairing = g.pairing(beta, i);
    let mut v = beta.clone();
    v.0[i] -= pairing;
    v
}

/// All positive real roots of height <= h, by upward closure from the
/// simple roots under the simple reflections.
pub fn real_roots_up_to_height(g: &Gcm, h: i64) -> BTreeSet<RootVec> {
    assert!(h >= 1);
    closure(g, Some(h), usize::MAX)
}

fn closure(g: &Gcm, height_cap: Option<i64>, size_cap: usize) -> BTreeSet<RootVec> {
    let n = g.size();
    let mut set: BTreeSet<RootVec> = (0..n).map(|i| RootVec::simple(n, i)).collect();
    let mut queue: Vec<RootVec> = set.iter().cloned().collect();
    while let Some(r) = queue.pop() {
        for i in 0..n {
            let s = reflect(g, i, &r);
            if !s.is_positive() {
                continue;
            }
            if let Some(cap) = height_cap {
                if s.height() > cap {
                    continue;
                }
            }
            if set.insert(s.clone()) {
                assert!(set.len() <= size_cap, "real-root closure exceeded size cap");
                queue.push(s);
            }
        }
    }
    set
}

/// Positive-root closure without a height bound; the caller guarantees the
/// matrix is of finite type (the cap is a safety net, E8 has 120).
pub(crate) fn finite_positive_roots_unchecked(g: &Gcm) -> BTreeSet<RootVec> {
    closure(g, None, 4096)
}

/// The highest root of a finite-type GCM: the unique positive root theta
/// with theta + alpha_i never a root.
pub fn highest_root(g: &Gcm) -> Result<RootVec, RootsError> {
    if !matches!(classify(g)?, GcmType::Finite(_)) {
        return Err(RootsError::NotFiniteType);
    }
    let roots = finite_positive_roots_unchecked(g);
    let max_h = roots.iter().map(|r| r.height()).max().unwrap();
    let at_top: Vec<&RootVec> = roots.iter().filter(|r| r.height() == max_h).collect();
    assert_eq!(at_top.len(), 1, "highest root is unique");
    let theta = at_top[0].clone();
    for i in 0..g.size() {
        assert!(
            !roots.contains(&theta.plus_simple(i)),
            "theta + alpha_{} is a root",
            i
        );
    }
    Ok(theta)
}

/// The W-invariant form restricted to the root lattice: Gram matrix
/// B = DA with (alpha_i | alpha_j) = d_i a_ij.
#[derive(Debug, Clone)]
pub struct BilinearForm {
    pub gram: Vec<Vec<BigInt>>,
    pub d: Vec<BigInt>,
}

impl BilinearForm {
    pub fn new(g: &Gcm) -> Result<Self, RootsError> {
        let sym = symmetrizer(g)?;
        let n = g.size();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &sym.d[i] * BigInt::from(g.entry(i, j)))
                    .collect()
            })
            .collect();
        Ok(BilinearForm { gram, d: sym.d })
    }

    pub fn ip(&self, u: &RootVec, v: &RootVec) -> BigInt {
        let mut acc = BigInt::from(0);
        for (i, &ui) in u.0.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.0.iter().enumerate() {
                if vj == 0 {
                    continue;
                }
                acc += &self.gram[i][j] * BigInt::from(ui) * BigInt::from(vj);
            }
        }
        acc
    }

    pub fn norm(&self, u: &RootVec) -> BigInt {
        self.ip(u, u)
    }
}

fn short_long_data(g: &Gcm) -> Result<(BTreeSet<RootVec>, BilinearForm, BigInt), RootsError> {
    if !matches!(classify(g)?, GcmType::Finite(_)) {
        return Err(RootsError::NotFiniteType);
    }
    let form = BilinearForm::new(g)?;
    let roots = finite_positive_roots_unchecked(g);
    let lengths: BTreeSet<BigInt> = roots.iter().map(|r| form.norm(r)).collect();
    if lengths.len() < 2 {
        return Err(RootsError::SimplyLaced);
    }
    let min_len = lengths.into_iter().next().unwrap();
    Ok((roots, form, min_len))
}

/// The maximal root among those of minimal squared length.
pub fn highest_short_root(g: &Gcm) -> Result<RootVec, RootsError> {
    let (roots, form, min_len) = short_long_data(g)?;
    let short: Vec<&RootVec> = roots.iter().filter(|r| form.norm(r) == min_len).collect();
    let max_h = short.iter().map(|r| r.height()).max().unwrap();
    let at_top: Vec<&&RootVec> = short.iter().filter(|r| r.height() == max_h).collect();
    assert_eq!(at_top.len(), 1, "highest short root is unique");
    Ok((**at_top[0]).clone())
}

/// The unique index i with theta_1 + alpha_i a root, theta_1 the highest
/// short root. Returned in the input matrix's numbering.
pub fn i0_index(g: &Gcm) -> Result<usize, RootsError> {
    let (roots, _, _) = short_long_data(g)?;
    let theta1 = highest_short_root(g)?;
    let hits: Vec<usize> = (0..g.size())
        .filter(|&i| roots.contains(&theta1.plus_simple(i)))
        .collect();
    assert_eq!(hits.len(), 1, "i0 is unique");
    Ok(hits[0])
}
