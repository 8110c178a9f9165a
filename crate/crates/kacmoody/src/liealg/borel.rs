//! The truncated Borel subalgebra: an abstract Cartan h of dimension
//! 2(l+1) - rank(A) glued onto the nilradical through the pairing matrix
//! [A^T | B], plus the center c = ker(pairing) and a choice of duals
//! alpha_i^* with alpha_i(alpha_j^*) = delta_ij.

use super::{build_nilradical, GradedAlgebra, LieError};
use crate::gcm::Gcm;
use crate::qlinalg::QMatrix;
use crate::rat::{rat, Rat};
use crate::roots::RootVec;
use num_traits::Zero;

pub struct BorelAlgebra {
    pub nil: GradedAlgebra,
    /// dim h = 2(l+1) - m.
    pub h_dim: usize,
    /// m = rank(A).
    pub rank: usize,
    /// (l+1) x h_dim matrix of values alpha_j(h_a); columns 0..l are the
    /// simple coroots (block A^T), the rest greedy 0/1 duals.
    pairing: QMatrix,
    /// Basis of c = {h : alpha_i(h) = 0 for all i} in h coordinates.
    center: Vec<Vec<Rat>>,
    /// Particular solutions alpha_i^*: pairing * dual[i] = e_i.
    dual: Vec<Vec<Rat>>,
}

impl std::fmt::Debug for BorelAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BorelAlgebra")
            .field("h_dim", &self.h_dim)
            .field("rank", &self.rank)
            .field("center_dim", &self.center.len())
            .finish()
    }
}

pub fn build_borel(gcm: &Gcm, height_cap: usize) -> Result<BorelAlgebra, LieError> {
    let nil = build_nilradical(gcm, height_cap)?;
    let n = gcm.size();
    let m = gcm.as_qmatrix().rank();
    let h_dim = 2 * n - m;

    // Pairing block A^T: column i is coroot alpha_i_covee with
    // alpha_j(alpha_i_covee) = a_ij.
    let mut cols: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| rat(gcm.entry(i, j))).collect())
        .collect();
    // Greedily append indicator duals until the pairing has full rank l+1.
    let col_rank = |cols: &[Vec<Rat>]| -> usize {
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|j| cols.iter().map(|c| c[j].clone()).collect())
            .collect();
        QMatrix::from_rows(rows).rank()
    };
    let mut k = 0usize;
    while cols.len() < h_dim {
        assert!(k < n, "greedy completion exhausted the indicator columns");
        let mut candidate: Vec<Rat> = vec![Rat::zero(); n];
        candidate[k] = rat(1);
        let before = col_rank(&cols);
        cols.push(candidate);
        if col_rank(&cols) == before {
            cols.pop();
        }
        k += 1;
    }
    let pairing = {
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|j| cols.iter().map(|c| c[j].clone()).collect())
            .collect();
        QMatrix::from_rows(rows)
    };
    assert_eq!(pairing.rank(), n, "simple roots independent on h");
    let center = pairing.kernel_basis();
    assert_eq!(center.len(), n - m, "dim c = corank of A");
    let dual: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut e = vec![Rat::zero(); n];
            e[i] = rat(1);
            pairing.solve(&e).expect("pairing has full row rank")
        })
        .collect();
    Ok(BorelAlgebra {
        nil,
        h_dim,
        rank: m,
        pairing,
        center,
        dual,
    })
}

impl BorelAlgebra {
    pub fn gcm(&self) -> &Gcm {
        self.nil.gcm()
    }

    pub fn center_dim(&self) -> usize {
        self.center.len()
    }

    pub fn center_basis(&self) -> &[Vec<Rat>] {
        &self.center
    }

    /// alpha_i^* with alpha_j(alpha_i^*) = delta_ij (a fixed choice).
    pub fn dual_basis(&self) -> &[Vec<Rat>] {
        &self.dual
    }

    pub fn pairing(&self) -> &QMatrix {
        &self.pairing
    }

    /// alpha_i evaluated on an h vector.
    pub fn alpha_on(&self, i: usize, h: &[Rat]) -> Rat {
        self.pairing
            .row(i)
            .iter()
            .zip(h)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, t| acc + t)
    }

    /// An arbitrary Q-lattice functional evaluated on an h vector.
    pub fn beta_on(&self, beta: &RootVec, h: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, &c) in beta.0.iter().enumerate() {
            if c != 0 {
                acc += self.alpha_on(i, h) * rat(c);
            }
        }
        acc
    }

    /// True if the vector lies in the center.
    pub fn in_center(&self, h: &[Rat]) -> bool {
        (0..self.gcm().size()).all(|i| self.alpha_on(i, h).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcm(m: &[&[i64]]) -> Gcm {
        Gcm::new(m.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn a2_borel() {
        let b = build_borel(&gcm(&[&[2, -1], &[-1, 2]]), 4).unwrap();
        assert_eq!(b.h_dim, 2);
        assert_eq!(b.center_dim(), 0);
    }

    #[test]
    fn affine_a1_borel() {
        let b = build_borel(&gcm(&[&[2, -2], &[-2, 2]]), 4).unwrap();
        assert_eq!(b.h_dim, 3);
        assert_eq!(b.center_dim(), 1);
        // c is spanned by alpha_0_covee + alpha_1_covee.
        let c = &b.center_basis()[0];
        assert_eq!(c[..2], [rat(1), rat(1)]);
        assert!(c[2].is_zero());
        assert!(b.in_center(c));
        // Duals satisfy alpha_j(alpha_i^*) = delta_ij.
        for i in 0..2 {
            for j in 0..2 {
                let v = b.alpha_on(j, &b.dual_basis()[i]);
                assert_eq!(v, rat((i == j) as i64));
            }
        }
    }

    #[test]
    fn indefinite_borel() {
        let b = build_borel(&gcm(&[&[2, -3], &[-3, 2]]), 5).unwrap();
        assert_eq!(b.h_dim, 2);
        assert_eq!(b.center_dim(), 0);
    }
}
