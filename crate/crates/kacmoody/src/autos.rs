//! Automorphism building blocks on the truncated algebras: torus actions,
//! exp(ad x), diagram lifts, the Borel automorphisms fixing all generators,
//! and the rank-2 Heisenberg matrix group.
//!
//! The truncation is itself a Lie algebra (quotient by the ideal of height
//! above the cap), so these are genuine automorphisms of it; maps are
//! stored per source degree as images that may spread across higher
//! degrees.

use crate::gcm::diagram_automorphisms;
use crate::liealg::{BorelAlgebra, GradedAlgebra, LieElt, LieError};
use crate::qlinalg::QMatrix;
use crate::rat::{rat, rat_to_string, Rat};
use crate::roots::RootVec;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AutoError {
    #[error("torus entry {0} is zero")]
    ZeroTorusEntry(usize),
    #[error("permutation is not a diagram automorphism")]
    NotDiagramAutomorphism,
    #[error("center is zero; only the identity qualifies")]
    CenterZero,
    #[error("map on the center is not invertible")]
    NotInvertible,
    #[error("translation vector {0} is not in the center")]
    NotInCenter(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Finite sum of homogeneous components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedElt {
    pub parts: BTreeMap<RootVec, LieElt>,
}

impl MixedElt {
    pub fn zero() -> Self {
        MixedElt {
            parts: BTreeMap::new(),
        }
    }

    pub fn from_elt(x: LieElt) -> Self {
        let mut parts = BTreeMap::new();
        if !x.is_zero() {
            parts.insert(x.degree.clone(), x);
        }
        MixedElt { parts }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add_scaled(&mut self, other: &MixedElt, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (deg, elt) in &other.parts {
            let entry = self
                .parts
                .entry(deg.clone())
                .or_insert_with(|| LieElt::zero(deg.clone()));
            entry.add_scaled(elt, c);
            if entry.is_zero() {
                self.parts.remove(deg);
            }
        }
    }

    /// The single homogeneous part, if there is exactly one.
    pub fn single_part(&self) -> Option<&LieElt> {
        if self.parts.len() == 1 {
            self.parts.values().next()
        } else {
            None
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for (deg, elt) in &self.parts {
            let mut coords = serde_json::Map::new();
            for (k, c) in &elt.coords {
                coords.insert(k.to_string(), serde_json::Value::String(rat_to_string(c)));
            }
            obj.insert(deg.to_string(), serde_json::Value::Object(coords));
        }
        serde_json::Value::Object(obj)
    }
}

/// Truncation bracket of mixed elements: parts above the cap are cut.
pub fn bracket_mixed(
    alg: &GradedAlgebra,
    a: &MixedElt,
    b: &MixedElt,
) -> Result<MixedElt, LieError> {
    let mut acc = MixedElt::zero();
    for x in a.parts.values() {
        for y in b.parts.values() {
            if x.degree.add(&y.degree).height() > alg.height_cap() as i64 {
                continue;
            }
            let prod = alg.bracket(x, y)?;
            acc.add_scaled(&MixedElt::from_elt(prod), &rat(1));
        }
    }
    Ok(acc)
}

/// A linear map on the truncation, degree-preserving or raising, stored by
/// images of every basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncMap {
    images: BTreeMap<RootVec, Vec<MixedElt>>,
}

impl TruncMap {
    pub fn identity(alg: &GradedAlgebra) -> Self {
        let mut images = BTreeMap::new();
        for (deg, m) in alg.graded_dims() {
            let imgs = (0..m)
                .map(|k| MixedElt::from_elt(LieElt::basis(deg.clone(), k)))
                .collect();
            images.insert(deg, imgs);
        }
        TruncMap { images }
    }

    pub fn apply_elt(&self, x: &LieElt) -> MixedElt {
        let mut acc = MixedElt::zero();
        if let Some(imgs) = self.images.get(&x.degree) {
            for (k, c) in &x.coords {
                acc.add_scaled(&imgs[*k], c);
            }
        }
        acc
    }

    pub fn apply(&self, x: &MixedElt) -> MixedElt {
        let mut acc = MixedElt::zero();
        for part in x.parts.values() {
            acc.add_scaled(&self.apply_elt(part), &rat(1));
        }
        acc
    }

    /// self after other.
    pub fn compose(&self, other: &TruncMap) -> TruncMap {
        let images = other
            .images
            .iter()
            .map(|(deg, imgs)| {
                (
                    deg.clone(),
                    imgs.iter().map(|m| self.apply(m)).collect::<Vec<_>>(),
                )
            })
            .collect();
        TruncMap { images }
    }
}

/// x in the beta component scales by prod_i t_i^{beta_i}.
pub fn torus_action(alg: &GradedAlgebra, t: &[Rat]) -> Result<TruncMap, AutoError> {
    assert_eq!(t.len(), alg.gcm().size());
    for (i, ti) in t.iter().enumerate() {
        if ti.is_zero() {
            return Err(AutoError::ZeroTorusEntry(i));
        }
    }
    let mut images = BTreeMap::new();
    for (deg, m) in alg.graded_dims() {
        let mut factor = Rat::one();
        for (i, &c) in deg.0.iter().enumerate() {
            factor *= crate::rat::rat_pow(&t[i], c);
        }
        let imgs = (0..m)
            .map(|k| MixedElt::from_elt(LieElt::basis(deg.clone(), k).scale(&factor)))
            .collect();
        images.insert(deg, imgs);
    }
    Ok(TruncMap { images })
}

/// exp(ad x) for homogeneous x of positive height: a finite sum on the
/// truncation since ad x raises height.
pub fn exp_ad(alg: &GradedAlgebra, x: &LieElt) -> Result<TruncMap, AutoError> {
    assert!(
        x.is_zero() || x.degree.height() >= 1,
        "exp_ad needs positive height"
    );
    let mut images = BTreeMap::new();
    for (deg, m) in alg.graded_dims() {
        let mut imgs = Vec::with_capacity(m);
        for k in 0..m {
            let b = LieElt::basis(deg.clone(), k);
            let mut acc = MixedElt::from_elt(b.clone());
            let mut power = b;
            let mut factorial = Rat::one();
            let mut n = 1i64;
            while !power.is_zero() && !x.is_zero() {
                if power.degree.add(&x.degree).height() > alg.height_cap() as i64 {
                    break;
                }
                power = alg.bracket(x, &power).map_err(AutoError::Lie)?;
                factorial *= rat(n);
                n += 1;
                let term = power.scale(&(Rat::one() / &factorial));
                acc.add_scaled(&MixedElt::from_elt(term), &rat(1));
            }
            imgs.push(acc);
        }
        images.insert(deg, imgs);
    }
    Ok(TruncMap { images })
}

/// The automorphism induced by a diagram automorphism: e_i -> e_{sigma(i)},
/// well defined because Serre relations permute to Serre relations.
pub fn diagram_lift(alg: &GradedAlgebra, sigma: &[usize]) -> Result<TruncMap, AutoError> {
    let gcm = alg.gcm();
    if !diagram_automorphisms(gcm).contains(&sigma.to_vec()) {
        return Err(AutoError::NotDiagramAutomorphism);
    }
    let mut images = BTreeMap::new();
    for (deg, m) in alg.graded_dims() {
        let labels = alg.basis_labels(&deg);
        let mut imgs = Vec::with_capacity(m);
        for label in &labels {
            let w = crate::liealg::label_from_string(label).expect("own label parses");
            imgs.push(MixedElt::from_elt(lift_word(alg, sigma, &w)?));
        }
        images.insert(deg, imgs);
    }
    Ok(TruncMap { images })
}

fn lift_word(alg: &GradedAlgebra, sigma: &[usize], w: &[u8]) -> Result<LieElt, AutoError> {
    if w.len() == 1 {
        return Ok(alg.generator(sigma[w[0] as usize]));
    }
    let (u, v) = crate::liealg::lyndon::standard_factorization(w);
    let lu = lift_word(alg, sigma, &u)?;
    let lv = lift_word(alg, sigma, &v)?;
    alg.bracket(&lu, &lv).map_err(AutoError::Lie)
}

#[derive(Debug, Clone)]
pub struct AutoWitness {
    pub pair: (String, String),
    pub lhs: MixedElt,
    pub rhs: MixedElt,
}

impl AutoWitness {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pair": [self.pair.0, self.pair.1],
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        })
    }
}

#[derive(Debug)]
pub struct AutoCheck {
    pub ok: bool,
    pub witness: Option<AutoWitness>,
}

/// Check bijectivity (exact global rank) and multiplicativity on all basis
/// pairs within the cap; returns the first failing pair as a witness.
pub fn is_automorphism(alg: &GradedAlgebra, m: &TruncMap) -> Result<AutoCheck, LieError> {
    // Global coordinates: (degree, index) in graded order.
    let dims = alg.graded_dims();
    let mut offset = BTreeMap::new();
    let mut total = 0usize;
    for (deg, dim) in &dims {
        offset.insert(deg.clone(), total);
        total += dim;
    }
    let dense = |x: &MixedElt| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); total];
        for (deg, part) in &x.parts {
            let off = offset[deg];
            for (k, c) in &part.coords {
                v[off + k] = c.clone();
            }
        }
        v
    };
    let mut rows = Vec::with_capacity(total);
    for (deg, dim) in &dims {
        for k in 0..*dim {
            rows.push(dense(&m.apply_elt(&LieElt::basis(deg.clone(), k))));
        }
    }
    if QMatrix::from_rows(rows).rank() != total {
        return Ok(AutoCheck {
            ok: false,
            witness: None,
        });
    }
    for (da, ma) in &dims {
        for (db, mb) in &dims {
            if da.add(db).height() > alg.height_cap() as i64 {
                continue;
            }
            for ka in 0..*ma {
                for kb in 0..*mb {
                    let u = LieElt::basis(da.clone(), ka);
                    let v = LieElt::basis(db.clone(), kb);
                    let lhs = m.apply_elt(&alg.bracket(&u, &v)?);
                    let rhs = bracket_mixed(alg, &m.apply_elt(&u), &m.apply_elt(&v))?;
                    if lhs != rhs {
                        let labels_a = alg.basis_labels(da);
                        let labels_b = alg.basis_labels(db);
                        return Ok(AutoCheck {
                            ok: false,
                            witness: Some(AutoWitness {
                                pair: (labels_a[ka].clone(), labels_b[kb].clone()),
                                lhs,
                                rhs,
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(AutoCheck {
        ok: true,
        witness: None,
    })
}

/// An automorphism of the truncated Borel: a linear map on h plus a
/// truncation map on the nilradical.
#[derive(Debug, Clone)]
pub struct BorelMap {
    pub h_matrix: QMatrix,
    pub nil: TruncMap,
}

#[derive(Debug)]
pub struct Gamma0Result {
    pub map: BorelMap,
    pub note: Option<String>,
}

/// The Gamma_0(b+) element fixing every e_i, translating the duals
/// alpha_i^* by z_i in the center and acting by phi on the center.
pub fn gamma0_borel(
    bor: &BorelAlgebra,
    phi: &QMatrix,
    z: &[Vec<Rat>],
) -> Result<Gamma0Result, AutoError> {
    let n = bor.gcm().size();
    let cd = bor.center_dim();
    assert_eq!(z.len(), n, "one translation per dual");
    if cd == 0 {
        return Ok(Gamma0Result {
            map: BorelMap {
                h_matrix: QMatrix::identity(bor.h_dim),
                nil: TruncMap::identity(&bor.nil),
            },
            note: Some("center is zero; Gamma_0(b+) is trivial".into()),
        });
    }
    assert_eq!(phi.rows(), cd);
    assert_eq!(phi.cols(), cd);
    if phi.rank() != cd {
        return Err(AutoError::NotInvertible);
    }
    for (i, zi) in z.iter().enumerate() {
        if !bor.in_center(zi) {
            return Err(AutoError::NotInCenter(i));
        }
    }
    // Change of basis: columns = center basis then the duals.
    let hd = bor.h_dim;
    let mut basis_cols: Vec<Vec<Rat>> = bor.center_basis().to_vec();
    basis_cols.extend(bor.dual_basis().iter().cloned());
    assert_eq!(basis_cols.len(), hd);
    let b_mat = QMatrix::from_rows(
        (0..hd)
            .map(|r| basis_cols.iter().map(|c| c[r].clone()).collect())
            .collect(),
    );
    let b_inv = b_mat.inverse().expect("h basis change invertible");
    // tau in the (c, duals) basis, mapped back to standard coordinates.
    let mut h_cols: Vec<Vec<Rat>> = Vec::with_capacity(hd);
    for a in 0..hd {
        let mut e = vec![Rat::zero(); hd];
        e[a] = rat(1);
        let in_basis = b_inv.mul_vec(&e).unwrap();
        let mut out = vec![Rat::zero(); hd];
        // Center block through phi.
        for (ci, cvec) in bor.center_basis().iter().enumerate() {
            let mut coeff = Rat::zero();
            for cj in 0..cd {
                coeff += &phi[(ci, cj)] * &in_basis[cj];
            }
            for r in 0..hd {
                let t = &out[r] + &coeff * &cvec[r];
                out[r] = t;
            }
        }
        // Dual block: alpha_i^* + z_i.
        for i in 0..n {
            let coeff = in_basis[cd + i].clone();
            if coeff.is_zero() {
                continue;
            }
            for r in 0..hd {
                let t = &out[r] + &coeff * (&bor.dual_basis()[i][r] + &z[i][r]);
                out[r] = t;
            }
        }
        h_cols.push(out);
    }
    let h_matrix = QMatrix::from_rows(
        (0..hd)
            .map(|r| h_cols.iter().map(|c| c[r].clone()).collect())
            .collect(),
    );
    Ok(Gamma0Result {
        map: BorelMap {
            h_matrix,
            nil: TruncMap::identity(&bor.nil),
        },
        note: None,
    })
}

/// Check a Borel map: invertible on h, [tau h, tau h'] = 0 automatically,
/// covariance beta(h) tau(x) = [tau(h), tau(x)] on every nil basis element,
/// and multiplicativity on the nilradical.
pub fn is_automorphism_borel(bor: &BorelAlgebra, m: &BorelMap) -> Result<AutoCheck, LieError> {
    let hd = bor.h_dim;
    if m.h_matrix.rank() != hd {
        return Ok(AutoCheck {
            ok: false,
            witness: None,
        });
    }
    let nil_check = is_automorphism(&bor.nil, &m.nil)?;
    if !nil_check.ok {
        return Ok(nil_check);
    }
    for a in 0..hd {
        let mut e = vec![Rat::zero(); hd];
        e[a] = rat(1);
        let tau_h: Vec<Rat> = (0..hd).map(|r| m.h_matrix[(r, a)].clone()).collect();
        for (deg, dim) in bor.nil.graded_dims() {
            for k in 0..dim {
                let x = LieElt::basis(deg.clone(), k);
                let tx = m.nil.apply_elt(&x);
                // lhs: tau([h, x]) = beta(h) tau(x)
                let mut lhs = MixedElt::zero();
                lhs.add_scaled(&tx, &bor.beta_on(&deg, &e));
                // rhs: [tau h, tau x] = sum over parts gamma(tau h) part
                let mut rhs = MixedElt::zero();
                for part in tx.parts.values() {
                    rhs.add_scaled(
                        &MixedElt::from_elt(part.clone()),
                        &bor.beta_on(&part.degree, &tau_h),
                    );
                }
                if lhs != rhs {
                    return Ok(AutoCheck {
                        ok: false,
                        witness: Some(AutoWitness {
                            pair: (format!("h_{}", a), bor.nil.basis_labels(&deg)[k].clone()),
                            lhs,
                            rhs,
                        }),
                    });
                }
            }
        }
    }
    Ok(AutoCheck {
        ok: true,
        witness: None,
    })
}

/// The rank-2 Heisenberg algebra fixture: basis x, y, z with [x,y] = z.
/// Aut is the 3x3 matrix set of arbitrary (a, b) columns with the z column
/// forced to (0, 0, a1 b2 - b1 a2), nonzero.
pub mod heisenberg {
    use super::*;

    /// [u, v] in the x,y,z coordinates.
    pub fn bracket(u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let coeff = &u[0] * &v[1] - &u[1] * &v[0];
        vec![Rat::zero(), Rat::zero(), coeff]
    }

    /// The matrix with image columns (a, b, (0,0,det)).
    pub fn aut_matrix(a: &[Rat; 3], b: &[Rat; 3]) -> QMatrix {
        let det = &a[0] * &b[1] - &b[0] * &a[1];
        QMatrix::from_rows(vec![
            vec![a[0].clone(), b[0].clone(), Rat::zero()],
            vec![a[1].clone(), b[1].clone(), Rat::zero()],
            vec![a[2].clone(), b[2].clone(), det],
        ])
    }

    /// Bracket preservation plus bijectivity.
    pub fn is_heisenberg_automorphism(m: &QMatrix) -> bool {
        if m.rank() != 3 {
            return false;
        }
        let col = |j: usize| -> Vec<Rat> { (0..3).map(|i| m[(i, j)].clone()).collect() };
        let (mx, my, mz) = (col(0), col(1), col(2));
        // [Mx, My] = M z, [Mx, Mz] = 0, [My, Mz] = 0.
        bracket(&mx, &my) == mz
            && bracket(&mx, &mz).iter().all(|c| c.is_zero())
            && bracket(&my, &mz).iter().all(|c| c.is_zero())
    }

    /// Given the x and y image columns, solve the bracket constraints for
    /// the z column; the solution is forced to (0, 0, a1 b2 - b1 a2).
    pub fn solve_z_column(a: &[Rat; 3], b: &[Rat; 3]) -> Option<Vec<Rat>> {
        let det = &a[0] * &b[1] - &b[0] * &a[1];
        // Unknown w: [Ma, Mb] = w, [Ma, w] = 0, [My, w] = 0; the last two
        // constrain only w's x,y components.
        let rows = vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(1)],
            vec![a[1].clone(), -a[0].clone(), rat(0)],
            vec![b[1].clone(), -b[0].clone(), rat(0)],
        ];
        let rhs = vec![rat(0), rat(0), det.clone(), rat(0), rat(0)];
        QMatrix::from_rows(rows).solve(&rhs).ok()
    }

    #[derive(Debug, serde::Serialize)]
    pub struct HeisenbergReport {
        pub grid_checked: usize,
        pub solved_cases: usize,
        pub degenerate_rejected: usize,
        pub subgroups_ok: bool,
        pub pass: bool,
    }

    /// Exercise the full classification on a deterministic grid.
    pub fn heisenberg_aut_check() -> HeisenbergReport {
        let vals = [rat(-2), rat(-1), crate::rat::rat_frac(1, 2), rat(1), rat(3)];
        let mut grid_checked = 0;
        let mut solved_cases = 0;
        let mut degenerate_rejected = 0;
        let mut ok = true;
        for a0 in &vals {
            for a1 in &vals {
                for b0 in &vals {
                    for b1 in &vals {
                        let a = [a0.clone(), a1.clone(), rat(1)];
                        let b = [b0.clone(), b1.clone(), rat(-1)];
                        let det = a0 * b1 - b0 * a1;
                        let m = aut_matrix(&a, &b);
                        grid_checked += 1;
                        if det.is_zero() {
                            if is_heisenberg_automorphism(&m) {
                                ok = false;
                            }
                            degenerate_rejected += 1;
                            continue;
                        }
                        if !is_heisenberg_automorphism(&m) {
                            ok = false;
                        }
                        // Solving the constraints lands back in the set.
                        match solve_z_column(&a, &b) {
                            Some(w) => {
                                solved_cases += 1;
                                if w != vec![rat(0), rat(0), det.clone()] {
                                    ok = false;
                                }
                            }
                            None => ok = false,
                        }
                    }
                }
            }
        }
        let subgroups_ok = check_subgroup_forms();
        HeisenbergReport {
            grid_checked,
            solved_cases,
            degenerate_rejected,
            subgroups_ok,
            pass: ok && subgroups_ok,
        }
    }

    /// The displayed subgroups: exp D'' (unipotent lower-left), the torus
    /// diag(a, b, ab), exp(F d_0), exp(F d_1), and the diagram swap with
    /// determinant -1 in the corner.
    fn check_subgroup_forms() -> bool {
        let s = rat(7);
        let t = crate::rat::rat_frac(-3, 5);
        // exp of ad(b x - a y) adds (a, b) to the z row.
        let exp_dpp = QMatrix::from_rows(vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0)],
            vec![s.clone(), t.clone(), rat(1)],
        ]);
        // Torus: x -> a x, y -> b y, z -> ab z.
        let torus = QMatrix::from_rows(vec![
            vec![s.clone(), rat(0), rat(0)],
            vec![rat(0), t.clone(), rat(0)],
            vec![rat(0), rat(0), &s * &t],
        ]);
        // exp(s d_0): d_0 maps x to y; exp adds s y to x.
        let exp_d0 = QMatrix::from_rows(vec![
            vec![rat(1), rat(0), rat(0)],
            vec![s.clone(), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(1)],
        ]);
        // exp(t d_1): d_1 maps y to x.
        let exp_d1 = QMatrix::from_rows(vec![
            vec![rat(1), t.clone(), rat(0)],
            vec![rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(1)],
        ]);
        // The diagram swap: x <-> y, z -> -z.
        let swap = QMatrix::from_rows(vec![
            vec![rat(0), rat(1), rat(0)],
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(-1)],
        ]);
        let mats = [&exp_dpp, &torus, &exp_d0, &exp_d1, &swap];
        if !mats.iter().all(|m| is_heisenberg_automorphism(m)) {
            return false;
        }
        // The swap squares to the identity.
        let mut sq = QMatrix::zero(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Rat::zero();
                for k in 0..3 {
                    acc += &swap[(i, k)] * &swap[(k, j)];
                }
                sq[(i, j)] = acc;
            }
        }
        sq == QMatrix::identity(3)
    }
}

pub use heisenberg::{heisenberg_aut_check, HeisenbergReport};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcm::Gcm;
    use crate::liealg::{build_borel, build_nilradical};
    use rand::prelude::*;

    fn gcm(m: &[&[i64]]) -> Gcm {
        Gcm::new(m.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn rv(v: &[i64]) -> RootVec {
        RootVec(v.to_vec())
    }

    fn random_rat(rng: &mut StdRng) -> Rat {
        let n = rng.random_range(-6i64..7);
        let d = rng.random_range(1i64..5);
        crate::rat::rat_frac(n, d)
    }

    fn random_nonzero_rat(rng: &mut StdRng) -> Rat {
        loop {
            let r = random_rat(rng);
            if !r.is_zero() {
                return r;
            }
        }
    }

    #[test]
    fn torus_examples() {
        let alg = build_nilradical(&gcm(&[&[2, -1], &[-1, 2]]), 4).unwrap();
        let id = torus_action(&alg, &[rat(1), rat(1)]).unwrap();
        assert_eq!(id, TruncMap::identity(&alg));
        let t = torus_action(&alg, &[rat(2), rat(3)]).unwrap();
        let z = alg.bracket(&alg.generator(0), &alg.generator(1)).unwrap();
        let tz = t.apply_elt(&z);
        assert_eq!(tz.single_part().unwrap(), &z.scale(&rat(6)));
        assert!(matches!(
            torus_action(&alg, &[rat(0), rat(1)]),
            Err(AutoError::ZeroTorusEntry(0))
        ));
        assert!(is_automorphism(&alg, &t).unwrap().ok);
    }

    #[test]
    fn exp_ad_examples() {
        let alg = build_nilradical(&gcm(&[&[2, -1], &[-1, 2]]), 4).unwrap();
        let zero = LieElt::zero(rv(&[1, 0]));
        assert_eq!(exp_ad(&alg, &zero).unwrap(), TruncMap::identity(&alg));
        let e0 = alg.generator(0);
        let m = exp_ad(&alg, &e0).unwrap();
        // exp(ad e0)(e1) = e1 + [e0, e1].
        let img = m.apply_elt(&alg.generator(1));
        let mut expect = MixedElt::from_elt(alg.generator(1));
        expect.add_scaled(
            &MixedElt::from_elt(alg.bracket(&e0, &alg.generator(1)).unwrap()),
            &rat(1),
        );
        assert_eq!(img, expect);
        // Inverse law.
        let minus = exp_ad(&alg, &e0.scale(&rat(-1))).unwrap();
        assert_eq!(m.compose(&minus), TruncMap::identity(&alg));
        assert!(is_automorphism(&alg, &m).unwrap().ok);
    }

    #[test]
    fn exp_ad_minus_identity_raises_height() {
        let alg = build_nilradical(&gcm(&[&[2, -2], &[-2, 2]]), 6).unwrap();
        let x = LieElt::basis(rv(&[1, 1]), 0);
        let m = exp_ad(&alg, &x).unwrap();
        for (deg, dim) in alg.graded_dims() {
            for k in 0..dim {
                let b = LieElt::basis(deg.clone(), k);
                let mut diff = m.apply_elt(&b);
                diff.add_scaled(&MixedElt::from_elt(b.clone()), &rat(-1));
                for part in diff.parts.values() {
                    assert!(part.degree.height() > deg.height());
                }
            }
        }
    }

    #[test]
    fn diagram_lift_examples() {
        let alg = build_nilradical(&gcm(&[&[2, -1], &[-1, 2]]), 4).unwrap();
        let id = diagram_lift(&alg, &[0, 1]).unwrap();
        assert_eq!(id, TruncMap::identity(&alg));
        let swap = diagram_lift(&alg, &[1, 0]).unwrap();
        // [e0,e1] -> [e1,e0] = -[e0,e1].
        let z = alg.bracket(&alg.generator(0), &alg.generator(1)).unwrap();
        assert_eq!(
            swap.apply_elt(&z).single_part().unwrap(),
            &z.scale(&rat(-1))
        );
        // sigma^2 = id.
        assert_eq!(swap.compose(&swap), TruncMap::identity(&alg));
        assert!(is_automorphism(&alg, &swap).unwrap().ok);
        // Composition law against the group structure.
        let b2 = build_nilradical(&gcm(&[&[2, -2], &[-1, 2]]), 5).unwrap();
        assert!(matches!(
            diagram_lift(&b2, &[1, 0]),
            Err(AutoError::NotDiagramAutomorphism)
        ));
    }

    #[test]
    fn diagram_lift_composition() {
        let g = gcm(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        let alg = build_nilradical(&g, 4).unwrap();
        let auts = diagram_automorphisms(&g);
        assert_eq!(auts.len(), 6);
        for s1 in &auts {
            for s2 in &auts {
                let lift1 = diagram_lift(&alg, s1).unwrap();
                let lift2 = diagram_lift(&alg, s2).unwrap();
                let comp: Vec<usize> = (0..3).map(|i| s1[s2[i]]).collect();
                assert_eq!(
                    lift1.compose(&lift2),
                    diagram_lift(&alg, &comp).unwrap(),
                    "lift({:?}) after lift({:?})",
                    s1,
                    s2
                );
            }
        }
    }

    #[test]
    fn non_automorphism_detected() {
        let alg = build_nilradical(&gcm(&[&[2, -1], &[-1, 2]]), 4).unwrap();
        // Killing e1 drops the rank.
        let mut m = TruncMap::identity(&alg);
        m.images.insert(rv(&[0, 1]), vec![MixedElt::zero()]);
        let check = is_automorphism(&alg, &m).unwrap();
        assert!(!check.ok);
    }

    #[test]
    fn conjugation_law() {
        let alg = build_nilradical(&gcm(&[&[2, -2], &[-2, 2]]), 6).unwrap();
        let mut rng = StdRng::seed_from_u64(0xc0ffee);
        let degrees: Vec<(RootVec, usize)> = alg.graded_dims();
        for _ in 0..20 {
            let t: Vec<Rat> = (0..2).map(|_| random_nonzero_rat(&mut rng)).collect();
            let (deg, dim) = degrees[rng.random_range(0..degrees.len())].clone();
            let mut x = LieElt::zero(deg.clone());
            for k in 0..dim {
                let c = random_rat(&mut rng);
                if !c.is_zero() {
                    x.coords.insert(k, c);
                }
            }
            if x.is_zero() {
                continue;
            }
            let torus = torus_action(&alg, &t).unwrap();
            let inv: Vec<Rat> = t.iter().map(|v| Rat::one() / v).collect();
            let torus_inv = torus_action(&alg, &inv).unwrap();
            let lhs = torus
                .compose(&exp_ad(&alg, &x).unwrap())
                .compose(&torus_inv);
            let tx = torus.apply_elt(&x);
            let rhs = exp_ad(&alg, tx.single_part().unwrap()).unwrap();
            assert_eq!(lhs, rhs, "torus conjugation of exp ad");
        }
    }

    #[test]
    fn gamma0_examples() {
        // A2: center zero, identity with note.
        let b = build_borel(&gcm(&[&[2, -1], &[-1, 2]]), 4).unwrap();
        let res = gamma0_borel(
            &b,
            &QMatrix::identity(0),
            &[vec![rat(0); 2], vec![rat(0); 2]],
        )
        .unwrap();
        assert!(res.note.is_some());
        assert_eq!(res.map.h_matrix, QMatrix::identity(2));

        // Affine A1: phi = 2 id, arbitrary z in c.
        let b = build_borel(&gcm(&[&[2, -2], &[-2, 2]]), 6).unwrap();
        let c0 = b.center_basis()[0].clone();
        let phi = QMatrix::from_rows(vec![vec![rat(2)]]);
        let z = vec![
            c0.iter().map(|x| x * rat(3)).collect::<Vec<_>>(),
            c0.iter().map(|x| x * rat(-1)).collect::<Vec<_>>(),
        ];
        let res = gamma0_borel(&b, &phi, &z).unwrap();
        assert!(res.note.is_none());
        let check = is_automorphism_borel(&b, &res.map).unwrap();
        assert!(
            check.ok,
            "witness: {:?}",
            check.witness.map(|w| w.to_json())
        );
        // phi = 0 is rejected.
        let bad = QMatrix::from_rows(vec![vec![rat(0)]]);
        assert!(matches!(
            gamma0_borel(&b, &bad, &z),
            Err(AutoError::NotInvertible)
        ));
        // z outside the center is rejected.
        let mut zbad = z.clone();
        zbad[0] = vec![rat(1), rat(0), rat(0)];
        assert!(matches!(
            gamma0_borel(&b, &phi, &zbad),
            Err(AutoError::NotInCenter(0))
        ));
    }

    #[test]
    fn failed_multiplicativity_yields_witness() {
        let alg = build_nilradical(&gcm(&[&[2, -1], &[-1, 2]]), 3).unwrap();
        // e1 -> 2 e1 with z unchanged breaks [e0, e1] = z.
        let mut m = TruncMap::identity(&alg);
        m.images.insert(
            rv(&[0, 1]),
            vec![MixedElt::from_elt(alg.generator(1).scale(&rat(2)))],
        );
        let check = is_automorphism(&alg, &m).unwrap();
        assert!(!check.ok);
        let w = check.witness.expect("witness for the failing pair");
        let json = w.to_json();
        assert!(json["pair"].is_array());
        assert!(json["lhs"].is_object() && json["rhs"].is_object());
    }

    #[test]
    fn heisenberg_report_passes() {
        let report = heisenberg_aut_check();
        assert!(report.pass, "{:?}", report);
        assert!(report.degenerate_rejected > 0);
        assert_eq!(
            report.grid_checked,
            report.solved_cases + report.degenerate_rejected
        );
    }

    #[test]
    fn heisenberg_matches_a2_algebra() {
        // The A2 nilradical at cap 3 is the Heisenberg algebra; exp_ad and
        // the torus take the displayed matrix forms.
        let alg = build_nilradical(&gcm(&[&[2, -1], &[-1, 2]]), 3).unwrap();
        let z = alg.bracket(&alg.generator(0), &alg.generator(1)).unwrap();
        assert!(!z.is_zero());
        // exp(ad e0) has matrix [[1,0,0],[0,1,0],[0,?,1]]-ish: e1 -> e1 + z.
        let m = exp_ad(&alg, &alg.generator(0)).unwrap();
        let img = m.apply_elt(&alg.generator(1));
        let mut expect = MixedElt::from_elt(alg.generator(1));
        expect.add_scaled(&MixedElt::from_elt(z.clone()), &rat(1));
        assert_eq!(img, expect);
        // Torus diag(a, b) scales z by ab, matching diag(a, b, ab).
        let t = torus_action(&alg, &[rat(5), rat(-2)]).unwrap();
        assert_eq!(t.apply_elt(&z).single_part().unwrap(), &z.scale(&rat(-10)));
    }
}
