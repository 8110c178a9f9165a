//! Truncated nilradicals: the free Lie algebra on the Chevalley generators
//! modulo the Serre ideal, built degree by degree up to a height cap.
//!
//! For each multidegree the free component is spanned by Lyndon words of
//! that content; the ideal component is accumulated as the span of the
//! Serre elements plus the ad-closure of lower ideal components (degree-one
//! elements generate, so left-bracketing by the generators suffices). The
//! quotient basis is the set of lexicographically least Lyndon words
//! completing a row-echelon complement, which makes every output
//! reproducible. Structure constants are computed lazily per basis pair and
//! memoized behind a lock, so a finished algebra is safe to share across
//! threads.

pub mod borel;
pub mod cache;
pub mod lyndon;
pub mod peterson;

pub use borel::{build_borel, BorelAlgebra};
pub use peterson::{peterson_mult_oracle, PetersonTable};

use crate::gcm::Gcm;
use crate::qlinalg::Echelon;
use crate::rat::Rat;
use crate::roots::RootVec;
use lyndon::{FreeLie, FreeVec, Word};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("height cap {actual} too small; need at least {required}")]
    CapTooSmall { required: usize, actual: usize },
    #[error("degree of height {height} exceeds the cap {cap}")]
    HeightOverflow { height: i64, cap: usize },
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("internal error: {0}")]
    Internal(String),
}

/// Basis label rendering: letters of the Lyndon word joined by dots.
pub fn label_string(w: &Word) -> String {
    w.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(".")
}

pub fn label_from_string(s: &str) -> Option<Word> {
    s.split('.')
        .map(|t| t.parse::<u8>().ok())
        .collect::<Option<Word>>()
        .filter(|w| !w.is_empty())
}

/// Sparse rational combination of the basis of one graded component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElt {
    pub degree: RootVec,
    /// basis index within the degree -> nonzero coefficient
    pub coords: BTreeMap<usize, Rat>,
}

impl LieElt {
    pub fn zero(degree: RootVec) -> Self {
        LieElt {
            degree,
            coords: BTreeMap::new(),
        }
    }

    pub fn basis(degree: RootVec, idx: usize) -> Self {
        LieElt {
            degree,
            coords: [(idx, crate::rat::rat(1))].into_iter().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> LieElt {
        if c.is_zero() {
            return LieElt::zero(self.degree.clone());
        }
        LieElt {
            degree: self.degree.clone(),
            coords: self.coords.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &LieElt, c: &Rat) {
        assert_eq!(self.degree, other.degree, "degree mismatch in add");
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.coords {
            let entry = self.coords.entry(*k).or_insert_with(Rat::zero);
            *entry += v * c;
            if entry.is_zero() {
                self.coords.remove(k);
            }
        }
    }

    pub fn add(&self, other: &LieElt) -> LieElt {
        let mut out = self.clone();
        out.add_scaled(other, &crate::rat::rat(1));
        out
    }

    pub fn sub(&self, other: &LieElt) -> LieElt {
        let mut out = self.clone();
        out.add_scaled(other, &crate::rat::rat(-1));
        out
    }

    /// Dense coordinate vector over the degree's basis.
    pub fn dense(&self, dim: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        for (k, c) in &self.coords {
            v[*k] = c.clone();
        }
        v
    }
}

struct Reduction {
    cols_desc: Vec<Word>,
    col_of: HashMap<Word, usize>,
    ideal: Echelon,
    /// column (in cols_desc) of each quotient basis element
    quotient_col: Vec<usize>,
}

struct DegreeData {
    degree: RootVec,
    /// Quotient basis labels, lexicographically ascending.
    basis: Vec<Word>,
    free_dim: usize,
    first_id: u32,
    reduction: Option<Reduction>,
}

/// The truncated Serre quotient with per-degree bases and lazy, memoized
/// structure constants.
pub struct GradedAlgebra {
    gcm: Gcm,
    height_cap: usize,
    degrees: Vec<DegreeData>,
    index: HashMap<RootVec, usize>,
    table: Mutex<HashMap<(u32, u32), LieElt>>,
    builder: Option<Mutex<FreeLie>>,
    total_dim: usize,
}

impl std::fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedAlgebra")
            .field("gcm", &self.gcm)
            .field("height_cap", &self.height_cap)
            .field("total_dim", &self.total_dim)
            .finish()
    }
}

/// Build the truncated nilradical of a GCM up to the given height cap.
pub fn build_nilradical(gcm: &Gcm, height_cap: usize) -> Result<GradedAlgebra, LieError> {
    let required = gcm.max_serre_height().max(2);
    if height_cap < required {
        return Err(LieError::CapTooSmall {
            required,
            actual: height_cap,
        });
    }
    let n = gcm.size();
    let mut free = FreeLie::new();

    // All Lyndon words up to the cap, bucketed by (height, content).
    let mut buckets: BTreeMap<(i64, RootVec), Vec<Word>> = BTreeMap::new();
    for w in lyndon::lyndon_words_up_to(n, height_cap) {
        let content = RootVec(lyndon::word_content(&w, n));
        buckets
            .entry((content.height(), content))
            .or_default()
            .push(w);
    }

    // Serre generator degrees: (1+r) alpha_i + alpha_j with r = -a_ij.
    let mut serre_at: BTreeMap<RootVec, Vec<(u8, u8, usize)>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let r = (-gcm.entry(i, j)) as usize;
            let mut deg = vec![0i64; n];
            deg[i] += (1 + r) as i64;
            deg[j] += 1;
            let deg = RootVec(deg);
            if deg.height() <= height_cap as i64 {
                serre_at.entry(deg).or_default().push((i as u8, j as u8, r));
            }
        }
    }

    let mut degrees: Vec<DegreeData> = Vec::new();
    let mut index: HashMap<RootVec, usize> = HashMap::new();
    let mut next_id: u32 = 0;

    for ((_h, content), words) in buckets {
        let free_dim = words.len();
        debug_assert_eq!(
            BigInt::from(free_dim),
            lyndon::free_lie_dimension(&content.0),
            "free dimension audit at {}",
            content
        );
        let mut cols_desc = words.clone();
        cols_desc.sort();
        cols_desc.reverse();
        let col_of: HashMap<Word, usize> = cols_desc
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k))
            .collect();
        let mut ideal = Echelon::new(free_dim);

        let to_col = |fv: &FreeVec, col_of: &HashMap<Word, usize>| -> Vec<BigInt> {
            let mut v = vec![BigInt::zero(); col_of.len()];
            for (w, c) in fv {
                v[col_of[w]] = c.clone();
            }
            v
        };

        // Serre generators landing in this degree.
        if let Some(gens) = serre_at.get(&content) {
            for &(i, j, r) in gens {
                let fv = free.serre_element(i, j, r);
                if !fv.is_empty() {
                    ideal.insert(to_col(&fv, &col_of));
                }
            }
        }

        // Ad-closure of the ideal components one height below.
        'closure: for i in 0..n {
            if content.0[i] == 0 {
                continue;
            }
            let prev = content.minus_simple(i);
            if prev.height() == 0 {
                continue;
            }
            let Some(&prev_idx) = index.get(&prev) else {
                continue;
            };
            let prev_red = degrees[prev_idx].reduction.as_ref().unwrap();
            let prev_rows: Vec<FreeVec> = prev_red
                .ideal
                .rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (prev_red.cols_desc[k].clone(), c.clone()))
                        .collect()
                })
                .collect();
            for fv in prev_rows {
                if ideal.rank() == free_dim {
                    break 'closure;
                }
                let img = free.ad_letter(i as u8, &fv);
                if !img.is_empty() {
                    ideal.insert(to_col(&img, &col_of));
                }
            }
        }

        let mut basis: Vec<Word> = cols_desc
            .iter()
            .enumerate()
            .filter(|(k, _)| !ideal.is_pivot(*k))
            .map(|(_, w)| w.clone())
            .collect();
        basis.sort();
        assert_eq!(
            basis.len(),
            free_dim - ideal.rank(),
            "bookkeeping identity free - dim I = mult at {}",
            content
        );
        let quotient_col = basis.iter().map(|w| col_of[w]).collect();

        let first_id = next_id;
        next_id += basis.len() as u32;
        index.insert(content.clone(), degrees.len());
        degrees.push(DegreeData {
            degree: content,
            basis,
            free_dim,
            first_id,
            reduction: Some(Reduction {
                cols_desc,
                col_of,
                ideal,
                quotient_col,
            }),
        });
    }

    Ok(GradedAlgebra {
        gcm: gcm.clone(),
        height_cap,
        degrees,
        index,
        table: Mutex::new(HashMap::new()),
        builder: Some(Mutex::new(free)),
        total_dim: next_id as usize,
    })
}

impl GradedAlgebra {
    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn height_cap(&self) -> usize {
        self.height_cap
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    /// dim of the degree-beta component; zero outside Q+, error above the cap.
    pub fn mult(&self, beta: &RootVec) -> Result<usize, LieError> {
        if beta.height() > self.height_cap as i64 {
            return Err(LieError::HeightOverflow {
                height: beta.height(),
                cap: self.height_cap,
            });
        }
        if !beta.is_positive() {
            return Ok(0);
        }
        Ok(self
            .index
            .get(beta)
            .map(|&k| self.degrees[k].basis.len())
            .unwrap_or(0))
    }

    /// All degrees with nonzero component, in build order (height, then lex).
    pub fn graded_dims(&self) -> Vec<(RootVec, usize)> {
        self.degrees
            .iter()
            .filter(|d| !d.basis.is_empty())
            .map(|d| (d.degree.clone(), d.basis.len()))
            .collect()
    }

    /// Free Lie dimensions per degree, for auditing.
    pub fn free_dims(&self) -> Vec<(RootVec, usize)> {
        self.degrees
            .iter()
            .map(|d| (d.degree.clone(), d.free_dim))
            .collect()
    }

    pub fn basis_labels(&self, beta: &RootVec) -> Vec<String> {
        match self.index.get(beta) {
            None => Vec::new(),
            Some(&k) => self.degrees[k].basis.iter().map(label_string).collect(),
        }
    }

    pub fn generator(&self, i: usize) -> LieElt {
        let deg = RootVec::simple(self.gcm.size(), i);
        LieElt::basis(deg, 0)
    }

    fn degree_data(&self, beta: &RootVec) -> Option<&DegreeData> {
        self.index.get(beta).map(|&k| &self.degrees[k])
    }

    fn global_id(&self, beta: &RootVec, idx: usize) -> u32 {
        let d = self.degree_data(beta).expect("degree exists");
        d.first_id + idx as u32
    }

    pub(crate) fn global_id_public(&self, beta: &RootVec, idx: usize) -> u32 {
        self.global_id(beta, idx)
    }

    fn id_location(&self, id: u32) -> (&DegreeData, usize) {
        // Empty degrees share first_id with their successor; skip them.
        let k = self
            .degrees
            .partition_point(|d| d.first_id + (d.basis.len() as u32) <= id);
        let d = &self.degrees[k];
        debug_assert!(d.first_id <= id && id < d.first_id + d.basis.len() as u32);
        (d, (id - d.first_id) as usize)
    }

    /// Reduce a free-Lie vector to quotient coordinates at its degree.
    fn reduce_free(&self, target: &RootVec, fv: &FreeVec) -> Result<LieElt, LieError> {
        let Some(d) = self.degree_data(target) else {
            return Ok(LieElt::zero(target.clone()));
        };
        if d.basis.is_empty() || fv.is_empty() {
            return Ok(LieElt::zero(target.clone()));
        }
        let red = d.reduction.as_ref().ok_or_else(|| {
            LieError::Internal("cache-backed algebra cannot reduce new elements".into())
        })?;
        let mut v = vec![Rat::zero(); red.cols_desc.len()];
        for (w, c) in fv {
            v[red.col_of[w]] = Rat::from_integer(c.clone());
        }
        let reduced = red.ideal.reduce(&v);
        let mut coords = BTreeMap::new();
        for (bi, &col) in red.quotient_col.iter().enumerate() {
            if !reduced[col].is_zero() {
                coords.insert(bi, reduced[col].clone());
            }
        }
        Ok(LieElt {
            degree: target.clone(),
            coords,
        })
    }

    /// Structure constants for a pair of basis elements, memoized. The
    /// table is locked only around lookups and inserts, so concurrent
    /// readers never block on a computation and never observe partial rows.
    fn bracket_basis(&self, id_a: u32, id_b: u32) -> Result<LieElt, LieError> {
        if id_a == id_b {
            let (d, _) = self.id_location(id_a);
            return Ok(LieElt::zero(d.degree.scale(2)));
        }
        let (lo, hi, flip) = if id_a < id_b {
            (id_a, id_b, false)
        } else {
            (id_b, id_a, true)
        };
        let cached = self.table.lock().unwrap().get(&(lo, hi)).cloned();
        let result = match cached {
            Some(hit) => hit,
            None => {
                let Some(builder) = &self.builder else {
                    return Err(LieError::Internal(format!(
                        "bracket pair ({},{}) missing from cached table",
                        lo, hi
                    )));
                };
                let (wl, dl) = {
                    let (d, i) = self.id_location(lo);
                    (d.basis[i].clone(), d.degree.clone())
                };
                let (wr, dr) = {
                    let (d, i) = self.id_location(hi);
                    (d.basis[i].clone(), d.degree.clone())
                };
                let fv = builder.lock().unwrap().bracket_lyndon(&wl, &wr);
                let out = self.reduce_free(&dl.add(&dr), &fv)?;
                self.table.lock().unwrap().insert((lo, hi), out.clone());
                out
            }
        };
        Ok(if flip {
            result.scale(&crate::rat::rat(-1))
        } else {
            result
        })
    }

    /// Bilinear bracket of two homogeneous elements within the cap.
    pub fn bracket(&self, x: &LieElt, y: &LieElt) -> Result<LieElt, LieError> {
        let target = x.degree.add(&y.degree);
        if target.height() > self.height_cap as i64 {
            return Err(LieError::HeightOverflow {
                height: target.height(),
                cap: self.height_cap,
            });
        }
        let mut acc = LieElt::zero(target);
        if x.is_zero() || y.is_zero() {
            return Ok(acc);
        }
        for (i, ci) in &x.coords {
            let ga = self.global_id(&x.degree, *i);
            for (j, cj) in &y.coords {
                let gb = self.global_id(&y.degree, *j);
                let prod = self.bracket_basis(ga, gb)?;
                acc.add_scaled(&prod, &(ci * cj));
            }
        }
        Ok(acc)
    }

    /// (ad e_i)(x).
    pub fn ad_generator(&self, i: usize, x: &LieElt) -> Result<LieElt, LieError> {
        self.bracket(&self.generator(i), x)
    }

    /// The Serre element (ad e_i)^{1-a_ij}(e_j) evaluated in the quotient;
    /// zero whenever it fits under the cap.
    pub fn serre_in_quotient(&self, i: usize, j: usize) -> Result<LieElt, LieError> {
        assert_ne!(i, j);
        let r = (-self.gcm.entry(i, j)) as usize;
        let mut x = self.generator(j);
        for _ in 0..=r {
            x = self.ad_generator(i, &x)?;
        }
        Ok(x)
    }

    /// Eagerly fill the bracket table for every basis pair within the cap.
    pub fn precompute_brackets(&self) -> Result<(), LieError> {
        for a in &self.degrees {
            for b in &self.degrees {
                if b.first_id < a.first_id {
                    continue;
                }
                if a.degree.add(&b.degree).height() > self.height_cap as i64 {
                    continue;
                }
                for ia in 0..a.basis.len() {
                    let ga = a.first_id + ia as u32;
                    for ib in 0..b.basis.len() {
                        let gb = b.first_id + ib as u32;
                        if ga < gb {
                            self.bracket_basis(ga, gb)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Degrees of height <= cap - 2 holding a nonzero element killed by
    /// every generator. Must be empty for infinite type: the center of the
    /// untruncated nilradical vanishes, and at these heights the truncation
    /// cannot fake one.
    pub fn fake_center_degrees(&self) -> Result<Vec<RootVec>, LieError> {
        let mut bad = Vec::new();
        for d in &self.degrees {
            if d.basis.is_empty() || d.degree.height() > self.height_cap as i64 - 2 {
                continue;
            }
            let dim = d.basis.len();
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            for i in 0..self.gcm.size() {
                let target_dim = self.mult(&d.degree.plus_simple(i))?;
                if target_dim == 0 {
                    continue;
                }
                let per_basis: Vec<Vec<Rat>> = (0..dim)
                    .map(|k| {
                        self.ad_generator(i, &LieElt::basis(d.degree.clone(), k))
                            .map(|img| img.dense(target_dim))
                    })
                    .collect::<Result<_, _>>()?;
                for t in 0..target_dim {
                    rows.push((0..dim).map(|k| per_basis[k][t].clone()).collect());
                }
            }
            if rows.is_empty() {
                bad.push(d.degree.clone());
                continue;
            }
            let m = crate::qlinalg::QMatrix::from_rows(rows);
            if !m.kernel_basis().is_empty() {
                bad.push(d.degree.clone());
            }
        }
        Ok(bad)
    }

    /// Evaluate a degree-raising derivation given by generator images on an
    /// element, by Leibniz recursion over the Lyndon bracketing. The image
    /// degrees must be beta + alpha_i for a common offset beta.
    pub fn apply_derivation(&self, images: &[LieElt], x: &LieElt) -> Result<LieElt, LieError> {
        assert_eq!(images.len(), self.gcm.size());
        let offset = images[0].degree.sub(&RootVec::simple(self.gcm.size(), 0));
        let target = x.degree.add(&offset);
        if target.height() > self.height_cap as i64 {
            return Err(LieError::HeightOverflow {
                height: target.height(),
                cap: self.height_cap,
            });
        }
        let mut acc = LieElt::zero(target.clone());
        let Some(d) = self.degree_data(&x.degree) else {
            return Ok(acc);
        };
        for (k, c) in &x.coords {
            let w = d.basis[*k].clone();
            let img = self.apply_derivation_word(images, &w)?;
            acc.add_scaled(&img, c);
        }
        Ok(acc)
    }

    fn apply_derivation_word(&self, images: &[LieElt], w: &Word) -> Result<LieElt, LieError> {
        if w.len() == 1 {
            return Ok(images[w[0] as usize].clone());
        }
        let (u, v) = lyndon::standard_factorization(w);
        let pu = self.project_word(&u)?;
        let pv = self.project_word(&v)?;
        let du = self.apply_derivation_word(images, &u)?;
        let dv = self.apply_derivation_word(images, &v)?;
        let a = self.bracket(&du, &pv)?;
        let b = self.bracket(&pu, &dv)?;
        Ok(a.add(&b))
    }

    /// Quotient image of the free basis element b(w).
    fn project_word(&self, w: &Word) -> Result<LieElt, LieError> {
        let n = self.gcm.size();
        let deg = RootVec(lyndon::word_content(w, n));
        let Some(d) = self.degree_data(&deg) else {
            return Ok(LieElt::zero(deg));
        };
        if let Ok(k) = d.basis.binary_search(w) {
            return Ok(LieElt::basis(deg, k));
        }
        let fv: FreeVec = [(w.clone(), BigInt::from(1))].into_iter().collect();
        self.reduce_free(&deg, &fv)
    }

    /// Assemble a cache-backed algebra from parsed parts (see `cache`).
    pub(crate) fn from_cache_parts(
        gcm: Gcm,
        height_cap: usize,
        bases: BTreeMap<RootVec, Vec<Word>>,
        table: HashMap<(u32, u32), LieElt>,
    ) -> Self {
        let mut degrees = Vec::new();
        let mut index = HashMap::new();
        let mut next_id = 0u32;
        let mut keyed: Vec<(i64, RootVec, Vec<Word>)> =
            bases.into_iter().map(|(d, b)| (d.height(), d, b)).collect();
        keyed.sort();
        for (_, degree, basis) in keyed {
            let first_id = next_id;
            next_id += basis.len() as u32;
            index.insert(degree.clone(), degrees.len());
            degrees.push(DegreeData {
                degree,
                free_dim: 0,
                basis,
                first_id,
                reduction: None,
            });
        }
        GradedAlgebra {
            gcm,
            height_cap,
            degrees,
            index,
            table: Mutex::new(table),
            builder: None,
            total_dim: next_id as usize,
        }
    }

    pub(crate) fn table_snapshot(&self) -> Vec<((u32, u32), LieElt)> {
        let mut rows: Vec<((u32, u32), LieElt)> = self
            .table
            .lock()
            .unwrap()
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        rows.sort_by_key(|(k, _)| *k);
        rows
    }

    pub(crate) fn id_to_label(&self, id: u32) -> (RootVec, String) {
        let (d, i) = self.id_location(id);
        (d.degree.clone(), label_string(&d.basis[i]))
    }

    pub(crate) fn id_of_label(&self, degree: &RootVec, label: &str) -> Option<u32> {
        let d = self.degree_data(degree)?;
        let w = label_from_string(label)?;
        d.basis
            .binary_search(&w)
            .ok()
            .map(|k| d.first_id + k as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcm(m: &[&[i64]]) -> Gcm {
        Gcm::new(m.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn rv(v: &[i64]) -> RootVec {
        RootVec(v.to_vec())
    }

    #[test]
    fn a2_dimensions() {
        let g = gcm(&[&[2, -1], &[-1, 2]]);
        let alg = build_nilradical(&g, 4).unwrap();
        assert_eq!(alg.mult(&rv(&[1, 0])).unwrap(), 1);
        assert_eq!(alg.mult(&rv(&[0, 1])).unwrap(), 1);
        assert_eq!(alg.mult(&rv(&[1, 1])).unwrap(), 1);
        assert_eq!(alg.mult(&rv(&[2, 1])).unwrap(), 0);
        assert_eq!(alg.mult(&rv(&[1, 2])).unwrap(), 0);
        assert_eq!(alg.mult(&rv(&[2, 2])).unwrap(), 0);
        let by_height: Vec<usize> = (1..=3)
            .map(|h| {
                alg.graded_dims()
                    .into_iter()
                    .filter(|(d, _)| d.height() == h)
                    .map(|(_, m)| m)
                    .sum()
            })
            .collect();
        assert_eq!(by_height, vec![2, 1, 0]);
        assert_eq!(
            alg.mult(&rv(&[3, 3])),
            Err(LieError::HeightOverflow { height: 6, cap: 4 })
        );
    }

    #[test]
    fn cap_too_small() {
        let g = gcm(&[&[2, -4], &[-1, 2]]);
        match build_nilradical(&g, 3) {
            Err(LieError::CapTooSmall {
                required: 6,
                actual: 3,
            }) => {}
            other => panic!("expected CapTooSmall, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn serre_relations_vanish() {
        for m in [
            vec![vec![2i64, -1], vec![-1, 2]],
            vec![vec![2, -2], vec![-2, 2]],
            vec![vec![2, -3], vec![-3, 2]],
        ] {
            let g = Gcm::new(m).unwrap();
            let alg = build_nilradical(&g, 6.max(g.max_serre_height())).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    if i != j {
                        assert!(alg.serre_in_quotient(i, j).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let g = gcm(&[&[2, -1], &[-1, 2]]);
        let alg = build_nilradical(&g, 4).unwrap();
        let e0 = alg.generator(0);
        let e1 = alg.generator(1);
        assert!(alg.bracket(&e0, &e0).unwrap().is_zero());
        let z = alg.bracket(&e0, &e1).unwrap();
        assert!(!z.is_zero());
        assert_eq!(z.degree, rv(&[1, 1]));
        let zr = alg.bracket(&e1, &e0).unwrap();
        assert_eq!(zr, z.scale(&crate::rat::rat(-1)));
        assert!(alg.bracket(&e0, &z).unwrap().is_zero());
    }

    #[test]
    fn affine_a1_dimensions_match_known_pattern() {
        let g = gcm(&[&[2, -2], &[-2, 2]]);
        let alg = build_nilradical(&g, 6).unwrap();
        assert_eq!(alg.mult(&rv(&[1, 1])).unwrap(), 1);
        assert_eq!(alg.mult(&rv(&[2, 1])).unwrap(), 1);
        assert_eq!(alg.mult(&rv(&[1, 2])).unwrap(), 1);
        assert_eq!(alg.mult(&rv(&[2, 2])).unwrap(), 1);
        assert_eq!(alg.mult(&rv(&[3, 1])).unwrap(), 0);
        assert_eq!(alg.mult(&rv(&[3, 3])).unwrap(), 1);
    }

    #[test]
    fn twisted_a2_delta_dimension() {
        let g = gcm(&[&[2, -4], &[-1, 2]]);
        let alg = build_nilradical(&g, 9).unwrap();
        assert_eq!(alg.mult(&rv(&[2, 1])).unwrap(), 1);
        assert_eq!(alg.mult(&rv(&[4, 2])).unwrap(), 1);
    }

    #[test]
    fn construction_matches_peterson_oracle() {
        for m in [
            vec![vec![2i64, -1], vec![-1, 2]],
            vec![vec![2, -2], vec![-1, 2]],
            vec![vec![2, -2], vec![-2, 2]],
            vec![vec![2, -3], vec![-3, 2]],
        ] {
            let g = Gcm::new(m).unwrap();
            let cap = 6.max(g.max_serre_height());
            let alg = build_nilradical(&g, cap).unwrap();
            let mut table = PetersonTable::new(&g).unwrap();
            for (deg, mult) in alg.graded_dims() {
                assert_eq!(
                    BigInt::from(mult),
                    table.mult(&deg).unwrap(),
                    "mult at {}",
                    deg
                );
            }
        }
    }

    #[test]
    fn jacobi_spot_checks() {
        let g = gcm(&[&[2, -2], &[-2, 2]]);
        let alg = build_nilradical(&g, 6).unwrap();
        let elems: Vec<LieElt> = alg
            .graded_dims()
            .into_iter()
            .flat_map(|(d, m)| (0..m).map(move |k| LieElt::basis(d.clone(), k)))
            .collect();
        for x in &elems {
            for y in &elems {
                for z in &elems {
                    let total = x.degree.height() + y.degree.height() + z.degree.height();
                    if total > 6 {
                        continue;
                    }
                    let t1 = alg.bracket(&alg.bracket(x, y).unwrap(), z).unwrap();
                    let t2 = alg.bracket(&alg.bracket(y, z).unwrap(), x).unwrap();
                    let t3 = alg.bracket(&alg.bracket(z, x).unwrap(), y).unwrap();
                    let sum = t1.add(&t2).add(&t3);
                    assert!(sum.is_zero(), "Jacobi fails");
                }
            }
        }
    }

    #[test]
    fn no_fake_center_for_infinite_type() {
        for m in [
            vec![vec![2i64, -2], vec![-2, 2]],
            vec![vec![2, -3], vec![-3, 2]],
        ] {
            let g = Gcm::new(m).unwrap();
            let alg = build_nilradical(&g, 6).unwrap();
            assert!(alg.fake_center_degrees().unwrap().is_empty());
        }
    }

    #[test]
    fn finite_type_center_is_theta_only() {
        // For A2 the only degree killed by all generators is theta.
        let g = gcm(&[&[2, -1], &[-1, 2]]);
        let alg = build_nilradical(&g, 5).unwrap();
        assert_eq!(alg.fake_center_degrees().unwrap(), vec![rv(&[1, 1])]);
    }

    #[test]
    fn finite_type_mult_is_weyl_orbit_indicator() {
        for m in [
            vec![vec![2i64, -1], vec![-1, 2]],
            vec![vec![2, -2], vec![-1, 2]],
            vec![vec![2, -3], vec![-1, 2]],
        ] {
            let g = Gcm::new(m).unwrap();
            let cap = 8.max(g.max_serre_height());
            let alg = build_nilradical(&g, cap).unwrap();
            let roots = crate::roots::real_roots_up_to_height(&g, cap as i64);
            for (deg, mult) in alg.free_dims() {
                let constructed = alg.mult(&deg).unwrap();
                assert_eq!(
                    constructed,
                    roots.contains(&deg) as usize,
                    "mult at {} (free dim {})",
                    deg,
                    mult
                );
            }
        }
    }

    #[test]
    fn concurrent_bracket_reads_are_safe() {
        let g = gcm(&[&[2, -2], &[-2, 2]]);
        let alg = std::sync::Arc::new(build_nilradical(&g, 6).unwrap());
        let elems: Vec<LieElt> = alg
            .graded_dims()
            .into_iter()
            .filter(|(d, _)| d.height() <= 3)
            .flat_map(|(d, m)| (0..m).map(move |k| LieElt::basis(d.clone(), k)))
            .collect();
        let mut handles = Vec::new();
        for t in 0..4 {
            let alg = alg.clone();
            let elems = elems.clone();
            handles.push(std::thread::spawn(move || {
                for (a, x) in elems.iter().enumerate() {
                    for (b, y) in elems.iter().enumerate() {
                        if (a + b + t) % 2 == 0 {
                            let _ = alg.bracket(x, y).unwrap();
                        }
                    }
                }
            }));
        }
        for h in handles {
            h.join().unwrap();
        }
        // Results agree with a fresh sequential build.
        let fresh = build_nilradical(&g, 6).unwrap();
        for x in &elems {
            for y in &elems {
                assert_eq!(alg.bracket(x, y).unwrap(), fresh.bracket(x, y).unwrap());
            }
        }
    }

    #[test]
    fn derivation_evaluation_is_leibniz() {
        let g = gcm(&[&[2, -2], &[-2, 2]]);
        let alg = build_nilradical(&g, 6).unwrap();
        // Inner derivation ad x with x of degree (2,1), via generator images.
        let x = LieElt::basis(rv(&[2, 1]), 0);
        let images: Vec<LieElt> = (0..2)
            .map(|i| alg.bracket(&x, &alg.generator(i)).unwrap())
            .collect();
        let elems: Vec<LieElt> = alg
            .graded_dims()
            .into_iter()
            .filter(|(d, _)| d.height() <= 2)
            .flat_map(|(d, m)| (0..m).map(move |k| LieElt::basis(d.clone(), k)))
            .collect();
        for u in &elems {
            for v in &elems {
                if u.degree.add(&v.degree).height() + 3 > 6 {
                    continue;
                }
                let uv = alg.bracket(u, v).unwrap();
                let lhs = alg.apply_derivation(&images, &uv).unwrap();
                let rhs = alg
                    .bracket(&alg.apply_derivation(&images, u).unwrap(), v)
                    .unwrap()
                    .add(
                        &alg.bracket(u, &alg.apply_derivation(&images, v).unwrap())
                            .unwrap(),
                    );
                assert_eq!(lhs, rhs);
            }
        }
    }
}
