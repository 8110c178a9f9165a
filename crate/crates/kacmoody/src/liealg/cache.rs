//! Versioned JSON cache of a built algebra: per-degree bases plus the full
//! bracket table. Serialization is fully deterministic (sorted keys,
//! canonical "p/q" rationals), so rebuilding from the same inputs is
//! byte-identical. Loading re-validates the invariants reachable without
//! the free-Lie machinery: version, GCM validity, dimension bookkeeping,
//! degree additivity and completeness of the bracket table, generator
//! multiplicities, the Jacobi identity on generator triples, and vanishing
//! of the Serre elements.

use super::lyndon::word_content;
use super::{label_from_string, GradedAlgebra, LieElt};
use crate::gcm::Gcm;
use crate::rat::{rat_from_string, rat_to_string};
use crate::roots::RootVec;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache version mismatch: found {found}, expected {expected}")]
    Version { found: u32, expected: u32 },
    #[error("cache parse error: {0}")]
    Parse(String),
    #[error("cache validation failed: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    gcm: Vec<Vec<i64>>,
    height: usize,
    /// degree "[a,b]" -> component dimension
    dims: BTreeMap<String, usize>,
    /// degree "[a,b]" -> basis labels
    basis: BTreeMap<String, Vec<String>>,
    /// "(label,label)" -> target label -> "p/q"
    brackets: BTreeMap<String, BTreeMap<String, String>>,
}

/// Serialize a built algebra, eagerly completing the bracket table first.
pub fn save(alg: &GradedAlgebra) -> Result<String, CacheError> {
    alg.precompute_brackets()
        .map_err(|e| CacheError::Invalid(e.to_string()))?;
    let mut dims = BTreeMap::new();
    let mut basis = BTreeMap::new();
    for (deg, mult) in alg.graded_dims() {
        dims.insert(deg.to_string(), mult);
        basis.insert(deg.to_string(), alg.basis_labels(&deg));
    }
    let mut brackets = BTreeMap::new();
    for ((lo, hi), elt) in alg.table_snapshot() {
        let (_, llo) = alg.id_to_label(lo);
        let (_, lhi) = alg.id_to_label(hi);
        let mut value = BTreeMap::new();
        let labels = alg.basis_labels(&elt.degree);
        for (k, c) in &elt.coords {
            value.insert(labels[*k].clone(), rat_to_string(c));
        }
        brackets.insert(format!("({},{})", llo, lhi), value);
    }
    let file = CacheFile {
        version: CACHE_VERSION,
        gcm: alg.gcm().entries().clone(),
        height: alg.height_cap(),
        dims,
        basis,
        brackets,
    };
    serde_json::to_string_pretty(&file).map_err(|e| CacheError::Parse(e.to_string()))
}

fn parse_degree(s: &str) -> Result<RootVec, CacheError> {
    serde_json::from_str::<Vec<i64>>(s)
        .map(RootVec)
        .map_err(|e| CacheError::Parse(format!("bad degree key {s:?}: {e}")))
}

/// Load and validate a cached algebra.
pub fn load(json: &str) -> Result<GradedAlgebra, CacheError> {
    let file: CacheFile =
        serde_json::from_str(json).map_err(|e| CacheError::Parse(e.to_string()))?;
    if file.version != CACHE_VERSION {
        return Err(CacheError::Version {
            found: file.version,
            expected: CACHE_VERSION,
        });
    }
    let gcm = Gcm::new(file.gcm.clone())
        .map_err(|e| CacheError::Invalid(format!("stored matrix is not a GCM: {e}")))?;
    let n = gcm.size();
    let mut bases: BTreeMap<RootVec, Vec<Vec<u8>>> = BTreeMap::new();
    for (key, labels) in &file.basis {
        let deg = parse_degree(key)?;
        if deg.len() != n || !deg.is_positive() || deg.height() > file.height as i64 {
            return Err(CacheError::Invalid(format!("degree {key} out of range")));
        }
        let dim = file
            .dims
            .get(key)
            .copied()
            .ok_or_else(|| CacheError::Invalid(format!("degree {key} missing from dims")))?;
        if dim != labels.len() {
            return Err(CacheError::Invalid(format!(
                "degree {key}: dims says {dim}, basis has {}",
                labels.len()
            )));
        }
        let mut words = Vec::with_capacity(labels.len());
        for label in labels {
            let w = label_from_string(label)
                .ok_or_else(|| CacheError::Invalid(format!("bad label {label:?}")))?;
            if RootVec(word_content(&w, n)) != deg {
                return Err(CacheError::Invalid(format!(
                    "label {label} does not have degree {key}"
                )));
            }
            words.push(w);
        }
        if !words.windows(2).all(|p| p[0] < p[1]) {
            return Err(CacheError::Invalid(format!("basis at {key} is not sorted")));
        }
        bases.insert(deg, words);
    }
    for key in file.dims.keys() {
        if !file.basis.contains_key(key) {
            return Err(CacheError::Invalid(format!(
                "degree {key} has dims but no basis"
            )));
        }
    }
    for i in 0..n {
        let alpha = RootVec::simple(n, i);
        if bases.get(&alpha).map(|b| b.len()) != Some(1) {
            return Err(CacheError::Invalid(format!(
                "generator degree {alpha} must have dimension 1"
            )));
        }
    }
    // Skeleton without brackets resolves labels to global ids.
    let skeleton =
        GradedAlgebra::from_cache_parts(gcm.clone(), file.height, bases.clone(), HashMap::new());
    let mut table: HashMap<(u32, u32), LieElt> = HashMap::new();
    for (key, value) in &file.brackets {
        let inner = key
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| CacheError::Parse(format!("bad bracket key {key:?}")))?;
        let (la, lb) = inner
            .split_once(',')
            .ok_or_else(|| CacheError::Parse(format!("bad bracket key {key:?}")))?;
        let resolve = |label: &str| -> Result<(u32, RootVec), CacheError> {
            let w = label_from_string(label)
                .ok_or_else(|| CacheError::Invalid(format!("bad label {label:?}")))?;
            let deg = RootVec(word_content(&w, n));
            let id = skeleton
                .id_of_label(&deg, label)
                .ok_or_else(|| CacheError::Invalid(format!("unknown basis label {label}")))?;
            Ok((id, deg))
        };
        let (ida, dega) = resolve(la)?;
        let (idb, degb) = resolve(lb)?;
        if ida >= idb {
            return Err(CacheError::Invalid(format!(
                "bracket key {key} is not in canonical order"
            )));
        }
        let target = dega.add(&degb);
        if target.height() > file.height as i64 {
            return Err(CacheError::Invalid(format!(
                "bracket {key} exceeds the height cap"
            )));
        }
        let target_labels = skeleton.basis_labels(&target);
        let mut elt = LieElt::zero(target.clone());
        for (tl, cs) in value {
            let pos = target_labels.iter().position(|x| x == tl).ok_or_else(|| {
                CacheError::Invalid(format!(
                    "bracket {key}: target label {tl} not in degree {target}"
                ))
            })?;
            let c = rat_from_string(cs)
                .ok_or_else(|| CacheError::Invalid(format!("bad rational {cs:?}")))?;
            if c.is_zero() {
                return Err(CacheError::Invalid(format!(
                    "bracket {key}: explicit zero coefficient"
                )));
            }
            elt.coords.insert(pos, c);
        }
        table.insert((ida, idb), elt);
    }
    // Completeness: every in-cap ordered basis pair must be present.
    let dims = skeleton.graded_dims();
    for (da, ma) in &dims {
        for (db, mb) in &dims {
            if da.add(db).height() > file.height as i64 {
                continue;
            }
            for ka in 0..*ma {
                for kb in 0..*mb {
                    let ia = skeleton.global_id_public(da, ka);
                    let ib = skeleton.global_id_public(db, kb);
                    if ia < ib && !table.contains_key(&(ia, ib)) {
                        return Err(CacheError::Invalid(format!(
                            "bracket table incomplete at pair ({ia},{ib})"
                        )));
                    }
                }
            }
        }
    }
    let alg = GradedAlgebra::from_cache_parts(gcm.clone(), file.height, bases, table);
    // Jacobi on generator triples, then Serre vanishing.
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (ei, ej, ek) = (alg.generator(i), alg.generator(j), alg.generator(k));
                if ei.degree.add(&ej.degree).add(&ek.degree).height() > file.height as i64 {
                    continue;
                }
                let check = (|| -> Result<bool, super::LieError> {
                    let t1 = alg.bracket(&alg.bracket(&ei, &ej)?, &ek)?;
                    let t2 = alg.bracket(&alg.bracket(&ej, &ek)?, &ei)?;
                    let t3 = alg.bracket(&alg.bracket(&ek, &ei)?, &ej)?;
                    Ok(t1.add(&t2).add(&t3).is_zero())
                })()
                .map_err(|e| CacheError::Invalid(e.to_string()))?;
                if !check {
                    return Err(CacheError::Invalid(format!(
                        "Jacobi identity fails on generators ({i},{j},{k})"
                    )));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if (2 - gcm.entry(i, j)) as i64 > file.height as i64 {
                continue;
            }
            let s = alg
                .serre_in_quotient(i, j)
                .map_err(|e| CacheError::Invalid(e.to_string()))?;
            if !s.is_zero() {
                return Err(CacheError::Invalid(format!(
                    "Serre element for pair ({i},{j}) is nonzero in cache"
                )));
            }
        }
    }
    Ok(alg)
}
