//! Canonical Cartan-matrix catalog (Kac's TABLE Fin and TABLE Aff 1-3).
//!
//! Finite families are written out directly in Kac's convention
//! (`a[i][j] = alpha_j(alpha_i_covee)`, canonical position k = Kac node k+1).
//! Untwisted affine matrices are generated as lowest-root extensions of the
//! finite part by the highest root theta; twisted ones as extensions of the
//! fixed-point subalgebra by the relevant dominant short weight. Marks are
//! stored alongside and re-derived as kernel vectors by the classifier.

use crate::gcm::Gcm;
use crate::roots::{finite_positive_roots_unchecked, BilinearForm, RootVec};
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryKind {
    Finite,
    Affine {
        r: u32,
        /// Canonical index of the epsilon node, the degree-one generator of the
        /// twisted loop realization (l for A_{2l}^(2), else 0).
        epsilon: usize,
        marks: Vec<i64>,
    },
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub label: String,
    pub matrix: Vec<Vec<i64>>,
    pub kind: EntryKind,
}

fn blank(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    m
}

fn single(m: &mut [Vec<i64>], i: usize, j: usize) {
    m[i][j] = -1;
    m[j][i] = -1;
}

fn mat_a(n: usize) -> Vec<Vec<i64>> {
    let mut m = blank(n);
    for i in 0..n - 1 {
        single(&mut m, i, i + 1);
    }
    m
}

/// B_l: chain with the short root last; its row carries the -2.
fn mat_b(l: usize) -> Vec<Vec<i64>> {
    let mut m = mat_a(l);
    m[l - 1][l - 2] = -2;
    m
}

/// C_l: chain with the long root last.
fn mat_c(l: usize) -> Vec<Vec<i64>> {
    let mut m = mat_a(l);
    m[l - 2][l - 1] = -2;
    m
}

/// D_l: chain 0..l-3 with both of l-2, l-1 attached to l-3.
fn mat_d(l: usize) -> Vec<Vec<i64>> {
    let mut m = blank(l);
    for i in 0..l - 3 {
        single(&mut m, i, i + 1);
    }
    single(&mut m, l - 3, l - 2);
    single(&mut m, l - 3, l - 1);
    m
}

/// E_n: chain 0..n-2 with the last node attached to position 2.
fn mat_e(n: usize) -> Vec<Vec<i64>> {
    let mut m = blank(n);
    for i in 0..n - 2 {
        single(&mut m, i, i + 1);
    }
    single(&mut m, 2, n - 1);
    m
}

fn mat_f4() -> Vec<Vec<i64>> {
    vec![
        vec![2, -1, 0, 0],
        vec![-1, 2, -1, 0],
        vec![0, -2, 2, -1],
        vec![0, 0, -1, 2],
    ]
}

fn mat_g2() -> Vec<Vec<i64>> {
    vec![vec![2, -3], vec![-1, 2]]
}

fn highest_root_of(part: &[Vec<i64>]) -> RootVec {
    let g = Gcm::new(part.to_vec()).expect("catalog part is a valid GCM");
    let roots = finite_positive_roots_unchecked(&g);
    let max_h = roots.iter().map(|r| r.height()).max().unwrap();
    roots.into_iter().find(|r| r.height() == max_h).unwrap()
}

fn highest_short_root_of(part: &[Vec<i64>]) -> RootVec {
    let g = Gcm::new(part.to_vec()).expect("catalog part is a valid GCM");
    let form = BilinearForm::new(&g).unwrap();
    let roots = finite_positive_roots_unchecked(&g);
    let min_len = roots.iter().map(|r| form.norm(r)).min().unwrap();
    let short: Vec<RootVec> = roots
        .into_iter()
        .filter(|r| form.norm(r) == min_len)
        .collect();
    let max_h = short.iter().map(|r| r.height()).max().unwrap();
    short.into_iter().find(|r| r.height() == max_h).unwrap()
}

/// Attach an extra node for the weight theta0: the new simple root is
/// delta - theta0, so its Cartan pairings come from the bilinear form.
fn extend(part: &[Vec<i64>], theta0: &RootVec, extra_last: bool) -> Vec<Vec<i64>> {
    let g = Gcm::new(part.to_vec()).expect("catalog part is a valid GCM");
    let form = BilinearForm::new(&g).unwrap();
    let l = part.len();
    let nn = form.norm(theta0);
    let exact = |num: BigInt, den: &BigInt| -> i64 {
        let (q, r) = num_integer::Integer::div_rem(&num, den);
        assert!(r.is_zero(), "catalog extension entry not integral");
        i64::try_from(&q).unwrap()
    };
    let mut m = blank(l + 1);
    let extra = if extra_last { l } else { 0 };
    let at = |j: usize| if extra_last { j } else { j + 1 };
    for j in 0..l {
        for k in 0..l {
            m[at(j)][at(k)] = part[j][k];
        }
    }
    for j in 0..l {
        let cj = form.ip(&RootVec::simple(l, j), theta0);
        let a_ej = exact(BigInt::from(-2) * &cj, &nn);
        let a_je = exact(BigInt::from(-2) * &cj, &form.gram[j][j]);
        m[extra][at(j)] = a_ej;
        m[at(j)][extra] = a_je;
    }
    m
}

fn marks_with_extra(theta0: &RootVec, extra_last: bool) -> Vec<i64> {
    let mut marks = theta0.0.clone();
    if extra_last {
        marks.push(1);
    } else {
        marks.insert(0, 1);
    }
    marks
}

fn reverse_nodes(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    (0..n)
        .map(|i| (0..n).map(|j| m[n - 1 - i][n - 1 - j]).collect())
        .collect()
}

fn finite_entry(label: String, matrix: Vec<Vec<i64>>) -> CatalogEntry {
    CatalogEntry {
        label,
        matrix,
        kind: EntryKind::Finite,
    }
}

fn untwisted(label: String, part: Vec<Vec<i64>>) -> CatalogEntry {
    let theta = highest_root_of(&part);
    let matrix = extend(&part, &theta, false);
    let marks = marks_with_extra(&theta, false);
    affine_checked(label, matrix, 1, 0, marks)
}

fn affine_checked(
    label: String,
    matrix: Vec<Vec<i64>>,
    r: u32,
    epsilon: usize,
    marks: Vec<i64>,
) -> CatalogEntry {
    debug_assert!({
        let n = matrix.len();
        (0..n).all(|i| (0..n).map(|j| matrix[i][j] * marks[j]).sum::<i64>() == 0)
    });
    CatalogEntry {
        label,
        matrix,
        kind: EntryKind::Affine { r, epsilon, marks },
    }
}

/// All canonical finite and affine entries of the given size, finite first.
pub fn catalog_entries(n: usize) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    // Finite types of rank n.
    out.push(finite_entry(format!("A{}", n), mat_a(n)));
    out.push(finite_entry(format!("B{}", n), mat_b(n)));
    if n >= 3 {
        out.push(finite_entry(format!("C{}", n), mat_c(n)));
    }
    if n >= 4 {
        out.push(finite_entry(format!("D{}", n), mat_d(n)));
    }
    if (6..=8).contains(&n) {
        out.push(finite_entry(format!("E{}", n), mat_e(n)));
    }
    if n == 4 {
        out.push(finite_entry("F4".into(), mat_f4()));
    }
    if n == 2 {
        out.push(finite_entry("G2".into(), mat_g2()));
    }
    // Affine types of size n = l + 1.
    let l = n - 1;
    if n == 2 {
        out.push(affine_checked(
            "A1~1".into(),
            vec![vec![2, -2], vec![-2, 2]],
            1,
            0,
            vec![1, 1],
        ));
        out.push(affine_checked(
            "A2~2".into(),
            vec![vec![2, -4], vec![-1, 2]],
            2,
            1,
            vec![2, 1],
        ));
        return out;
    }
    out.push(untwisted(format!("A{}~1", l), mat_a(l)));
    if l >= 3 {
        out.push(untwisted(format!("B{}~1", l), mat_b(l)));
    }
    out.push(untwisted(format!("C{}~1", l), mat_c(l)));
    if l >= 4 {
        out.push(untwisted(format!("D{}~1", l), mat_d(l)));
    }
    if (6..=8).contains(&l) {
        out.push(untwisted(format!("E{}~1", l), mat_e(l)));
    }
    if l == 4 {
        out.push(untwisted("F4~1".into(), mat_f4()));
    }
    if l == 2 {
        out.push(untwisted("G2~1".into(), mat_g2()));
    }
    // TABLE Aff 2.
    if l >= 2 {
        // A_{2l}^(2): reversed B_l part (short end first), extra node last,
        // attached through twice the highest short root.
        let part = reverse_nodes(&mat_b(l));
        let theta0 = highest_short_root_of(&part).scale(2);
        let matrix = extend(&part, &theta0, true);
        let marks = marks_with_extra(&theta0, true);
        out.push(affine_checked(format!("A{}~2", 2 * l), matrix, 2, l, marks));
    }
    if l >= 3 {
        let part = mat_c(l);
        let theta0 = highest_short_root_of(&part);
        let matrix = extend(&part, &theta0, false);
        let marks = marks_with_extra(&theta0, false);
        out.push(affine_checked(
            format!("A{}~2", 2 * l - 1),
            matrix,
            2,
            0,
            marks,
        ));
    }
    if l >= 2 {
        let part = mat_b(l);
        let theta0 = highest_short_root_of(&part);
        let matrix = extend(&part, &theta0, false);
        let marks = marks_with_extra(&theta0, false);
        out.push(affine_checked(format!("D{}~2", l + 1), matrix, 2, 0, marks));
    }
    if l == 4 {
        let part = mat_f4();
        let theta0 = highest_short_root_of(&part);
        let matrix = extend(&part, &theta0, false);
        let marks = marks_with_extra(&theta0, false);
        out.push(affine_checked("E6~2".into(), matrix, 2, 0, marks));
    }
    if l == 2 {
        let part = mat_g2();
        let theta0 = highest_short_root_of(&part);
        let matrix = extend(&part, &theta0, false);
        let marks = marks_with_extra(&theta0, false);
        out.push(affine_checked("D4~3".into(), matrix, 3, 0, marks));
    }
    out
}
