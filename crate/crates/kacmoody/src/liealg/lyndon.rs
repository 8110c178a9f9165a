//! Free Lie algebra on letters 0..l via the Lyndon-word basis.
//!
//! Elements of a multigraded component are integer combinations of Lyndon
//! words of fixed content; brackets of basis words are rewritten back into
//! the basis by the classical recursion on standard factorizations. The
//! necklace (Witt) formula is kept alongside as an audit of the generated
//! word counts.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

pub type Word = Vec<u8>;

/// Integer vector over the Lyndon words of one content.
pub type FreeVec = BTreeMap<Word, BigInt>;

pub fn word_content(w: &[u8], n_letters: usize) -> Vec<i64> {
    let mut c = vec![0i64; n_letters];
    for &x in w {
        c[x as usize] += 1;
    }
    c
}

/// All Lyndon words over `n_letters` letters of length <= max_len, in
/// lexicographic order (Duval's algorithm).
pub fn lyndon_words_up_to(n_letters: usize, max_len: usize) -> Vec<Word> {
    assert!(n_letters >= 1);
    let k = n_letters as u8;
    let mut out = Vec::new();
    let mut w: Word = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out
}

pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|k| w < &w[k..])
}

/// Standard factorization of a Lyndon word of length >= 2: (u, v) with
/// v the smallest proper suffix (equivalently the longest proper Lyndon
/// suffix) and u the complementary prefix, both Lyndon.
pub fn standard_factorization(w: &[u8]) -> (Word, Word) {
    debug_assert!(w.len() >= 2 && is_lyndon(w));
    let split = (1..w.len())
        .min_by(|&a, &b| w[a..].cmp(&w[b..]))
        .expect("word has length >= 2");
    let (u, v) = w.split_at(split);
    debug_assert!(is_lyndon(u) && is_lyndon(v));
    (u.to_vec(), v.to_vec())
}

/// Witt / necklace formula: the dimension of the multigraded component of
/// the free Lie algebra with the given content.
pub fn free_lie_dimension(content: &[i64]) -> BigInt {
    let h: i64 = content.iter().sum();
    if h == 0 || content.iter().any(|&c| c < 0) {
        return BigInt::zero();
    }
    let g = content
        .iter()
        .fold(0i64, |acc, &c| num_integer::gcd(acc, c));
    let mut total = BigInt::zero();
    for d in 1..=g {
        if g % d != 0 {
            continue;
        }
        let mu = moebius(d);
        if mu == 0 {
            continue;
        }
        let mut term = crate::rat::factorial((h / d) as u64);
        for &c in content {
            term /= crate::rat::factorial((c / d) as u64);
        }
        total += BigInt::from(mu) * term;
    }
    total / BigInt::from(h)
}

fn moebius(n: i64) -> i64 {
    let mut n = n;
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            count += 1;
        }
        p += 1;
    }
    if n > 1 {
        count += 1;
    }
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Bracket rewriting context with memoized basis products.
#[derive(Debug)]
pub struct FreeLie {
    memo: HashMap<(Word, Word), Arc<FreeVec>>,
}

impl Default for FreeLie {
    fn default() -> Self {
        Self::new()
    }
}

impl FreeLie {
    pub fn new() -> Self {
        FreeLie {
            memo: HashMap::new(),
        }
    }

    /// [b(u), b(v)] expanded in the Lyndon basis, for Lyndon words u, v.
    pub fn bracket_lyndon(&mut self, u: &[u8], v: &[u8]) -> FreeVec {
        match u.cmp(v) {
            std::cmp::Ordering::Equal => FreeVec::new(),
            std::cmp::Ordering::Greater => neg(&self.bracket_ordered(v, u)),
            std::cmp::Ordering::Less => (*self.bracket_ordered(u, v)).clone(),
        }
    }

    fn bracket_ordered(&mut self, u: &[u8], v: &[u8]) -> Arc<FreeVec> {
        debug_assert!(u < v);
        let key = (u.to_vec(), v.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let standard_pair = if u.len() == 1 {
            true
        } else {
            let (_, u2) = standard_factorization(u);
            u2.as_slice() >= v
        };
        let result = if standard_pair {
            let mut w = u.to_vec();
            w.extend_from_slice(v);
            debug_assert!(is_lyndon(&w));
            let mut fv = FreeVec::new();
            fv.insert(w, BigInt::from(1));
            fv
        } else {
            // [u, v] = [u1, [u2, v]] - [u2, [u1, v]] by Jacobi.
            let (u1, u2) = standard_factorization(u);
            let a = self.bracket_lyndon(&u2, v);
            let b = self.bracket_lyndon(&u1, v);
            let left = self.bracket_word_vec(&u1, &a);
            let right = self.bracket_word_vec(&u2, &b);
            add(&left, &neg(&right))
        };
        let arc = Arc::new(result);
        self.memo.insert(key, arc.clone());
        arc
    }

    /// [b(w), x] for a Lyndon word w and a basis-expanded element x.
    pub fn bracket_word_vec(&mut self, w: &[u8], x: &FreeVec) -> FreeVec {
        let mut acc = FreeVec::new();
        for (t, c) in x {
            if c.is_zero() {
                continue;
            }
            let bt = self.bracket_lyndon(w, t);
            for (s, d) in &bt {
                let entry = acc.entry(s.clone()).or_insert_with(BigInt::zero);
                *entry += c * d;
                if entry.is_zero() {
                    acc.remove(s);
                }
            }
        }
        acc
    }

    /// (ad e_i) applied to x.
    pub fn ad_letter(&mut self, i: u8, x: &FreeVec) -> FreeVec {
        self.bracket_word_vec(&[i], x)
    }

    /// The Serre element (ad e_i)^{1+r}(e_j) with r = -a_ij.
    pub fn serre_element(&mut self, i: u8, j: u8, r: usize) -> FreeVec {
        let mut x = FreeVec::new();
        x.insert(vec![j], BigInt::from(1));
        for _ in 0..=r {
            x = self.ad_letter(i, &x);
        }
        x
    }

    /// [x, y] for basis-expanded elements.
    pub fn bracket(&mut self, x: &FreeVec, y: &FreeVec) -> FreeVec {
        let mut acc = FreeVec::new();
        for (u, a) in x {
            for (v, b) in y {
                let uv = self.bracket_lyndon(u, v);
                let c = a * b;
                for (s, d) in &uv {
                    let entry = acc.entry(s.clone()).or_insert_with(BigInt::zero);
                    *entry += &c * d;
                    if entry.is_zero() {
                        acc.remove(s);
                    }
                }
            }
        }
        acc
    }
}

fn neg(x: &FreeVec) -> FreeVec {
    x.iter().map(|(w, c)| (w.clone(), -c)).collect()
}

fn add(x: &FreeVec, y: &FreeVec) -> FreeVec {
    let mut acc = x.clone();
    for (w, c) in y {
        let entry = acc.entry(w.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            acc.remove(w);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duval_small() {
        let words = lyndon_words_up_to(2, 4);
        let expect: Vec<Word> = ["0", "0001", "001", "0011", "01", "011", "0111", "1"]
            .iter()
            .map(|s| s.bytes().map(|b| b - b'0').collect())
            .collect();
        let mut sorted = words.clone();
        sorted.sort();
        assert_eq!(sorted, expect);
        // Duval emits in lex order already.
        assert_eq!(words, expect);
        for w in &words {
            assert!(is_lyndon(w));
        }
    }

    #[test]
    fn word_counts_match_witt_formula() {
        for n_letters in 1..=3usize {
            let words = lyndon_words_up_to(n_letters, 7);
            let mut by_content: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
            for w in &words {
                *by_content.entry(word_content(w, n_letters)).or_default() += 1;
            }
            // Every content of height <= 7, including ones with no words.
            let mut stack = vec![vec![0i64; n_letters]];
            let mut contents = Vec::new();
            while let Some(c) = stack.pop() {
                let h: i64 = c.iter().sum();
                if h > 0 {
                    contents.push(c.clone());
                }
                if h < 7 {
                    for i in 0..n_letters {
                        let mut d = c.clone();
                        d[i] += 1;
                        stack.push(d);
                    }
                }
            }
            contents.sort();
            contents.dedup();
            for c in contents {
                let counted = by_content.get(&c).copied().unwrap_or(0);
                assert_eq!(
                    BigInt::from(counted),
                    free_lie_dimension(&c),
                    "content {:?}",
                    c
                );
            }
        }
    }

    #[test]
    fn standard_factorizations() {
        let sf = |s: &str| {
            let w: Word = s.bytes().map(|b| b - b'0').collect();
            let (u, v) = standard_factorization(&w);
            (
                u.iter().map(|c| (c + b'0') as char).collect::<String>(),
                v.iter().map(|c| (c + b'0') as char).collect::<String>(),
            )
        };
        assert_eq!(sf("01"), ("0".into(), "1".into()));
        assert_eq!(sf("001"), ("0".into(), "01".into()));
        assert_eq!(sf("0011"), ("0".into(), "011".into()));
        assert_eq!(sf("00101"), ("001".into(), "01".into()));
        assert_eq!(sf("0010011"), ("001".into(), "0011".into()));
    }

    /// Independent oracle: expand bracketed Lyndon words into the tensor
    /// algebra and compare with the rewriting.
    fn tensor_expand(fl: &FreeLie, w: &[u8]) -> BTreeMap<Word, BigInt> {
        let _ = fl;
        if w.len() == 1 {
            return [(w.to_vec(), BigInt::from(1))].into_iter().collect();
        }
        let (u, v) = standard_factorization(w);
        let a = tensor_expand(fl, &u);
        let b = tensor_expand(fl, &v);
        tensor_bracket(&a, &b)
    }

    fn tensor_bracket(
        a: &BTreeMap<Word, BigInt>,
        b: &BTreeMap<Word, BigInt>,
    ) -> BTreeMap<Word, BigInt> {
        let mut acc: BTreeMap<Word, BigInt> = BTreeMap::new();
        let mut add_term = |w: Word, c: BigInt| {
            let e = acc.entry(w).or_insert_with(BigInt::zero);
            *e += c;
        };
        for (u, x) in a {
            for (v, y) in b {
                let mut uv = u.clone();
                uv.extend_from_slice(v);
                add_term(uv, x * y);
                let mut vu = v.clone();
                vu.extend_from_slice(u);
                add_term(vu, -(x * y));
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc
    }

    #[test]
    fn rewriting_matches_tensor_expansion() {
        for (letters, max_len, max_combined) in [(2usize, 4usize, 7usize), (3, 3, 6)] {
            let mut fl = FreeLie::new();
            let words = lyndon_words_up_to(letters, max_len);
            for u in &words {
                for v in &words {
                    if u.len() + v.len() > max_combined {
                        continue;
                    }
                    let rewritten = fl.bracket_lyndon(u, v);
                    // Expand both sides into the tensor algebra.
                    let mut lhs: BTreeMap<Word, BigInt> = BTreeMap::new();
                    for (w, c) in &rewritten {
                        for (t, d) in tensor_expand(&fl, w) {
                            let e = lhs.entry(t).or_insert_with(BigInt::zero);
                            *e += c * d;
                        }
                    }
                    lhs.retain(|_, c| !c.is_zero());
                    let rhs = tensor_bracket(&tensor_expand(&fl, u), &tensor_expand(&fl, v));
                    assert_eq!(lhs, rhs, "[{:?},{:?}]", u, v);
                }
            }
        }
    }

    #[test]
    fn jacobi_in_free_algebra() {
        let mut fl = FreeLie::new();
        let words = lyndon_words_up_to(3, 3);
        let singletons: Vec<FreeVec> = words
            .iter()
            .map(|w| [(w.clone(), BigInt::from(1))].into_iter().collect())
            .collect();
        for x in &singletons {
            for y in &singletons {
                for z in &singletons {
                    let xy = fl.bracket(x, y);
                    let yz = fl.bracket(y, z);
                    let zx = fl.bracket(z, x);
                    let t1 = fl.bracket(&xy, z);
                    let t2 = fl.bracket(&yz, x);
                    let t3 = fl.bracket(&zx, y);
                    let total = add(&add(&t1, &t2), &t3);
                    assert!(total.is_empty());
                }
            }
        }
    }
}
