//! The Betti algebra `W` (words empty or ending in `t1`), the module `M`
//! (words ending in `t0` killed) and the harmonic coproduct on both.
//!
//! The coproduct is defined on the generators `Y_a = X0^a (X1 - 1)
//! = (1 + t0)^a t1`; a word `t0^{m_1} t1 ... t0^{m_r} t1` is a product of
//! blocks `t0^m t1 = sum_a (-1)^{m-a} C(m, a) Y_a`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::coeff::RingSpec;
use crate::error::{Error, Result};
use crate::ncseries::{Coords, Series};
use crate::tensor::TensorSeries;
use crate::word::Word;

/// Integer linear combination of word pairs.
pub type IntTensor = BTreeMap<(Word, Word), i64>;
/// Integer linear combination of words.
pub type IntSeries = BTreeMap<Word, i64>;

fn binom(n: u64, k: u64) -> i64 {
    let mut c: i128 = 1;
    for j in 0..k {
        c = c * (n - j) as i128 / (j + 1) as i128;
    }
    c as i64
}

fn add_to<K: Ord>(m: &mut BTreeMap<K, i64>, k: K, c: i64) {
    if c == 0 {
        return;
    }
    let e = m.entry(k).or_insert(0);
    *e = e.checked_add(c).expect("integer overflow in coproduct");
}

fn prune<K: Ord + Clone>(m: BTreeMap<K, i64>) -> BTreeMap<K, i64> {
    m.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// `(1 + t0)^a t1` with integer coefficients, truncated at degree `n`.
pub fn y_int(a: i64, n: usize) -> IntSeries {
    let mut out = IntSeries::new();
    for k in 0..n {
        let c = if a >= 0 {
            if k as i64 > a {
                break;
            }
            binom(a as u64, k as u64)
        } else {
            // C(a, k) = (-1)^k C(-a + k - 1, k)
            let s = if k % 2 == 0 { 1 } else { -1 };
            s * binom((-a) as u64 + k as u64 - 1, k as u64)
        };
        let mut letters = vec![0u8; k];
        letters.push(1);
        add_to(&mut out, Word::from_letters(&letters), c);
    }
    out
}

fn outer_int(a: &IntSeries, b: &IntSeries, n: usize) -> IntTensor {
    let mut out = IntTensor::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            if wa.len() + wb.len() <= n {
                add_to(&mut out, (*wa, *wb), ca * cb);
            }
        }
    }
    out
}

fn tensor_mul_int(a: &IntTensor, b: &IntTensor, n: usize) -> IntTensor {
    let mut out = IntTensor::new();
    for ((l1, r1), c1) in a {
        let used = l1.len() + r1.len();
        for ((l2, r2), c2) in b {
            if used + l2.len() + r2.len() <= n {
                let c = c1.checked_mul(*c2).expect("integer overflow in coproduct");
                add_to(&mut out, (l1.concat(l2), r1.concat(r2)), c);
            }
        }
    }
    prune(out)
}

fn unit_tensor() -> IntTensor {
    let mut t = IntTensor::new();
    t.insert((Word::EMPTY, Word::EMPTY), 1);
    t
}

fn one_int() -> IntSeries {
    let mut s = IntSeries::new();
    s.insert(Word::EMPTY, 1);
    s
}

/// `Delta(Y_a)` from the generator formulas. For `a >= 1`:
/// `Y_a (x) 1 + 1 (x) Y_a - sum_{0<a'<a} Y_a' (x) Y_{a-a'}`; for `a <= -1`:
/// `Y_a (x) X1 + X1 (x) Y_a + sum_{a<a'<0} Y_a' (x) Y_{a-a'}`; `Y_0 = t1`
/// has `X1` group-like.
pub fn coproduct_y_int(a: i64, n: usize) -> IntTensor {
    let one = one_int();
    let ya = y_int(a, n);
    let mut out = IntTensor::new();
    let add_all = |t: IntTensor, s: i64, out: &mut IntTensor| {
        for (k, c) in t {
            add_to(out, k, s * c);
        }
    };
    if a == 0 {
        add_all(outer_int(&ya, &one, n), 1, &mut out);
        add_all(outer_int(&one, &ya, n), 1, &mut out);
        add_all(outer_int(&ya, &ya, n), 1, &mut out);
    } else if a > 0 {
        add_all(outer_int(&ya, &one, n), 1, &mut out);
        add_all(outer_int(&one, &ya, n), 1, &mut out);
        for b in 1..a {
            add_all(outer_int(&y_int(b, n), &y_int(a - b, n), n), -1, &mut out);
        }
    } else {
        let mut x1 = one_int();
        x1.insert(Word::letter(1), 1);
        add_all(outer_int(&ya, &x1, n), 1, &mut out);
        add_all(outer_int(&x1, &ya, n), 1, &mut out);
        for b in (a + 1)..0 {
            add_all(outer_int(&y_int(b, n), &y_int(a - b, n), n), 1, &mut out);
        }
    }
    prune(out)
}

/// Harmonic coproduct of every word of `W` up to a fixed degree, with integer
/// coefficients.
pub struct HopfW {
    n: usize,
    words: HashMap<Word, IntTensor>,
}

impl HopfW {
    fn build(n: usize) -> HopfW {
        let blocks: Vec<IntTensor> = (0..n)
            .map(|m| {
                let mut acc = IntTensor::new();
                for a in 0..=m {
                    let s = if (m - a) % 2 == 0 { 1 } else { -1 };
                    let c = s * binom(m as u64, a as u64);
                    for (k, x) in coproduct_y_int(a as i64, n) {
                        add_to(&mut acc, k, c * x);
                    }
                }
                prune(acc)
            })
            .collect();
        let mut words = HashMap::new();
        words.insert(Word::EMPTY, unit_tensor());
        // Longer words are built from their first block and a shorter suffix.
        for len in 1..=n {
            for w in Word::all_of_len(len) {
                if w.last() != Some(1) {
                    continue;
                }
                let m = (0..w.len()).take_while(|&i| w.at(i) == 0).count();
                let (_, rest) = w.split_at(m + 1);
                let t = tensor_mul_int(&blocks[m], &words[&rest], n);
                words.insert(w, t);
            }
        }
        HopfW { n, words }
    }

    pub fn trunc(&self) -> usize {
        self.n
    }

    /// `Delta(w)` for a word of `W`.
    pub fn word(&self, w: &Word) -> &IntTensor {
        &self.words[w]
    }

    /// Applies the coproduct to a series of `W` (any ring, truncation `<= n`).
    pub fn apply(&self, v: &Series) -> Result<TensorSeries> {
        if v.coords() != Coords::MagnusT {
            return Err(Error::MixedContext("the harmonic coproduct needs Magnus coordinates".into()));
        }
        if v.trunc() > self.n {
            return Err(Error::Config("coproduct cache too small".into()));
        }
        let n = v.trunc();
        let mut out = TensorSeries::zero(v.ring(), n, Coords::MagnusT);
        for (w, c) in v.terms() {
            if !(w.is_empty() || w.last() == Some(1)) {
                return Err(Error::NotInW(format!("word {w} ends in t0")));
            }
            for ((l, r), k) in &self.words[w] {
                if l.len() + r.len() <= n {
                    out.add_term(*l, *r, &c.scale_i64(*k));
                }
            }
        }
        Ok(out)
    }
}

impl HopfW {
    /// Words of `W` on which `(Delta x id) Delta` and `(id x Delta) Delta` differ.
    pub fn coassociativity_defects(&self) -> Vec<Word> {
        let n = self.n;
        let mut bad = Vec::new();
        for (w, t) in &self.words {
            let mut left: BTreeMap<(Word, Word, Word), i64> = BTreeMap::new();
            let mut right = BTreeMap::new();
            for ((l, r), c) in t {
                for ((a, b), d) in &self.words[l] {
                    if a.len() + b.len() + r.len() <= n {
                        add_to(&mut left, (*a, *b, *r), c * d);
                    }
                }
                for ((a, b), d) in &self.words[r] {
                    if l.len() + a.len() + b.len() <= n {
                        add_to(&mut right, (*l, *a, *b), c * d);
                    }
                }
            }
            if prune(left) != prune(right) {
                bad.push(*w);
            }
        }
        bad.sort();
        bad
    }

    /// Pairs of words of `W` with `Delta(ab) != Delta(a) Delta(b)` at truncation.
    pub fn multiplicativity_defects(&self) -> Vec<(Word, Word)> {
        let mut bad = Vec::new();
        for a in self.words.keys() {
            for b in self.words.keys() {
                if a.len() + b.len() > self.n {
                    continue;
                }
                let prod = tensor_mul_int(&self.words[a], &self.words[b], self.n);
                if prune(prod) != prune(self.words[&a.concat(b)].clone()) {
                    bad.push((*a, *b));
                }
            }
        }
        bad.sort();
        bad
    }
}

/// Shared coproduct table for truncation `n`.
pub fn hopf_w(n: usize) -> Arc<HopfW> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<HopfW>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard.entry(n).or_insert_with(|| Arc::new(HopfW::build(n))).clone()
}

/// Class in `M`: deletes the words ending in `t0`.
pub fn project_m(v: &Series) -> Result<Series> {
    if v.coords() != Coords::MagnusT {
        return Err(Error::MixedContext("project_M needs Magnus coordinates".into()));
    }
    let mut out = v.zero_like();
    for (w, c) in v.terms() {
        if w.last() != Some(0) {
            out.add_term(*w, c);
        }
    }
    Ok(out)
}

pub fn w_membership(v: &Series) -> bool {
    v.coords() == Coords::MagnusT && v.terms().all(|(w, _)| w.last() != Some(0))
}

/// Rewrites `t0^{m_1} t1 ... t0^{m_r} t1` as a combination of products
/// `Y_{a_1} ... Y_{a_r}`, keyed by the index sequence.
pub fn blocks_to_y(w: &Word) -> Result<BTreeMap<Vec<u32>, i64>> {
    if w.last() == Some(0) {
        return Err(Error::NotInW(format!("word {w} ends in t0")));
    }
    let mut blocks = Vec::new();
    let mut m = 0u32;
    for l in w.letters() {
        if l == 0 {
            m += 1;
        } else {
            blocks.push(m);
            m = 0;
        }
    }
    let mut out: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    out.insert(Vec::new(), 1);
    for m in blocks {
        let mut next = BTreeMap::new();
        for (seq, c) in &out {
            for a in 0..=m {
                let s = if (m - a) % 2 == 0 { 1 } else { -1 };
                let mut seq2 = seq.clone();
                seq2.push(a);
                add_to(&mut next, seq2, c * s * binom(m as u64, a as u64));
            }
        }
        out = prune(next);
    }
    Ok(out)
}

fn int_to_series(s: &IntSeries, ring: RingSpec, n: usize) -> Series {
    let mut out = Series::zero(ring, n, Coords::MagnusT);
    for (w, c) in s {
        out.add_term(*w, &ring.from_i64(*c));
    }
    out
}

pub fn int_tensor_to_series(t: &IntTensor, ring: RingSpec, n: usize) -> TensorSeries {
    let mut out = TensorSeries::zero(ring, n, Coords::MagnusT);
    for ((l, r), c) in t {
        out.add_term(*l, *r, &ring.from_i64(*c));
    }
    out
}

/// `Y_a = (1 + t0)^a t1`, any integer `a` (with `Y_0 = t1`).
pub fn y_to_series(a: i64, ring: RingSpec, n: usize) -> Series {
    int_to_series(&y_int(a, n), ring, n)
}

/// Harmonic coproduct on `W`.
pub fn coproduct_w(w: &Series) -> Result<TensorSeries> {
    hopf_w(w.trunc()).apply(w)
}

/// Coproduct on `M`, computed through the `W` section and projected.
pub fn coproduct_m(m: &Series) -> Result<TensorSeries> {
    let d = coproduct_w(m)?;
    Ok(d.filter(|l, r| l.last() != Some(0) && r.last() != Some(0)))
}

pub fn grouplike_m(m: &Series) -> Result<bool> {
    if !m.constant_term().is_one() {
        return Ok(false);
    }
    Ok(coproduct_m(m)? == TensorSeries::outer(m, m, m.trunc()))
}

pub fn primitive_m(m: &Series) -> Result<bool> {
    if !m.constant_term().is_zero() {
        return Ok(false);
    }
    let one = m.one_like();
    let want = &TensorSeries::outer(m, &one, m.trunc()) + &TensorSeries::outer(&one, m, m.trunc());
    Ok(coproduct_m(m)? == want)
}

/// Applies a linear map to both tensor factors of `t`, given the images of
/// single words through `f`.
pub fn map_both(t: &TensorSeries, template: &Series, f: &dyn Fn(&Series) -> Series) -> TensorSeries {
    let mut left = |w: Word| {
        let mut s = template.zero_like();
        s.add_term(w, &template.ring().one());
        f(&s)
    };
    let mut right = |s: &Series| f(s);
    t.map_factors(&mut left, &mut right, template)
}
