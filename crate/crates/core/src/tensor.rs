//! Truncated series in two tensor factors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::coeff::{RingElement, RingSpec};
use crate::error::{Error, Result};
use crate::ncseries::{Coords, Series};
use crate::word::Word;

/// Coefficients indexed by pairs of words, truncated at total bidegree `trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSeries {
    ring: RingSpec,
    trunc: usize,
    coords: Coords,
    coeffs: BTreeMap<(Word, Word), RingElement>,
}

impl TensorSeries {
    pub fn zero(ring: RingSpec, trunc: usize, coords: Coords) -> TensorSeries {
        TensorSeries { ring, trunc, coords, coeffs: BTreeMap::new() }
    }

    pub fn coords(&self) -> Coords {
        self.coords
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &RingElement)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, l: Word, r: Word) -> RingElement {
        self.coeffs.get(&(l, r)).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn add_term(&mut self, l: Word, r: Word, c: &RingElement) {
        if l.len() + r.len() > self.trunc || c.is_zero() {
            return;
        }
        let key = (l, r);
        match self.coeffs.get_mut(&key) {
            Some(x) => {
                let s = &*x + c;
                if s.is_zero() {
                    self.coeffs.remove(&key);
                } else {
                    *x = s;
                }
            }
            None => {
                self.coeffs.insert(key, c.clone());
            }
        }
    }

    /// `a (x) b` truncated at total degree `n`.
    pub fn outer(a: &Series, b: &Series, n: usize) -> TensorSeries {
        let mut out = TensorSeries::zero(a.ring(), n, a.coords());
        let rhs: Vec<(&Word, &RingElement)> = b.terms().collect();
        for (wa, ca) in a.terms() {
            if wa.len() > n {
                break;
            }
            for (wb, cb) in &rhs {
                if wa.len() + wb.len() > n {
                    break;
                }
                out.add_term(*wa, **wb, &(ca * *cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &RingElement) -> TensorSeries {
        let mut out = TensorSeries::zero(self.ring, self.trunc, self.coords);
        for ((l, r), x) in &self.coeffs {
            out.add_term(*l, *r, &(x * c));
        }
        out
    }

    pub fn truncated(&self, n: usize) -> TensorSeries {
        TensorSeries {
            ring: self.ring,
            trunc: n,
            coords: self.coords,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((l, r), _)| l.len() + r.len() <= n)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn check_compatible(&self, o: &TensorSeries) -> Result<()> {
        if self.ring == o.ring && self.trunc == o.trunc && self.coords == o.coords {
            Ok(())
        } else {
            Err(Error::MixedContext("tensor operands differ in ring or truncation".into()))
        }
    }

    pub fn try_mul(&self, o: &TensorSeries) -> Result<TensorSeries> {
        self.check_compatible(o)?;
        Ok(self * o)
    }

    /// Applies the linear maps `f` and `g` to the two factors:
    /// `sum c (f(l) (x) g(r))`. Terms are grouped by left word so each left
    /// image is paired with a single accumulated right image.
    pub fn map_factors(
        &self,
        f: &mut dyn FnMut(Word) -> Series,
        g: &mut dyn FnMut(&Series) -> Series,
        template: &Series,
    ) -> TensorSeries {
        let mut out = TensorSeries::zero(self.ring, self.trunc, self.coords);
        let mut by_left: BTreeMap<Word, Series> = BTreeMap::new();
        for ((l, r), c) in &self.coeffs {
            by_left
                .entry(*l)
                .or_insert_with(|| template.zero_like())
                .add_term(*r, c);
        }
        for (l, right) in by_left {
            let fl = f(l);
            let gr = g(&right);
            out = &out + &TensorSeries::outer(&fl, &gr, self.trunc);
        }
        out
    }

    /// Keeps only the terms whose factors satisfy `keep`.
    pub fn filter(&self, keep: impl Fn(&Word, &Word) -> bool) -> TensorSeries {
        TensorSeries {
            ring: self.ring,
            trunc: self.trunc,
            coords: self.coords,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((l, r), _)| keep(l, r))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Exchanges the factors.
    pub fn flip(&self) -> TensorSeries {
        let mut out = TensorSeries::zero(self.ring, self.trunc, self.coords);
        for ((l, r), c) in &self.coeffs {
            out.add_term(*r, *l, c);
        }
        out
    }
}

fn combine(a: &TensorSeries, b: &TensorSeries, neg: bool) -> TensorSeries {
    assert!(
        a.ring == b.ring && a.trunc == b.trunc && a.coords == b.coords,
        "tensor arithmetic across contexts"
    );
    let mut out = a.clone();
    for ((l, r), c) in &b.coeffs {
        if neg {
            out.add_term(*l, *r, &-c);
        } else {
            out.add_term(*l, *r, c);
        }
    }
    out
}

impl Add for &TensorSeries {
    type Output = TensorSeries;
    fn add(self, o: &TensorSeries) -> TensorSeries {
        combine(self, o, false)
    }
}

impl Sub for &TensorSeries {
    type Output = TensorSeries;
    fn sub(self, o: &TensorSeries) -> TensorSeries {
        combine(self, o, true)
    }
}

impl Mul for &TensorSeries {
    type Output = TensorSeries;
    fn mul(self, o: &TensorSeries) -> TensorSeries {
        assert!(self.ring == o.ring && self.trunc == o.trunc, "tensor product across contexts");
        let n = self.trunc;
        let mut acc: BTreeMap<(Word, Word), RingElement> = BTreeMap::new();
        let rhs: Vec<(&(Word, Word), &RingElement)> = o.coeffs.iter().collect();
        for ((l1, r1), c1) in &self.coeffs {
            let used = l1.len() + r1.len();
            for ((l2, r2), c2) in &rhs {
                if used + l2.len() + r2.len() > n {
                    continue;
                }
                let p = c1 * *c2;
                let key = (l1.concat(l2), r1.concat(r2));
                match acc.get_mut(&key) {
                    Some(x) => *x = &*x + &p,
                    None => {
                        acc.insert(key, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TensorSeries { ring: self.ring, trunc: n, coords: self.coords, coeffs: acc }
    }
}

fn render(w: &Word, names: [&str; 2]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.render(names)
    }
}

impl TensorSeries {
    /// Text form with the given generator names on both factors.
    pub fn render(&self, names: [&str; 2]) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, ((l, r), c)) in self.coeffs.iter().enumerate() {
            let mut s = c.to_string();
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if s != "1" {
                out.push_str(&s);
                out.push('*');
            }
            out.push_str(&format!("{} (x) {}", render(l, names), render(r, names)));
        }
        out
    }
}

impl fmt::Display for TensorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(self.coords.names()))
    }
}
