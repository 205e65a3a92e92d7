//! Exact linear algebra over Q: incremental row reduction, null spaces and
//! span membership.

use num_rational::BigRational;
use num_traits::{One, Zero};

type Q = BigRational;

/// Rows in reduced echelon form, added one at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    /// `(pivot column, row)` with the pivot entry equal to 1 and every other
    /// row vanishing in that column.
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon { ncols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn reduce(&self, v: &mut [Q]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
    }

    /// Adds a row; returns whether the rank grew.
    pub fn push(&mut self, mut v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.ncols);
        if self.rows.len() == self.ncols {
            return false;
        }
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Q::one() / &v[p];
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(Zero::is_zero)
    }

    /// Basis of the solutions of `row . v = 0` for all rows, one vector per
    /// free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut pivot_of = vec![None; self.ncols];
        for (i, (p, _)) in self.rows.iter().enumerate() {
            pivot_of[*p] = Some(i);
        }
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if pivot_of[f].is_some() {
                continue;
            }
            let mut v = vec![Q::zero(); self.ncols];
            v[f] = Q::one();
            for (p, row) in &self.rows {
                v[*p] = -row[f].clone();
            }
            out.push(v);
        }
        out
    }
}

pub fn rank(vectors: &[Vec<Q>], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.push(v.clone());
    }
    e.rank()
}

/// Same span: equal rank and each set lies in the span of the other.
pub fn same_span(a: &[Vec<Q>], b: &[Vec<Q>], ncols: usize) -> bool {
    let span = |vs: &[Vec<Q>]| {
        let mut e = Echelon::new(ncols);
        for v in vs {
            e.push(v.clone());
        }
        e
    };
    let (ea, eb) = (span(a), span(b));
    ea.rank() == eb.rank() && a.iter().all(|v| eb.contains(v)) && b.iter().all(|v| ea.contains(v))
}
