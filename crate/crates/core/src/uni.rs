//! Truncated power series in one variable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::{ring_invert, RingElement, RingSpec};
use crate::error::{Error, Result};
use crate::ncseries::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniSeries {
    ring: RingSpec,
    /// Coefficients of `t^0 .. t^trunc`.
    c: Vec<RingElement>,
}

impl UniSeries {
    pub fn zero(ring: RingSpec, trunc: usize) -> UniSeries {
        UniSeries { ring, c: vec![ring.zero(); trunc + 1] }
    }

    pub fn one(ring: RingSpec, trunc: usize) -> UniSeries {
        let mut s = UniSeries::zero(ring, trunc);
        s.c[0] = ring.one();
        s
    }

    /// The variable `t`.
    pub fn var(ring: RingSpec, trunc: usize) -> UniSeries {
        let mut s = UniSeries::zero(ring, trunc);
        if trunc >= 1 {
            s.c[1] = ring.one();
        }
        s
    }

    pub fn from_coeffs(ring: RingSpec, trunc: usize, coeffs: &[RingElement]) -> UniSeries {
        let mut s = UniSeries::zero(ring, trunc);
        for (i, x) in coeffs.iter().enumerate().take(trunc + 1) {
            s.c[i] = x.clone();
        }
        s
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn trunc(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, i: usize) -> RingElement {
        self.c.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.c
    }

    pub fn set(&mut self, i: usize, x: RingElement) {
        if i < self.c.len() {
            self.c[i] = x;
        }
    }

    pub fn scale(&self, x: &RingElement) -> UniSeries {
        UniSeries { ring: self.ring, c: self.c.iter().map(|a| a * x).collect() }
    }

    /// `f(-t)`.
    pub fn reflect(&self) -> UniSeries {
        UniSeries {
            ring: self.ring,
            c: self
                .c
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a } else { a.clone() })
                .collect(),
        }
    }

    /// `f(lambda t)`.
    pub fn dilate(&self, lambda: &RingElement) -> UniSeries {
        let mut p = self.ring.one();
        let mut c = Vec::with_capacity(self.c.len());
        for a in &self.c {
            c.push(a * &p);
            p = &p * lambda;
        }
        UniSeries { ring: self.ring, c }
    }

    pub fn exp(&self) -> Result<UniSeries> {
        self.ring.require_q_algebra()?;
        if !self.c[0].is_zero() {
            return Err(Error::BadConstantTerm("exp needs constant term 0".into()));
        }
        let n = self.trunc();
        let mut term = UniSeries::one(self.ring, n);
        let mut sum = term.clone();
        for k in 1..=n {
            term = (&term * self).scale(&ring_invert(&self.ring.from_i64(k as i64))?);
            sum = &sum + &term;
        }
        Ok(sum)
    }

    pub fn log(&self) -> Result<UniSeries> {
        self.ring.require_q_algebra()?;
        if !self.c[0].is_one() {
            return Err(Error::BadConstantTerm("log needs constant term 1".into()));
        }
        let n = self.trunc();
        let x = self - &UniSeries::one(self.ring, n);
        let mut power = UniSeries::one(self.ring, n);
        let mut sum = UniSeries::zero(self.ring, n);
        for k in 1..=n {
            power = &power * &x;
            let s = if k % 2 == 1 { 1 } else { -1 };
            sum = &sum + &power.scale(&self.ring.from_i64(s).div_i64(k as i64)?);
        }
        Ok(sum)
    }

    pub fn inverse(&self) -> Result<UniSeries> {
        let a0 = ring_invert(&self.c[0])?;
        let n = self.trunc();
        let mut out = UniSeries::zero(self.ring, n);
        out.c[0] = a0.clone();
        for k in 1..=n {
            let mut s = self.ring.zero();
            for j in 1..=k {
                s = &s + &(&self.c[j] * &out.c[k - j]);
            }
            out.c[k] = -&(&s * &a0);
        }
        Ok(out)
    }

    /// `sum c_k x^k` with `x` a series without constant term.
    pub fn eval_at(&self, x: &Series) -> Result<Series> {
        if !x.constant_term().is_zero() {
            return Err(Error::NonpositiveValuation(format!("{x}")));
        }
        if x.ring() != self.ring {
            return Err(Error::MixedContext("evaluation point in another ring".into()));
        }
        let mut acc = x.zero_like();
        for a in self.c.iter().take(x.trunc() + 1).rev() {
            acc = &(&acc * x) + &x.scalar_like(a.clone());
        }
        Ok(acc)
    }

    /// `self(x(t))` with `x` without constant term.
    pub fn compose(&self, x: &UniSeries) -> Result<UniSeries> {
        if !x.c[0].is_zero() {
            return Err(Error::NonpositiveValuation("inner series has a constant term".into()));
        }
        let n = self.trunc().min(x.trunc());
        let mut acc = UniSeries::zero(self.ring, n);
        let x = x.truncated(n);
        for a in self.c.iter().take(n + 1).rev() {
            acc = &acc * &x;
            acc.c[0] = &acc.c[0] + a;
        }
        Ok(acc)
    }

    pub fn truncated(&self, n: usize) -> UniSeries {
        let mut s = UniSeries::zero(self.ring, n);
        for i in 0..=n.min(self.trunc()) {
            s.c[i] = self.c[i].clone();
        }
        s
    }
}

fn zip(a: &UniSeries, b: &UniSeries, f: impl Fn(&RingElement, &RingElement) -> RingElement) -> UniSeries {
    assert_eq!(a.ring, b.ring, "one-variable series across rings");
    let n = a.trunc().min(b.trunc());
    UniSeries { ring: a.ring, c: (0..=n).map(|i| f(&a.c[i], &b.c[i])).collect() }
}

impl Add for &UniSeries {
    type Output = UniSeries;
    fn add(self, o: &UniSeries) -> UniSeries {
        zip(self, o, |x, y| x + y)
    }
}

impl Sub for &UniSeries {
    type Output = UniSeries;
    fn sub(self, o: &UniSeries) -> UniSeries {
        zip(self, o, |x, y| x - y)
    }
}

impl Neg for &UniSeries {
    type Output = UniSeries;
    fn neg(self) -> UniSeries {
        UniSeries { ring: self.ring, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Mul for &UniSeries {
    type Output = UniSeries;
    fn mul(self, o: &UniSeries) -> UniSeries {
        assert_eq!(self.ring, o.ring, "one-variable series across rings");
        let n = self.trunc().min(o.trunc());
        let mut out = UniSeries::zero(self.ring, n);
        for i in 0..=n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                out.c[i + j] = &out.c[i + j] + &(&self.c[i] * &o.c[j]);
            }
        }
        out
    }
}

impl fmt::Display for UniSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut s = a.to_string();
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            match (i, s.as_str()) {
                (0, _) => write!(f, "{s}")?,
                (1, "1") => write!(f, "t")?,
                (1, _) => write!(f, "{s}*t")?,
                (_, "1") => write!(f, "t^{i}")?,
                _ => write!(f, "{s}*t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_log_inverse() {
        let q = RingSpec::Rational;
        let t = UniSeries::var(q, 5);
        let e = t.exp().unwrap();
        assert_eq!(e.log().unwrap(), t);
        assert_eq!(&e * &e.inverse().unwrap(), UniSeries::one(q, 5));
        assert_eq!(&e * &t.reflect().exp().unwrap(), UniSeries::one(q, 5));
        assert_eq!(e.to_string(), "1 + t + 1/2*t^2 + 1/6*t^3 + 1/24*t^4 + 1/120*t^5");
    }

    #[test]
    fn composition() {
        let q = RingSpec::Rational;
        let t = UniSeries::var(q, 6);
        let em1 = &t.exp().unwrap() - &UniSeries::one(q, 6);
        let l = (&UniSeries::one(q, 6) + &t).log().unwrap();
        assert_eq!(l.compose(&em1).unwrap(), t);
    }
}
