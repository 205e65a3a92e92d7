//! Truncated non-commutative power series in two generators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::{ring_binomial, ring_invert, RingElement, RingSpec};
use crate::error::{Error, Result};
use crate::tensor::TensorSeries;
use crate::word::{Word, MAX_LEN};

/// Coordinate system of a series: `X_i = 1 + t_i` or `X_i = exp(u_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coords {
    MagnusT,
    ExpU,
}

impl Coords {
    pub fn names(&self) -> [&'static str; 2] {
        match self {
            Coords::MagnusT => ["t0", "t1"],
            Coords::ExpU => ["u0", "u1"],
        }
    }
}

/// Generator rule of a coproduct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoproductStyle {
    /// `t_i -> t_i (x) 1 + 1 (x) t_i + t_i (x) t_i`
    GroupLikeGens,
    /// `u_i -> u_i (x) 1 + 1 (x) u_i`
    PrimitiveGens,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    ring: RingSpec,
    trunc: usize,
    coords: Coords,
    coeffs: BTreeMap<Word, RingElement>,
}

/// Truncation degrees supported by the word encoding.
pub fn check_trunc(n: usize) -> Result<()> {
    if n == 0 || n > MAX_LEN / 2 {
        Err(Error::Config(format!("truncation degree {n} out of range")))
    } else {
        Ok(())
    }
}

impl Series {
    pub fn zero(ring: RingSpec, trunc: usize, coords: Coords) -> Series {
        Series { ring, trunc, coords, coeffs: BTreeMap::new() }
    }

    pub fn one(ring: RingSpec, trunc: usize, coords: Coords) -> Series {
        Series::monomial(ring, trunc, coords, Word::EMPTY, ring.one())
    }

    pub fn monomial(
        ring: RingSpec,
        trunc: usize,
        coords: Coords,
        w: Word,
        c: RingElement,
    ) -> Series {
        let mut s = Series::zero(ring, trunc, coords);
        s.add_term(w, &c);
        s
    }

    /// The generator `t_i` or `u_i`.
    pub fn generator(ring: RingSpec, trunc: usize, coords: Coords, i: u8) -> Series {
        Series::monomial(ring, trunc, coords, Word::letter(i), ring.one())
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coords(&self) -> Coords {
        self.coords
    }

    /// Zero series in the same context.
    pub fn zero_like(&self) -> Series {
        Series::zero(self.ring, self.trunc, self.coords)
    }

    pub fn one_like(&self) -> Series {
        Series::one(self.ring, self.trunc, self.coords)
    }

    pub fn scalar_like(&self, c: RingElement) -> Series {
        Series::monomial(self.ring, self.trunc, self.coords, Word::EMPTY, c)
    }

    pub fn gen_like(&self, i: u8) -> Series {
        Series::generator(self.ring, self.trunc, self.coords, i)
    }

    pub fn coeff(&self, w: &Word) -> RingElement {
        self.coeffs.get(w).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RingElement)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c * w`; words beyond the truncation are ignored.
    pub fn add_term(&mut self, w: Word, c: &RingElement) {
        if w.len() > self.trunc || c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&w) {
            Some(x) => {
                let s = &*x + c;
                if s.is_zero() {
                    self.coeffs.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.coeffs.insert(w, c.clone());
            }
        }
    }

    pub fn constant_term(&self) -> RingElement {
        self.coeff(&Word::EMPTY)
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.keys().next().map(|w| w.len())
    }

    /// Keeps degrees `<= n` and sets the truncation to `n`.
    pub fn truncated(&self, n: usize) -> Series {
        Series {
            ring: self.ring,
            trunc: n,
            coords: self.coords,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| w.len() <= n)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }

    /// Reinterprets the stored coefficients at another truncation. Raising
    /// the truncation is only meaningful for series that are exact
    /// polynomials.
    pub fn retruncate(&self, n: usize) -> Series {
        self.truncated(n)
    }

    pub fn homogeneous_part(&self, d: usize) -> Series {
        Series {
            ring: self.ring,
            trunc: self.trunc,
            coords: self.coords,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }

    pub fn same_context(&self, o: &Series) -> bool {
        self.ring == o.ring && self.trunc == o.trunc && self.coords == o.coords
    }

    pub fn check_compatible(&self, o: &Series) -> Result<()> {
        if self.same_context(o) {
            Ok(())
        } else {
            Err(Error::MixedContext(format!(
                "({}, N={}, {:?}) vs ({}, N={}, {:?})",
                self.ring, self.trunc, self.coords, o.ring, o.trunc, o.coords
            )))
        }
    }

    pub fn scale(&self, c: &RingElement) -> Series {
        let mut out = self.zero_like();
        if c.is_zero() {
            return out;
        }
        for (w, x) in &self.coeffs {
            out.add_term(*w, &(x * c));
        }
        out
    }

    pub fn scale_i64(&self, n: i64) -> Series {
        self.scale(&self.ring.from_i64(n))
    }

    /// Applies `f` to every coefficient, landing in `ring`.
    pub fn map_coeffs(&self, ring: RingSpec, f: impl Fn(&RingElement) -> RingElement) -> Series {
        let mut out = Series::zero(ring, self.trunc, self.coords);
        for (w, c) in &self.coeffs {
            out.add_term(*w, &f(c));
        }
        out
    }

    /// Product keeping degrees `<= n` (`n` at most the truncation).
    pub fn mul_trunc(&self, o: &Series, n: usize) -> Series {
        let n = n.min(self.trunc);
        let mut acc: Vec<Option<RingElement>> = vec![None; Word::count_up_to(n)];
        let rhs: Vec<(&Word, &RingElement)> = o.coeffs.iter().collect();
        for (wa, ca) in &self.coeffs {
            if wa.len() > n {
                break;
            }
            let room = n - wa.len();
            for (wb, cb) in &rhs {
                if wb.len() > room {
                    break;
                }
                let w = wa.concat(wb);
                let p = ca * *cb;
                let slot = &mut acc[w.index()];
                *slot = Some(match slot.take() {
                    Some(x) => &x + &p,
                    None => p,
                });
            }
        }
        let mut out = self.zero_like();
        for (i, c) in acc.into_iter().enumerate() {
            if let Some(c) = c {
                if !c.is_zero() {
                    out.coeffs.insert(Word::from_index(i), c);
                }
            }
        }
        out
    }

    pub fn try_mul(&self, o: &Series) -> Result<Series> {
        self.check_compatible(o)?;
        Ok(self.mul_trunc(o, self.trunc))
    }

    pub fn try_add(&self, o: &Series) -> Result<Series> {
        self.check_compatible(o)?;
        Ok(self + o)
    }

    pub fn pow_usize(&self, k: usize) -> Series {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Lie bracket `ab - ba`.
    pub fn bracket(&self, o: &Series) -> Series {
        &(self * o) - &(o * self)
    }

    fn require_constant(&self, want: i64, what: &str) -> Result<()> {
        if self.constant_term() != self.ring.from_i64(want) {
            return Err(Error::BadConstantTerm(format!(
                "{what} needs constant term {want}, got {}",
                self.constant_term()
            )));
        }
        Ok(())
    }

    pub fn exp(&self) -> Result<Series> {
        self.ring.require_q_algebra()?;
        self.require_constant(0, "exp")?;
        let mut term = self.one_like();
        let mut sum = self.one_like();
        for k in 1..=self.trunc {
            term = (&term * self).scale(&ring_invert(&self.ring.from_i64(k as i64))?);
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        Ok(sum)
    }

    pub fn log(&self) -> Result<Series> {
        self.ring.require_q_algebra()?;
        self.require_constant(1, "log")?;
        let x = self - &self.one_like();
        let mut power = self.one_like();
        let mut sum = self.zero_like();
        for k in 1..=self.trunc {
            power = &power * &x;
            if power.is_zero() {
                break;
            }
            let c = self.ring.from_i64(if k % 2 == 1 { 1 } else { -1 }).div_i64(k as i64)?;
            sum = &sum + &power.scale(&c);
        }
        Ok(sum)
    }

    /// `g^mu = sum_k C(mu, k) (g - 1)^k`; over Q-algebras this is
    /// `exp(mu log g)`.
    pub fn pow(&self, mu: &RingElement) -> Result<Series> {
        if mu.spec() != self.ring {
            return Err(Error::MixedContext("exponent ring differs".into()));
        }
        self.require_constant(1, "power")?;
        let x = self - &self.one_like();
        let mut power = self.one_like();
        let mut sum = self.one_like();
        for k in 1..=self.trunc {
            power = &power * &x;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power.scale(&ring_binomial(mu, k as u32));
        }
        Ok(sum)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Series> {
        let c = ring_invert(&self.constant_term())?;
        let y = &self.scale(&c) - &self.one_like();
        let neg = -&y;
        let mut power = self.one_like();
        let mut sum = self.one_like();
        for _ in 1..=self.trunc {
            power = &power * &neg;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(&c))
    }

    /// The algebra map sending generator `i` to `img_i`, applied to `self`.
    /// The result carries the coordinate tag of the images.
    pub fn subst(&self, img0: &Series, img1: &Series) -> Result<Series> {
        img0.check_compatible(img1)?;
        if img0.ring != self.ring || img0.trunc != self.trunc {
            return Err(Error::MixedContext("substitution images in another ring".into()));
        }
        for img in [img0, img1] {
            if !img.constant_term().is_zero() {
                return Err(Error::NonpositiveValuation(format!("{img}")));
            }
        }
        let terms: Vec<(Word, RingElement)> =
            self.coeffs.iter().map(|(w, c)| (*w, c.clone())).collect();
        Ok(subst_rec(&terms, img0, img1, self.trunc))
    }

    /// `t_i = exp(u_i) - 1`.
    pub fn to_u(&self) -> Result<Series> {
        self.ring.require_q_algebra()?;
        if self.coords == Coords::ExpU {
            return Ok(self.clone());
        }
        let u = Series::zero(self.ring, self.trunc, Coords::ExpU);
        let img = |i: u8| -> Result<Series> { Ok(&u.gen_like(i).exp()? - &u.one_like()) };
        self.subst(&img(0)?, &img(1)?)
    }

    /// `u_i = log(1 + t_i)`.
    pub fn to_t(&self) -> Result<Series> {
        self.ring.require_q_algebra()?;
        if self.coords == Coords::MagnusT {
            return Ok(self.clone());
        }
        let t = Series::zero(self.ring, self.trunc, Coords::MagnusT);
        let img = |i: u8| -> Result<Series> { (&t.one_like() + &t.gen_like(i)).log() };
        self.subst(&img(0)?, &img(1)?)
    }

    pub fn to_coords(&self, c: Coords) -> Result<Series> {
        match c {
            Coords::MagnusT => self.to_t(),
            Coords::ExpU => self.to_u(),
        }
    }

    pub fn style(&self) -> CoproductStyle {
        match self.coords {
            Coords::MagnusT => CoproductStyle::GroupLikeGens,
            Coords::ExpU => CoproductStyle::PrimitiveGens,
        }
    }

    /// Coproduct for which the generators are group-like (Magnus coordinates)
    /// or primitive (exponential coordinates).
    pub fn coproduct(&self) -> TensorSeries {
        let style = self.style();
        let mut out = TensorSeries::zero(self.ring, self.trunc, self.coords);
        for (w, c) in &self.coeffs {
            for (pair, n) in word_coproduct(*w, style, self.trunc) {
                out.add_term(pair.0, pair.1, &c.scale_i64(n));
            }
        }
        out
    }

    pub fn coproduct_with(&self, style: CoproductStyle) -> Result<TensorSeries> {
        if style != self.style() {
            return Err(Error::MixedContext(format!(
                "{style:?} coproduct on {:?} coordinates",
                self.coords
            )));
        }
        Ok(self.coproduct())
    }

    pub fn is_grouplike(&self) -> bool {
        self.constant_term().is_one()
            && self.coproduct() == TensorSeries::outer(self, self, self.trunc)
    }

    pub fn is_primitive(&self) -> bool {
        if !self.constant_term().is_zero() {
            return false;
        }
        let one = self.one_like();
        let want = &TensorSeries::outer(self, &one, self.trunc)
            + &TensorSeries::outer(&one, self, self.trunc);
        self.coproduct() == want
    }

    /// `(g|w)` in the requested basis.
    pub fn coeff_extract(&self, w: &Word, basis: Coords) -> Result<RingElement> {
        if basis == self.coords {
            Ok(self.coeff(w))
        } else {
            Ok(self.to_coords(basis)?.coeff(w))
        }
    }

    /// Degree-`<= n` parts agree.
    pub fn agrees_to(&self, o: &Series, n: usize) -> bool {
        self.ring == o.ring && self.coords == o.coords && self.truncated(n).coeffs == o.truncated(n).coeffs
    }
}

fn subst_rec(terms: &[(Word, RingElement)], img0: &Series, img1: &Series, n: usize) -> Series {
    let mut out = img0.zero_like();
    let mut children: [Vec<(Word, RingElement)>; 2] = [Vec::new(), Vec::new()];
    for (w, c) in terms {
        if w.len() > n {
            continue;
        }
        match w.first() {
            None => out.add_term(Word::EMPTY, c),
            Some(l) => children[l as usize].push((w.tail(), c.clone())),
        }
    }
    if n == 0 {
        return out;
    }
    for (l, img) in [img0, img1].into_iter().enumerate() {
        if children[l].is_empty() {
            continue;
        }
        let inner = subst_rec(&children[l], img0, img1, n - 1);
        out = &out + &img.mul_trunc(&inner, n);
    }
    out
}

/// Coproduct of a single word, as integer multiplicities of word pairs.
pub fn word_coproduct(w: Word, style: CoproductStyle, n: usize) -> BTreeMap<(Word, Word), i64> {
    let mut out = BTreeMap::new();
    fn rec(
        w: &Word,
        i: usize,
        l: Word,
        r: Word,
        style: CoproductStyle,
        n: usize,
        out: &mut BTreeMap<(Word, Word), i64>,
    ) {
        if l.len() + r.len() > n {
            return;
        }
        if i == w.len() {
            *out.entry((l, r)).or_insert(0) += 1;
            return;
        }
        let x = w.at(i);
        rec(w, i + 1, l.push(x), r, style, n, out);
        rec(w, i + 1, l, r.push(x), style, n, out);
        if style == CoproductStyle::GroupLikeGens {
            rec(w, i + 1, l.push(x), r.push(x), style, n, out);
        }
    }
    rec(&w, 0, Word::EMPTY, Word::EMPTY, style, n, &mut out);
    out
}

fn combine(a: &Series, b: &Series, neg: bool) -> Series {
    assert!(a.same_context(b), "series arithmetic across contexts");
    let mut out = a.clone();
    for (w, c) in &b.coeffs {
        if neg {
            out.add_term(*w, &-c);
        } else {
            out.add_term(*w, c);
        }
    }
    out
}

impl Add for &Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        combine(self, o, false)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        combine(self, o, true)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        assert!(self.same_context(o), "series product across contexts");
        self.mul_trunc(o, self.trunc)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&self.ring.from_i64(-1))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let names = self.coords.names();
        let mut first = true;
        for (w, c) in &self.coeffs {
            let mut s = c.to_string();
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
            if w.is_empty() {
                write!(f, "{s}")?;
            } else if s == "1" {
                write!(f, "{}", w.render(names))?;
            } else {
                write!(f, "{s}*{}", w.render(names))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    const Q: RingSpec = RingSpec::Rational;

    fn t(n: usize) -> [Series; 2] {
        [
            Series::generator(Q, n, Coords::MagnusT, 0),
            Series::generator(Q, n, Coords::MagnusT, 1),
        ]
    }

    fn u(n: usize) -> [Series; 2] {
        [
            Series::generator(Q, n, Coords::ExpU, 0),
            Series::generator(Q, n, Coords::ExpU, 1),
        ]
    }

    fn rat(n: i64, d: i64) -> RingElement {
        RingElement::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn products() {
        let [t0, t1] = t(4);
        let one = t0.one_like();
        let p = &(&one + &t0) * &(&one + &t1);
        assert_eq!(p.to_string(), "1 + t0 + t1 + t0*t1");
        let sq = (&one + &t1).pow_usize(2);
        assert_eq!(sq.to_string(), "1 + 2*t1 + t1*t1");
        assert_eq!(&p * &one, p);
    }

    #[test]
    fn exp_log() {
        let [t0, t1] = t(3);
        let one = t0.one_like();
        let l = (&one + &t1).log().unwrap();
        assert_eq!(l.to_string(), "t1 - 1/2*t1*t1 + 1/3*t1*t1*t1");
        assert_eq!(t0.zero_like().exp().unwrap(), one);
        let [t0, t1] = t(4);
        let g = &(&t0.one_like() + &t0) + &t1;
        assert_eq!(g.log().unwrap().exp().unwrap(), g);
        assert!(t0.log().is_err());
        assert!(g.exp().is_err());
    }

    #[test]
    fn powers() {
        let [_, t1] = t(2);
        let g = &t1.one_like() + &t1;
        assert_eq!(g.pow(&rat(2, 1)).unwrap().to_string(), "1 + 2*t1 + t1*t1");
        assert_eq!(g.pow(&rat(0, 1)).unwrap(), g.one_like());
        let h = g.pow(&rat(1, 2)).unwrap();
        assert_eq!(h.to_string(), "1 + 1/2*t1 - 1/8*t1*t1");
        assert_eq!(&h * &h, g);
    }

    #[test]
    fn substitution() {
        let [t0, t1] = t(3);
        let a = &t0 * &t1;
        assert_eq!(a.subst(&t1, &t0).unwrap(), &t1 * &t0);
        let img0 = &t0 + &(&t0 * &t1);
        assert_eq!(t0.subst(&img0, &t1).unwrap(), img0);
        assert!(t0.subst(&t0.one_like(), &t1).is_err());
    }

    #[test]
    fn coordinates() {
        let [_, t1] = t(3);
        assert_eq!(t1.to_u().unwrap().to_string(), "u1 + 1/2*u1*u1 + 1/6*u1*u1*u1");
        let [u0, _] = u(3);
        assert_eq!(u0.to_t().unwrap().to_string(), "t0 - 1/2*t0*t0 + 1/3*t0*t0*t0");
    }

    #[test]
    fn coproducts() {
        let [t0, _] = t(3);
        assert_eq!(
            t0.coproduct().to_string(),
            "1 (x) t0 + t0 (x) 1 + t0 (x) t0"
        );
        let [u0, u1] = u(3);
        let d = (&u0 * &u1).coproduct();
        assert_eq!(
            d.to_string(),
            "1 (x) u0*u1 + u0 (x) u1 + u1 (x) u0 + u0*u1 (x) 1"
        );
        assert_eq!(u0.one_like().coproduct().to_string(), "1 (x) 1");
        let [_, t1] = t(4);
        assert!((&t1.one_like() + &t1).is_grouplike());
        assert!(u0.is_primitive());
        assert!(!(&u0.one_like() + &u0).is_grouplike());
        assert!(t1.coproduct_with(CoproductStyle::PrimitiveGens).is_err());
    }

    #[test]
    fn extraction() {
        let [t0, t1] = t(4);
        let one = t0.one_like();
        let x1 = &one + &t1;
        assert_eq!(x1.coeff_extract(&Word::letter(1), Coords::ExpU).unwrap(), rat(1, 1));
        let x0x1 = &(&one + &t0) * &x1;
        let w = Word::from_letters(&[0, 1]);
        assert_eq!(x0x1.coeff_extract(&w, Coords::ExpU).unwrap(), rat(1, 1));
        assert!(one.coeff_extract(&w, Coords::ExpU).unwrap().is_zero());
    }

    #[test]
    fn mixed_contexts_rejected() {
        let [t0, _] = t(3);
        let [u0, _] = u(3);
        assert!(matches!(t0.try_mul(&u0), Err(Error::MixedContext(_))));
        let [s0, _] = t(4);
        assert!(t0.try_add(&s0).is_err());
    }
}
