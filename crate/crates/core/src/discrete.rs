//! The discrete Betti algebra: rational combinations of monomials
//! `X1^{b0} Y_{a1} X1^{b1} ... Y_{an} X1^{bn}` with `a_i != 0`, where
//! `Y_a = X0^a (X1 - 1)`. The W-degree of a monomial is the number of `Y`s.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::coeff::{rat, RingSpec};
use crate::error::{Error, Result};
use crate::freegroup::{generator_power, GroupWord};
use crate::hopf::{grouplike_m, project_m, y_to_series};
use crate::ncseries::{Coords, Series};
use crate::tensor::TensorSeries;

type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    b0: i64,
    ys: Vec<(i64, i64)>,
}

impl Mono {
    pub fn x1(b: i64) -> Mono {
        Mono { b0: b, ys: Vec::new() }
    }

    pub fn y(a: i64) -> Mono {
        assert!(a != 0, "Y_0 is not a generator");
        Mono { b0: 0, ys: vec![(a, 0)] }
    }

    pub fn new(b0: i64, ys: Vec<(i64, i64)>) -> Mono {
        assert!(ys.iter().all(|(a, _)| *a != 0), "Y indices must be nonzero");
        Mono { b0, ys }
    }

    pub fn degree(&self) -> usize {
        self.ys.len()
    }

    pub fn b0(&self) -> i64 {
        self.b0
    }

    pub fn y_indices(&self) -> Vec<i64> {
        self.ys.iter().map(|(a, _)| *a).collect()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = self.clone();
        match m.ys.last_mut() {
            Some(last) => last.1 += o.b0,
            None => m.b0 += o.b0,
        }
        m.ys.extend_from_slice(&o.ys);
        m
    }

    fn to_series(&self, ring: RingSpec, n: usize) -> Series {
        let mut acc = generator_power(ring, n, 1, self.b0);
        for &(a, b) in &self.ys {
            acc = &acc * &y_to_series(a, ring, n);
            acc = &acc * &generator_power(ring, n, 1, b);
        }
        acc
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let x1 = |b: i64| if b == 1 { "X1".to_string() } else { format!("X1^{b}") };
        if self.b0 != 0 {
            parts.push(x1(self.b0));
        }
        for &(a, b) in &self.ys {
            parts.push(format!("Y({a})"));
            if b != 0 {
                parts.push(x1(b));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

fn add_q<K: Ord>(m: &mut BTreeMap<K, Q>, k: K, c: &Q) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(k).or_insert_with(Q::zero);
    *e += c;
}

fn clean<K: Ord>(m: BTreeMap<K, Q>) -> BTreeMap<K, Q> {
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn fmt_terms<K: Ord>(f: &mut fmt::Formatter<'_>, m: &BTreeMap<K, Q>, show: impl Fn(&K) -> String) -> fmt::Result {
    if m.is_empty() {
        return write!(f, "0");
    }
    for (i, (k, c)) in m.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        let body = show(k);
        let body = if a.is_one() {
            body
        } else if body == "1" {
            a.to_string()
        } else {
            format!("{a}*{body}")
        };
        match (i, neg) {
            (0, true) => write!(f, "-{body}")?,
            (0, false) => write!(f, "{body}")?,
            (_, true) => write!(f, " - {body}")?,
            (_, false) => write!(f, " + {body}")?,
        }
    }
    Ok(())
}

/// An element of the discrete algebra in the `Y`/`X1` presentation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiscreteW {
    terms: BTreeMap<Mono, Q>,
}

/// An element of the tensor square of the discrete algebra.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiscreteTensor {
    terms: BTreeMap<(Mono, Mono), Q>,
}

/// An element of the rational group algebra of `F2`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiscreteGA {
    terms: BTreeMap<GroupWord, Q>,
}

impl DiscreteW {
    pub fn zero() -> DiscreteW {
        DiscreteW::default()
    }

    pub fn one() -> DiscreteW {
        DiscreteW::mono(Mono::x1(0))
    }

    pub fn mono(m: Mono) -> DiscreteW {
        let mut d = DiscreteW::zero();
        d.terms.insert(m, Q::one());
        d
    }

    pub fn x1(b: i64) -> DiscreteW {
        DiscreteW::mono(Mono::x1(b))
    }

    /// `Y_a`; for `a = 0` this is `X1 - 1`.
    pub fn y(a: i64) -> DiscreteW {
        if a == 0 {
            &DiscreteW::x1(1) - &DiscreteW::one()
        } else {
            DiscreteW::mono(Mono::y(a))
        }
    }

    /// `phi_b(X1) = (X1^b - 1)/(X1 - 1)`.
    pub fn phi(b: i64) -> DiscreteW {
        let mut d = DiscreteW::zero();
        if b > 0 {
            for j in 0..b {
                d.add_term(Mono::x1(j), &Q::one());
            }
        } else {
            for j in b..0 {
                d.add_term(Mono::x1(j), &-Q::one());
            }
        }
        d
    }

    pub fn add_term(&mut self, m: Mono, c: &Q) {
        add_q(&mut self.terms, m, c);
        self.terms = clean(std::mem::take(&mut self.terms));
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> DiscreteW {
        DiscreteW { terms: clean(self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect()) }
    }

    /// Largest W-degree present, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// Projection onto W-degree `n`.
    pub fn pr(&self, n: usize) -> DiscreteW {
        DiscreteW {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == n).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Value of the counit: the sum of the pure `X1`-power coefficients.
    pub fn counit(&self) -> Q {
        self.terms.iter().filter(|(m, _)| m.degree() == 0).map(|(_, c)| c.clone()).sum()
    }

    /// Left multiplication by `X0^a`; the input must have counit zero so
    /// that the product stays in the algebra.
    pub fn left_x0(&self, a: i64) -> Result<DiscreteW> {
        if !self.counit().is_zero() {
            return Err(Error::NotInW("X0-multiple of an element with nonzero counit".into()));
        }
        if a == 0 {
            return Ok(self.clone());
        }
        let mut out = DiscreteW::zero();
        for (m, c) in &self.terms {
            if m.ys.is_empty() {
                // the X0^a part cancels against the other pure terms
                out = &out + &(&DiscreteW::y(a) * &DiscreteW::phi(m.b0)).scale(c);
                continue;
            }
            let rest = Mono { b0: 0, ys: m.ys.clone() };
            if m.b0 != 0 {
                let yp = &DiscreteW::y(a) * &DiscreteW::phi(m.b0);
                out = &out + &(&yp * &DiscreteW::mono(rest.clone())).scale(c);
            }
            out = &out + &left_x0_mono(a, &rest).scale(c);
        }
        Ok(out)
    }

    pub fn delta_exact(&self) -> DiscreteTensor {
        self.delta(false)
    }

    /// The top-degree shadow of the coproduct.
    pub fn delta_mod(&self) -> DiscreteTensor {
        self.delta(true)
    }

    fn delta(&self, top: bool) -> DiscreteTensor {
        let mut out = DiscreteTensor::default();
        for (m, c) in &self.terms {
            let mut acc = DiscreteTensor::x1(m.b0);
            for &(a, b) in &m.ys {
                acc = &acc * &delta_y(a, top);
                acc = &acc * &DiscreteTensor::x1(b);
            }
            out = &out + &acc.scale(c);
        }
        out
    }

    /// Magnus-coordinate series image at truncation `n`.
    pub fn to_series(&self, ring: RingSpec, n: usize) -> Result<Series> {
        let mut out = Series::zero(ring, n, Coords::MagnusT);
        for (m, c) in &self.terms {
            out = &out + &m.to_series(ring, n).scale(&ring.from_rational(c)?);
        }
        Ok(out)
    }

    /// A random element with at most `terms` monomials of W-degree at most
    /// `max_deg`, exponents and indices in `[-e, e]`, small integer coefficients.
    pub fn random<R: Rng>(rng: &mut R, max_deg: usize, terms: usize, e: i64) -> DiscreteW {
        let mut d = DiscreteW::zero();
        for _ in 0..terms {
            let deg = rng.gen_range(0..=max_deg);
            let b0 = rng.gen_range(-e..=e);
            let ys = (0..deg)
                .map(|_| {
                    let mut a = 0;
                    while a == 0 {
                        a = rng.gen_range(-e..=e);
                    }
                    (a, rng.gen_range(-e..=e))
                })
                .collect();
            let c = rng.gen_range(-3i64..=3);
            d.add_term(Mono { b0, ys }, &rat(c, 1));
        }
        d
    }
}

fn left_x0_mono(a: i64, m: &Mono) -> DiscreteW {
    debug_assert!(m.b0 == 0 && !m.ys.is_empty());
    let (a1, b1) = m.ys[0];
    if a + a1 != 0 {
        let mut ys = m.ys.clone();
        ys[0].0 = a + a1;
        return DiscreteW::mono(Mono { b0: 0, ys });
    }
    // X0^a Y_{-a} = X1 - 1
    let rest = DiscreteW::mono(Mono { b0: b1, ys: m.ys[1..].to_vec() });
    &DiscreteW::y(0) * &rest
}

fn delta_y(a: i64, top: bool) -> DiscreteTensor {
    let mut t = DiscreteTensor::default();
    let one = Mono::x1(0);
    if a > 0 {
        if !top {
            t.add_term(Mono::y(a), one.clone(), &Q::one());
            t.add_term(one, Mono::y(a), &Q::one());
        }
        for b in 1..a {
            t.add_term(Mono::y(b), Mono::y(a - b), &-Q::one());
        }
    } else {
        if !top {
            t.add_term(Mono::y(a), Mono::x1(1), &Q::one());
            t.add_term(Mono::x1(1), Mono::y(a), &Q::one());
        }
        for b in (a + 1)..0 {
            t.add_term(Mono::y(b), Mono::y(a - b), &Q::one());
        }
    }
    t
}

impl DiscreteTensor {
    pub fn x1(b: i64) -> DiscreteTensor {
        let mut t = DiscreteTensor::default();
        t.add_term(Mono::x1(b), Mono::x1(b), &Q::one());
        t
    }

    pub fn outer(a: &DiscreteW, b: &DiscreteW) -> DiscreteTensor {
        let mut t = DiscreteTensor::default();
        for (l, x) in &a.terms {
            for (r, y) in &b.terms {
                add_q(&mut t.terms, (l.clone(), r.clone()), &(x * y));
            }
        }
        t.terms = clean(t.terms);
        t
    }

    pub fn add_term(&mut self, l: Mono, r: Mono, c: &Q) {
        add_q(&mut self.terms, (l, r), c);
        self.terms = clean(std::mem::take(&mut self.terms));
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Mono, Mono), &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> DiscreteTensor {
        DiscreteTensor { terms: clean(self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect()) }
    }

    /// `pr_n (x) pr_n`.
    pub fn pr(&self, n: usize) -> DiscreteTensor {
        DiscreteTensor {
            terms: self
                .terms
                .iter()
                .filter(|((l, r), _)| l.degree() == n && r.degree() == n)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_series(&self, ring: RingSpec, n: usize) -> Result<TensorSeries> {
        let mut out = TensorSeries::zero(ring, n, Coords::MagnusT);
        let mut cache: BTreeMap<Mono, Series> = BTreeMap::new();
        let mut get = |m: &Mono| cache.entry(m.clone()).or_insert_with(|| m.to_series(ring, n)).clone();
        for ((l, r), c) in &self.terms {
            let t = TensorSeries::outer(&get(l), &get(r), n);
            out = &out + &t.scale(&ring.from_rational(c)?);
        }
        Ok(out)
    }
}

impl DiscreteGA {
    pub fn zero() -> DiscreteGA {
        DiscreteGA::default()
    }

    pub fn word(g: GroupWord) -> DiscreteGA {
        let mut d = DiscreteGA::zero();
        d.add_term(g, &Q::one());
        d
    }

    pub fn add_term(&mut self, g: GroupWord, c: &Q) {
        add_q(&mut self.terms, g, c);
        self.terms = clean(std::mem::take(&mut self.terms));
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, &Q)> {
        self.terms.iter()
    }

    pub fn to_series(&self, ring: RingSpec, n: usize) -> Result<Series> {
        let mut out = Series::zero(ring, n, Coords::MagnusT);
        for (g, c) in &self.terms {
            out = &out + &g.eval_magnus(ring, n).scale(&ring.from_rational(c)?);
        }
        Ok(out)
    }

    /// The element `w` of the discrete algebra with `v . 1_B = w . 1_B`:
    /// each word is telescoped over its `X1` syllables, and `X0` syllables
    /// act through the `Y` presentation.
    pub fn module_class(&self) -> Result<DiscreteW> {
        let mut out = DiscreteW::zero();
        for (g, c) in &self.terms {
            let syl = g.syllables();
            let mut w = DiscreteW::one();
            for (i, &(gen, b)) in syl.iter().enumerate() {
                if gen != 1 {
                    continue;
                }
                let mut d = &DiscreteW::x1(b) - &DiscreteW::one();
                for &(h, e) in syl[..i].iter().rev() {
                    d = if h == 1 { &DiscreteW::x1(e) * &d } else { d.left_x0(e)? };
                }
                w = &w + &d;
            }
            out = &out + &w.scale(c);
        }
        Ok(out)
    }
}

/// Splits `g = X1^alpha h X0^beta` with `h` empty or starting in `X0` and
/// ending in `X1`.
pub fn strip_z2(g: &GroupWord) -> (i64, GroupWord, i64) {
    let mut s = g.syllables().to_vec();
    let mut alpha = 0;
    let mut beta = 0;
    if let Some(&(1, e)) = s.first() {
        alpha = e;
        s.remove(0);
    }
    if let Some(&(0, e)) = s.last() {
        beta = e;
        s.pop();
    }
    (alpha, GroupWord::from_syllables(&s), beta)
}

/// The pairs `(a_i, b_i)` of `g = X0^{a1} X1^{b1} ... X0^{an} X1^{bn}`.
pub fn stratum(g: &GroupWord) -> Result<Vec<(i64, i64)>> {
    let s = g.syllables();
    if s.len() % 2 == 1 || s.first().is_some_and(|&(h, _)| h != 0) {
        return Err(Error::NotStratified(g.to_string()));
    }
    Ok(s.chunks(2).map(|p| (p[0].1, p[1].1)).collect())
}

/// `w(g) = 1 + sum_i X0^{a1} X1^{b1} ... X0^{ai} (X1^{bi} - 1)`.
pub fn w_of_g(g: &GroupWord) -> Result<DiscreteGA> {
    let pairs = stratum(g)?;
    let mut out = DiscreteGA::word(GroupWord::identity());
    let mut prefix: Vec<(u8, i64)> = Vec::new();
    for (a, b) in pairs {
        prefix.push((0, a));
        let p = GroupWord::from_syllables(&prefix);
        prefix.push((1, b));
        out.add_term(GroupWord::from_syllables(&prefix), &Q::one());
        out.add_term(p, &-Q::one());
    }
    Ok(out)
}

/// Top W-degree part of `w(g)`: `Y_{a1} phi_{b1}(X1) ... Y_{an} phi_{bn}(X1)`.
pub fn pr_n_of_w(g: &GroupWord) -> Result<DiscreteW> {
    let mut acc = DiscreteW::one();
    for (a, b) in stratum(g)? {
        acc = &(&acc * &DiscreteW::y(a)) * &DiscreteW::phi(b);
    }
    Ok(acc)
}

/// Decides whether `g . 1_B` is group-like: strip the `Z^2` action, then
/// compare the top-degree coproduct of `pr_n(w(h))` with its square.
pub fn grouplike_m_discrete(g: &GroupWord) -> bool {
    let (_, h, _) = strip_z2(g);
    if h.is_identity() {
        return true;
    }
    let p = pr_n_of_w(&h).expect("stripped words are stratified");
    p.delta_mod() == DiscreteTensor::outer(&p, &p)
}

/// The same question answered on truncated series.
pub fn grouplike_m_series(g: &GroupWord, n: usize) -> Result<bool> {
    grouplike_m(&project_m(&g.eval_magnus(RingSpec::Rational, n))?)
}

macro_rules! ring_ops {
    ($t:ty) => {
        impl std::ops::Add for &$t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                let mut terms = self.terms.clone();
                for (k, c) in &o.terms {
                    add_q(&mut terms, k.clone(), c);
                }
                <$t>::from_terms(clean(terms))
            }
        }

        impl std::ops::Sub for &$t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                let mut terms = self.terms.clone();
                for (k, c) in &o.terms {
                    add_q(&mut terms, k.clone(), &-c);
                }
                <$t>::from_terms(clean(terms))
            }
        }
    };
}

impl DiscreteW {
    fn from_terms(terms: BTreeMap<Mono, Q>) -> DiscreteW {
        DiscreteW { terms }
    }
}

impl DiscreteTensor {
    fn from_terms(terms: BTreeMap<(Mono, Mono), Q>) -> DiscreteTensor {
        DiscreteTensor { terms }
    }
}

impl DiscreteGA {
    fn from_terms(terms: BTreeMap<GroupWord, Q>) -> DiscreteGA {
        DiscreteGA { terms }
    }
}

ring_ops!(DiscreteW);
ring_ops!(DiscreteTensor);
ring_ops!(DiscreteGA);

impl std::ops::Mul for &DiscreteW {
    type Output = DiscreteW;
    fn mul(self, o: &DiscreteW) -> DiscreteW {
        let mut terms = BTreeMap::new();
        for (l, x) in &self.terms {
            for (r, y) in &o.terms {
                add_q(&mut terms, l.mul(r), &(x * y));
            }
        }
        DiscreteW { terms: clean(terms) }
    }
}

impl std::ops::Mul for &DiscreteTensor {
    type Output = DiscreteTensor;
    fn mul(self, o: &DiscreteTensor) -> DiscreteTensor {
        let mut terms = BTreeMap::new();
        for ((l1, r1), x) in &self.terms {
            for ((l2, r2), y) in &o.terms {
                add_q(&mut terms, (l1.mul(l2), r1.mul(r2)), &(x * y));
            }
        }
        DiscreteTensor { terms: clean(terms) }
    }
}

impl fmt::Display for DiscreteW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.terms, |m| m.to_string())
    }
}

impl fmt::Display for DiscreteTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.terms, |(l, r)| format!("{l} (x) {r}"))
    }
}

impl fmt::Display for DiscreteGA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.terms, |g| g.to_string())
    }
}
