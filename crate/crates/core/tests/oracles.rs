//! Independent reference computations: a naive word-polynomial type with its
//! own product, substitution, exp/log and binomial powers, compared against
//! the engine on seeded inputs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use dmrb::gen::{random_element, random_grouplike, rng};
use dmrb::padic::ProPElement;
use dmrb::{Coords, GroupWord, RingSpec, Series, TwistedMagnusElement, UniSeries, Word};

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Truncated polynomial in two noncommuting letters.
#[derive(Clone, Debug, PartialEq)]
struct Poly {
    n: usize,
    c: BTreeMap<Vec<u8>, Q>,
}

impl Poly {
    fn zero(n: usize) -> Poly {
        Poly { n, c: BTreeMap::new() }
    }

    fn constant(n: usize, a: Q) -> Poly {
        let mut p = Poly::zero(n);
        p.add(vec![], a);
        p
    }

    fn letter(n: usize, i: u8) -> Poly {
        let mut p = Poly::zero(n);
        p.add(vec![i], Q::one());
        p
    }

    fn add(&mut self, w: Vec<u8>, a: Q) {
        if w.len() > self.n {
            return;
        }
        let e = self.c.entry(w.clone()).or_insert_with(Q::zero);
        *e += a;
        if e.is_zero() {
            self.c.remove(&w);
        }
    }

    fn plus(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (w, a) in &o.c {
            r.add(w.clone(), a.clone());
        }
        r
    }

    fn scale(&self, a: &Q) -> Poly {
        let mut r = Poly::zero(self.n);
        for (w, b) in &self.c {
            r.add(w.clone(), b * a);
        }
        r
    }

    fn times(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.n);
        for (u, a) in &self.c {
            for (v, b) in &o.c {
                if u.len() + v.len() <= self.n {
                    let mut w = u.clone();
                    w.extend(v);
                    r.add(w, a * b);
                }
            }
        }
        r
    }

    fn constant_term(&self) -> Q {
        self.c.get(&vec![]).cloned().unwrap_or_else(Q::zero)
    }

    /// Power series `sum a_k x^k` in the augmentation part `x` of `self`.
    fn series_in(&self, coeffs: impl Fn(usize) -> Q) -> Poly {
        let x = self.plus(&Poly::constant(self.n, -self.constant_term()));
        let mut acc = Poly::zero(self.n);
        let mut pw = Poly::constant(self.n, Q::one());
        for k in 0..=self.n {
            acc = acc.plus(&pw.scale(&coeffs(k)));
            pw = pw.times(&x);
        }
        acc
    }

    /// `(1 + x)^mu`, for `self = 1 + x`.
    fn power(&self, mu: &Q) -> Poly {
        self.series_in(|k| {
            let mut b = Q::one();
            for j in 0..k {
                b = b * (mu - Q::from_integer(j.into())) / Q::from_integer((j + 1).into());
            }
            b
        })
    }

    fn inverse(&self) -> Poly {
        self.power(&q(-1, 1))
    }

    fn exp(&self) -> Poly {
        let mut fact = Q::one();
        let inv: Vec<Q> = (0..=self.n)
            .map(|k| {
                if k > 0 {
                    fact *= Q::from_integer(k.into());
                }
                Q::one() / &fact
            })
            .collect();
        self.series_in(|k| inv[k].clone())
    }

    fn subst(&self, i0: &Poly, i1: &Poly) -> Poly {
        let mut r = Poly::zero(self.n);
        for (w, a) in &self.c {
            let mut m = Poly::constant(self.n, a.clone());
            for &l in w {
                m = m.times(if l == 0 { i0 } else { i1 });
            }
            r = r.plus(&m);
        }
        r
    }

    fn from_series(s: &Series) -> Poly {
        let mut p = Poly::zero(s.trunc());
        for (w, c) in s.terms() {
            p.add(w.to_vec(), c.as_rational().expect("rational"));
        }
        p
    }

    /// Rewrites a Magnus-coordinate polynomial in `u_i` with `t_i = e^{u_i} - 1`.
    fn t_to_u(&self) -> Poly {
        let e = |i| Poly::letter(self.n, i).exp().plus(&Poly::constant(self.n, q(-1, 1)));
        self.subst(&e(0), &e(1))
    }
}

fn star(mu1: &Q, g1: &Poly, mu2: &Q, g2: &Poly) -> (Q, Poly) {
    let n = g1.n;
    let one = Poly::constant(n, Q::one());
    let x0 = one.plus(&Poly::letter(n, 0)).power(mu1);
    let x1 = one.plus(&Poly::letter(n, 1)).power(mu1);
    let i0 = g1.times(&x0).times(&g1.inverse()).plus(&Poly::constant(n, q(-1, 1)));
    let i1 = x1.plus(&Poly::constant(n, q(-1, 1)));
    (mu1 * mu2, g2.subst(&i0, &i1).times(g1))
}

#[test]
fn magnus_images_by_repeated_products() {
    let n = 5;
    let qq = RingSpec::Rational;
    let mut r = rng(21);
    for _ in 0..30 {
        let g = GroupWord::random(&mut r, 5, 3);
        let mut p = Poly::constant(n, Q::one());
        for &(i, e) in g.syllables() {
            let x = Poly::constant(n, Q::one()).plus(&Poly::letter(n, i));
            let step = if e > 0 { x } else { x.inverse() };
            for _ in 0..e.abs() {
                p = p.times(&step);
            }
        }
        assert_eq!(Poly::from_series(&g.eval_magnus(qq, n)), p, "{g}");
    }
}

#[test]
fn star_product_against_naive_formula() {
    let n = 5;
    let mut r = rng(22);
    for _ in 0..12 {
        let a = random_element(&mut r, n).unwrap();
        let b = random_element(&mut r, n).unwrap();
        let (mu, g) = star(
            &a.mu().as_rational().unwrap(),
            &Poly::from_series(a.g()),
            &b.mu().as_rational().unwrap(),
            &Poly::from_series(b.g()),
        );
        let e = a.star(&b).unwrap();
        assert_eq!(e.mu().as_rational().unwrap(), mu);
        assert_eq!(Poly::from_series(e.g()), g);
    }
}

#[test]
fn exp_coordinates_against_naive_substitution() {
    let n = 5;
    let mut r = rng(23);
    for _ in 0..10 {
        let g = random_grouplike(&mut r, RingSpec::Rational, n).unwrap();
        let via_engine = Poly::from_series(&g.to_u().unwrap());
        assert_eq!(Poly::from_series(&g).t_to_u(), via_engine);
    }
}

/// `Gamma_g = exp(sum (-1)^{k+1} (g|u0^{k-1} u1) t^k / k)` from the naive
/// change of coordinates and a hand-rolled one-variable exponential.
#[test]
fn gamma_against_naive_definition() {
    let n = 6;
    let mut r = rng(24);
    for _ in 0..8 {
        let e = random_element(&mut r, n).unwrap();
        let gu = Poly::from_series(e.g()).t_to_u();
        let mut s = vec![Q::zero(); n + 1];
        for k in 1..=n {
            let mut w = vec![0u8; k - 1];
            w.push(1);
            let c = gu.c.get(&w).cloned().unwrap_or_else(Q::zero);
            let sign = if k % 2 == 1 { Q::one() } else { -Q::one() };
            s[k] = c * sign / Q::from_integer(k.into());
        }
        // exp of a one-variable series through the recurrence E' = S' E
        let mut ex = vec![Q::zero(); n + 1];
        ex[0] = Q::one();
        for m in 1..=n {
            let mut acc = Q::zero();
            for k in 1..=m {
                acc += Q::from_integer(k.into()) * &s[k] * &ex[m - k];
            }
            ex[m] = acc / Q::from_integer(m.into());
        }
        let got = e.gamma().unwrap();
        for (k, want) in ex.iter().enumerate() {
            assert_eq!(got.coeff(k).as_rational().unwrap(), *want, "t^{k}");
        }
    }
}

/// Gamma of a word image only sees the `X1` exponent in degree 1 and the
/// ordered pairs in degree 2.
#[test]
fn gamma_of_words_low_degrees() {
    let n = 4;
    let qq = RingSpec::Rational;
    for g in GroupWord::enumerate(4) {
        let e = TwistedMagnusElement::from_word(qq.one(), &g, n).unwrap();
        let gm = e.gamma().unwrap();
        assert_eq!(gm.coeff(1).as_rational().unwrap(), Q::from_integer(g.exponent_sum(1).into()), "{g}");
    }
    let e = TwistedMagnusElement::from_word(qq.one(), &GroupWord::gen(1, 3), n).unwrap();
    let want = (&UniSeries::var(qq, n) * &UniSeries::one(qq, n).scale(&qq.from_i64(3))).exp().unwrap();
    assert_eq!(e.gamma().unwrap(), want);
}

/// The pro-p product of integral data is the reduction of the rational one.
#[test]
fn padic_star_is_reduction_of_rational_star() {
    let n = 5;
    let qq = RingSpec::Rational;
    let mut r = rng(25);
    for p in [2u64, 3, 5, 7] {
        let ring = RingSpec::padic(p, 3).unwrap();
        for _ in 0..10 {
            let mus: Vec<i64> = [1, -1, 3, 5, 7, -5].into_iter().filter(|m| m % p as i64 != 0).collect();
            let m1 = mus[(GroupWord::random(&mut r, 1, 5).length() as usize) % mus.len()];
            let m2 = mus[(GroupWord::random(&mut r, 1, 5).length() as usize) % mus.len()];
            let a = TwistedMagnusElement::from_word(qq.from_i64(m1), &GroupWord::random(&mut r, 4, 2), n).unwrap();
            let b = TwistedMagnusElement::from_word(qq.from_i64(m2), &GroupWord::random(&mut r, 4, 2), n).unwrap();
            let lhs = ProPElement::from_rational(&a.star(&b).unwrap(), ring).unwrap();
            let pa = ProPElement::from_rational(&a, ring).unwrap();
            let pb = ProPElement::from_rational(&b, ring).unwrap();
            assert_eq!(pa.star(&pb).unwrap(), lhs, "p={p} mu=({m1},{m2})");
            if m1.abs() == 1 {
                let inv = ProPElement::from_rational(&a.star_inverse().unwrap(), ring).unwrap();
                assert_eq!(pa.invert().unwrap(), inv);
            }
        }
    }
}

/// Coefficients of words in `Y_a = (1 + t0)^a t1` are read off the naive
/// binomial power of `1 + t0`.
#[test]
fn y_generators_are_binomial_columns() {
    let n = 6;
    let qq = RingSpec::Rational;
    for a in -3i64..=3 {
        let y = dmrb::hopf::y_to_series(a, qq, n);
        let col = Poly::constant(n, Q::one()).plus(&Poly::letter(n, 0)).power(&q(a, 1));
        for m in 0..n {
            let mut w = vec![0u8; m];
            let want = col.c.get(&w).cloned().unwrap_or_else(Q::zero);
            w.push(1);
            assert_eq!(y.coeff(&Word::from_letters(&w)).as_rational().unwrap(), want, "a={a} m={m}");
        }
        assert_eq!(y.coords(), Coords::MagnusT);
    }
}
