//! The free group on `X0`, `X1` and its evaluations into series.

use std::fmt;

use rand::Rng;

use crate::coeff::{ring_binomial, RingElement, RingSpec};
use crate::error::{Error, Result};
use crate::ncseries::{Coords, Series};
use crate::uni::UniSeries;
use crate::word::Word;

/// A reduced word, stored as syllables `(generator, exponent)` with nonzero
/// exponents and alternating generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupWord {
    syl: Vec<(u8, i64)>,
}

impl GroupWord {
    pub fn identity() -> GroupWord {
        GroupWord { syl: Vec::new() }
    }

    pub fn gen(i: u8, e: i64) -> GroupWord {
        GroupWord::from_syllables(&[(i, e)])
    }

    /// Builds and reduces a word from arbitrary syllables.
    pub fn from_syllables(s: &[(u8, i64)]) -> GroupWord {
        let mut out: Vec<(u8, i64)> = Vec::with_capacity(s.len());
        for &(g, e) in s {
            assert!(g < 2, "generator index must be 0 or 1");
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == g => {
                    last.1 += e;
                    if last.1 == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        GroupWord { syl: out }
    }

    pub fn syllables(&self) -> &[(u8, i64)] {
        &self.syl
    }

    pub fn is_identity(&self) -> bool {
        self.syl.is_empty()
    }

    /// Length in letters `X_i^{+-1}`.
    pub fn length(&self) -> u64 {
        self.syl.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    /// Exponent sum of generator `i`.
    pub fn exponent_sum(&self, i: u8) -> i64 {
        self.syl.iter().filter(|(g, _)| *g == i).map(|(_, e)| e).sum()
    }

    pub fn compose(&self, o: &GroupWord) -> GroupWord {
        let mut s = self.syl.clone();
        s.extend_from_slice(&o.syl);
        GroupWord::from_syllables(&s)
    }

    pub fn invert(&self) -> GroupWord {
        let s: Vec<(u8, i64)> = self.syl.iter().rev().map(|&(g, e)| (g, -e)).collect();
        GroupWord::from_syllables(&s)
    }

    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut acc = GroupWord::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// The endomorphism with `X_i -> images[i]`, applied to `self`.
    pub fn hom(&self, images: &(GroupWord, GroupWord)) -> GroupWord {
        let mut acc = GroupWord::identity();
        for &(g, e) in &self.syl {
            let img = if g == 0 { &images.0 } else { &images.1 };
            acc = acc.compose(&img.pow(e));
        }
        acc
    }

    /// `X0 <-> X1`.
    pub fn theta(&self) -> GroupWord {
        self.hom(&(GroupWord::gen(1, 1), GroupWord::gen(0, 1)))
    }

    /// `X0 -> X1`, `X1 -> (X0 X1)^{-1}`.
    pub fn kappa(&self) -> GroupWord {
        self.hom(&(
            GroupWord::gen(1, 1),
            GroupWord::from_syllables(&[(1, -1), (0, -1)]),
        ))
    }

    /// Magnus image `X_i -> 1 + t_i`.
    pub fn eval_magnus(&self, ring: RingSpec, n: usize) -> Series {
        let mut acc = Series::one(ring, n, Coords::MagnusT);
        for &(g, e) in &self.syl {
            acc = &acc * &generator_power(ring, n, g, e);
        }
        acc
    }

    /// Exponential image `X_i -> exp(u_i)`.
    pub fn eval_exp(&self, ring: RingSpec, n: usize) -> Result<Series> {
        ring.require_q_algebra()?;
        let mut acc = Series::one(ring, n, Coords::ExpU);
        for &(g, e) in &self.syl {
            let x = Series::generator(ring, n, Coords::ExpU, g).scale_i64(e);
            acc = &acc * &x.exp()?;
        }
        Ok(acc)
    }

    /// All reduced words of length at most `max_len`, shortest first.
    pub fn enumerate(max_len: usize) -> Vec<GroupWord> {
        let mut out = vec![GroupWord::identity()];
        let mut frontier: Vec<Vec<(u8, i64)>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for letters in &frontier {
                for (g, e) in [(0u8, 1i64), (0, -1), (1, 1), (1, -1)] {
                    if let Some(&(lg, le)) = letters.last() {
                        if lg == g && le == -e {
                            continue;
                        }
                    }
                    let mut l = letters.clone();
                    l.push((g, e));
                    out.push(GroupWord::from_syllables(&l));
                    next.push(l);
                }
            }
            frontier = next;
        }
        out
    }

    /// A random reduced word with at most `max_syllables` syllables and
    /// exponents in `[-max_exp, max_exp]`.
    pub fn random<R: Rng>(rng: &mut R, max_syllables: usize, max_exp: i64) -> GroupWord {
        let n = rng.gen_range(0..=max_syllables);
        let mut g = rng.gen_range(0..2u8);
        let mut s = Vec::with_capacity(n);
        for _ in 0..n {
            let mut e = 0;
            while e == 0 {
                e = rng.gen_range(-max_exp..=max_exp);
            }
            s.push((g, e));
            g = 1 - g;
        }
        GroupWord::from_syllables(&s)
    }

    /// Parses `X0 X1^-1 X0^2`; `1` or the empty string is the identity.
    pub fn parse(text: &str) -> std::result::Result<GroupWord, String> {
        let mut s = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| format!("bad exponent in `{tok}`"))?),
                None => (tok, 1),
            };
            let g = match base {
                "X0" => 0,
                "X1" => 1,
                _ => return Err(format!("expected X0 or X1, found `{base}`")),
            };
            s.push((g, exp));
        }
        Ok(GroupWord::from_syllables(&s))
    }
}

/// `(1 + t_g)^e` as an exact binomial expansion.
pub fn generator_power(ring: RingSpec, n: usize, g: u8, e: i64) -> Series {
    generator_power_elt(n, g, &ring.from_i64(e))
}

/// `(1 + t_g)^lambda = sum_k C(lambda, k) t_g^k` for a ring element `lambda`.
pub fn generator_power_elt(n: usize, g: u8, lambda: &RingElement) -> Series {
    let mut out = Series::zero(lambda.spec(), n, Coords::MagnusT);
    for k in 0..=n {
        out.add_term(Word::from_letters(&vec![g; k]), &ring_binomial(lambda, k as u32));
    }
    out
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syl.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syl
            .iter()
            .map(|&(g, e)| if e == 1 { format!("X{g}") } else { format!("X{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `t0 -> 0`, `t1 -> s`: the one-variable shadow of a Magnus-coordinate series.
pub fn ev_f1(a: &Series) -> Result<UniSeries> {
    a.ring().require_q_algebra()?;
    if a.coords() != Coords::MagnusT {
        return Err(Error::MixedContext("ev_F1 expects Magnus coordinates".into()));
    }
    let mut out = UniSeries::zero(a.ring(), a.trunc());
    for (w, c) in a.terms() {
        if w.count(0) == 0 {
            out.set(w.len(), c.clone());
        }
    }
    Ok(out)
}

/// Substitutes `s = e^t - 1`.
pub fn iso_to_qt(s: &UniSeries) -> Result<UniSeries> {
    let ring = s.ring();
    let n = s.trunc();
    let em1 = &UniSeries::var(ring, n).exp()? - &UniSeries::one(ring, n);
    s.compose(&em1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    const Q: RingSpec = RingSpec::Rational;

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s).unwrap()
    }

    #[test]
    fn group_law() {
        assert_eq!(w("X0 X1").compose(&w("X1^-1 X0")), w("X0^2"));
        assert_eq!(w("X0 X1").invert(), w("X1^-1 X0^-1"));
        let a = w("X0^3 X1^-2 X0");
        assert!(a.compose(&a.invert()).is_identity());
    }

    #[test]
    fn endomorphisms() {
        assert_eq!(w("X0 X1").theta(), w("X1 X0"));
        assert_eq!(w("X1").kappa(), w("X1^-1 X0^-1"));
        for g in ["X0", "X1", "X0^2 X1^-3 X0"] {
            assert_eq!(w(g).kappa().kappa().kappa(), w(g));
            assert_eq!(w(g).theta().theta(), w(g));
        }
        assert_eq!(w("X1").kappa().kappa(), w("X0"));
    }

    #[test]
    fn magnus_images() {
        assert_eq!(w("X0 X1").eval_magnus(Q, 3).to_string(), "1 + t0 + t1 + t0*t1");
        assert_eq!(w("X1^-1").eval_magnus(Q, 2).to_string(), "1 - t1 + t1*t1");
        assert_eq!(w("").eval_magnus(Q, 2).to_string(), "1");
        let a = w("X0^2 X1^-1");
        let b = w("X1 X0^-3 X1^2");
        assert_eq!(
            a.compose(&b).eval_magnus(Q, 5),
            &a.eval_magnus(Q, 5) * &b.eval_magnus(Q, 5)
        );
        assert_eq!(a.eval_magnus(Q, 5).to_u().unwrap(), a.eval_exp(Q, 5).unwrap());
        assert!(a.eval_magnus(Q, 5).is_grouplike());
        assert!(a.eval_exp(Q, 5).unwrap().is_grouplike());
    }

    #[test]
    fn one_variable_shadow() {
        let e = ev_f1(&w("X0 X1").eval_magnus(Q, 4)).unwrap();
        assert_eq!(e.to_string(), "1 + t");
        assert_eq!(iso_to_qt(&e).unwrap(), UniSeries::var(Q, 4).exp().unwrap());
        let e = ev_f1(&w("X1^-2 X0^5").eval_magnus(Q, 4)).unwrap();
        let want = UniSeries::var(Q, 4).scale(&Q.from_rational(&rat(-2, 1)).unwrap()).exp().unwrap();
        assert_eq!(iso_to_qt(&e).unwrap(), want);
    }

    #[test]
    fn enumeration_counts() {
        let all = GroupWord::enumerate(4);
        assert_eq!(all.len(), 1 + 4 * (81 - 1) / 2);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
    }

    #[test]
    fn parse_print_roundtrip() {
        for s in ["X0 X1^-1", "X1^3 X0^-2 X1", "1"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!(GroupWord::parse("X2").is_err());
        assert!(GroupWord::parse("X0^x").is_err());
    }
}
