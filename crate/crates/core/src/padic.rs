//! Pro-p shadows: pairs `(lambda, f)` with `f` a truncated Magnus series over
//! `Z/p^K`, the semigroup law `(lambda1, f1) * (lambda2, f2)
//! = (lambda1 lambda2, f2(f1 X0^lambda1 f1^-1, X1^lambda1) f1)`, inversion and
//! the two relations of `F2` type.

use rand::Rng;

use crate::coeff::{ring_invert, RingElement, RingSpec};
use crate::error::{Error, Result};
use crate::freegroup::{generator_power_elt, GroupWord};
use crate::magnus::{gt_relations, gt_residuals, GtVerdict, TwistedMagnusElement};
use crate::ncseries::{Coords, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProPElement {
    lambda: RingElement,
    f: Series,
}

fn require_padic(ring: RingSpec) -> Result<(u64, u32)> {
    match ring {
        RingSpec::PAdic { p, k } => Ok((p, k)),
        other => Err(Error::RingUnsupported(format!("pro-p elements live over Z/p^K, not {other}"))),
    }
}

impl ProPElement {
    pub fn new(lambda: RingElement, f: Series) -> Result<ProPElement> {
        require_padic(f.ring())?;
        if lambda.spec() != f.ring() {
            return Err(Error::MixedContext("lambda and f live in different rings".into()));
        }
        if f.coords() != Coords::MagnusT {
            return Err(Error::MixedContext("pro-p elements use Magnus coordinates".into()));
        }
        if !f.constant_term().is_one() {
            return Err(Error::BadConstantTerm("f must have constant term 1".into()));
        }
        Ok(ProPElement { lambda, f })
    }

    pub fn identity(ring: RingSpec, n: usize) -> Result<ProPElement> {
        ProPElement::new(ring.one(), Series::one(ring, n, Coords::MagnusT))
    }

    pub fn from_word(ring: RingSpec, n: usize, lambda: i64, w: &GroupWord) -> Result<ProPElement> {
        ProPElement::new(ring.from_i64(lambda), w.eval_magnus(ring, n))
    }

    /// Image of a rational element with integral data.
    pub fn from_rational(e: &TwistedMagnusElement, ring: RingSpec) -> Result<ProPElement> {
        let conv = |c: &RingElement| -> Result<RingElement> {
            let q = c.as_rational().ok_or_else(|| Error::RingUnsupported("expected rational data".into()))?;
            ring.from_rational(&q)
        };
        let mut f = Series::zero(ring, e.trunc(), Coords::MagnusT);
        for (w, c) in e.g().terms() {
            f.add_term(*w, &conv(c)?);
        }
        ProPElement::new(conv(e.mu())?, f)
    }

    pub fn lambda(&self) -> &RingElement {
        &self.lambda
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn ring(&self) -> RingSpec {
        self.f.ring()
    }

    pub fn trunc(&self) -> usize {
        self.f.trunc()
    }

    /// Group-likeness of `f` for `t_i -> t_i (x) 1 + 1 (x) t_i + t_i (x) t_i`.
    pub fn validate(&self) -> bool {
        self.f.is_grouplike()
    }

    fn images(&self) -> Result<(Series, Series)> {
        let n = self.trunc();
        let one = self.f.one_like();
        let fi = self.f.inverse()?;
        let x0 = generator_power_elt(n, 0, &self.lambda);
        let x1 = generator_power_elt(n, 1, &self.lambda);
        Ok((&(&(&self.f * &x0) * &fi) - &one, &x1 - &one))
    }

    pub fn star(&self, o: &ProPElement) -> Result<ProPElement> {
        if self.ring() != o.ring() || self.trunc() != o.trunc() {
            return Err(Error::MixedContext("elements differ in precision or truncation".into()));
        }
        let (i0, i1) = self.images()?;
        let f = &o.f.subst(&i0, &i1)? * &self.f;
        Ok(ProPElement { lambda: &self.lambda * &o.lambda, f })
    }

    /// Two-sided inverse, degree by degree. The degree-`d` part of the image
    /// of `h` is `lambda^d h_d` plus terms fixed by lower degrees, so every
    /// step divides only by a power of the unit `lambda`.
    pub fn invert(&self) -> Result<ProPElement> {
        let li = ring_invert(&self.lambda)?;
        let (i0, i1) = self.images()?;
        let target = self.f.inverse()?;
        let mut h = self.f.one_like();
        let mut scale = self.ring().one();
        for d in 1..=self.trunc() {
            scale = &scale * &li;
            let diff = (&target - &h.subst(&i0, &i1)?).homogeneous_part(d);
            if diff.is_zero() {
                continue;
            }
            if !(&scale * &self.lambda.pow_u32(d as u32)).is_one() {
                return Err(Error::IntegralityViolation(format!("degree {d}")));
            }
            h = &h + &diff.scale(&scale);
        }
        let inv = ProPElement { lambda: li, f: h };
        let one = ProPElement::identity(self.ring(), self.trunc())?;
        if self.star(&inv)? != one {
            return Err(Error::IntegralityViolation("right inverse check failed".into()));
        }
        Ok(inv)
    }

    /// `f theta(f) = 1` and `kappa^2(f) (X0 X1)^{-m} kappa(f) X1^m f X0^m = 1`
    /// with `m = (lambda - 1)/2`; for `p = 2` this needs `lambda` odd.
    pub fn gt_relations(&self) -> Result<GtVerdict> {
        gt_relations(&self.lambda, &self.f)
    }

    pub fn gt_residuals(&self) -> Result<(Series, Series)> {
        gt_residuals(&self.lambda, &self.f)
    }

    /// The same element over `Z/p^{k2}`.
    pub fn reduce(&self, k2: u32) -> Result<ProPElement> {
        let (p, _) = require_padic(self.ring())?;
        let ring = RingSpec::padic(p, k2)?;
        Ok(ProPElement { lambda: self.lambda.reduce_precision(k2)?, f: reduce_series(&self.f, ring, k2)? })
    }
}

pub fn reduce_series(s: &Series, ring: RingSpec, k2: u32) -> Result<Series> {
    let mut out = Series::zero(ring, s.trunc(), s.coords());
    for (w, c) in s.terms() {
        out.add_term(*w, &c.reduce_precision(k2)?);
    }
    Ok(out)
}

/// `(lambda, f)` with `lambda` a random unit residue and `f` the image of a
/// random word with at most four syllables.
pub fn random_unit_element<R: Rng>(rng: &mut R, ring: RingSpec, n: usize) -> Result<ProPElement> {
    let (p, k) = require_padic(ring)?;
    let m = (p as i64).pow(k);
    let mut lambda = 0;
    while lambda % p as i64 == 0 {
        lambda = rng.gen_range(1..m);
    }
    let w = GroupWord::random(rng, 4, 3);
    ProPElement::from_word(ring, n, lambda, &w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s).unwrap()
    }

    #[test]
    fn star_examples() {
        let r = RingSpec::padic(3, 2).unwrap();
        let n = 4;
        let a = ProPElement::from_word(r, n, 2, &GroupWord::identity()).unwrap();
        let b = ProPElement::from_word(r, n, 1, &w("X1")).unwrap();
        assert_eq!(a.star(&b).unwrap(), ProPElement::from_word(r, n, 2, &w("X1^2")).unwrap());
        let c = ProPElement::from_word(r, n, 4, &GroupWord::identity()).unwrap();
        assert_eq!(a.star(&c).unwrap(), ProPElement::from_word(r, n, 8, &GroupWord::identity()).unwrap());
    }

    #[test]
    fn inverse_examples() {
        let r = RingSpec::padic(5, 3).unwrap();
        let n = 5;
        let x0 = ProPElement::from_word(r, n, 1, &w("X0")).unwrap();
        assert_eq!(x0.invert().unwrap(), ProPElement::from_word(r, n, 1, &w("X0^-1")).unwrap());
        let l = ProPElement::from_word(r, n, 7, &GroupWord::identity()).unwrap();
        let li = l.invert().unwrap();
        assert!((li.lambda() * &r.from_i64(7)).is_one());
        assert!(ProPElement::from_word(r, n, 5, &GroupWord::identity()).unwrap().invert().is_err());
    }

    #[test]
    fn relations_examples() {
        for (p, k) in [(2, 3), (3, 3), (5, 2)] {
            let r = RingSpec::padic(p, k).unwrap();
            for lambda in [1, -1] {
                let e = ProPElement::from_word(r, 5, lambda, &GroupWord::identity()).unwrap();
                assert!(e.gt_relations().unwrap().passed(), "p={p} lambda={lambda}");
            }
            let e = ProPElement::from_word(r, 5, 1, &w("X0 X1")).unwrap();
            assert!(!e.gt_relations().unwrap().duality);
        }
        let r = RingSpec::padic(2, 3).unwrap();
        let e = ProPElement::from_word(r, 4, 2, &GroupWord::identity()).unwrap();
        assert!(matches!(e.gt_relations(), Err(Error::HalfNotDefined(_))));
    }
}
