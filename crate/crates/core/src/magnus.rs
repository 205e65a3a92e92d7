//! The twisted Magnus group: pairs `(mu, g)` with `g` group-like, the law
//! `(mu, g) * (mu', g') = (mu mu', aut_(mu,g)(g') g)`, the Gamma cocycle and
//! the membership predicates built on them.

use std::collections::BTreeMap;

use crate::coeff::{ring_invert, RingElement, RingSpec};
use crate::error::{Error, Result};
use crate::freegroup::{generator_power_elt, GroupWord};
use crate::hopf::{coproduct_m, coproduct_w, grouplike_m, project_m};
use crate::ncseries::{Coords, Series};
use crate::tensor::TensorSeries;
use crate::uni::UniSeries;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedMagnusElement {
    mu: RingElement,
    g: Series,
}

/// Which characterization of the double shuffle group to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DmrMethod {
    /// Quadratic conditions and stabilizer of the module coproduct.
    StabDef,
    /// Quadratic conditions and group-likeness of the twisted image of `1_B`.
    GrouplikeDef,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GtVerdict {
    pub duality: bool,
    pub kappa: bool,
}

impl GtVerdict {
    pub fn passed(&self) -> bool {
        self.duality && self.kappa
    }
}

/// Outcome of the reflection identity for Gamma. The identity is only
/// meaningful for members of the double shuffle group, so membership is
/// reported alongside.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReflectionVerdict {
    pub identity_holds: bool,
    pub dmr_member: bool,
}

impl ReflectionVerdict {
    pub fn passed(&self) -> bool {
        self.identity_holds && self.dmr_member
    }
}

/// Images of the generators and the cocycle, computed once per element.
struct Action {
    img0: Series,
    img1: Series,
    c: Option<(Series, Series)>,
    g: Series,
}

impl Action {
    fn aut(&self, a: &Series) -> Result<Series> {
        a.subst(&self.img0, &self.img1)
    }

    fn cocycle(&self) -> Result<&(Series, Series)> {
        self.c.as_ref().ok_or_else(|| Error::RingUnsupported("Gamma needs a Q-algebra".into()))
    }

    fn gamma_w(&self, w: &Series) -> Result<Series> {
        let (c, ci) = self.cocycle()?;
        Ok(&(c * &self.aut(w)?) * ci)
    }

    fn gamma_m(&self, m: &Series) -> Result<Series> {
        let (c, _) = self.cocycle()?;
        project_m(&(&(c * &self.aut(m)?) * &self.g))
    }
}

impl TwistedMagnusElement {
    /// `mu` must be a unit and `g` have constant term 1. Exponential
    /// coordinates are converted to Magnus coordinates.
    pub fn new(mu: RingElement, g: Series) -> Result<TwistedMagnusElement> {
        if mu.spec() != g.ring() {
            return Err(Error::MixedContext("mu and g live in different rings".into()));
        }
        ring_invert(&mu)?;
        let g = g.to_coords_if_needed()?;
        if !g.constant_term().is_one() {
            return Err(Error::BadConstantTerm("g must have constant term 1".into()));
        }
        Ok(TwistedMagnusElement { mu, g })
    }

    pub fn identity(ring: RingSpec, n: usize) -> TwistedMagnusElement {
        TwistedMagnusElement { mu: ring.one(), g: Series::one(ring, n, Coords::MagnusT) }
    }

    pub fn from_word(mu: RingElement, w: &GroupWord, n: usize) -> Result<TwistedMagnusElement> {
        let g = w.eval_magnus(mu.spec(), n);
        TwistedMagnusElement::new(mu, g)
    }

    pub fn mu(&self) -> &RingElement {
        &self.mu
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn ring(&self) -> RingSpec {
        self.g.ring()
    }

    pub fn trunc(&self) -> usize {
        self.g.trunc()
    }

    /// True when `g` is group-like.
    pub fn validate(&self) -> bool {
        self.g.is_grouplike()
    }

    /// The same element in exponential coordinates.
    pub fn exp_view(&self) -> Result<(RingElement, Series)> {
        Ok((self.mu.clone(), self.g.to_u()?))
    }

    pub fn from_exp_view(mu: RingElement, g: &Series) -> Result<TwistedMagnusElement> {
        TwistedMagnusElement::new(mu, g.to_t()?)
    }

    /// Generator images of `aut^(1)`: `g X0^mu g^-1 - 1` and `X1^mu - 1`.
    pub fn aut_images(&self) -> Result<(Series, Series)> {
        let n = self.trunc();
        let one = self.g.one_like();
        let x0 = generator_power_elt(n, 0, &self.mu);
        let x1 = generator_power_elt(n, 1, &self.mu);
        let gi = self.g.inverse()?;
        let img0 = &(&(&self.g * &x0) * &gi) - &one;
        let img1 = &x1 - &one;
        Ok((img0, img1))
    }

    fn action(&self, with_cocycle: bool) -> Result<Action> {
        let (img0, img1) = self.aut_images()?;
        let c = if with_cocycle {
            let c = self.cocycle()?;
            let ci = c.inverse()?;
            Some((c, ci))
        } else {
            None
        };
        Ok(Action { img0, img1, c, g: self.g.clone() })
    }

    fn check_series(&self, a: &Series) -> Result<()> {
        if a.ring() != self.ring() || a.trunc() != self.trunc() {
            return Err(Error::MixedContext("series and element differ in ring or truncation".into()));
        }
        Ok(())
    }

    /// The algebra automorphism `X0 -> g X0^mu g^-1`, `X1 -> X1^mu`.
    pub fn aut_v1(&self, a: &Series) -> Result<Series> {
        self.check_series(a)?;
        let (i0, i1) = self.aut_images()?;
        let t = a.to_coords_if_needed()?;
        let out = t.subst(&i0, &i1)?;
        out.to_coords(a.coords())
    }

    /// `aut^(1)(a) g`.
    pub fn aut_v10(&self, a: &Series) -> Result<Series> {
        let out = self.aut_v1(a)?;
        let g = self.g.to_coords(a.coords())?;
        Ok(&out * &g)
    }

    pub fn star(&self, o: &TwistedMagnusElement) -> Result<TwistedMagnusElement> {
        if self.ring() != o.ring() || self.trunc() != o.trunc() {
            return Err(Error::MixedContext("elements differ in ring or truncation".into()));
        }
        let g = self.aut_v10(&o.g)?;
        Ok(TwistedMagnusElement { mu: &self.mu * &o.mu, g })
    }

    /// Two-sided inverse, solved degree by degree from
    /// `aut^(1)(h) = g^{-1}`: the degree-`d` part of `aut^(1)(h)` is
    /// `mu^d h_d` plus terms fixed by lower degrees.
    pub fn star_inverse(&self) -> Result<TwistedMagnusElement> {
        let mu_inv = ring_invert(&self.mu)?;
        let (i0, i1) = self.aut_images()?;
        let target = self.g.inverse()?;
        let mut h = self.g.one_like();
        let mut scale = self.ring().one();
        for d in 1..=self.trunc() {
            scale = &scale * &mu_inv;
            let r = h.subst(&i0, &i1)?;
            let diff = (&target - &r).homogeneous_part(d);
            if diff.is_zero() {
                continue;
            }
            if !(&scale * &self.mu.pow_u32(d as u32)).is_one() {
                return Err(Error::IntegralityViolation(format!("degree {d}")));
            }
            h = &h + &diff.scale(&scale);
        }
        Ok(TwistedMagnusElement { mu: mu_inv, g: h })
    }

    /// `Gamma_g(t) = exp(sum_n (-1)^{n+1} (g|u0^{n-1} u1) t^n / n)`.
    pub fn gamma(&self) -> Result<UniSeries> {
        self.ring().require_q_algebra()?;
        let gu = self.g.to_u()?;
        let n = self.trunc();
        let mut s = UniSeries::zero(self.ring(), n);
        for k in 1..=n {
            let mut letters = vec![0u8; k - 1];
            letters.push(1);
            let c = gu.coeff(&Word::from_letters(&letters));
            let sign = if k % 2 == 1 { 1 } else { -1 };
            s.set(k, c.scale_i64(sign).div_i64(k as i64)?);
        }
        s.exp()
    }

    /// `Gamma_g^{-1}(-log X1)`, a series in `t1` alone.
    pub fn cocycle(&self) -> Result<Series> {
        let gi = self.gamma()?.inverse()?;
        let t1 = self.g.gen_like(1);
        let x = -&(&self.g.one_like() + &t1).log()?;
        gi.eval_at(&x)
    }

    /// Twisted action on `W`: `Ad_c o aut^(1)`.
    pub fn gamma_aut_w(&self, w: &Series) -> Result<Series> {
        self.check_series(w)?;
        require_w(w)?;
        self.action(true)?.gamma_w(w)
    }

    /// Twisted action on `M`: `l_c o aut^(10)`, on canonical representatives.
    pub fn gamma_aut_m(&self, m: &Series) -> Result<Series> {
        self.check_series(m)?;
        require_w(m)?;
        self.action(true)?.gamma_m(m)
    }

    fn u_coeff(&self, letters: &[u8]) -> Result<RingElement> {
        self.g.coeff_extract(&Word::from_letters(letters), Coords::ExpU)
    }

    /// `(g|u0) = (g|u1) = 0` and `mu^2 = 1 + 24 (g|u0 u1)`.
    pub fn is_quad(&self) -> Result<bool> {
        self.ring().require_q_algebra()?;
        let gu = self.g.to_u()?;
        let c = |l: &[u8]| gu.coeff(&Word::from_letters(l));
        let rhs = &self.ring().one() + &c(&[0, 1]).scale_i64(24);
        Ok(c(&[0]).is_zero() && c(&[1]).is_zero() && &self.mu * &self.mu == rhs)
    }

    pub fn is_stab_w(&self) -> Result<bool> {
        self.ring().require_q_algebra()?;
        let act = self.action(true)?;
        stab_check(&self.g, &|s| act.gamma_w(s), &coproduct_w)
    }

    pub fn is_stab_m(&self) -> Result<bool> {
        self.ring().require_q_algebra()?;
        let act = self.action(true)?;
        stab_check(&self.g, &|s| act.gamma_m(s), &coproduct_m)
    }

    pub fn is_dmr(&self, method: DmrMethod) -> Result<bool> {
        if !self.is_quad()? {
            return Ok(false);
        }
        match method {
            DmrMethod::StabDef => self.is_stab_m(),
            DmrMethod::GrouplikeDef => grouplike_m(&project_m(&(&self.cocycle()? * &self.g))?),
        }
    }

    /// `mu = 1`, `(g|u0) = (g|u1) = (g|u0 u1) = 0` and the module stabilizer.
    pub fn is_dmr0(&self) -> Result<bool> {
        self.ring().require_q_algebra()?;
        if !self.mu.is_one() {
            return Ok(false);
        }
        for l in [&[0u8][..], &[1], &[0, 1]] {
            if !self.u_coeff(l)?.is_zero() {
                return Ok(false);
            }
        }
        self.is_stab_m()
    }

    /// `f theta(f) = 1` and
    /// `kappa^2(f) (X0 X1)^{-m} kappa(f) X1^m f X0^m = 1`, `m = (mu - 1)/2`.
    pub fn gt_relations(&self) -> Result<GtVerdict> {
        gt_relations(&self.mu, &self.g)
    }

    /// Residual series of the two relations (both are 1 exactly when the
    /// relations hold).
    pub fn gt_residuals(&self) -> Result<(Series, Series)> {
        gt_residuals(&self.mu, &self.g)
    }

    /// `Gamma(t) Gamma(-t) = lambda (e^{t/2} - e^{-t/2}) / (e^{lambda t/2} - e^{-lambda t/2})`.
    pub fn gamma_reflection(&self) -> Result<ReflectionVerdict> {
        let gm = self.gamma()?;
        let lhs = &gm * &gm.reflect();
        let n = self.trunc();
        let ring = self.ring();
        // sinh(t/2)/(t/2) = sum (t/2)^{2k} / (2k+1)!
        let mut s = UniSeries::zero(ring, n);
        let mut fact = ring.one();
        for j in 0..=n {
            if j > 0 {
                fact = fact.scale_i64(j as i64 + 1);
            } else {
                fact = ring.one();
            }
            if j % 2 == 0 {
                let c = ring_invert(&fact)?.div_i64(1i64 << j)?;
                s.set(j, c);
            }
        }
        let rhs = &s * &s.dilate(&self.mu).inverse()?;
        Ok(ReflectionVerdict {
            identity_holds: lhs == rhs,
            dmr_member: self.is_dmr(DmrMethod::StabDef)?,
        })
    }

    /// Maps the element into another ring coefficientwise.
    pub fn map_ring(&self, ring: RingSpec, f: impl Fn(&RingElement) -> RingElement) -> TwistedMagnusElement {
        TwistedMagnusElement { mu: f(&self.mu), g: self.g.map_coeffs(ring, f) }
    }

    pub fn truncated(&self, n: usize) -> TwistedMagnusElement {
        TwistedMagnusElement { mu: self.mu.clone(), g: self.g.truncated(n) }
    }
}

fn require_w(s: &Series) -> Result<()> {
    if s.coords() != Coords::MagnusT {
        return Err(Error::MixedContext("W and M live in Magnus coordinates".into()));
    }
    if let Some((w, _)) = s.terms().find(|(w, _)| w.last() == Some(0)) {
        return Err(Error::NotInW(format!("word {w} ends in t0")));
    }
    Ok(())
}

/// Checks `(A (x) A) o Delta = Delta o A` on every word of `W` of degree at
/// most the truncation, where `A` is given on series.
pub(crate) fn stab_check(
    template: &Series,
    a: &dyn Fn(&Series) -> Result<Series>,
    delta: &dyn Fn(&Series) -> Result<TensorSeries>,
) -> Result<bool> {
    let n = template.trunc();
    let basis: Vec<Word> = Word::all_up_to(n).filter(|w| w.last() != Some(0)).collect();
    let mut images: BTreeMap<Word, Series> = BTreeMap::new();
    for w in &basis {
        let s = Series::monomial(template.ring(), n, Coords::MagnusT, *w, template.ring().one());
        images.insert(*w, a(&s)?);
    }
    let apply = |s: &Series| -> Series {
        let mut out = template.zero_like();
        for (w, c) in s.terms() {
            out = &out + &images[w].scale(c);
        }
        out
    };
    for w in &basis {
        let s = Series::monomial(template.ring(), n, Coords::MagnusT, *w, template.ring().one());
        let rhs = delta(&images[w])?;
        let mut left = |l: Word| images[&l].clone();
        let mut right = |r: &Series| apply(r);
        let lhs = delta(&s)?.map_factors(&mut left, &mut right, template);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn gt_residuals(mu: &RingElement, f: &Series) -> Result<(Series, Series)> {
    let f = f.to_coords_if_needed()?;
    let n = f.trunc();
    let one = f.one_like();
    let t0 = f.gen_like(0);
    let t1 = f.gen_like(1);
    let theta = f.subst(&t1, &t0)?;
    let duality = &f * &theta;
    let x0x1 = &(&one + &t0) * &(&one + &t1);
    let k1 = &x0x1.inverse()? - &one;
    let kappa = |s: &Series| s.subst(&t1, &k1);
    let kf = kappa(&f)?;
    let kkf = kappa(&kf)?;
    let m = (mu - &mu.spec().one()).half()?;
    let neg_m = -&m;
    let word = [
        kkf,
        x0x1.pow(&neg_m)?,
        kf,
        generator_power_elt(n, 1, &m),
        f.clone(),
        generator_power_elt(n, 0, &m),
    ];
    let mut acc = one.clone();
    for x in &word {
        acc = &acc * x;
    }
    Ok((duality, acc))
}

pub(crate) fn gt_relations(mu: &RingElement, f: &Series) -> Result<GtVerdict> {
    let (d, k) = gt_residuals(mu, f)?;
    let one = d.one_like();
    Ok(GtVerdict { duality: d == one, kappa: k == one })
}

impl Series {
    /// Magnus coordinates, converting from exponential ones when needed.
    pub(crate) fn to_coords_if_needed(&self) -> Result<Series> {
        match self.coords() {
            Coords::MagnusT => Ok(self.clone()),
            Coords::ExpU => self.to_t(),
        }
    }
}

impl RingElement {
    pub fn pow_u32(&self, k: u32) -> RingElement {
        let mut acc = self.spec().one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    const Q: RingSpec = RingSpec::Rational;

    fn q(n: i64, d: i64) -> RingElement {
        Q.from_rational(&rat(n, d)).unwrap()
    }

    fn word(s: &str, n: usize) -> Series {
        GroupWord::parse(s).unwrap().eval_magnus(Q, n)
    }

    fn el(mu: RingElement, s: &str, n: usize) -> TwistedMagnusElement {
        TwistedMagnusElement::new(mu, word(s, n)).unwrap()
    }

    #[test]
    fn automorphisms() {
        let e = el(q(2, 1), "1", 4);
        assert_eq!(e.aut_v1(&word("X1", 4)).unwrap(), word("X1^2", 4));
        let e = el(q(1, 1), "X0 X1^-1", 4);
        assert_eq!(e.aut_v10(&word("1", 4)).unwrap(), word("X0 X1^-1", 4));
        let id = TwistedMagnusElement::identity(Q, 4);
        let a = word("X0^2 X1", 4);
        assert_eq!(id.aut_v1(&a).unwrap(), a);
        assert_eq!(id.aut_v10(&a).unwrap(), a);
    }

    #[test]
    fn star_examples() {
        let n = 4;
        let a = el(q(3, 1), "1", n);
        let b = el(q(-1, 2), "1", n);
        assert_eq!(a.star(&b).unwrap(), el(q(-3, 2), "1", n));
        let x1 = el(q(1, 1), "X1", n);
        assert_eq!(x1.star(&x1).unwrap(), el(q(1, 1), "X1^2", n));
        let m = el(q(5, 1), "1", n);
        assert_eq!(m.star(&x1).unwrap(), el(q(5, 1), "X1^5", n));
        assert_eq!(x1.star_inverse().unwrap(), el(q(1, 1), "X1^-1", n));
        assert_eq!(m.star_inverse().unwrap(), el(q(1, 5), "1", n));
    }

    #[test]
    fn gamma_values() {
        let n = 5;
        let x1 = el(q(1, 1), "X1", n);
        assert_eq!(x1.gamma().unwrap(), UniSeries::var(Q, n).exp().unwrap());
        // Gamma = e^t, so Gamma^{-1}(-log X1) = X1.
        assert_eq!(x1.cocycle().unwrap(), word("X1", n));
        let id = TwistedMagnusElement::identity(Q, n);
        assert_eq!(id.cocycle().unwrap(), word("1", n));
        let one_b = word("1", n);
        assert_eq!(x1.gamma_aut_m(&one_b).unwrap(), word("X1^2", n));
    }

    #[test]
    fn predicates_on_small_elements() {
        let n = 4;
        for mu in [1, -1] {
            let e = el(q(mu, 1), "1", n);
            assert!(e.is_quad().unwrap());
            assert!(e.is_stab_w().unwrap());
            assert!(e.is_stab_m().unwrap());
            assert!(e.is_dmr(DmrMethod::StabDef).unwrap());
            assert!(e.is_dmr(DmrMethod::GrouplikeDef).unwrap());
            assert!(e.gt_relations().unwrap().passed());
            let r = e.gamma_reflection().unwrap();
            assert!(r.passed());
        }
        let e = el(q(1, 1), "X0 X1", n);
        assert!(!e.is_quad().unwrap());
        assert!(!e.is_dmr(DmrMethod::StabDef).unwrap());
        assert!(!e.gt_relations().unwrap().duality);
        let x1 = el(q(1, 1), "X1", n);
        assert!(!x1.is_quad().unwrap());
        let r = x1.gamma_reflection().unwrap();
        assert!(r.identity_holds && !r.dmr_member && !r.passed());
    }

    #[test]
    fn quad_with_commutator_coefficient() {
        // g = exp([u0, u1]) has (g|u0 u1) = 1, so mu = 5 is quadratic.
        let n = 3;
        let u0 = Series::generator(Q, n, Coords::ExpU, 0);
        let u1 = Series::generator(Q, n, Coords::ExpU, 1);
        let g = u0.bracket(&u1).exp().unwrap();
        let e = TwistedMagnusElement::new(q(5, 1), g).unwrap();
        assert!(e.is_quad().unwrap());
        let g2 = u0.bracket(&u1).exp().unwrap();
        let gm = TwistedMagnusElement::new(q(1, 1), g2).unwrap().gamma().unwrap();
        assert_eq!(gm.coeff(1), q(0, 1));
        assert_eq!(gm.coeff(2), q(-1, 2));
    }
}
