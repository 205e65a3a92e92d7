//! Exact coefficient rings: rationals, dual numbers over the rationals and
//! truncated p-adic integers `Z/p^K`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which ring a computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Rational,
    Dual,
    PAdic { p: u64, k: u32 },
}

/// p-adic residues carry extra hidden digits so that binomial coefficients
/// `C(lambda, n)` for `n <= GUARD_FACTORIAL` are correct to the nominal
/// precision. Only the low `p^k` part is observable.
const GUARD_FACTORIAL: u64 = 32;

/// The rational number `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn valuation_of_factorial(p: u64, n: u64) -> u32 {
    let mut v = 0u64;
    let mut q = p;
    while q <= n {
        v += n / q;
        q = match q.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    v as u32
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl RingSpec {
    pub fn padic(p: u64, k: u32) -> Result<RingSpec> {
        if !is_prime(p) {
            return Err(Error::Config(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Config("p-adic precision must be at least 1".into()));
        }
        let spec = RingSpec::PAdic { p, k };
        let total = k + valuation_of_factorial(p, GUARD_FACTORIAL);
        let mut m: u128 = 1;
        for _ in 0..total {
            m = m.saturating_mul(p as u128);
        }
        if m >= (1u128 << 62) {
            return Err(Error::Config(format!(
                "precision p^K = {p}^{k} too large for the residue representation"
            )));
        }
        Ok(spec)
    }

    /// Parses `q`, `dual` or `padic:<p>:<K>`.
    pub fn parse(s: &str) -> Result<RingSpec> {
        match s {
            "q" | "Q" => Ok(RingSpec::Rational),
            "dual" => Ok(RingSpec::Dual),
            _ => {
                let parts: Vec<&str> = s.split(':').collect();
                if parts.len() == 3 && parts[0] == "padic" {
                    let p = parts[1]
                        .parse::<u64>()
                        .map_err(|_| Error::Config(format!("bad prime in {s}")))?;
                    let k = parts[2]
                        .parse::<u32>()
                        .map_err(|_| Error::Config(format!("bad precision in {s}")))?;
                    RingSpec::padic(p, k)
                } else {
                    Err(Error::Config(format!("unknown ring {s}")))
                }
            }
        }
    }

    pub fn is_q_algebra(&self) -> bool {
        !matches!(self, RingSpec::PAdic { .. })
    }

    pub fn require_q_algebra(&self) -> Result<()> {
        if self.is_q_algebra() {
            Ok(())
        } else {
            Err(Error::RingUnsupported(format!("{self} is not a Q-algebra")))
        }
    }

    fn work_modulus(&self) -> u128 {
        match *self {
            RingSpec::PAdic { p, k } => {
                (p as u128).pow(k + valuation_of_factorial(p, GUARD_FACTORIAL))
            }
            _ => unreachable!("modulus of a non p-adic ring"),
        }
    }

    pub fn zero(&self) -> RingElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> RingElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> RingElement {
        match *self {
            RingSpec::Rational => RingElement::Rational(BigRational::from_integer(n.clone())),
            RingSpec::Dual => RingElement::Dual(
                BigRational::from_integer(n.clone()),
                BigRational::zero(),
            ),
            RingSpec::PAdic { p, k } => {
                let m = BigInt::from(self.work_modulus());
                let r = n.mod_floor(&m).to_u128().unwrap();
                RingElement::PAdic(PAdic { p, k, r })
            }
        }
    }

    /// Embeds a rational number; over `Z/p^K` the denominator must be prime to `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<RingElement> {
        match *self {
            RingSpec::Rational => Ok(RingElement::Rational(q.clone())),
            RingSpec::Dual => Ok(RingElement::Dual(q.clone(), BigRational::zero())),
            RingSpec::PAdic { .. } => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                Ok(&num * &ring_invert(&den)?)
            }
        }
    }

    /// Dual number `a + b*eps`; fails on other rings.
    pub fn dual(&self, a: BigRational, b: BigRational) -> Result<RingElement> {
        match self {
            RingSpec::Dual => Ok(RingElement::Dual(a, b)),
            _ => Err(Error::RingUnsupported("epsilon needs the dual ring".into())),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rational => write!(f, "q"),
            RingSpec::Dual => write!(f, "dual"),
            RingSpec::PAdic { p, k } => write!(f, "padic:{p}:{k}"),
        }
    }
}

/// Residue of a p-adic integer. `r` is kept modulo the working modulus,
/// which is `p^k` times some guard digits.
#[derive(Clone, Copy, Debug)]
pub struct PAdic {
    p: u64,
    k: u32,
    r: u128,
}

impl PAdic {
    fn modulus(&self) -> u128 {
        RingSpec::PAdic { p: self.p, k: self.k }.work_modulus()
    }

    /// Residue in `[0, p^k)`.
    pub fn residue(&self) -> u128 {
        self.r % (self.p as u128).pow(self.k)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

#[derive(Clone, Debug)]
pub enum RingElement {
    Rational(BigRational),
    Dual(BigRational, BigRational),
    PAdic(PAdic),
}

impl RingElement {
    pub fn spec(&self) -> RingSpec {
        match self {
            RingElement::Rational(_) => RingSpec::Rational,
            RingElement::Dual(..) => RingSpec::Dual,
            RingElement::PAdic(x) => RingSpec::PAdic { p: x.p, k: x.k },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Rational(q) => q.is_zero(),
            RingElement::Dual(a, b) => a.is_zero() && b.is_zero(),
            RingElement::PAdic(x) => x.residue() == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        (self - &self.spec().one()).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        match self {
            RingElement::Rational(q) => !q.is_zero(),
            RingElement::Dual(a, _) => !a.is_zero(),
            RingElement::PAdic(x) => x.r % x.p as u128 != 0,
        }
    }

    /// Rational value, if the element is rational (or a dual number with zero
    /// epsilon part).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            RingElement::Rational(q) => Some(q.clone()),
            RingElement::Dual(a, b) if b.is_zero() => Some(a.clone()),
            _ => None,
        }
    }

    /// Multiplies by an integer.
    pub fn scale_i64(&self, n: i64) -> RingElement {
        if n == 1 {
            return self.clone();
        }
        match self {
            RingElement::Rational(q) => RingElement::Rational(q * BigInt::from(n)),
            RingElement::Dual(a, b) => {
                RingElement::Dual(a * BigInt::from(n), b * BigInt::from(n))
            }
            RingElement::PAdic(x) => {
                let m = x.modulus();
                let n = (n as i128).rem_euclid(m as i128) as u128;
                RingElement::PAdic(PAdic { r: x.r * n % m, ..*x })
            }
        }
    }

    /// Divides by a nonzero integer; over `Z/p^K` this needs `p` not to divide `n`.
    pub fn div_i64(&self, n: i64) -> Result<RingElement> {
        match self {
            RingElement::Rational(q) => Ok(RingElement::Rational(q / BigInt::from(n))),
            RingElement::Dual(a, b) => Ok(RingElement::Dual(
                a / BigInt::from(n),
                b / BigInt::from(n),
            )),
            RingElement::PAdic(_) => {
                let d = self.spec().from_i64(n);
                Ok(self * &ring_invert(&d)?)
            }
        }
    }

    /// Halves the element. Over `Z/2^K` the element must be even; one digit
    /// of hidden precision is spent.
    pub fn half(&self) -> Result<RingElement> {
        match self {
            RingElement::PAdic(x) if x.p == 2 => {
                if x.r % 2 != 0 {
                    return Err(Error::HalfNotDefined(format!(
                        "{self} is odd in Z/2^{}",
                        x.k
                    )));
                }
                Ok(RingElement::PAdic(PAdic { r: x.r / 2, ..*x }))
            }
            _ => self.div_i64(2),
        }
    }

    /// Reduces a p-adic element to a lower precision `k2 <= k`.
    pub fn reduce_precision(&self, k2: u32) -> Result<RingElement> {
        match self {
            RingElement::PAdic(x) if k2 >= 1 && k2 <= x.k => {
                let spec = RingSpec::padic(x.p, k2)?;
                let m = spec.work_modulus();
                Ok(RingElement::PAdic(PAdic { p: x.p, k: k2, r: x.r % m }))
            }
            _ => Err(Error::Config("precision reduction needs a p-adic element".into())),
        }
    }
}

/// Inverse of a unit.
pub fn ring_invert(a: &RingElement) -> Result<RingElement> {
    if !a.is_unit() {
        return Err(Error::NotAUnit(format!("{a}")));
    }
    Ok(match a {
        RingElement::Rational(q) => RingElement::Rational(q.recip()),
        RingElement::Dual(x, y) => {
            let xi = x.recip();
            let e = -(y * &xi * &xi);
            RingElement::Dual(xi, e)
        }
        RingElement::PAdic(x) => {
            let m = x.modulus() as i128;
            let (g, s, _) = ext_gcd(x.r as i128, m);
            debug_assert_eq!(g, 1);
            RingElement::PAdic(PAdic { r: s.rem_euclid(m) as u128, ..*x })
        }
    })
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

/// `C(lambda, k) = lambda (lambda - 1) ... (lambda - k + 1) / k!`.
pub fn ring_binomial(lambda: &RingElement, k: u32) -> RingElement {
    let spec = lambda.spec();
    match lambda {
        RingElement::PAdic(x) => {
            assert!(
                k as u64 <= GUARD_FACTORIAL,
                "p-adic binomial beyond the guarded range"
            );
            let m = BigInt::from(x.r);
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            for j in 0..k {
                num *= &m - BigInt::from(j);
                den *= BigInt::from(j + 1);
            }
            spec.from_bigint(&(num / den))
        }
        _ => {
            let mut acc = spec.one();
            for j in 0..k {
                acc = &acc * &(lambda - &spec.from_i64(j as i64));
                acc = acc.div_i64(j as i64 + 1).expect("division in a Q-algebra");
            }
            acc
        }
    }
}

fn mismatch(a: &RingElement, b: &RingElement) -> ! {
    panic!("arithmetic between {} and {}", a.spec(), b.spec())
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, o: &RingElement) -> RingElement {
        match (self, o) {
            (RingElement::Rational(a), RingElement::Rational(b)) => RingElement::Rational(a + b),
            (RingElement::Dual(a, b), RingElement::Dual(c, d)) => RingElement::Dual(a + c, b + d),
            (RingElement::PAdic(x), RingElement::PAdic(y)) if x.p == y.p && x.k == y.k => {
                RingElement::PAdic(PAdic { r: (x.r + y.r) % x.modulus(), ..*x })
            }
            _ => mismatch(self, o),
        }
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, o: &RingElement) -> RingElement {
        match (self, o) {
            (RingElement::Rational(a), RingElement::Rational(b)) => RingElement::Rational(a - b),
            (RingElement::Dual(a, b), RingElement::Dual(c, d)) => RingElement::Dual(a - c, b - d),
            (RingElement::PAdic(x), RingElement::PAdic(y)) if x.p == y.p && x.k == y.k => {
                let m = x.modulus();
                RingElement::PAdic(PAdic { r: (x.r + m - y.r) % m, ..*x })
            }
            _ => mismatch(self, o),
        }
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, o: &RingElement) -> RingElement {
        match (self, o) {
            (RingElement::Rational(a), RingElement::Rational(b)) => RingElement::Rational(a * b),
            (RingElement::Dual(a, b), RingElement::Dual(c, d)) => {
                RingElement::Dual(a * c, a * d + b * c)
            }
            (RingElement::PAdic(x), RingElement::PAdic(y)) if x.p == y.p && x.k == y.k => {
                RingElement::PAdic(PAdic { r: x.r * y.r % x.modulus(), ..*x })
            }
            _ => mismatch(self, o),
        }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        match self {
            RingElement::Rational(a) => RingElement::Rational(-a),
            RingElement::Dual(a, b) => RingElement::Dual(-a, -b),
            RingElement::PAdic(x) => {
                let m = x.modulus();
                RingElement::PAdic(PAdic { r: (m - x.r) % m, ..*x })
            }
        }
    }
}

impl PartialEq for RingElement {
    fn eq(&self, o: &RingElement) -> bool {
        self.spec() == o.spec() && (self - o).is_zero()
    }
}

impl Eq for RingElement {}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Rational(q) => write!(f, "{}", fmt_rational(q)),
            RingElement::Dual(a, b) => {
                if b.is_zero() {
                    write!(f, "{}", fmt_rational(a))
                } else if a.is_zero() {
                    write!(f, "({}eps)", fmt_rational(b))
                } else {
                    let sign = if b.is_negative() { "-" } else { "+" };
                    write!(f, "({} {} {}eps)", fmt_rational(a), sign, fmt_rational(&b.abs()))
                }
            }
            RingElement::PAdic(x) => write!(f, "{}", x.residue()),
        }
    }
}
