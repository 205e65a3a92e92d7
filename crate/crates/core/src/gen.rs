//! Seeded random corpora: Lyndon-bracket primitives, group-like series and
//! twisted Magnus elements.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::{rat, RingSpec};
use crate::error::Result;
use crate::magnus::TwistedMagnusElement;
use crate::ncseries::{Coords, Series};
use crate::word::Word;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Lyndon words over `{0, 1}` of length `1..=n`, by Duval's algorithm.
pub fn lyndon_words(n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(Word::from_letters(&w));
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&1) {
            w.pop();
        }
        match w.last_mut() {
            Some(l) => *l = 1,
            None => break,
        }
    }
    out.sort();
    out
}

/// Standard bracketing `[w] = [[u], [v]]` with `v` the longest proper Lyndon
/// suffix, as a series in exponential coordinates.
pub fn lyndon_bracket(w: &Word, ring: RingSpec, n: usize) -> Series {
    if w.len() == 1 {
        return Series::generator(ring, n, Coords::ExpU, w.at(0));
    }
    let letters = w.to_vec();
    let split = (1..letters.len())
        .find(|&i| is_lyndon(&letters[i..]))
        .expect("a Lyndon word of length > 1 has a proper Lyndon suffix");
    let u = lyndon_bracket(&Word::from_letters(&letters[..split]), ring, n);
    let v = lyndon_bracket(&Word::from_letters(&letters[split..]), ring, n);
    u.bracket(&v)
}

fn is_lyndon(s: &[u8]) -> bool {
    (1..s.len()).all(|i| s < &s[i..])
}

/// A random Lie series `sum c_L [L]` over Lyndon words of degree
/// `min_deg..=n`, integer coefficients in `[-3, 3]`.
pub fn random_primitive<R: Rng>(rng: &mut R, ring: RingSpec, n: usize, min_deg: usize) -> Series {
    let mut x = Series::zero(ring, n, Coords::ExpU);
    for w in lyndon_words(n) {
        if w.len() < min_deg {
            continue;
        }
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            x = &x + &lyndon_bracket(&w, ring, n).scale_i64(c);
        }
    }
    x
}

/// `exp(x)` in Magnus coordinates for a random primitive `x`.
pub fn random_grouplike<R: Rng>(rng: &mut R, ring: RingSpec, n: usize) -> Result<Series> {
    random_primitive(rng, ring, n, 1).exp()?.to_t()
}

/// A random element of the twisted Magnus group over Q with `mu` from a
/// fixed list of units.
pub fn random_element<R: Rng>(rng: &mut R, n: usize) -> Result<TwistedMagnusElement> {
    const MUS: [(i64, i64); 8] = [(1, 1), (-1, 1), (2, 1), (1, 2), (-3, 1), (2, 3), (5, 1), (-1, 4)];
    let (p, q) = MUS[rng.gen_range(0..MUS.len())];
    let ring = RingSpec::Rational;
    let g = random_grouplike(rng, ring, n)?;
    TwistedMagnusElement::new(ring.from_rational(&rat(p, q))?, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Number of Lyndon words of length `d` over two letters (Witt's formula).
    fn witt(d: usize) -> usize {
        let mu = |n: usize| -> i64 {
            let mut n = n;
            let mut r = 1;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    n /= p;
                    if n % p == 0 {
                        return 0;
                    }
                    r = -r;
                }
                p += 1;
            }
            if n > 1 {
                r = -r;
            }
            r
        };
        let s: i64 = (1..=d).filter(|k| d % k == 0).map(|k| mu(k) * (1i64 << (d / k))).sum();
        (s / d as i64) as usize
    }

    #[test]
    fn lyndon_counts() {
        let all = lyndon_words(8);
        for d in 1..=8 {
            assert_eq!(all.iter().filter(|w| w.len() == d).count(), witt(d), "degree {d}");
        }
        let w3: Vec<String> = all.iter().filter(|w| w.len() == 3).map(|w| w.render(["a", "b"])).collect();
        assert_eq!(w3, vec!["a*a*b", "a*b*b"]);
    }

    #[test]
    fn brackets_are_primitive() {
        let q = RingSpec::Rational;
        for w in lyndon_words(5) {
            let b = lyndon_bracket(&w, q, 5);
            assert!(b.is_primitive(), "{w}");
            // leading word of the standard bracket is the Lyndon word itself
            assert!(b.coeff(&w).is_one());
        }
        let mut r = rng(3);
        assert!(random_grouplike(&mut r, q, 4).unwrap().is_grouplike());
    }
}
