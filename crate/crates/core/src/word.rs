use std::fmt;

/// Maximum supported word length.
pub const MAX_LEN: usize = 30;

/// A word over the letters {0, 1}. The first letter is the most significant
/// of the `len` low bits, so the derived order is (degree, lexicographic).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    len: u8,
    bits: u32,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, bits: 0 };

    pub fn letter(i: u8) -> Word {
        debug_assert!(i < 2);
        Word { len: 1, bits: i as u32 }
    }

    pub fn from_letters(letters: &[u8]) -> Word {
        assert!(letters.len() <= MAX_LEN, "word too long");
        let mut bits = 0u32;
        for &l in letters {
            debug_assert!(l < 2);
            bits = (bits << 1) | l as u32;
        }
        Word { len: letters.len() as u8, bits }
    }

    /// `a` zeros followed by a single 1, i.e. `t0^a t1`.
    pub fn block(a: usize) -> Word {
        Word { len: a as u8 + 1, bits: 1 }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn at(&self, i: usize) -> u8 {
        debug_assert!(i < self.len());
        ((self.bits >> (self.len as usize - 1 - i)) & 1) as u8
    }

    pub fn letters(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len()).map(move |i| self.at(i))
    }

    pub fn to_vec(&self) -> Vec<u8> {
        self.letters().collect()
    }

    pub fn first(&self) -> Option<u8> {
        if self.is_empty() {
            None
        } else {
            Some(self.at(0))
        }
    }

    pub fn last(&self) -> Option<u8> {
        if self.is_empty() {
            None
        } else {
            Some((self.bits & 1) as u8)
        }
    }

    pub fn concat(&self, o: &Word) -> Word {
        debug_assert!(self.len() + o.len() <= MAX_LEN);
        Word {
            len: self.len + o.len,
            bits: (self.bits << o.len) | o.bits,
        }
    }

    pub fn push(&self, l: u8) -> Word {
        self.concat(&Word::letter(l))
    }

    /// Drops the first letter.
    pub fn tail(&self) -> Word {
        debug_assert!(!self.is_empty());
        let len = self.len - 1;
        Word { len, bits: self.bits & ((1u32 << len) - 1) }
    }

    /// Splits into the first `k` letters and the rest.
    pub fn split_at(&self, k: usize) -> (Word, Word) {
        debug_assert!(k <= self.len());
        let rest = self.len() - k;
        let left = Word { len: k as u8, bits: self.bits >> rest };
        let right = Word {
            len: rest as u8,
            bits: if rest == 0 { 0 } else { self.bits & ((1u32 << rest) - 1) },
        };
        (left, right)
    }

    /// Position in the canonical enumeration of all words.
    pub fn index(&self) -> usize {
        (1usize << self.len) - 1 + self.bits as usize
    }

    pub fn from_index(i: usize) -> Word {
        let mut len = 0u8;
        while (1usize << (len + 1)) - 1 <= i {
            len += 1;
        }
        Word { len, bits: (i + 1 - (1usize << len)) as u32 }
    }

    /// Number of words of length at most `n`.
    pub fn count_up_to(n: usize) -> usize {
        (1usize << (n + 1)) - 1
    }

    /// All words of length exactly `n`, in canonical order.
    pub fn all_of_len(n: usize) -> impl Iterator<Item = Word> {
        (0..(1u32 << n)).map(move |bits| Word { len: n as u8, bits })
    }

    /// All words of length at most `n`, in canonical order.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = Word> {
        (0..=n).flat_map(Word::all_of_len)
    }

    /// Number of occurrences of letter `l`.
    pub fn count(&self, l: u8) -> usize {
        let ones = self.bits.count_ones() as usize;
        if l == 1 {
            ones
        } else {
            self.len() - ones
        }
    }

    /// Exchanges the two letters.
    pub fn swapped(&self) -> Word {
        let mask = if self.len == 0 { 0 } else { (1u32 << self.len) - 1 };
        Word { len: self.len, bits: !self.bits & mask }
    }

    /// Renders the word with the given generator names, e.g. `t0*t1`.
    pub fn render(&self, names: [&str; 2]) -> String {
        let parts: Vec<&str> = self.letters().map(|l| names[l as usize]).collect();
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "()");
        }
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
