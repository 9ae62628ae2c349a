use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::NcPolyError;
use crate::rankset::RankSet;

/// Maximum number of letters an [`AbWord`] can hold.
pub const MAX_WORD_LEN: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn complement(self) -> Self {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

/// A word in the noncommuting letters `a`, `b`, packed one bit per letter.
///
/// Bit `i` holds letter `i` (0 = `a`, 1 = `b`). Words are ordered by length
/// first, then colexicographically (last letter most significant, `a < b`),
/// which is numeric order of the packed bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AbWord {
    bits: u64,
    len: u8,
}

impl Ord for AbWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for AbWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl AbWord {
    pub const EMPTY: AbWord = AbWord { bits: 0, len: 0 };

    pub fn from_letters(letters: &[Letter]) -> Self {
        assert!(letters.len() <= MAX_WORD_LEN, "ab-word longer than {MAX_WORD_LEN}");
        let mut w = Self::EMPTY;
        for &l in letters {
            w.push(l);
        }
        w
    }

    /// The word of length `len` with `b` exactly at the positions in `b_positions`
    /// (0-based) and `a` elsewhere.
    pub fn with_b_at(len: usize, b_positions: RankSet) -> Self {
        assert!(len <= MAX_WORD_LEN);
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        debug_assert_eq!(b_positions.bits() & !mask, 0);
        Self {
            bits: b_positions.bits() & mask,
            len: len as u8,
        }
    }

    pub fn repeat(letter: Letter, len: usize) -> Self {
        Self::from_letters(&vec![letter; len])
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Letter {
        assert!(i < self.len(), "letter index {i} out of range");
        if self.bits >> i & 1 == 1 {
            Letter::B
        } else {
            Letter::A
        }
    }

    pub fn push(&mut self, l: Letter) {
        assert!(self.len() < MAX_WORD_LEN, "ab-word longer than {MAX_WORD_LEN}");
        if l == Letter::B {
            self.bits |= 1 << self.len;
        }
        self.len += 1;
    }

    pub fn concat(&self, other: &AbWord) -> AbWord {
        assert!(self.len() + other.len() <= MAX_WORD_LEN);
        AbWord {
            bits: self.bits | other.bits << self.len,
            len: self.len + other.len,
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    /// The 0-based positions holding `b`.
    pub fn b_positions(&self) -> RankSet {
        RankSet::from_bits(self.bits)
    }

    pub fn count_b(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Drops the first letter.
    pub fn tail(&self) -> Option<AbWord> {
        (self.len > 0).then(|| AbWord {
            bits: self.bits >> 1,
            len: self.len - 1,
        })
    }

    /// Exchanges `a` and `b` letterwise.
    pub fn complement(&self) -> AbWord {
        let mask = if self.len == 64 {
            u64::MAX
        } else {
            (1u64 << self.len) - 1
        };
        AbWord {
            bits: !self.bits & mask,
            len: self.len,
        }
    }

    /// Power notation: `a^2*b*a`. The empty word renders as `1`.
    pub fn to_power_string(&self) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.len() {
            let l = self.get(i);
            let mut j = i;
            while j < self.len() && self.get(j) == l {
                j += 1;
            }
            match j - i {
                1 => parts.push(l.as_char().to_string()),
                k => parts.push(format!("{}^{k}", l.as_char())),
            }
            i = j;
        }
        parts.join("*")
    }

    /// Letters joined by `*`: `b*b`.
    pub fn to_product_string(&self) -> String {
        self.letters()
            .map(|l| l.as_char().to_string())
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for AbWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for AbWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbWord(\"{self}\")")
    }
}

impl FromStr for AbWord {
    type Err = NcPolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                other => Err(NcPolyError::BadLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if letters.len() > MAX_WORD_LEN {
            return Err(NcPolyError::WordTooLong(letters.len()));
        }
        Ok(Self::from_letters(&letters))
    }
}
