//! The free algebra `ℤ[y]⟨a, b⟩`, the `ω` and `ι` substitutions, chain
//! weights, and the `c₁, c₂, d` alphabet.

mod cd;
mod word;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::rankset::RankSet;
use crate::ypoly::{YPoly, YTPoly};

pub use cd::{block_decompose, cd_expand, CdLetter, CdPoly, CdWord};
pub use word::{AbWord, Letter, MAX_WORD_LEN};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcPolyError {
    #[error("ι is undefined on the empty word")]
    EmptyWord,
    #[error("word `{0}` starts with b and has no a·b^j block decomposition")]
    LeadingB(AbWord),
    #[error("rank {rank} is outside the admissible positions {lo}..={hi} of the {variant:?} weight")]
    RankOutOfRange {
        rank: usize,
        lo: usize,
        hi: usize,
        variant: WeightVariant,
    },
    #[error("letter `{0}` is not one of a, b")]
    BadLetter(char),
    #[error("word of length {0} exceeds the supported maximum")]
    WordTooLong(usize),
}

/// An element of `ℤ[y]⟨a, b⟩`: a finite map from words to nonzero `ℤ[y]`
/// coefficients. Not necessarily homogeneous.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbPoly {
    terms: BTreeMap<AbWord, YPoly>,
}

impl AbPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit, i.e. the empty word with coefficient 1.
    pub fn one() -> Self {
        Self::word(AbWord::EMPTY)
    }

    pub fn word(w: AbWord) -> Self {
        Self::term(w, YPoly::one())
    }

    pub fn term(w: AbWord, c: YPoly) -> Self {
        let mut p = Self::zero();
        p.add_term(w, &c);
        p
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(AbWord::from_letters(&[l]))
    }

    pub fn a() -> Self {
        Self::letter(Letter::A)
    }

    pub fn b() -> Self {
        Self::letter(Letter::B)
    }

    /// Parses a sum of words with integer coefficients, e.g. `"aa + 2ab - bb"`.
    /// Test and CLI convenience; coefficients are constants in `y`.
    pub fn parse_int_combination(s: &str) -> Result<Self, NcPolyError> {
        let mut p = Self::zero();
        let normalized = s.replace('-', "+-");
        for raw in normalized.split('+') {
            let tok = raw.trim();
            if tok.is_empty() {
                continue;
            }
            let (sign, tok) = match tok.strip_prefix('-') {
                Some(rest) => (-1i64, rest.trim()),
                None => (1, tok),
            };
            let split = tok.find(|c: char| !c.is_ascii_digit()).unwrap_or(tok.len());
            let (digits, letters) = tok.split_at(split);
            let c: i64 = if digits.is_empty() {
                1
            } else {
                digits.parse().unwrap_or(1)
            };
            let w = if letters == "1" {
                AbWord::EMPTY
            } else {
                letters.parse()?
            };
            p.add_term(w, &YPoly::constant(sign * c));
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: AbWord, c: &YPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// `[w] self`; zero for absent words.
    pub fn coeff(&self, w: &AbWord) -> YPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AbWord, &YPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every word has exactly `n` letters.
    pub fn is_homogeneous_of(&self, n: usize) -> bool {
        self.terms.keys().all(|w| w.len() == n)
    }

    pub fn scale(&self, c: &YPoly) -> Self {
        let mut out = Self::zero();
        for (w, k) in &self.terms {
            out.add_term(*w, &(k * c));
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(YPoly::is_nonnegative)
    }

    /// Substitutes the integer `v` for `y`.
    pub fn eval_y(&self, v: i64) -> AbPoly {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(*w, &YPoly::constant(c.eval_i64(v)));
        }
        out
    }

    /// The homomorphism `a ↦ 1`, `b ↦ t` into `ℤ[y, t]`.
    pub fn specialize_ab(&self) -> YTPoly {
        let mut out = YTPoly::zero();
        for (w, c) in &self.terms {
            out.add_ypoly(c, w.count_b());
        }
        out
    }

    /// Evaluation at `y`, `a`, `b` all integers (commutative image).
    pub fn eval_all(&self, y: i64, a: i64, b: i64) -> BigInt {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        self.terms
            .iter()
            .map(|(w, c)| {
                let mut m = c.eval_i64(y);
                for l in w.letters() {
                    m *= if l == Letter::A { &a } else { &b };
                }
                m
            })
            .sum()
    }

    /// Canonical JSON rendering `{"terms": [{"word": "ab", "coeff": [c0, c1, ...]}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| json!({ "word": w.to_string(), "coeff": coeff_json(c) }))
            .collect();
        json!({ "terms": terms })
    }
}

pub(crate) fn coeff_json(c: &YPoly) -> Vec<Value> {
    c.coeffs()
        .iter()
        .map(|x| match i64::try_from(x) {
            Ok(v) => Value::from(v),
            Err(_) => Value::from(x.to_string()),
        })
        .collect()
}

/// Renders `coeff * word` in canonical form: a unit coefficient leaves the word
/// in power notation (`a^2`), any other coefficient is parenthesised and the
/// word spelled letter by letter (`(y^2)*b*b`); the empty word shows just its
/// coefficient.
pub(crate) fn render_term(coeff: &YPoly, power: &str, product: &str, empty: bool) -> String {
    if empty {
        coeff.to_string()
    } else if coeff.is_one() {
        power.to_string()
    } else {
        format!("({coeff})*{product}")
    }
}

impl fmt::Display for AbPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| render_term(c, &w.to_power_string(), &w.to_product_string(), w.is_empty()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl AddAssign<&AbPoly> for AbPoly {
    fn add_assign(&mut self, rhs: &AbPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(*w, c);
        }
    }
}

impl Add for &AbPoly {
    type Output = AbPoly;
    fn add(self, rhs: &AbPoly) -> AbPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for AbPoly {
    type Output = AbPoly;
    fn add(mut self, rhs: AbPoly) -> AbPoly {
        self += &rhs;
        self
    }
}

impl Neg for &AbPoly {
    type Output = AbPoly;
    fn neg(self) -> AbPoly {
        self.scale(&YPoly::constant(-1))
    }
}

impl Sub for &AbPoly {
    type Output = AbPoly;
    fn sub(self, rhs: &AbPoly) -> AbPoly {
        self + &(-rhs)
    }
}

impl Mul for &AbPoly {
    type Output = AbPoly;
    fn mul(self, rhs: &AbPoly) -> AbPoly {
        let mut out = AbPoly::zero();
        for (u, c) in &self.terms {
            for (v, d) in &rhs.terms {
                out.add_term(u.concat(v), &(c * d));
            }
        }
        out
    }
}

impl Mul for AbPoly {
    type Output = AbPoly;
    fn mul(self, rhs: AbPoly) -> AbPoly {
        &self * &rhs
    }
}

/// Which positions a chain weight ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightVariant {
    /// `w_0 ⋯ w_{n-1}`
    Standard,
    /// `w_0 ⋯ w_n`
    Plus,
    /// `w_1 ⋯ w_{n-1}`
    Minus,
}

impl WeightVariant {
    fn positions(self, n: usize) -> (usize, Option<usize>) {
        match self {
            WeightVariant::Standard => (0, n.checked_sub(1)),
            WeightVariant::Plus => (0, Some(n)),
            WeightVariant::Minus => (1, n.checked_sub(1)),
        }
    }
}

/// The chain weight `∏ w_i` with `w_i = b` for `i` in `rank_set` and `a - b`
/// otherwise, over the positions selected by `variant`.
pub fn chain_weight(rank_set: RankSet, n: usize, variant: WeightVariant) -> Result<AbPoly, NcPolyError> {
    let (lo, hi) = variant.positions(n);
    let in_range = |r: usize| hi.is_some_and(|h| r >= lo && r <= h);
    if let Some(bad) = rank_set.iter().find(|&r| !in_range(r)) {
        return Err(NcPolyError::RankOutOfRange {
            rank: bad,
            lo,
            hi: hi.unwrap_or(0),
            variant,
        });
    }
    let a_minus_b = &AbPoly::a() - &AbPoly::b();
    let mut out = AbPoly::one();
    if let Some(hi) = hi {
        for i in lo..=hi {
            out = if rank_set.contains(i) {
                &out * &AbPoly::b()
            } else {
                &out * &a_minus_b
            };
        }
    }
    Ok(out)
}

/// `ab + y·ba + y·ab + y²·ba`, the image of a marked `ab` under `ω`.
pub fn omega_ab_block() -> AbPoly {
    let ab: AbWord = AbWord::from_letters(&[Letter::A, Letter::B]);
    let ba: AbWord = AbWord::from_letters(&[Letter::B, Letter::A]);
    let mut p = AbPoly::zero();
    p.add_term(ab, &YPoly::one_plus_y());
    p.add_term(ba, &YPoly::from_i64s(&[0, 1, 1]));
    p
}

/// `a + y·b`
pub fn omega_a() -> AbPoly {
    &AbPoly::a() + &AbPoly::b().scale(&YPoly::y())
}

/// `b + y·a`
pub fn omega_b() -> AbPoly {
    &AbPoly::b() + &AbPoly::a().scale(&YPoly::y())
}

/// `ω` on a single word. Every factor occurrence of `ab` is marked (they are
/// pairwise disjoint in a binary word) and replaced by [`omega_ab_block`];
/// remaining letters go to `a + yb` / `b + ya`.
pub fn omega_word(w: &AbWord) -> AbPoly {
    let (block, oa, ob) = (omega_ab_block(), omega_a(), omega_b());
    let mut out = AbPoly::one();
    let mut i = 0;
    while i < w.len() {
        if w.get(i) == Letter::A && i + 1 < w.len() && w.get(i + 1) == Letter::B {
            out = &out * &block;
            i += 2;
        } else {
            out = &out * if w.get(i) == Letter::A { &oa } else { &ob };
            i += 1;
        }
    }
    out
}

/// `ω`, extended `ℤ[y]`-linearly.
pub fn omega(p: &AbPoly) -> AbPoly {
    let mut out = AbPoly::zero();
    for (w, c) in p.terms() {
        out += &omega_word(w).scale(c);
    }
    out
}

/// `ι`: deletes the first letter of every word, summing coefficients of words
/// that collapse together.
pub fn iota(p: &AbPoly) -> Result<AbPoly, NcPolyError> {
    let mut out = AbPoly::zero();
    for (w, c) in p.terms() {
        let tail = w.tail().ok_or(NcPolyError::EmptyWord)?;
        out.add_term(tail, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> AbWord {
        s.parse().unwrap()
    }

    fn p(s: &str) -> AbPoly {
        AbPoly::parse_int_combination(s).unwrap()
    }

    #[test]
    fn multiplication_is_noncommutative() {
        assert_eq!(&AbPoly::a() * &AbPoly::b(), AbPoly::word(w("ab")));
        assert_eq!(&AbPoly::b() * &AbPoly::a(), AbPoly::word(w("ba")));
        assert_ne!(&AbPoly::a() * &AbPoly::b(), &AbPoly::b() * &AbPoly::a());
    }

    #[test]
    fn square_of_difference() {
        let d = &AbPoly::a() - &AbPoly::b();
        assert_eq!(&d * &d, p("aa - ab - ba + bb"));
    }

    #[test]
    fn coefficients_multiply_in_y() {
        let x = AbPoly::term(w("b"), YPoly::one_plus_y());
        assert_eq!(&x * &x, AbPoly::term(w("bb"), YPoly::from_i64s(&[1, 2, 1])));
    }

    #[test]
    fn chain_weights() {
        let amb = &AbPoly::a() - &AbPoly::b();
        assert_eq!(
            chain_weight(RankSet::EMPTY, 2, WeightVariant::Standard).unwrap(),
            &amb * &amb
        );
        let both: RankSet = [0, 1].into_iter().collect();
        assert_eq!(chain_weight(both, 2, WeightVariant::Standard).unwrap(), p("bb"));
        let one: RankSet = [1].into_iter().collect();
        assert_eq!(chain_weight(one, 2, WeightVariant::Minus).unwrap(), p("b"));
        assert!(matches!(
            chain_weight(both, 2, WeightVariant::Minus),
            Err(NcPolyError::RankOutOfRange { rank: 0, .. })
        ));
        assert!(chain_weight(RankSet::EMPTY.with(2), 2, WeightVariant::Standard).is_err());
        assert_eq!(
            chain_weight(RankSet::EMPTY.with(2), 2, WeightVariant::Plus).unwrap(),
            &(&amb * &amb) * &AbPoly::b()
        );
        assert_eq!(
            chain_weight(RankSet::EMPTY, 0, WeightVariant::Standard).unwrap(),
            AbPoly::one()
        );
        assert_eq!(
            chain_weight(RankSet::EMPTY, 1, WeightVariant::Minus).unwrap(),
            AbPoly::one()
        );
    }

    #[test]
    fn omega_examples() {
        let oa = omega_a();
        assert_eq!(omega(&p("aa")), &oa * &oa);
        assert_eq!(omega(&p("ab")), omega_ab_block());
        assert_eq!(omega(&AbPoly::one()), AbPoly::one());
        // ω(aa + 2ab) from the running rank-2 example.
        let expected = &(&oa * &oa) + &omega_ab_block().scale(&YPoly::constant(2));
        assert_eq!(omega(&p("aa + 2ab")), expected);
        assert_eq!(
            omega(&p("aa + 2ab")).to_string(),
            "a^2 + (3*y + 2*y^2)*b*a + (2 + 3*y)*a*b + (y^2)*b*b"
        );
    }

    #[test]
    fn iota_examples() {
        let mut x = p("aaaba");
        x.add_term(w("ba"), &YPoly::one_plus_y());
        let mut expected = p("aaba");
        expected.add_term(w("a"), &YPoly::one_plus_y());
        assert_eq!(iota(&x).unwrap(), expected);
        assert_eq!(iota(&p("ab + bb")).unwrap(), p("2b"));
        assert_eq!(iota(&AbPoly::one()), Err(NcPolyError::EmptyWord));
    }

    #[test]
    fn rendering() {
        assert_eq!(p("aa + 2ab").to_string(), "a^2 + (2)*a*b");
        assert_eq!(AbPoly::one().to_string(), "1");
        assert_eq!(AbPoly::zero().to_string(), "0");
        assert_eq!(p("aa - bb").to_string(), "a^2 + (-1)*b*b");
        let json = p("aa + 2ab").to_json();
        assert_eq!(
            json.to_string(),
            r#"{"terms":[{"coeff":[1],"word":"aa"},{"coeff":[2],"word":"ab"}]}"#
        );
    }

    #[test]
    fn specialization() {
        let mut x = AbPoly::term(w("a"), YPoly::from_i64s(&[1, 3, 2]));
        x.add_term(w("b"), &YPoly::from_i64s(&[2, 3, 1]));
        assert_eq!(x.specialize_ab().to_string(), "1 + 3*y + 2*y^2 + (2 + 3*y + y^2)*t");
        assert_eq!(x.eval_y(1), p("6a + 6b"));
        assert_eq!(x.eval_all(1, 1, 1), BigInt::from(12));
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = AbWord> {
        proptest::collection::vec(prop_oneof![Just(Letter::A), Just(Letter::B)], 0..=max_len)
            .prop_map(|ls| AbWord::from_letters(&ls))
    }

    fn arb_poly() -> impl Strategy<Value = AbPoly> {
        proptest::collection::vec((arb_word(7), proptest::collection::vec(-3i64..=3, 0..3)), 0..6).prop_map(|terms| {
            let mut p = AbPoly::zero();
            for (w, c) in terms {
                p.add_term(w, &YPoly::from_i64s(&c));
            }
            p
        })
    }

    /// ω(a b^j) expanded from the closed form (ab + yba + yab + y²ba)(b + ya)^{j-1}.
    fn omega_ab_power_closed_form(j: usize) -> AbPoly {
        let mut out = omega_ab_block();
        let factor = &AbPoly::b() + &AbPoly::a().scale(&YPoly::y());
        for _ in 1..j {
            out = &out * &factor;
        }
        out
    }

    #[test]
    fn omega_on_single_blocks_matches_closed_form() {
        for j in 1..=8 {
            let mut letters = vec![Letter::A];
            letters.extend(std::iter::repeat_n(Letter::B, j));
            let word = AbWord::from_letters(&letters);
            assert_eq!(omega_word(&word), omega_ab_power_closed_form(j), "j = {j}");
        }
    }

    proptest! {
        #[test]
        fn omega_is_multiplicative_over_blocks(rest in arb_word(9)) {
            let word = AbWord::from_letters(&[Letter::A]).concat(&rest);
            let blocks = block_decompose(&word).unwrap();
            let mut product = AbPoly::one();
            for j in blocks {
                let mut letters = vec![Letter::A];
                letters.extend(std::iter::repeat_n(Letter::B, j));
                product = &product * &omega_word(&AbWord::from_letters(&letters));
            }
            prop_assert_eq!(omega_word(&word), product);
        }

        #[test]
        fn iota_commutes_with_right_letter(x in arb_poly(), bit in any::<bool>()) {
            let letter = AbPoly::letter(if bit { Letter::B } else { Letter::A });
            let nonempty: AbPoly = {
                let mut q = AbPoly::zero();
                for (w, c) in x.terms().filter(|(w, _)| !w.is_empty()) {
                    q.add_term(*w, c);
                }
                q
            };
            let lhs = iota(&(&nonempty * &letter)).unwrap();
            let rhs = &iota(&nonempty).unwrap() * &letter;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn omega_is_identity_at_y_zero(x in arb_poly()) {
            let lhs = omega(&x).eval_y(0).specialize_ab();
            let rhs = x.eval_y(0).specialize_ab();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn multiplication_is_associative(x in arb_poly(), y in arb_poly(), z in arb_poly()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        }
    }
}
