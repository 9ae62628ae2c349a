use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::{coeff_json, omega_a, omega_ab_block, omega_b, render_term, AbPoly, AbWord, Letter, NcPolyError};
use crate::ypoly::YPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CdLetter {
    C1,
    C2,
    D,
}

impl CdLetter {
    /// `c`'s count 1, `d` counts 2.
    pub fn degree(self) -> usize {
        match self {
            CdLetter::C1 | CdLetter::C2 => 1,
            CdLetter::D => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CdLetter::C1 => "c1",
            CdLetter::C2 => "c2",
            CdLetter::D => "d",
        }
    }
}

/// A word over `{c₁, c₂, d}`, ordered by weighted degree and then
/// colexicographically with `c₁ < c₂ < d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CdWord(pub Vec<CdLetter>);

impl CdWord {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|l| l.degree()).sum()
    }

    fn power_string(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            match j - i {
                1 => parts.push(l.as_str().to_string()),
                k => parts.push(format!("{}^{k}", l.as_str())),
            }
            i = j;
        }
        parts.join("*")
    }

    fn product_string(&self) -> String {
        self.0.iter().map(|l| l.as_str()).collect::<Vec<_>>().join("*")
    }
}

impl Ord for CdWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for CdWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CdWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_str())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CdPoly {
    terms: BTreeMap<CdWord, YPoly>,
}

impl CdPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::zero();
        p.add_term(CdWord::default(), &YPoly::one());
        p
    }

    pub fn add_term(&mut self, w: CdWord, c: &YPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn coeff(&self, w: &CdWord) -> YPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CdWord, &YPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| json!({ "word": w.to_string(), "coeff": coeff_json(c) }))
            .collect();
        json!({ "terms": terms })
    }
}

impl fmt::Display for CdPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| render_term(c, &w.power_string(), &w.product_string(), w.0.is_empty()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Splits an `a`-leading word into its unique factorisation
/// `(a b^{j₁})(a b^{j₂})⋯(a b^{j_k})`, returning `[j₁, …, j_k]`.
/// The empty word has no blocks.
pub fn block_decompose(w: &AbWord) -> Result<Vec<usize>, NcPolyError> {
    if w.is_empty() {
        return Ok(Vec::new());
    }
    if w.get(0) == Letter::B {
        return Err(NcPolyError::LeadingB(*w));
    }
    let mut blocks = Vec::new();
    for l in w.letters() {
        match l {
            Letter::A => blocks.push(0),
            Letter::B => *blocks.last_mut().expect("leading a") += 1,
        }
    }
    Ok(blocks)
}

/// Substitutes `c₁ ↦ a + yb`, `c₂ ↦ b + ya`, `d ↦ ab + yba + yab + y²ba`.
pub fn cd_expand(q: &CdPoly) -> AbPoly {
    let (c1, c2, d) = (omega_a(), omega_b(), omega_ab_block());
    let mut out = AbPoly::zero();
    for (w, c) in q.terms() {
        let mut m = AbPoly::one();
        for l in &w.0 {
            m = &m
                * match l {
                    CdLetter::C1 => &c1,
                    CdLetter::C2 => &c2,
                    CdLetter::D => &d,
                };
        }
        out += &m.scale(c);
    }
    out
}
