//! Cover labelings, the R-labeling check, minimal-atom labelings of lattices,
//! and the descent words `u(M)` and `u(M, E)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::ncpoly::{AbWord, Letter};
use crate::poset::{Chain, Elem, GradedPoset};
use crate::rankset::{ESet, RankSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("cover {lower} ⋖ {upper} has no label")]
    MissingLabel { lower: String, upper: String },
    #[error("label key `{0}` does not name a cover relation")]
    UnknownCover(String),
    #[error("label of `{0}` must be a positive integer")]
    BadLabel(String),
    #[error("{x} and {y} have no join")]
    NotALattice { x: String, y: String },
    #[error("no atom generates the cover {lower} ⋖ {upper}")]
    NoAtomGenerates { lower: String, upper: String },
    #[error("atom order must list every atom exactly once")]
    BadAtomOrder,
    #[error("{0:?} is not a maximal chain")]
    NotMaximal(Vec<String>),
    #[error("position {position} is outside 1..={n}")]
    PositionOutOfRange { position: usize, n: usize },
    #[error(transparent)]
    NotRLabeling(#[from] RWitness),
}

/// An interval on which a labeling fails to be an R-labeling.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct RWitness {
    pub bottom: String,
    pub top: String,
    /// Number of weakly increasing maximal chains of the interval (0 or ≥ 2).
    pub increasing_chains: usize,
}

impl fmt::Display for RWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "not an R-labeling: interval [{}, {}] has {} weakly increasing maximal chains",
            self.bottom, self.top, self.increasing_chains
        )
    }
}

/// A positive integer label on every cover relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverLabeling {
    labels: HashMap<(Elem, Elem), u32>,
}

impl CoverLabeling {
    /// Checks that `labels` covers exactly the cover relations of `poset`
    /// with positive values.
    pub fn new(poset: &GradedPoset, labels: HashMap<(Elem, Elem), u32>) -> Result<Self, LabelError> {
        for (&(x, y), &v) in &labels {
            let key = format!("{}|{}", poset.id(x), poset.id(y));
            if !poset.is_cover(x, y) {
                return Err(LabelError::UnknownCover(key));
            }
            if v == 0 {
                return Err(LabelError::BadLabel(key));
            }
        }
        if let Some((x, y)) = poset.covers().find(|c| !labels.contains_key(c)) {
            return Err(LabelError::MissingLabel {
                lower: poset.id(x).into(),
                upper: poset.id(y).into(),
            });
        }
        Ok(Self { labels })
    }

    /// Reads labels keyed `"lower|upper"`. Identifiers may themselves contain
    /// `|`; every split point is tried and the one naming a cover is used.
    pub fn from_keys(poset: &GradedPoset, keyed: &BTreeMap<String, i64>) -> Result<Self, LabelError> {
        let mut labels = HashMap::new();
        for (key, &v) in keyed {
            let cover = key
                .match_indices('|')
                .map(|(i, _)| (&key[..i], &key[i + 1..]))
                .filter_map(|(l, u)| Some((poset.elem(l)?, poset.elem(u)?)))
                .find(|&(x, y)| poset.is_cover(x, y))
                .ok_or_else(|| LabelError::UnknownCover(key.clone()))?;
            let v = u32::try_from(v)
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| LabelError::BadLabel(key.clone()))?;
            labels.insert(cover, v);
        }
        Self::new(poset, labels)
    }

    pub fn to_keys(&self, poset: &GradedPoset) -> BTreeMap<String, u32> {
        self.labels
            .iter()
            .map(|(&(x, y), &v)| (format!("{}|{}", poset.id(x), poset.id(y)), v))
            .collect()
    }

    /// The label of the cover `x ⋖ y`. Panics if it is not a cover.
    pub fn get(&self, x: Elem, y: Elem) -> u32 {
        self.labels[&(x, y)]
    }

    /// Labels along consecutive elements of a saturated chain.
    pub fn along(&self, chain: &[Elem]) -> Vec<u32> {
        chain.windows(2).map(|w| self.get(w[0], w[1])).collect()
    }
}

pub fn is_weakly_increasing(labels: &[u32]) -> bool {
    labels.windows(2).all(|w| w[0] <= w[1])
}

/// Strictly decreasing; sequences of length ≤ 1 qualify.
pub fn is_decreasing(labels: &[u32]) -> bool {
    labels.windows(2).all(|w| w[0] > w[1])
}

/// Number of weakly increasing maximal chains of every interval `[x, y]`
/// (`x < y`), keyed by `(x, y)`. Counts paths edge by edge, so this is
/// polynomial in the number of covers.
fn increasing_chain_counts(poset: &GradedPoset, labeling: &CoverLabeling) -> BTreeMap<(Elem, Elem), usize> {
    let mut out = BTreeMap::new();
    for x in poset.elements() {
        // ending[(w, z)] = increasing paths from x whose last cover is w ⋖ z
        let mut ending: HashMap<(Elem, Elem), usize> = HashMap::new();
        for &z in poset.elements_by_rank() {
            if !poset.lt(x, z) {
                continue;
            }
            let mut total = 0;
            for &w in poset.lower_covers(z) {
                if !poset.leq(x, w) {
                    continue;
                }
                let lab = labeling.get(w, z);
                let count = if w == x {
                    1
                } else {
                    poset
                        .lower_covers(w)
                        .iter()
                        .filter(|&&v| labeling.get(v, w) <= lab)
                        .map(|&v| ending.get(&(v, w)).copied().unwrap_or(0))
                        .sum()
                };
                ending.insert((w, z), count);
                total += count;
            }
            out.insert((x, z), total);
        }
    }
    out
}

/// Checks that every interval has exactly one weakly increasing maximal
/// chain. On failure reports a smallest offending interval.
pub fn verify_r_labeling(poset: &GradedPoset, labeling: &CoverLabeling) -> Result<(), RWitness> {
    let counts = increasing_chain_counts(poset, labeling);
    let bad = counts
        .iter()
        .filter(|(_, &c)| c != 1)
        .min_by_key(|(&(x, y), _)| (poset.rank_of(y) - poset.rank_of(x), x, y));
    match bad {
        None => Ok(()),
        Some((&(x, y), &c)) => Err(RWitness {
            bottom: poset.id(x).into(),
            top: poset.id(y).into(),
            increasing_chains: c,
        }),
    }
}

/// `λ(X ⋖ Y) = min { i : X ∨ atom_i = Y }` with atoms numbered from 1 in the
/// given order (default: identifier order). Returned together with the
/// R-labeling verdict, which callers must inspect.
pub fn min_atom_labeling(
    poset: &GradedPoset,
    atom_order: Option<&[Elem]>,
) -> Result<(CoverLabeling, Result<(), RWitness>), LabelError> {
    let atoms = poset.atoms();
    let order: Vec<Elem> = match atom_order {
        None => atoms.clone(),
        Some(order) => {
            let mut sorted = order.to_vec();
            sorted.sort();
            if sorted != atoms {
                return Err(LabelError::BadAtomOrder);
            }
            order.to_vec()
        }
    };
    let size = poset.len();
    let mut joins: Vec<Option<Elem>> = vec![None; size * size];
    for x in poset.elements() {
        for y in poset.elements() {
            match poset.join(x, y) {
                Some(j) => joins[x.index() * size + y.index()] = Some(j),
                None => {
                    return Err(LabelError::NotALattice {
                        x: poset.id(x).into(),
                        y: poset.id(y).into(),
                    })
                }
            }
        }
    }
    let mut labels = HashMap::new();
    for (x, y) in poset.covers() {
        let i = order
            .iter()
            .position(|&a| joins[x.index() * size + a.index()] == Some(y))
            .ok_or_else(|| LabelError::NoAtomGenerates {
                lower: poset.id(x).into(),
                upper: poset.id(y).into(),
            })?;
        labels.insert((x, y), i as u32 + 1);
    }
    let labeling = CoverLabeling::new(poset, labels)?;
    let verdict = verify_r_labeling(poset, &labeling);
    Ok((labeling, verdict))
}

fn check_maximal(poset: &GradedPoset, m: &Chain) -> Result<(), LabelError> {
    if poset.is_maximal_chain(m.elems()) {
        Ok(())
    } else {
        Err(LabelError::NotMaximal(poset.ids_of(m.elems())))
    }
}

/// `u(M) = u_1 ⋯ u_n` with `u_1 = a` and `u_i = b` exactly when the labels
/// descend strictly at `M_{i-1}`.
pub fn u_monomial(poset: &GradedPoset, m: &Chain, labeling: &CoverLabeling) -> Result<AbWord, LabelError> {
    check_maximal(poset, m)?;
    Ok(u_word(&labeling.along(m.elems())))
}

fn u_word(labels: &[u32]) -> AbWord {
    let mut w = AbWord::EMPTY;
    for i in 0..labels.len() {
        let descent = i > 0 && labels[i - 1] > labels[i];
        w.push(if descent { Letter::B } else { Letter::A });
    }
    w
}

/// `u(M, E)`: position `i` (1-based) of `u(M)` turns `a → b` when `i ∈ E`
/// and `b → a` when `i - 1 ∈ E`.
pub fn u_monomial_e(poset: &GradedPoset, m: &Chain, e: ESet, labeling: &CoverLabeling) -> Result<AbWord, LabelError> {
    let u = u_monomial(poset, m, labeling)?;
    toggle(&u, e)
}

pub(crate) fn toggle(u: &AbWord, e: ESet) -> Result<AbWord, LabelError> {
    let n = u.len();
    if let Some(bad) = e.iter().find(|&i| i == 0 || i > n) {
        return Err(LabelError::PositionOutOfRange { position: bad, n });
    }
    let mut v = AbWord::EMPTY;
    for i in 1..=n {
        v.push(match u.get(i - 1) {
            Letter::A if e.contains(i) => Letter::B,
            Letter::B if e.contains(i - 1) => Letter::A,
            l => l,
        });
    }
    Ok(v)
}

/// The complement `{1, …, n} ∖ E`.
pub fn e_complement(e: ESet, n: usize) -> ESet {
    RankSet::range(1, n).difference(e)
}
