//! Finite graded posets with a unique minimum and maximum: construction and
//! validation, chain enumeration, the Möbius function and Poincaré polynomials.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use thiserror::Error;

use crate::rankset::RankSet;
use crate::ypoly::YPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("poset has no elements")]
    Empty,
    #[error("element `{0}` is listed more than once")]
    DuplicateElement(String),
    #[error("cover refers to unknown element `{0}`")]
    UnknownElement(String),
    #[error("cover relations contain a cycle through `{0}`")]
    CyclicCovers(String),
    #[error("no unique minimum: minimal elements are {0:?}")]
    NoUniqueMin(Vec<String>),
    #[error("no unique maximum: maximal elements are {0:?}")]
    NoUniqueMax(Vec<String>),
    #[error("not graded: maximal chains {short:?} and {long:?} have different lengths")]
    NotGraded { short: Vec<String>, long: Vec<String> },
    #[error("supplied rank {given} of `{element}` disagrees with computed rank {computed}")]
    RankMismatch {
        element: String,
        given: usize,
        computed: usize,
    },
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("element `{0}` is not in the poset")]
    ElementNotInPoset(String),
    #[error("elements {0:?} do not form a chain")]
    NotAChain(Vec<String>),
}

/// Index of an element of a [`GradedPoset`]. Indices follow the lexicographic
/// order of the element identifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(usize);

impl Elem {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Which of `0̂`, `1̂` to leave out of a chain enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Exclude {
    pub bottom: bool,
    pub top: bool,
}

impl Exclude {
    pub const NONE: Exclude = Exclude {
        bottom: false,
        top: false,
    };
    pub const TOP: Exclude = Exclude {
        bottom: false,
        top: true,
    };
    pub const BOTTOM: Exclude = Exclude {
        bottom: true,
        top: false,
    };
    pub const BOTH: Exclude = Exclude {
        bottom: true,
        top: true,
    };
}

/// A strictly increasing sequence of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Chain(Vec<Elem>);

impl Chain {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Validates and sorts `elems` into a chain of `poset`.
    pub fn new(poset: &GradedPoset, mut elems: Vec<Elem>) -> Result<Self, PosetError> {
        elems.sort_by_key(|&e| (poset.rank_of(e), e));
        let ok = elems.windows(2).all(|w| w[0] != w[1] && poset.leq(w[0], w[1]));
        if !ok {
            return Err(PosetError::NotAChain(poset.ids_of(&elems)));
        }
        Ok(Self(elems))
    }

    /// Builds a chain from identifiers.
    pub fn from_ids(poset: &GradedPoset, ids: &[&str]) -> Result<Self, PosetError> {
        let elems = ids
            .iter()
            .map(|id| {
                poset
                    .elem(id)
                    .ok_or_else(|| PosetError::ElementNotInPoset(id.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(poset, elems)
    }

    pub(crate) fn from_sorted(elems: Vec<Elem>) -> Self {
        Self(elems)
    }

    pub fn elems(&self) -> &[Elem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.0.contains(&e)
    }

    /// `Rank(C)`, the set of ranks of the elements.
    pub fn rank_set(&self, poset: &GradedPoset) -> RankSet {
        self.0.iter().map(|&e| poset.rank_of(e)).collect()
    }

    /// The chain with `e` added (no-op if already present).
    pub fn with(&self, poset: &GradedPoset, e: Elem) -> Self {
        if self.contains(e) {
            return self.clone();
        }
        let mut v = self.0.clone();
        v.push(e);
        v.sort_by_key(|&x| (poset.rank_of(x), x));
        Self(v)
    }
}

/// A weakly increasing sequence of elements (repeats allowed), kept sorted by
/// rank. Equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Multichain(Vec<Elem>);

impl Multichain {
    pub fn new(poset: &GradedPoset, mut elems: Vec<Elem>) -> Result<Self, PosetError> {
        elems.sort_by_key(|&e| (poset.rank_of(e), e));
        if !elems.windows(2).all(|w| poset.leq(w[0], w[1])) {
            return Err(PosetError::NotAChain(poset.ids_of(&elems)));
        }
        Ok(Self(elems))
    }

    pub(crate) fn from_sorted(elems: Vec<Elem>) -> Self {
        Self(elems)
    }

    pub fn elems(&self) -> &[Elem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset union with a single element.
    pub fn with(&self, poset: &GradedPoset, e: Elem) -> Self {
        let mut v = self.0.clone();
        v.push(e);
        v.sort_by_key(|&x| (poset.rank_of(x), x));
        Self(v)
    }
}

/// A finite graded poset with unique `0̂` and `1̂`. Immutable once built;
/// Möbius rows are computed lazily behind [`OnceLock`]s, so shared references
/// can be used from several threads.
#[derive(Clone)]
pub struct GradedPoset {
    ids: Vec<String>,
    index: HashMap<String, Elem>,
    up: Vec<Vec<Elem>>,
    down: Vec<Vec<Elem>>,
    rank: Vec<usize>,
    /// Row-major `leq[x * len + y]`.
    leq: Vec<bool>,
    by_rank: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    mobius_rows: Vec<OnceLock<Vec<i64>>>,
}

impl fmt::Debug for GradedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedPoset")
            .field("elements", &self.ids)
            .field("rank", &self.rank_of(self.top))
            .finish()
    }
}

impl GradedPoset {
    /// Validates the cover relations and builds the poset. Ranks are the
    /// longest-path distances from `0̂`.
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self, PosetError> {
        if elements.is_empty() {
            return Err(PosetError::Empty);
        }
        let mut ids: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(PosetError::DuplicateElement(w[0].clone()));
        }
        let index: HashMap<String, Elem> = ids.iter().enumerate().map(|(i, s)| (s.clone(), Elem(i))).collect();
        let size = ids.len();

        let mut edges = BTreeSet::new();
        for (lo, hi) in covers {
            let lookup = |s: &S| {
                index
                    .get(s.as_ref())
                    .copied()
                    .ok_or_else(|| PosetError::UnknownElement(s.as_ref().to_string()))
            };
            let (x, y) = (lookup(lo)?, lookup(hi)?);
            if x == y {
                return Err(PosetError::CyclicCovers(ids[x.0].clone()));
            }
            edges.insert((x, y));
        }
        let mut up = vec![Vec::new(); size];
        let mut down = vec![Vec::new(); size];
        for &(x, y) in &edges {
            up[x.0].push(y);
            down[y.0].push(x);
        }

        let topo = topological_order(&up, &down).map_err(|e| PosetError::CyclicCovers(ids[e.0].clone()))?;

        let minima: Vec<Elem> = (0..size).map(Elem).filter(|e| down[e.0].is_empty()).collect();
        if minima.len() != 1 {
            return Err(PosetError::NoUniqueMin(
                minima.iter().map(|e| ids[e.0].clone()).collect(),
            ));
        }
        let maxima: Vec<Elem> = (0..size).map(Elem).filter(|e| up[e.0].is_empty()).collect();
        if maxima.len() != 1 {
            return Err(PosetError::NoUniqueMax(
                maxima.iter().map(|e| ids[e.0].clone()).collect(),
            ));
        }
        let (bottom, top) = (minima[0], maxima[0]);

        // Longest path from 0̂ (rank) and to 1̂ (corank), each with a predecessor
        // so a witness chain can be reconstructed.
        let mut rank = vec![0usize; size];
        let mut rank_pred: Vec<Option<Elem>> = vec![None; size];
        for &x in &topo {
            for &y in &up[x.0] {
                if rank_pred[y.0].is_none() || rank[x.0] + 1 > rank[y.0] {
                    rank[y.0] = rank[x.0] + 1;
                    rank_pred[y.0] = Some(x);
                }
            }
        }
        let mut corank = vec![0usize; size];
        let mut corank_succ: Vec<Option<Elem>> = vec![None; size];
        for &x in topo.iter().rev() {
            for &y in &up[x.0] {
                if corank_succ[x.0].is_none() || corank[y.0] + 1 > corank[x.0] {
                    corank[x.0] = corank[y.0] + 1;
                    corank_succ[x.0] = Some(y);
                }
            }
        }
        for &(x, y) in &edges {
            if rank[y.0] != rank[x.0] + 1 {
                let down_path = |mut e: Elem| {
                    let mut v = vec![e];
                    while let Some(p) = rank_pred[e.0] {
                        v.push(p);
                        e = p;
                    }
                    v.reverse();
                    v
                };
                let up_path = |mut e: Elem| {
                    let mut v = Vec::new();
                    while let Some(s) = corank_succ[e.0] {
                        v.push(s);
                        e = s;
                    }
                    v
                };
                let mut short = down_path(x);
                short.push(y);
                short.extend(up_path(y));
                let mut long = down_path(y);
                long.extend(up_path(y));
                let name = |v: Vec<Elem>| v.into_iter().map(|e| ids[e.0].clone()).collect();
                return Err(PosetError::NotGraded {
                    short: name(short),
                    long: name(long),
                });
            }
        }

        let mut leq = vec![false; size * size];
        for &x in topo.iter().rev() {
            leq[x.0 * size + x.0] = true;
            for &y in &up[x.0] {
                for z in 0..size {
                    if leq[y.0 * size + z] {
                        leq[x.0 * size + z] = true;
                    }
                }
            }
        }
        let mut by_rank: Vec<Elem> = (0..size).map(Elem).collect();
        by_rank.sort_by_key(|e| (rank[e.0], *e));

        Ok(Self {
            ids,
            index,
            up,
            down,
            rank,
            leq,
            by_rank,
            bottom,
            top,
            mobius_rows: (0..size).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Builds the poset and checks caller-supplied ranks against the computed ones.
    pub fn with_ranks<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
        ranks: &HashMap<String, usize>,
    ) -> Result<Self, PosetError> {
        let p = Self::new(elements, covers)?;
        for (id, &given) in ranks {
            let e = p.elem(id).ok_or_else(|| PosetError::ElementNotInPoset(id.clone()))?;
            if p.rank_of(e) != given {
                return Err(PosetError::RankMismatch {
                    element: id.clone(),
                    given,
                    computed: p.rank_of(e),
                });
            }
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// The rank `n` of the poset, i.e. `rank(1̂)`.
    pub fn rank(&self) -> usize {
        self.rank[self.top.0]
    }

    pub fn rank_of(&self, e: Elem) -> usize {
        self.rank[e.0]
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn id(&self, e: Elem) -> &str {
        &self.ids[e.0]
    }

    pub fn ids_of(&self, elems: &[Elem]) -> Vec<String> {
        elems.iter().map(|&e| self.ids[e.0].clone()).collect()
    }

    pub fn elem(&self, id: &str) -> Option<Elem> {
        self.index.get(id).copied()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.ids.len()).map(Elem)
    }

    /// Elements sorted by rank, ties by identifier.
    pub fn elements_by_rank(&self) -> &[Elem] {
        &self.by_rank
    }

    pub fn upper_covers(&self, e: Elem) -> &[Elem] {
        &self.up[e.0]
    }

    pub fn lower_covers(&self, e: Elem) -> &[Elem] {
        &self.down[e.0]
    }

    /// All cover relations `(lower, upper)`, in identifier order.
    pub fn covers(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.elements()
            .flat_map(move |x| self.up[x.0].iter().map(move |&y| (x, y)))
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x.0 * self.len() + y.0]
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn is_cover(&self, x: Elem, y: Elem) -> bool {
        self.up[x.0].contains(&y)
    }

    /// The elements of `[x, y]`, by rank.
    pub fn interval(&self, x: Elem, y: Elem) -> Vec<Elem> {
        self.by_rank
            .iter()
            .copied()
            .filter(|&z| self.leq(x, z) && self.leq(z, y))
            .collect()
    }

    pub fn atoms(&self) -> Vec<Elem> {
        self.up[self.bottom.0].clone()
    }

    fn mobius_row(&self, x: Elem) -> &[i64] {
        self.mobius_rows[x.0].get_or_init(|| {
            let mut row = vec![0i64; self.len()];
            let above: Vec<Elem> = self.by_rank.iter().copied().filter(|&z| self.leq(x, z)).collect();
            for (k, &y) in above.iter().enumerate() {
                if y == x {
                    row[y.0] = 1;
                    continue;
                }
                let s: i64 = above[..k]
                    .iter()
                    .filter(|&&z| self.lt(z, y))
                    .map(|&z| row[z.0])
                    .fold(0i64, |acc, v| acc.checked_add(v).expect("Möbius value overflows i64"));
                row[y.0] = -s;
            }
            row
        })
    }

    /// `μ(x, y)` by the defining recursion, memoised per lower endpoint.
    pub fn mobius(&self, x: Elem, y: Elem) -> Result<i64, PosetError> {
        if !self.leq(x, y) {
            return Err(PosetError::NotComparable(self.id(x).into(), self.id(y).into()));
        }
        Ok(self.mobius_row(x)[y.0])
    }

    /// `Poin([x, y]; y) = Σ_{z ∈ [x,y]} |μ(x, z)| y^{rank z - rank x}`.
    pub fn interval_poincare(&self, x: Elem, y: Elem) -> Result<YPoly, PosetError> {
        if !self.leq(x, y) {
            return Err(PosetError::NotComparable(self.id(x).into(), self.id(y).into()));
        }
        let row = self.mobius_row(x);
        let base = self.rank_of(x);
        let mut coeffs = vec![BigInt::from(0); self.rank_of(y) - base + 1];
        for z in self.elements().filter(|&z| self.leq(x, z) && self.leq(z, y)) {
            coeffs[self.rank_of(z) - base] += BigInt::from(row[z.0].unsigned_abs());
        }
        Ok(YPoly::from_coeffs(coeffs))
    }

    /// `Poin(P; y)`.
    pub fn poincare(&self) -> YPoly {
        self.interval_poincare(self.bottom, self.top).expect("0̂ ≤ 1̂")
    }

    /// `Poin_C(P; y) = ∏ Poin([C_i, C_{i+1}]; y)` with `C_{k+1} = 1̂`; the
    /// empty chain gives 1.
    pub fn chain_poincare(&self, chain: &Chain) -> YPoly {
        let mut out = YPoly::one();
        let elems = chain.elems();
        for (i, &c) in elems.iter().enumerate() {
            let next = elems.get(i + 1).copied().unwrap_or(self.top);
            out = &out * &self.interval_poincare(c, next).expect("chain elements are increasing");
        }
        out
    }

    /// Every maximal chain `x = M_0 ⋖ … ⋖ M_k = y` of `[x, y]`, in
    /// lexicographic order of identifiers.
    pub fn maximal_chains_between(&self, x: Elem, y: Elem) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        if !self.leq(x, y) {
            return out;
        }
        let mut stack = vec![x];
        self.extend_maximal(y, &mut stack, &mut out);
        out
    }

    fn extend_maximal(&self, target: Elem, stack: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        let last = *stack.last().expect("nonempty");
        if last == target {
            out.push(stack.clone());
            return;
        }
        for &z in &self.up[last.0] {
            if self.leq(z, target) {
                stack.push(z);
                self.extend_maximal(target, stack, out);
                stack.pop();
            }
        }
    }

    /// Every maximal chain `0̂ = M_0 ⋖ … ⋖ M_n = 1̂`.
    pub fn maximal_chains(&self) -> Vec<Chain> {
        self.maximal_chains_between(self.bottom, self.top)
            .into_iter()
            .map(Chain)
            .collect()
    }

    /// All chains (including the empty one) of the subposet with the
    /// requested extreme elements removed.
    pub fn chains(&self, exclude: Exclude) -> Vec<Chain> {
        let allowed: Vec<Elem> = self
            .elements()
            .filter(|&e| !(exclude.bottom && e == self.bottom) && !(exclude.top && e == self.top))
            .collect();
        let mut out = vec![Chain::empty()];
        let mut stack = Vec::new();
        for &e in &allowed {
            stack.push(e);
            self.extend_chains(&allowed, &mut stack, &mut out);
            stack.pop();
        }
        out
    }

    fn extend_chains(&self, allowed: &[Elem], stack: &mut Vec<Elem>, out: &mut Vec<Chain>) {
        out.push(Chain(stack.clone()));
        let last = *stack.last().expect("nonempty");
        for &e in allowed {
            if self.lt(last, e) {
                stack.push(e);
                self.extend_chains(allowed, stack, out);
                stack.pop();
            }
        }
    }

    /// Whether `elems` (sorted) is a maximal chain `0̂ ⋖ … ⋖ 1̂`.
    pub fn is_maximal_chain(&self, elems: &[Elem]) -> bool {
        elems.first() == Some(&self.bottom)
            && elems.last() == Some(&self.top)
            && elems.windows(2).all(|w| self.is_cover(w[0], w[1]))
    }

    /// The least upper bound of `x` and `y`, if unique.
    pub fn join(&self, x: Elem, y: Elem) -> Option<Elem> {
        let uppers: Vec<Elem> = self.elements().filter(|&z| self.leq(x, z) && self.leq(y, z)).collect();
        let least: Vec<Elem> = uppers
            .iter()
            .copied()
            .filter(|&z| uppers.iter().all(|&w| self.leq(z, w)))
            .collect();
        match least.as_slice() {
            [j] => Some(*j),
            _ => None,
        }
    }
}

/// Kahn's algorithm; on a cycle returns an element on it.
fn topological_order(up: &[Vec<Elem>], down: &[Vec<Elem>]) -> Result<Vec<Elem>, Elem> {
    let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
    let mut ready: Vec<Elem> = (0..up.len()).rev().map(Elem).filter(|e| indeg[e.0] == 0).collect();
    let mut order = Vec::with_capacity(up.len());
    while let Some(x) = ready.pop() {
        order.push(x);
        for &y in &up[x.0] {
            indeg[y.0] -= 1;
            if indeg[y.0] == 0 {
                ready.push(y);
            }
        }
    }
    if order.len() == up.len() {
        Ok(order)
    } else {
        Err((0..up.len()).map(Elem).find(|e| indeg[e.0] > 0).expect("cycle member"))
    }
}
