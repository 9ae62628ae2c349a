//! Brute-force enumeration of interlacing pairs, increasing-decreasing chains
//! and the inclusion-exclusion sets `A_ℓ(S)`, `B_ℓ(T)`, `B°_ℓ(T)`. Everything
//! here is exponential and meant for posets of rank at most 3.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ncpoly::{AbWord, Letter};
use crate::poset::{Chain, Elem, Exclude, GradedPoset, Multichain, PosetError};
use crate::rankset::{ESet, RankSet};
use crate::rlabel::{self, is_decreasing, is_weakly_increasing, CoverLabeling};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("D does not interlace C")]
    NotInterlacing,
    #[error("R = {r} meets I_E = {ie}")]
    ROverlapsIE { r: RankSet, ie: RankSet },
    #[error("E = {e} is not a subset of 1..={n}")]
    BadE { e: RankSet, n: usize },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// `C_1 ≤ D_1 ≤ C_2 ≤ … ≤ C_k ≤ D_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InterlacingPair {
    pub c: Chain,
    pub d: Multichain,
}

impl InterlacingPair {
    pub fn new(poset: &GradedPoset, c: Chain, d: Multichain) -> Result<Self, OracleError> {
        if c.len() != d.len() {
            return Err(OracleError::NotInterlacing);
        }
        let ok = (0..c.len()).all(|i| {
            let (ci, di) = (c.elems()[i], d.elems()[i]);
            poset.leq(ci, di) && c.elems().get(i + 1).is_none_or(|&next| poset.leq(di, next))
        });
        if !ok {
            return Err(OracleError::NotInterlacing);
        }
        Ok(Self { c, d })
    }

    /// `irank(C, D) = Σ rank(D_i) - rank(C_i)`.
    pub fn irank(&self, poset: &GradedPoset) -> usize {
        self.c
            .elems()
            .iter()
            .zip(self.d.elems())
            .map(|(&c, &d)| poset.rank_of(d) - poset.rank_of(c))
            .sum()
    }

    /// `IRank(C, D) = ⋃ { rank(C_i)+1, …, rank(D_i) }`.
    pub fn irank_set(&self, poset: &GradedPoset) -> RankSet {
        let mut s = RankSet::EMPTY;
        for (&c, &d) in self.c.elems().iter().zip(self.d.elems()) {
            s = s.union(RankSet::range(poset.rank_of(c) + 1, poset.rank_of(d)));
        }
        s
    }
}

/// `(C, D, M)` with `M ∈ IncDec(C, D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub c: Chain,
    pub d: Multichain,
    pub m: Chain,
}

/// Number of strictly label-decreasing maximal chains of `[x, y]`.
pub fn mobius_via_chains(poset: &GradedPoset, labeling: &CoverLabeling, x: Elem, y: Elem) -> Result<usize, PosetError> {
    if !poset.leq(x, y) {
        return Err(PosetError::NotComparable(poset.id(x).into(), poset.id(y).into()));
    }
    Ok(poset
        .maximal_chains_between(x, y)
        .iter()
        .filter(|m| is_decreasing(&labeling.along(m)))
        .count())
}

/// Every multichain `D` interlacing `C`.
pub fn interlacing_multichains(poset: &GradedPoset, c: &Chain) -> Vec<Multichain> {
    let cs = c.elems();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(cs.len());
    extend_interlacing(poset, cs, &mut current, &mut out);
    out
}

fn extend_interlacing(poset: &GradedPoset, cs: &[Elem], current: &mut Vec<Elem>, out: &mut Vec<Multichain>) {
    let i = current.len();
    if i == cs.len() {
        out.push(Multichain::from_sorted(current.clone()));
        return;
    }
    let upper = cs.get(i + 1).copied().unwrap_or(poset.top());
    for d in poset.interval(cs[i], upper) {
        current.push(d);
        extend_interlacing(poset, cs, current, out);
        current.pop();
    }
}

/// Whether `M` (a maximal chain) passes through every element of the pair and
/// decreases on each `[C_i, D_i]` while weakly increasing on the gaps.
pub fn is_incdec(poset: &GradedPoset, labeling: &CoverLabeling, pair: &InterlacingPair, m: &Chain) -> bool {
    let me = m.elems();
    let labels = labeling.along(me);
    let pos = |e: Elem| poset.rank_of(e);
    if !pair
        .c
        .elems()
        .iter()
        .chain(pair.d.elems())
        .all(|&e| me.get(pos(e)) == Some(&e))
    {
        return false;
    }
    // positions are ranks along M; segment [p, q] covers labels p..q
    let mut cursor = 0;
    for (&c, &d) in pair.c.elems().iter().zip(pair.d.elems()) {
        if !is_weakly_increasing(&labels[cursor..pos(c)]) || !is_decreasing(&labels[pos(c)..pos(d)]) {
            return false;
        }
        cursor = pos(d);
    }
    is_weakly_increasing(&labels[cursor..])
}

/// `IncDec(C, D)`.
pub fn incdec(poset: &GradedPoset, labeling: &CoverLabeling, pair: &InterlacingPair) -> Vec<Chain> {
    poset
        .maximal_chains()
        .into_iter()
        .filter(|m| is_incdec(poset, labeling, pair, m))
        .collect()
}

/// Every `A_ℓ(S)` at once, keyed by `(ℓ, S)`; empty cells are absent.
pub fn all_a_sets(poset: &GradedPoset, labeling: &CoverLabeling) -> BTreeMap<(usize, RankSet), BTreeSet<Triple>> {
    let mut out: BTreeMap<(usize, RankSet), BTreeSet<Triple>> = BTreeMap::new();
    let maximal = poset.maximal_chains();
    for c in poset.chains(Exclude::TOP) {
        let s = c.rank_set(poset);
        for d in interlacing_multichains(poset, &c) {
            let pair = InterlacingPair { c: c.clone(), d };
            let l = pair.irank(poset);
            for m in maximal.iter().filter(|m| is_incdec(poset, labeling, &pair, m)) {
                out.entry((l, s)).or_default().insert(Triple {
                    c: pair.c.clone(),
                    d: pair.d.clone(),
                    m: m.clone(),
                });
            }
        }
    }
    out
}

/// `A_ℓ(S)`.
pub fn a_set(poset: &GradedPoset, labeling: &CoverLabeling, l: usize, s: RankSet) -> BTreeSet<Triple> {
    all_a_sets(poset, labeling).remove(&(l, s)).unwrap_or_default()
}

/// `φ_{S,T}`: adds `M_r` for `r ∈ T ∖ S` to both `C` and (as a multiset) `D`.
pub fn phi(poset: &GradedPoset, triple: &Triple, s: RankSet, t: RankSet) -> Triple {
    let mut c = triple.c.clone();
    let mut d = triple.d.clone();
    for r in t.difference(s).iter() {
        let mr = triple.m.elems()[r];
        c = c.with(poset, mr);
        d = d.with(poset, mr);
    }
    Triple {
        c,
        d,
        m: triple.m.clone(),
    }
}

fn b_generic(
    poset: &GradedPoset,
    a_sets: &BTreeMap<(usize, RankSet), BTreeSet<Triple>>,
    l: usize,
    t: RankSet,
    base: RankSet,
) -> BTreeSet<Triple> {
    let mut out = a_sets.get(&(l, t.union(base))).cloned().unwrap_or_default();
    for s in t.subsets().filter(|&s| s != t) {
        let (from, to) = (s.union(base), t.union(base));
        for tr in a_sets.get(&(l, from)).into_iter().flatten() {
            out.remove(&phi(poset, tr, from, to));
        }
    }
    out
}

/// `B_ℓ(T) = A_ℓ(T) ∖ ⋃_{S ⊊ T} φ_{S,T}(A_ℓ(S))`.
pub fn b_set(poset: &GradedPoset, labeling: &CoverLabeling, l: usize, t: RankSet) -> BTreeSet<Triple> {
    b_set_from(poset, &all_a_sets(poset, labeling), l, t)
}

/// [`b_set`] reusing precomputed [`all_a_sets`].
pub fn b_set_from(
    poset: &GradedPoset,
    a_sets: &BTreeMap<(usize, RankSet), BTreeSet<Triple>>,
    l: usize,
    t: RankSet,
) -> BTreeSet<Triple> {
    b_generic(poset, a_sets, l, t, RankSet::EMPTY)
}

/// `B°_ℓ(T) = A_ℓ(T ∪ {0}) ∖ ⋃_{S ⊊ T} φ(A_ℓ(S ∪ {0}))` for `T ⊆ {1, …, n-1}`.
pub fn b_circ_set(poset: &GradedPoset, labeling: &CoverLabeling, l: usize, t: RankSet) -> BTreeSet<Triple> {
    b_circ_set_from(poset, &all_a_sets(poset, labeling), l, t)
}

/// [`b_circ_set`] reusing precomputed [`all_a_sets`].
pub fn b_circ_set_from(
    poset: &GradedPoset,
    a_sets: &BTreeMap<(usize, RankSet), BTreeSet<Triple>>,
    l: usize,
    t: RankSet,
) -> BTreeSet<Triple> {
    b_generic(poset, a_sets, l, t, RankSet::EMPTY.with(0))
}

/// `u_T = w_0 ⋯ w_{n-1}` with `b` exactly at the positions in `T`.
pub fn u_t(t: RankSet, n: usize) -> AbWord {
    AbWord::with_b_at(n, t)
}

/// `u_T = w_1 ⋯ w_{n-1}` for `T ⊆ {1, …, n-1}`.
pub fn u_t_circ(t: RankSet, n: usize) -> AbWord {
    AbWord::with_b_at(n.saturating_sub(1), RankSet::from_bits(t.bits() >> 1))
}

/// `I_E = { i ∈ {0, …, n-1} : i ∉ E, i+1 ∈ E }`.
pub fn i_set(e: ESet, n: usize) -> RankSet {
    (0..n).filter(|&i| !e.contains(i) && e.contains(i + 1)).collect()
}

/// `J_E = { i ∈ {1, …, n} : i ∈ E, i+1 ∉ E }`.
pub fn j_set(e: ESet, n: usize) -> RankSet {
    (1..=n).filter(|&i| e.contains(i) && !e.contains(i + 1)).collect()
}

/// `T_{M,E}`, read off from `u(M)`.
pub fn t_set(poset: &GradedPoset, m: &Chain, e: ESet, labeling: &CoverLabeling) -> Result<RankSet, OracleError> {
    let n = poset.rank();
    check_e(e, n)?;
    let u = rlabel::u_monomial(poset, m, labeling).map_err(|_| PosetError::NotAChain(poset.ids_of(m.elems())))?;
    Ok((0..n)
        .filter(|&i| {
            let (a, b) = (e.contains(i), e.contains(i + 1));
            match u.get(i) {
                Letter::A => a && b,
                Letter::B => !a && !b,
            }
        })
        .collect())
}

fn check_e(e: ESet, n: usize) -> Result<(), OracleError> {
    if e.iter().any(|i| i == 0 || i > n) {
        return Err(OracleError::BadE { e, n });
    }
    Ok(())
}

/// `(C_R, D_R)` with `C_R = {M_i : i ∈ I_E ∪ R}` and `D_R = ⟅M_i : i ∈ J_E ⊔ R⟆`.
pub fn c_r_d_r(poset: &GradedPoset, m: &Chain, e: ESet, r: RankSet) -> Result<InterlacingPair, OracleError> {
    let n = poset.rank();
    check_e(e, n)?;
    let ie = i_set(e, n);
    if !ie.intersection(r).is_empty() || r.max().is_some_and(|x| x > n) {
        return Err(OracleError::ROverlapsIE { r, ie });
    }
    let me = m.elems();
    let c = Chain::from_sorted(ie.union(r).iter().map(|i| me[i]).collect());
    let mut d: Vec<Elem> = j_set(e, n).iter().chain(r.iter()).map(|i| me[i]).collect();
    d.sort_by_key(|&x| poset.rank_of(x));
    InterlacingPair::new(poset, c, Multichain::from_sorted(d))
}

/// Number of `(M, E)` with `#E = ℓ` and `u(M, E) = w`.
pub fn count_u_words(poset: &GradedPoset, labeling: &CoverLabeling, l: usize, w: &AbWord) -> usize {
    let n = poset.rank();
    let mut count = 0;
    for m in poset.maximal_chains() {
        let u = rlabel::u_monomial(poset, &m, labeling).expect("maximal chain");
        for e in RankSet::range(1, n).subsets().filter(|e| e.len() == l) {
            if rlabel::toggle(&u, e).expect("E in range") == *w {
                count += 1;
            }
        }
    }
    count
}

/// `Rank(C) ∖ Rank(D)` and `Rank(D) ∖ Rank(C)` as multiset differences.
pub fn rank_differences(poset: &GradedPoset, pair: &InterlacingPair) -> (Vec<usize>, Vec<usize>) {
    let cr: Vec<usize> = pair.c.elems().iter().map(|&e| poset.rank_of(e)).collect();
    let mut dr: Vec<usize> = pair.d.elems().iter().map(|&e| poset.rank_of(e)).collect();
    let mut c_only = Vec::new();
    for r in cr {
        match dr.iter().position(|&x| x == r) {
            Some(i) => {
                dr.remove(i);
            }
            None => c_only.push(r),
        }
    }
    (c_only, dr)
}

/// Runs every brute-force identity against `ex` (the extended ab-index of
/// `poset`). Returns a one-line summary, or a description of the first
/// mismatch.
pub fn certify(poset: &GradedPoset, labeling: &CoverLabeling, ex: &crate::ncpoly::AbPoly) -> Result<String, String> {
    let n = poset.rank();
    // decreasing chains count |μ| on every interval
    let mut intervals = 0;
    for x in poset.elements() {
        for y in poset.elements().filter(|&y| poset.leq(x, y)) {
            let dec = mobius_via_chains(poset, labeling, x, y).map_err(|e| e.to_string())?;
            let mu = poset.mobius(x, y).map_err(|e| e.to_string())?;
            if dec as u64 != mu.unsigned_abs() {
                return Err(format!(
                    "[{}, {}]: {dec} decreasing chains but |μ| = {}",
                    poset.id(x),
                    poset.id(y),
                    mu.unsigned_abs()
                ));
            }
            intervals += 1;
        }
    }
    // chain Poincaré polynomial as a sum over interlacing multichains
    let all_chains = poset.chains(Exclude::NONE);
    for c in &all_chains {
        let mut coeffs = vec![0i64; n + 1];
        for d in interlacing_multichains(poset, c) {
            let pair = InterlacingPair { c: c.clone(), d };
            coeffs[pair.irank(poset)] += incdec(poset, labeling, &pair).len() as i64;
        }
        let got = crate::ypoly::YPoly::from_i64s(&coeffs);
        let want = poset.chain_poincare(c);
        if got != want {
            return Err(format!(
                "chain {:?}: IncDec expansion {got} != Poin_C {want}",
                poset.ids_of(c.elems())
            ));
        }
    }
    // B_ℓ(T) against coefficients and against the (M, E) count, plus the
    // explicit bijection (M, E) ↦ (C_T, D_T, M)
    let a_sets = all_a_sets(poset, labeling);
    let mut images: BTreeMap<(usize, RankSet), BTreeSet<Triple>> = BTreeMap::new();
    for m in poset.maximal_chains() {
        for e in RankSet::range(1, n).subsets() {
            let t = t_set(poset, &m, e, labeling).map_err(|e| e.to_string())?;
            let pair = c_r_d_r(poset, &m, e, t).map_err(|e| e.to_string())?;
            if pair.irank_set(poset) != e {
                return Err(format!("IRank(C_T, D_T) != E = {e}"));
            }
            let key = (e.len(), pair.c.rank_set(poset));
            let fresh = images.entry(key).or_default().insert(Triple {
                c: pair.c,
                d: pair.d,
                m: m.clone(),
            });
            if !fresh {
                return Err(format!("(M, E) ↦ (C_T, D_T, M) is not injective at E = {e}"));
            }
        }
    }
    let mut cells = 0;
    let universe = if n == 0 {
        RankSet::EMPTY
    } else {
        RankSet::range(0, n - 1)
    };
    for t in universe.subsets() {
        let w = u_t(t, n);
        for l in 0..=n {
            let b = b_set_from(poset, &a_sets, l, t);
            let coeff = ex.coeff(&w).coeff(l);
            if num_bigint::BigInt::from(b.len()) != coeff {
                return Err(format!("#B_{l}({t}) = {} but [y^{l} {w}] exΨ = {coeff}", b.len()));
            }
            let pairs = count_u_words(poset, labeling, l, &w);
            if pairs != b.len() {
                return Err(format!("#B_{l}({t}) = {} but {pairs} pairs (M, E) give {w}", b.len()));
            }
            if images.get(&(l, t)).cloned().unwrap_or_default() != b {
                return Err(format!("image of (M, E) ↦ (C_T, D_T, M) differs from B_{l}({t})"));
            }
            cells += 1;
        }
    }
    // B°_ℓ(T) against ι(exΨ)
    if n >= 1 {
        let iex = crate::ncpoly::iota(ex).map_err(|e| e.to_string())?;
        for t in RankSet::range(1, n - 1).subsets() {
            let w = u_t_circ(t, n);
            for l in 0..=n {
                let b = b_circ_set_from(poset, &a_sets, l, t).len();
                let coeff = iex.coeff(&w).coeff(l);
                if num_bigint::BigInt::from(b) != coeff {
                    return Err(format!("#B°_{l}({t}) = {b} but [y^{l} {w}] ι(exΨ) = {coeff}"));
                }
            }
        }
    }
    // IRank(C, D) = E  ⇔  multiset rank differences are I_E and J_E
    for c in poset.chains(Exclude::NONE) {
        for d in interlacing_multichains(poset, &c) {
            let pair = InterlacingPair { c: c.clone(), d };
            let (c_only, d_only) = rank_differences(poset, &pair);
            let irank = pair.irank_set(poset);
            for e in RankSet::range(1, n).subsets() {
                let matches = c_only == i_set(e, n).iter().collect::<Vec<_>>()
                    && d_only == j_set(e, n).iter().collect::<Vec<_>>();
                if matches != (irank == e) {
                    return Err(format!(
                        "IRank characterization fails for C = {:?}, D = {:?}, E = {e}",
                        poset.ids_of(pair.c.elems()),
                        poset.ids_of(pair.d.elems())
                    ));
                }
            }
        }
    }
    Ok(format!(
        "{intervals} intervals, {} chains, {cells} (ℓ, T) cells agree",
        all_chains.len()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::ypoly::YPoly;

    fn setup() -> (GradedPoset, CoverLabeling) {
        let l = families::three_lines();
        let (lab, verdict) = rlabel::min_atom_labeling(&l, None).unwrap();
        verdict.unwrap();
        (l, lab)
    }

    fn rs(v: &[usize]) -> RankSet {
        v.iter().copied().collect()
    }

    fn chain(l: &GradedPoset, ids: &[&str]) -> Chain {
        Chain::from_ids(l, ids).unwrap()
    }

    fn multi(l: &GradedPoset, ids: &[&str]) -> Multichain {
        Multichain::new(l, ids.iter().map(|s| l.elem(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn decreasing_chain_counts() {
        let (l, lab) = setup();
        assert_eq!(mobius_via_chains(&l, &lab, l.bottom(), l.top()).unwrap(), 2);
        assert_eq!(mobius_via_chains(&l, &lab, l.top(), l.top()).unwrap(), 1);
        let a1 = l.elem("a1").unwrap();
        assert_eq!(mobius_via_chains(&l, &lab, l.bottom(), a1).unwrap(), 1);
        assert!(mobius_via_chains(&l, &lab, a1, l.bottom()).is_err());
    }

    #[test]
    fn incdec_examples() {
        let (l, lab) = setup();
        let pair = InterlacingPair::new(&l, chain(&l, &["0"]), multi(&l, &["a1"])).unwrap();
        assert_eq!(incdec(&l, &lab, &pair), vec![chain(&l, &["0", "a1", "1"])]);
        let empty = InterlacingPair::new(&l, Chain::empty(), Multichain::default()).unwrap();
        assert_eq!(incdec(&l, &lab, &empty), vec![chain(&l, &["0", "a1", "1"])]);
        let top = InterlacingPair::new(&l, chain(&l, &["a1"]), multi(&l, &["1"])).unwrap();
        assert_eq!(incdec(&l, &lab, &top).len(), 1);
        assert_eq!(
            InterlacingPair::new(&l, chain(&l, &["a1"]), multi(&l, &["0"])),
            Err(OracleError::NotInterlacing)
        );
    }

    #[test]
    fn table_counts() {
        let (l, lab) = setup();
        assert_eq!(a_set(&l, &lab, 1, rs(&[0])).len(), 3);
        assert_eq!(b_set(&l, &lab, 0, rs(&[1])).len(), 2);
        assert_eq!(b_set(&l, &lab, 2, rs(&[0, 1])).len(), 1);
        let circ = |t: RankSet| YPoly::from_coeffs((0..=2).map(|k| b_circ_set(&l, &lab, k, t).len().into()).collect());
        assert_eq!(circ(RankSet::EMPTY), YPoly::from_i64s(&[1, 3, 2]));
        assert_eq!(circ(rs(&[1])), YPoly::from_i64s(&[2, 3, 1]));
    }

    #[test]
    fn b_circ_rank_one() {
        let c = families::chain(1);
        let (lab, _) = rlabel::min_atom_labeling(&c, None).unwrap();
        assert_eq!(b_circ_set(&c, &lab, 0, RankSet::EMPTY).len(), 1);
    }

    #[test]
    fn pairs_from_table() {
        let (l, lab) = setup();
        let m1 = chain(&l, &["0", "a1", "1"]);
        let m2 = chain(&l, &["0", "a2", "1"]);
        let pair = |m: &Chain, e: &[usize]| {
            let e = rs(e);
            let t = t_set(&l, m, e, &lab).unwrap();
            c_r_d_r(&l, m, e, t).unwrap()
        };
        let expect = |c: &[&str], d: &[&str]| InterlacingPair {
            c: chain(&l, c),
            d: multi(&l, d),
        };
        assert_eq!(pair(&m1, &[]), expect(&[], &[]));
        assert_eq!(pair(&m1, &[1]), expect(&["0"], &["a1"]));
        assert_eq!(pair(&m1, &[2]), expect(&["a1"], &["1"]));
        assert_eq!(pair(&m1, &[1, 2]), expect(&["0", "a1"], &["a1", "1"]));
        assert_eq!(pair(&m2, &[]), expect(&["a2"], &["a2"]));
        assert_eq!(pair(&m2, &[1, 2]), expect(&["0"], &["1"]));
        assert!(matches!(
            c_r_d_r(&l, &m1, rs(&[1]), rs(&[0])),
            Err(OracleError::ROverlapsIE { .. })
        ));
    }

    #[test]
    fn certify_small_corpus() {
        for (name, p) in families::small_corpus() {
            let lab = match rlabel::min_atom_labeling(&p, None) {
                Ok((lab, Ok(()))) => lab,
                _ => {
                    // chains: any labeling is an R-labeling
                    CoverLabeling::new(&p, p.covers().map(|c| (c, 1)).collect()).unwrap()
                }
            };
            if p.rank() > 3 {
                continue;
            }
            let ex = crate::extab::extab_by_chains(&p);
            certify(&p, &lab, &ex).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}
