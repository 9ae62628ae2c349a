//! The extended ab-index and the invariants derived from it.

use thiserror::Error;

use crate::ncpoly::{self, block_decompose, chain_weight, AbPoly, AbWord, CdLetter, CdPoly, CdWord, WeightVariant};
use crate::poset::{Chain, Exclude, GradedPoset};
use crate::rankset::RankSet;
use crate::rlabel::{self, CoverLabeling, LabelError, RWitness};
use crate::ypoly::{YPoly, YTPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtabError {
    #[error("the poset has rank 0; this invariant needs rank at least 1")]
    RankZero,
    #[error(transparent)]
    NotRLabeling(#[from] RWitness),
    #[error(transparent)]
    Label(LabelError),
}

impl From<LabelError> for ExtabError {
    fn from(e: LabelError) -> Self {
        match e {
            LabelError::NotRLabeling(w) => ExtabError::NotRLabeling(w),
            other => ExtabError::Label(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    ByChains,
    ByLabeling,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtAbResult {
    pub poly: AbPoly,
    pub algorithm: Algorithm,
    pub poset_rank: usize,
}

/// `exΨ` through the labeling when one is given, otherwise from the chain sum.
pub fn extab(poset: &GradedPoset, labeling: Option<&CoverLabeling>) -> Result<ExtAbResult, ExtabError> {
    let (poly, algorithm) = match labeling {
        Some(lab) => (extab_by_labeling(poset, lab)?, Algorithm::ByLabeling),
        None => (extab_by_chains(poset), Algorithm::ByChains),
    };
    Ok(ExtAbResult {
        poly,
        algorithm,
        poset_rank: poset.rank(),
    })
}

/// `Σ_{C ⊆ P∖{1̂}} Poin_C(P; y) · wt_C(a, b)`.
pub fn extab_by_chains(poset: &GradedPoset) -> AbPoly {
    let n = poset.rank();
    let mut out = AbPoly::zero();
    for c in poset.chains(Exclude::TOP) {
        let wt = chain_weight(c.rank_set(poset), n, WeightVariant::Standard).expect("ranks of chains below 1̂ are < n");
        out += &wt.scale(&poset.chain_poincare(&c));
    }
    out
}

/// `Σ_{(M, E)} y^{#E} u(M, E)` over maximal chains `M` and `E ⊆ {1, …, n}`.
pub fn extab_by_labeling(poset: &GradedPoset, labeling: &CoverLabeling) -> Result<AbPoly, ExtabError> {
    rlabel::verify_r_labeling(poset, labeling)?;
    let n = poset.rank();
    let mut out = AbPoly::zero();
    for m in poset.maximal_chains() {
        let u = rlabel::u_monomial(poset, &m, labeling)?;
        for e in RankSet::range(1, n).subsets() {
            out.add_term(rlabel::toggle(&u, e)?, &YPoly::monomial(1, e.len()));
        }
    }
    Ok(out)
}

/// `Ψ(P; a, b) = exΨ(P; 0, a, b)`.
pub fn ab_index(poset: &GradedPoset) -> AbPoly {
    extab_by_chains(poset).eval_y(0)
}

/// `Ψ_pull(P; a, b) = exΨ(P; 1, a, b)`.
pub fn pullback(poset: &GradedPoset) -> AbPoly {
    extab_by_chains(poset).eval_y(1)
}

fn with_bottom(poset: &GradedPoset, c: &Chain) -> Chain {
    c.with(poset, poset.bottom())
}

/// `Num(P; y, t) = Σ_{C ⊆ P∖{0̂,1̂}} Poin_{{0̂}∪C}(P; y) t^{#C} (1 - t)^{n-1-#C}`.
pub fn num_poly(poset: &GradedPoset) -> Result<YTPoly, ExtabError> {
    let n = poset.rank();
    if n == 0 {
        return Err(ExtabError::RankZero);
    }
    let mut out = YTPoly::zero();
    for c in poset.chains(Exclude::BOTH) {
        let poin = poset.chain_poincare(&with_bottom(poset, &c));
        out = &out + &YTPoly::ypoly_times_t_binomial(&poin, c.len(), n - 1 - c.len());
    }
    Ok(out)
}

/// `Num` as `ι(exΨ)` under `a ↦ 1`, `b ↦ t`, with `exΨ` from the labeling.
pub fn num_from_extab(poset: &GradedPoset, labeling: &CoverLabeling) -> Result<YTPoly, ExtabError> {
    if poset.rank() == 0 {
        return Err(ExtabError::RankZero);
    }
    let ex = extab_by_labeling(poset, labeling)?;
    Ok(ncpoly::iota(&ex).expect("words have length n ≥ 1").specialize_ab())
}

/// `[a^{n-1}] ι(ω(Ψ))` for an ab-index `psi` of a rank-`n` poset.
pub fn poincare_from_psi(psi: &AbPoly, n: usize) -> Result<YPoly, ExtabError> {
    if n == 0 {
        return Err(ExtabError::RankZero);
    }
    let iw = ncpoly::iota(&ncpoly::omega(psi)).map_err(|_| ExtabError::RankZero)?;
    Ok(iw.coeff(&AbWord::repeat(ncpoly::Letter::A, n - 1)))
}

/// `Poin(P; y) = [a^{n-1}] ι(ω(Ψ(P; a, b)))` with `Ψ` computed from the labeling.
pub fn poincare_from_ab(poset: &GradedPoset, labeling: &CoverLabeling) -> Result<YPoly, ExtabError> {
    let psi = extab_by_labeling(poset, labeling)?.eval_y(0);
    poincare_from_psi(&psi, poset.rank())
}

/// Maps the block decomposition of an `a`-leading word to a cd-word: `a ↦ c₁`,
/// `a b^j ↦ d c₂^{j-1}`.
pub fn cd_word_of(u: &AbWord) -> CdWord {
    let mut letters = Vec::new();
    for j in block_decompose(u).expect("u(M) starts with a") {
        if j == 0 {
            letters.push(CdLetter::C1);
        } else {
            letters.push(CdLetter::D);
            letters.extend(std::iter::repeat_n(CdLetter::C2, j - 1));
        }
    }
    CdWord(letters)
}

/// `Φ(P; c₁, c₂, d) = Σ_M π(u(M))`.
pub fn cd_index(poset: &GradedPoset, labeling: &CoverLabeling) -> Result<CdPoly, ExtabError> {
    rlabel::verify_r_labeling(poset, labeling)?;
    let mut out = CdPoly::zero();
    for m in poset.maximal_chains() {
        let u = rlabel::u_monomial(poset, &m, labeling)?;
        out.add_term(cd_word_of(&u), &YPoly::one());
    }
    Ok(out)
}

/// `Σ_{C ⊆ P∖{0̂,1̂}} Poin_{{0̂}∪C}(P; y) · wt⁻_C(a, b)`, which equals `ι(exΨ)`.
pub fn iota_identity_rhs(poset: &GradedPoset) -> Result<AbPoly, ExtabError> {
    let n = poset.rank();
    if n == 0 {
        return Err(ExtabError::RankZero);
    }
    let mut out = AbPoly::zero();
    for c in poset.chains(Exclude::BOTH) {
        let wt = chain_weight(c.rank_set(poset), n, WeightVariant::Minus).expect("interior ranks");
        out += &wt.scale(&poset.chain_poincare(&with_bottom(poset, &c)));
    }
    Ok(out)
}

/// `Σ_{C ⊆ P} Poin_C(P; y) · wt⁺_C(a, b)`, which equals `exΨ · a`.
pub fn right_a_identity_rhs(poset: &GradedPoset) -> AbPoly {
    let n = poset.rank();
    let mut out = AbPoly::zero();
    for c in poset.chains(Exclude::NONE) {
        let wt = chain_weight(c.rank_set(poset), n, WeightVariant::Plus).expect("ranks ≤ n");
        out += &wt.scale(&poset.chain_poincare(&c));
    }
    out
}

/// `a · Σ_{C ⊆ P∖{0̂,1̂}} wt⁻_C(a, b)`, which equals `Ψ(P; a, b)`.
pub fn ab_identity_rhs(poset: &GradedPoset) -> Result<AbPoly, ExtabError> {
    let n = poset.rank();
    if n == 0 {
        return Err(ExtabError::RankZero);
    }
    let mut sum = AbPoly::zero();
    for c in poset.chains(Exclude::BOTH) {
        sum += &chain_weight(c.rank_set(poset), n, WeightVariant::Minus).expect("interior ranks");
    }
    Ok(&AbPoly::a() * &sum)
}

/// The first `(word, ℓ)` violating `[y^ℓ m] exΨ = [y^{n-ℓ} m^c] exΨ`, if any.
pub fn symmetry_violation(ex: &AbPoly, n: usize) -> Option<(AbWord, usize)> {
    for bits in 0..1u64 << n {
        let m = AbWord::with_b_at(n, RankSet::from_bits(bits));
        let (c, cc) = (ex.coeff(&m), ex.coeff(&m.complement()));
        for l in 0..=n {
            if c.coeff(l) != cc.coeff(n - l) {
                return Some((m, l));
            }
        }
    }
    None
}

/// The first `k` with `[t^k] Num(P; 1, t) < C(n-1, k) · Poin(P; 1)`, if any.
pub fn lower_bound_violation(num: &YTPoly, poin: &YPoly, n: usize) -> Option<usize> {
    let at_one = num.eval_y(1);
    let p1 = poin.eval_i64(1);
    let mut binom = num_bigint::BigInt::from(1);
    for k in 0..n {
        let coeff = at_one.get(k).cloned().unwrap_or_default();
        if coeff < &binom * &p1 {
            return Some(k);
        }
        binom = binom * (n - 1 - k) / (k + 1);
    }
    None
}
