//! Named identity checks run by `exab verify`.

use std::fmt;

use num_bigint::BigInt;

use crate::extab;
use crate::ncpoly::{self, AbPoly};
use crate::oracle;
use crate::poset::GradedPoset;
use crate::rlabel::CoverLabeling;

/// Largest rank on which the brute-force oracle is run.
pub const ORACLE_MAX_RANK: usize = 3;

pub const ALL_CHECKS: [&str; 8] = [
    "theorem",
    "omega",
    "symmetry",
    "nonneg",
    "lowerbound",
    "oracle",
    "poincare",
    "identities",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.status, self.name, self.detail)
    }
}

/// What is known about an R-labeling of the poset under test.
#[derive(Clone, Debug)]
pub enum Labeling {
    /// Verified R-labeling.
    Verified(CoverLabeling),
    /// A labeling was supplied by the user and is not usable; checks that
    /// need one fail with this message.
    Rejected(String),
    /// No labeling could be obtained; checks that need one are skipped.
    Unavailable(String),
}

/// Runs the checks against one poset, sharing the expensive computations.
pub struct Checker<'a> {
    poset: &'a GradedPoset,
    labeling: Labeling,
    ex: AbPoly,
    psi: AbPoly,
}

fn report(name: &'static str, status: Status, detail: impl Into<String>) -> Report {
    Report {
        name,
        status,
        detail: detail.into(),
    }
}

fn verdict(name: &'static str, ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> Report {
    if ok {
        report(name, Status::Pass, pass)
    } else {
        report(name, Status::Fail, fail)
    }
}

impl<'a> Checker<'a> {
    pub fn new(poset: &'a GradedPoset, labeling: Labeling) -> Self {
        let ex = extab::extab_by_chains(poset);
        let psi = ex.eval_y(0);
        Self {
            poset,
            labeling,
            ex,
            psi,
        }
    }

    /// Runs `name`, one of [`ALL_CHECKS`].
    pub fn run(&self, name: &str) -> Report {
        match name {
            "theorem" => self.theorem(),
            "omega" => self.omega(),
            "symmetry" => self.symmetry(),
            "nonneg" => self.nonneg(),
            "lowerbound" => self.lower_bound(),
            "oracle" => self.oracle(),
            "poincare" => self.poincare(),
            "identities" => self.identities(),
            other => panic!("unknown check `{other}`"),
        }
    }

    /// `Ok(labeling)`, or the report to emit instead.
    fn need_labeling(&self, name: &'static str) -> Result<&CoverLabeling, Report> {
        match &self.labeling {
            Labeling::Verified(l) => Ok(l),
            Labeling::Rejected(msg) => Err(report(name, Status::Fail, msg.clone())),
            Labeling::Unavailable(msg) => Err(report(name, Status::Skip, msg.clone())),
        }
    }

    /// Checks that only hold for R-labeled posets are skipped when no
    /// R-labeling is known.
    fn need_r_labeled(&self, name: &'static str) -> Option<Report> {
        match &self.labeling {
            Labeling::Verified(_) => None,
            Labeling::Rejected(msg) | Labeling::Unavailable(msg) => Some(report(
                name,
                Status::Skip,
                format!("requires an R-labeled poset ({msg})"),
            )),
        }
    }

    fn theorem(&self) -> Report {
        const NAME: &str = "theorem";
        let lab = match self.need_labeling(NAME) {
            Ok(l) => l,
            Err(r) => return r,
        };
        match extab::extab_by_labeling(self.poset, lab) {
            Ok(by_lab) => verdict(
                NAME,
                by_lab == self.ex,
                "exΨ by chains equals the sum over (M, E)",
                format!("by chains {} but by labeling {}", self.ex, by_lab),
            ),
            Err(e) => report(NAME, Status::Fail, e.to_string()),
        }
    }

    fn omega(&self) -> Report {
        const NAME: &str = "omega";
        if let Some(r) = self.need_r_labeled(NAME) {
            return r;
        }
        let w = ncpoly::omega(&self.psi);
        verdict(
            NAME,
            w == self.ex,
            "ω(Ψ) = exΨ",
            format!("ω(Ψ) = {w} but exΨ = {}", self.ex),
        )
    }

    fn symmetry(&self) -> Report {
        const NAME: &str = "symmetry";
        if let Some(r) = self.need_r_labeled(NAME) {
            return r;
        }
        let n = self.poset.rank();
        match extab::symmetry_violation(&self.ex, n) {
            None => report(NAME, Status::Pass, "[y^ℓ m] exΨ = [y^(n-ℓ) m^c] exΨ for all m, ℓ"),
            Some((m, l)) => report(NAME, Status::Fail, format!("fails at m = {m}, ℓ = {l}")),
        }
    }

    fn nonneg(&self) -> Report {
        const NAME: &str = "nonneg";
        if let Some(r) = self.need_r_labeled(NAME) {
            return r;
        }
        if !self.ex.is_nonnegative() {
            return report(
                NAME,
                Status::Fail,
                format!("exΨ has a negative coefficient: {}", self.ex),
            );
        }
        match extab::num_poly(self.poset) {
            Ok(num) => verdict(
                NAME,
                num.is_nonnegative(),
                "exΨ and Num have nonnegative coefficients",
                format!("Num has a negative coefficient: {num}"),
            ),
            Err(_) => report(
                NAME,
                Status::Pass,
                "exΨ has nonnegative coefficients (Num undefined at rank 0)",
            ),
        }
    }

    fn lower_bound(&self) -> Report {
        const NAME: &str = "lowerbound";
        if let Some(r) = self.need_r_labeled(NAME) {
            return r;
        }
        let n = self.poset.rank();
        let Ok(num) = extab::num_poly(self.poset) else {
            return report(NAME, Status::Skip, "Num is undefined at rank 0");
        };
        let poin = self.poset.poincare();
        match extab::lower_bound_violation(&num, &poin, n) {
            None => report(NAME, Status::Pass, "[t^k] Num(P;1,t) ≥ C(n-1,k)·Poin(P;1) for all k"),
            Some(k) => report(NAME, Status::Fail, format!("bound fails at k = {k}")),
        }
    }

    fn oracle(&self) -> Report {
        const NAME: &str = "oracle";
        let lab = match self.need_labeling(NAME) {
            Ok(l) => l,
            Err(r) => return r,
        };
        if self.poset.rank() > ORACLE_MAX_RANK {
            return report(
                NAME,
                Status::Skip,
                format!("rank {} exceeds the oracle limit {ORACLE_MAX_RANK}", self.poset.rank()),
            );
        }
        match oracle::certify(self.poset, lab, &self.ex) {
            Ok(summary) => report(NAME, Status::Pass, summary),
            Err(e) => report(NAME, Status::Fail, e),
        }
    }

    fn poincare(&self) -> Report {
        const NAME: &str = "poincare";
        let lab = match self.need_labeling(NAME) {
            Ok(l) => l,
            Err(r) => return r,
        };
        if self.poset.rank() == 0 {
            return report(NAME, Status::Skip, "Num and ι are undefined at rank 0");
        }
        let poin = self.poset.poincare();
        let from_ab = match extab::poincare_from_ab(self.poset, lab) {
            Ok(p) => p,
            Err(e) => return report(NAME, Status::Fail, e.to_string()),
        };
        let from_num = extab::num_poly(self.poset).expect("rank ≥ 1").t_coeff(0);
        let via_lab = extab::num_from_extab(self.poset, lab).expect("verified labeling");
        let num = extab::num_poly(self.poset).expect("rank ≥ 1");
        verdict(
            NAME,
            from_ab == poin && from_num == poin && via_lab == num,
            format!("Poin = [a^(n-1)] ι(ω(Ψ)) = [t^0] Num = {poin}"),
            format!("Poin = {poin}, from ab-index {from_ab}, from Num {from_num}; Num routes {num} / {via_lab}"),
        )
    }

    fn identities(&self) -> Report {
        const NAME: &str = "identities";
        let p = self.poset;
        let n = p.rank();
        let chains = BigInt::from(p.maximal_chains().len());
        let mut failures = Vec::new();
        if &self.ex * &AbPoly::a() != extab::right_a_identity_rhs(p) {
            failures.push("exΨ·a != Σ Poin_C wt⁺_C".to_string());
        }
        if self.psi.eval_all(0, 1, 1) != chains {
            failures.push(format!("Ψ(1,1) != {chains} maximal chains"));
        }
        let expected = &chains * (BigInt::from(1) << n);
        if self.ex.eval_all(1, 1, 1) != expected {
            failures.push(format!("exΨ(1,1,1) != {expected}"));
        }
        if n >= 1 {
            if self.psi != extab::ab_identity_rhs(p).expect("rank ≥ 1") {
                failures.push("Ψ != a·Σ wt⁻_C".to_string());
            }
            if matches!(self.labeling, Labeling::Verified(_)) {
                let lhs = ncpoly::iota(&self.ex).expect("rank ≥ 1");
                if lhs != extab::iota_identity_rhs(p).expect("rank ≥ 1") {
                    failures.push("ι(exΨ) != Σ Poin_{0̂∪C} wt⁻_C".to_string());
                }
            }
        }
        verdict(
            NAME,
            failures.is_empty(),
            format!("chain-sum identities hold; Ψ(1,1) = {chains}, exΨ(1,1,1) = {expected}"),
            failures.join("; "),
        )
    }
}
