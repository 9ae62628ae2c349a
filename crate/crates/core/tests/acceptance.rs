//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//! All comparisons are exact; the only tolerances are the wall-clock limits.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use exab::arrangement::Arrangement;
use exab::extab;
use exab::families;
use exab::ncpoly::{self, cd_expand};
use exab::oracle;
use exab::poset::{Exclude, GradedPoset};
use exab::rlabel::{self, CoverLabeling};

type Corpus = Vec<(String, GradedPoset, CoverLabeling)>;

fn labeled_corpus() -> Result<Corpus, String> {
    common::corpus()
        .into_iter()
        .map(|(name, p)| match rlabel::min_atom_labeling(&p, None) {
            Ok((lab, Ok(()))) => Ok((name, p, lab)),
            Ok((_, Err(w))) => Err(format!("{name}: {w}")),
            Err(e) => Err(format!("{name}: {e}")),
        })
        .collect()
}

fn expect_eq(what: &str, got: impl ToString, want: &str) -> Result<(), String> {
    let got = got.to_string();
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got `{got}`, expected `{want}`"))
    }
}

fn golden() -> Result<String, String> {
    let l = families::three_lines();
    let (lab, verdict) = rlabel::min_atom_labeling(&l, None).map_err(|e| e.to_string())?;
    verdict.map_err(|e| e.to_string())?;
    let ex = extab::extab_by_labeling(&l, &lab).map_err(|e| e.to_string())?;
    expect_eq("exΨ", &ex, "a^2 + (3*y + 2*y^2)*b*a + (2 + 3*y)*a*b + (y^2)*b*b")?;
    expect_eq("Ψ", extab::ab_index(&l), "a^2 + (2)*a*b")?;
    expect_eq("Ψ_pull", extab::pullback(&l), "a^2 + (5)*b*a + (5)*a*b + b^2")?;
    expect_eq(
        "Num",
        extab::num_poly(&l).map_err(|e| e.to_string())?,
        "1 + 3*y + 2*y^2 + (2 + 3*y + y^2)*t",
    )?;
    expect_eq(
        "ι(exΨ)",
        ncpoly::iota(&ex).map_err(|e| e.to_string())?,
        "(1 + 3*y + 2*y^2)*a + (2 + 3*y + y^2)*b",
    )?;
    let cd = extab::cd_index(&l, &lab).map_err(|e| e.to_string())?;
    expect_eq("cd", &cd, "c1^2 + (2)*d")?;
    if cd_expand(&cd) != ex {
        return Err("cd_expand(cd) != exΨ".into());
    }
    let faces = common::three_lines().face_poset().map_err(|e| e.to_string())?;
    expect_eq(
        "face poset Ψ",
        extab::ab_index(&faces.poset),
        "a^3 + (5)*a*b*a + (5)*a*a*b + a*b^2",
    )?;
    Ok("7 canonical strings reproduced byte-exactly".into())
}

fn theorem(corpus: &Corpus) -> Result<String, String> {
    for (name, p, lab) in corpus {
        let by_lab = extab::extab_by_labeling(p, lab).map_err(|e| format!("{name}: {e}"))?;
        if by_lab != extab::extab_by_chains(p) {
            return Err(format!("{name}: chain sum and labeling sum differ"));
        }
    }
    Ok(format!("{} posets", corpus.len()))
}

fn omega(corpus: &Corpus) -> Result<String, String> {
    for (name, p, _) in corpus {
        let ex = extab::extab_by_chains(p);
        if ncpoly::omega(&extab::ab_index(p)) != ex {
            return Err(format!("{name}: ω(Ψ) != exΨ"));
        }
    }
    Ok(format!("{} posets", corpus.len()))
}

fn oracle_certification(corpus: &Corpus) -> Result<String, String> {
    let mut count = 0;
    for (name, p, lab) in corpus.iter().filter(|(_, p, _)| p.rank() <= 3) {
        let ex = extab::extab_by_chains(p);
        oracle::certify(p, lab, &ex).map_err(|e| format!("{name}: {e}"))?;
        count += 1;
    }
    Ok(format!("{count} posets of rank at most 3 certified"))
}

fn corollaries(corpus: &Corpus) -> Result<String, String> {
    for (name, p, lab) in corpus {
        let n = p.rank();
        let ex = extab::extab_by_chains(p);
        if let Some((m, l)) = extab::symmetry_violation(&ex, n) {
            return Err(format!("{name}: symmetry fails at {m}, ℓ = {l}"));
        }
        if !ex.is_nonnegative() {
            return Err(format!("{name}: exΨ has a negative coefficient"));
        }
        let num = extab::num_poly(p).map_err(|e| format!("{name}: {e}"))?;
        if !num.is_nonnegative() {
            return Err(format!("{name}: Num has a negative coefficient"));
        }
        let poin = p.poincare();
        if let Some(k) = extab::lower_bound_violation(&num, &poin, n) {
            return Err(format!("{name}: lower bound fails at t^{k}"));
        }
        if num.t_coeff(0) != poin {
            return Err(format!("{name}: [t^0] Num != Poin"));
        }
        if extab::poincare_from_ab(p, lab).map_err(|e| format!("{name}: {e}"))? != poin {
            return Err(format!("{name}: [a^(n-1)] ι(ω(Ψ)) != Poin"));
        }
    }
    let l = families::three_lines();
    let at_one = extab::num_poly(&l).map_err(|e| e.to_string())?.eval_y(1);
    if at_one != [BigInt::from(6), BigInt::from(6)] {
        return Err(format!("Num(ℒ;1,t) coefficients {at_one:?}, expected [6, 6]"));
    }
    let bound = l.poincare().eval_i64(1);
    if at_one.iter().any(|c| *c != bound) {
        return Err("lower bound is not tight on ℒ".into());
    }
    Ok(format!(
        "{} posets; Num(ℒ;1,t) = 6 + 6t meets the bound 6·C(1,k)",
        corpus.len()
    ))
}

fn arrangement_suite() -> Result<String, String> {
    let mut arrangements: Vec<(String, Arrangement)> = vec![
        ("three lines".into(), common::three_lines()),
        ("coordinate planes".into(), common::coordinate_planes()),
    ];
    for (i, a) in common::random_arrangements(common::SEED ^ 0xa11, 5)
        .into_iter()
        .enumerate()
    {
        arrangements.push((format!("random{i}"), a));
    }
    let mut chains = 0;
    let mut covectors = 0;
    for (name, a) in &arrangements {
        let flats = a.flats_lattice().map_err(|e| format!("{name}: {e}"))?;
        let faces = a.face_poset().map_err(|e| format!("{name}: {e}"))?;
        for c in flats.poset.chains(Exclude::NONE) {
            let fibers = a.supp_fibers(&flats, &faces, &c);
            let want = flats.poset.chain_poincare(&c).eval_i64(1);
            if fibers != want {
                return Err(format!(
                    "{name}: chain {:?} has {fibers} fibers, expected {want}",
                    flats.poset.ids_of(c.elems())
                ));
            }
            chains += 1;
        }
        let (lhs, rhs) = a.pullback_sides().map_err(|e| format!("{name}: {e}"))?;
        if lhs != rhs {
            return Err(format!("{name}: Ψ(faces) = {lhs} but a·Ψ_pull = {rhs}"));
        }
        for c in faces.covectors() {
            if a.sign_of(&c.witness) != c.signs {
                return Err(format!("{name}: witness for {} does not re-verify", c.signs));
            }
            covectors += 1;
        }
    }
    Ok(format!(
        "{} arrangements, {chains} fiber counts, {covectors} witnesses re-verified",
        arrangements.len()
    ))
}

fn counting(corpus: &Corpus) -> Result<String, String> {
    for (name, p, _) in corpus {
        let chains = BigInt::from(p.maximal_chains().len());
        let ex = extab::extab_by_chains(p);
        if extab::ab_index(p).eval_all(0, 1, 1) != chains {
            return Err(format!("{name}: Ψ(1,1) != {chains}"));
        }
        if ex.eval_all(1, 1, 1) != &chains << p.rank() {
            return Err(format!("{name}: exΨ(1,1,1) != 2^n · {chains}"));
        }
    }
    Ok(format!("{} posets", corpus.len()))
}

fn main() -> ExitCode {
    let mut failed = false;
    let mut report =
        |n: usize, name: &str, limit: Option<Duration>, run: &mut dyn FnMut() -> Result<String, String>| {
            let start = Instant::now();
            let result = run();
            let elapsed = start.elapsed();
            let result = match (result, limit) {
                (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
                (r, _) => r,
            };
            match result {
                Ok(detail) => println!("PASS criterion {n} ({name}): {detail} [{elapsed:.2?}]"),
                Err(detail) => {
                    failed = true;
                    println!("FAIL criterion {n} ({name}): {detail} [{elapsed:.2?}]");
                }
            }
        };

    report(1, "golden examples", Some(Duration::from_secs(1)), &mut golden);

    let corpus_start = Instant::now();
    let corpus = labeled_corpus();
    let corpus_time = corpus_start.elapsed();
    let on_corpus = |f: fn(&Corpus) -> Result<String, String>| match &corpus {
        Ok(c) => f(c),
        Err(e) => Err(format!("corpus construction failed: {e}")),
    };
    let thirty = Duration::from_secs(30);
    report(
        2,
        "theorem equivalence",
        Some(thirty.saturating_sub(corpus_time)),
        &mut || on_corpus(theorem),
    );
    report(3, "ω substitution", Some(thirty), &mut || on_corpus(omega));
    report(4, "oracle certification", Some(Duration::from_secs(120)), &mut || {
        on_corpus(oracle_certification)
    });
    report(5, "corollaries", None, &mut || on_corpus(corollaries));
    report(
        6,
        "arrangement suite",
        Some(Duration::from_secs(60)),
        &mut arrangement_suite,
    );
    report(7, "counting specializations", None, &mut || on_corpus(counting));

    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
