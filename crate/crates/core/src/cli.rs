//! The `exab` command line: argument parsing and dispatch.
//!
//! Everything is returned as an [`Outcome`] so that the binary, the tests
//! and the C interface share one code path.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arrangement::{Arrangement, ArrangementError};
use crate::checks::{Checker, Labeling, Status, ALL_CHECKS};
use crate::extab::{self, ExtabError};
use crate::io::{self, PosetFile};
use crate::ncpoly;
use crate::poset::{Exclude, GradedPoset};
use crate::rlabel::{self, CoverLabeling, LabelError};

/// Environment variable bounding the rank of accepted inputs.
pub const MAX_RANK_VAR: &str = "EXAB_MAX_RANK";
pub const DEFAULT_MAX_RANK: usize = 8;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LABELING: i32 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "exab",
    version,
    about = "Poincaré-extended ab-indices of graded posets and hyperplane arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute an invariant of a poset file.
    Compute {
        file: String,
        #[arg(long, value_enum)]
        op: ComputeOp,
        /// Defaults to the file's labels when present.
        #[arg(long, value_enum)]
        labeling: Option<LabelingSource>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Accept inputs above the EXAB_MAX_RANK limit.
        #[arg(long)]
        force: bool,
    },
    /// Work with a central hyperplane arrangement file.
    Arrangement {
        file: String,
        #[arg(long, value_enum)]
        op: ArrangementOp,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        force: bool,
    },
    /// Run identity checks on a poset file.
    Verify {
        file: String,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Defaults to the file's labels, then the minimal-atom labeling.
        #[arg(long, value_enum)]
        labeling: Option<LabelingSource>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComputeOp {
    Poincare,
    Ab,
    Extab,
    Pullback,
    Num,
    Cd,
    IotaExtab,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArrangementOp {
    Flats,
    Faces,
    CheckPullback,
    Fibers,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LabelingSource {
    File,
    MinAtom,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_INPUT,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match run(cli) {
        Ok(out) => out,
        Err(out) => out,
    }
}

fn run(cli: Cli) -> Result<Outcome, Outcome> {
    match cli.command {
        Command::Compute {
            file,
            op,
            labeling,
            format,
            force,
        } => compute(&file, op, labeling, format, force),
        Command::Arrangement {
            file,
            op,
            format,
            force,
        } => arrangement(&file, op, format, force),
        Command::Verify {
            file,
            checks,
            labeling,
            format,
            force,
        } => verify(&file, &checks, labeling, format, force),
    }
}

fn read(path: &str) -> Result<String, Outcome> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| Outcome::error(EXIT_INPUT, format!("cannot read {path}: {e}")))
}

fn max_rank() -> Result<usize, Outcome> {
    match std::env::var(MAX_RANK_VAR) {
        Err(_) => Ok(DEFAULT_MAX_RANK),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Outcome::error(EXIT_INPUT, format!("{MAX_RANK_VAR}={v:?} is not a nonnegative integer"))),
    }
}

/// Refuses ranks above `EXAB_MAX_RANK` unless `force` is set.
pub fn guard_rank(rank: usize, force: bool) -> Result<(), Outcome> {
    let limit = max_rank()?;
    if rank > limit && !force {
        return Err(Outcome::error(
            EXIT_INPUT,
            format!("rank {rank} exceeds {MAX_RANK_VAR}={limit}; pass --force to run anyway"),
        ));
    }
    Ok(())
}

fn load_poset(path: &str, force: bool) -> Result<(PosetFile, GradedPoset), Outcome> {
    let text = read(path)?;
    let file =
        PosetFile::parse(&text).map_err(|e| Outcome::error(EXIT_INPUT, format!("{path}: invalid poset file: {e}")))?;
    let poset = file
        .poset()
        .map_err(|e| Outcome::error(EXIT_INPUT, format!("{path}: invalid poset: {e}")))?;
    guard_rank(poset.rank(), force)?;
    Ok((file, poset))
}

fn label_error(e: LabelError) -> Outcome {
    match e {
        LabelError::NotRLabeling(_) | LabelError::NotALattice { .. } | LabelError::NoAtomGenerates { .. } => {
            Outcome::error(EXIT_LABELING, e)
        }
        other => Outcome::error(EXIT_INPUT, other),
    }
}

fn extab_error(e: ExtabError) -> Outcome {
    match e {
        ExtabError::RankZero => Outcome::error(EXIT_INPUT, e),
        ExtabError::NotRLabeling(_) => Outcome::error(EXIT_LABELING, e),
        ExtabError::Label(l) => label_error(l),
    }
}

/// The labels stored in the file, checked to form an R-labeling.
fn file_labeling(file: &PosetFile, poset: &GradedPoset) -> Result<CoverLabeling, Outcome> {
    let lab = file
        .labeling(poset)
        .ok_or_else(|| Outcome::error(EXIT_INPUT, "--labeling file given but the file has no \"labels\""))?
        .map_err(label_error)?;
    rlabel::verify_r_labeling(poset, &lab).map_err(|w| Outcome::error(EXIT_LABELING, w))?;
    Ok(lab)
}

fn min_atom(poset: &GradedPoset) -> Result<CoverLabeling, Outcome> {
    let (lab, verdict) = rlabel::min_atom_labeling(poset, None).map_err(label_error)?;
    verdict.map_err(|w| Outcome::error(EXIT_LABELING, format!("minimal-atom labeling: {w}")))?;
    Ok(lab)
}

fn compute(
    path: &str,
    op: ComputeOp,
    source: Option<LabelingSource>,
    format: Format,
    force: bool,
) -> Result<Outcome, Outcome> {
    let (file, poset) = load_poset(path, force)?;
    Ok(compute_poset(&file, &poset, op, source, format))
}

/// `exab compute` on an already validated poset.
pub fn compute_poset(
    file: &PosetFile,
    poset: &GradedPoset,
    op: ComputeOp,
    source: Option<LabelingSource>,
    format: Format,
) -> Outcome {
    compute_inner(file, poset, op, source, format).unwrap_or_else(|e| e)
}

fn compute_inner(
    file: &PosetFile,
    poset: &GradedPoset,
    op: ComputeOp,
    source: Option<LabelingSource>,
    format: Format,
) -> Result<Outcome, Outcome> {
    let source = source.unwrap_or(match (&file.labels, op) {
        (Some(_), _) => LabelingSource::File,
        (None, ComputeOp::Cd) => LabelingSource::MinAtom,
        (None, _) => LabelingSource::None,
    });
    let labeling = match source {
        LabelingSource::File => Some(file_labeling(file, poset)?),
        LabelingSource::MinAtom => Some(min_atom(poset)?),
        LabelingSource::None => None,
    };
    let lab = labeling.as_ref();
    let (text, value) = match op {
        ComputeOp::Poincare => {
            let p = poset.poincare();
            (p.to_string(), io::ypoly_json(&p))
        }
        ComputeOp::Ab => {
            let p = extab::ab_index(poset);
            (p.to_string(), p.to_json())
        }
        ComputeOp::Extab => {
            let p = extab::extab(poset, lab).map_err(extab_error)?.poly;
            (p.to_string(), p.to_json())
        }
        ComputeOp::Pullback => {
            let p = extab::pullback(poset);
            (p.to_string(), p.to_json())
        }
        ComputeOp::Num => {
            let p = match lab {
                Some(l) => extab::num_from_extab(poset, l),
                None => extab::num_poly(poset),
            }
            .map_err(extab_error)?;
            (p.to_string(), io::ytpoly_json(&p))
        }
        ComputeOp::Cd => {
            let l = lab.ok_or_else(|| Outcome::error(EXIT_INPUT, "--op cd needs a labeling"))?;
            let p = extab::cd_index(poset, l).map_err(extab_error)?;
            (p.to_string(), p.to_json())
        }
        ComputeOp::IotaExtab => {
            if poset.rank() == 0 {
                return Err(extab_error(ExtabError::RankZero));
            }
            let ex = extab::extab(poset, lab).map_err(extab_error)?.poly;
            let p = ncpoly::iota(&ex).map_err(|e| Outcome::error(EXIT_INPUT, e))?;
            (p.to_string(), p.to_json())
        }
    };
    Ok(Outcome::ok(render(format, text, value)))
}

fn render(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => format!("{text}\n"),
        Format::Json => format!("{value}\n"),
    }
}

fn arrangement_error(path: &str, e: ArrangementError) -> Outcome {
    Outcome::error(EXIT_INPUT, format!("{path}: {e}"))
}

fn arrangement(path: &str, op: ArrangementOp, format: Format, force: bool) -> Result<Outcome, Outcome> {
    let text = read(path)?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Outcome::error(EXIT_INPUT, format!("{path}: invalid JSON: {e}")))?;
    let arr = Arrangement::from_json(&value).map_err(|e| arrangement_error(path, e))?;
    guard_rank(arr.rank(), force)?;
    Ok(arrangement_run(&arr, op, format))
}

/// `exab arrangement` on an already validated arrangement.
pub fn arrangement_run(arr: &Arrangement, op: ArrangementOp, format: Format) -> Outcome {
    arrangement_inner(arr, op, format).unwrap_or_else(|e| e)
}

fn arrangement_inner(arr: &Arrangement, op: ArrangementOp, format: Format) -> Result<Outcome, Outcome> {
    match op {
        ArrangementOp::Flats => {
            let flats = arr.flats_lattice().map_err(|e| Outcome::error(EXIT_INPUT, e))?;
            let labels = match rlabel::min_atom_labeling(&flats.poset, Some(flats.atom_order())) {
                Ok((lab, Ok(()))) => Some(lab),
                _ => None,
            };
            let out = PosetFile::from_poset(&flats.poset, labels.as_ref());
            Ok(Outcome::ok(format!("{}\n", out.to_json_string())))
        }
        ArrangementOp::Faces => {
            let faces = arr.face_poset().map_err(|e| Outcome::error(EXIT_INPUT, e))?;
            let mut out = PosetFile::from_poset(&faces.poset, None);
            let witnesses: BTreeMap<String, Vec<String>> = faces
                .poset
                .elements()
                .filter_map(|e| {
                    let c = faces.covector(e)?;
                    Some((
                        faces.poset.id(e).to_string(),
                        c.witness.iter().map(ToString::to_string).collect(),
                    ))
                })
                .collect();
            out.witnesses = Some(witnesses);
            Ok(Outcome::ok(format!("{}\n", out.to_json_string())))
        }
        ArrangementOp::CheckPullback => {
            let (lhs, rhs) = arr.pullback_sides().map_err(|e| Outcome::error(EXIT_INPUT, e))?;
            let pass = lhs == rhs;
            let stdout = match format {
                Format::Text => format!(
                    "face poset ab-index: {lhs}\na * pullback of flats: {rhs}\n{} check-pullback\n",
                    if pass { "PASS" } else { "FAIL" }
                ),
                Format::Json => format!(
                    "{}\n",
                    json!({ "lhs": lhs.to_json(), "rhs": rhs.to_json(), "pass": pass })
                ),
            };
            Ok(Outcome {
                stdout,
                stderr: String::new(),
                code: if pass { EXIT_OK } else { EXIT_FAIL },
            })
        }
        ArrangementOp::Fibers => {
            let flats = arr.flats_lattice().map_err(|e| Outcome::error(EXIT_INPUT, e))?;
            let faces = arr.face_poset().map_err(|e| Outcome::error(EXIT_INPUT, e))?;
            let mut all_pass = true;
            let mut lines = String::new();
            let mut rows = Vec::new();
            for c in flats.poset.chains(Exclude::NONE) {
                let fibers = arr.supp_fibers(&flats, &faces, &c);
                let expected = flats.poset.chain_poincare(&c).eval_i64(1);
                let pass = fibers == expected;
                all_pass &= pass;
                let ids = flats.poset.ids_of(c.elems());
                let status = if pass { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    lines,
                    "{status} [{}]: fibers {fibers}, Poin_C(1) = {expected}",
                    ids.join(" < ")
                );
                rows.push(json!({ "chain": ids, "fibers": fibers.to_string(), "expected": expected.to_string(), "pass": pass }));
            }
            let stdout = match format {
                Format::Text => lines,
                Format::Json => format!("{}\n", json!({ "chains": rows, "pass": all_pass })),
            };
            Ok(Outcome {
                stdout,
                stderr: String::new(),
                code: if all_pass { EXIT_OK } else { EXIT_FAIL },
            })
        }
    }
}

fn parse_checks(list: &str) -> Result<Vec<&'static str>, Outcome> {
    let mut out: Vec<&'static str> = Vec::new();
    for raw in list.split(',') {
        let name = raw.trim();
        if name == "all" {
            for c in ALL_CHECKS {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
            continue;
        }
        let c = ALL_CHECKS.iter().find(|&&c| c == name).ok_or_else(|| {
            Outcome::error(
                EXIT_INPUT,
                format!(
                    "unknown check `{name}`; expected `all` or one of {}",
                    ALL_CHECKS.join(", ")
                ),
            )
        })?;
        if !out.contains(c) {
            out.push(c);
        }
    }
    Ok(out)
}

fn verify(
    path: &str,
    checks: &str,
    source: Option<LabelingSource>,
    format: Format,
    force: bool,
) -> Result<Outcome, Outcome> {
    parse_checks(checks)?;
    let (file, poset) = load_poset(path, force)?;
    Ok(verify_poset(&file, &poset, checks, source, format))
}

/// `exab verify` on an already validated poset.
pub fn verify_poset(
    file: &PosetFile,
    poset: &GradedPoset,
    checks: &str,
    source: Option<LabelingSource>,
    format: Format,
) -> Outcome {
    verify_inner(file, poset, checks, source, format).unwrap_or_else(|e| e)
}

fn verify_inner(
    file: &PosetFile,
    poset: &GradedPoset,
    checks: &str,
    source: Option<LabelingSource>,
    format: Format,
) -> Result<Outcome, Outcome> {
    let names = parse_checks(checks)?;
    let explicit = source.is_some();
    let source = source.unwrap_or(if file.labels.is_some() {
        LabelingSource::File
    } else {
        LabelingSource::MinAtom
    });
    let labeling = match source {
        LabelingSource::File => {
            let lab = file
                .labeling(poset)
                .ok_or_else(|| Outcome::error(EXIT_INPUT, "--labeling file given but the file has no \"labels\""))?
                .map_err(label_error)?;
            match rlabel::verify_r_labeling(poset, &lab) {
                Ok(()) => Labeling::Verified(lab),
                Err(w) => Labeling::Rejected(format!("file labels: {w}")),
            }
        }
        LabelingSource::MinAtom => match rlabel::min_atom_labeling(poset, None) {
            Ok((lab, Ok(()))) => Labeling::Verified(lab),
            Ok((_, Err(w))) if explicit => Labeling::Rejected(format!("minimal-atom labeling: {w}")),
            Ok((_, Err(w))) => Labeling::Unavailable(format!("minimal-atom labeling: {w}")),
            Err(e) if explicit => Labeling::Rejected(format!("minimal-atom labeling: {e}")),
            Err(e) => Labeling::Unavailable(format!("minimal-atom labeling: {e}")),
        },
        LabelingSource::None => Labeling::Unavailable("no labeling requested".into()),
    };
    let checker = Checker::new(poset, labeling);
    let reports: Vec<_> = names.iter().map(|n| checker.run(n)).collect();
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    let stdout = match format {
        Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
        Format::Json => {
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| json!({ "check": r.name, "status": r.status.to_string(), "detail": r.detail }))
                .collect();
            format!("{}\n", json!({ "checks": rows, "pass": !failed }))
        }
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if failed { EXIT_FAIL } else { EXIT_OK },
    })
}
