//! C interface to `exab`.
//!
//! Posets and arrangements live behind opaque handles. Every call returns an
//! [`ExabStatus`]; on anything but `EXAB_STATUS_OK` or `EXAB_STATUS_FAIL` the
//! message is available from [`exab_last_error`] on the same thread. Strings
//! handed out by the library must be released with [`exab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use clap::ValueEnum;
use exab::arrangement::Arrangement;
use exab::cli::{self, ArrangementOp, ComputeOp, Format, LabelingSource, Outcome};
use exab::io::PosetFile;
use exab::poset::GradedPoset;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExabStatus {
    Ok = 0,
    /// A verification ran and reported a failure; the report is in the output.
    Fail = 1,
    InputError = 2,
    LabelingError = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// A validated graded poset together with the file it was read from.
pub struct ExabPoset {
    file: PosetFile,
    poset: GradedPoset,
}

pub struct ExabArrangement {
    arrangement: Arrangement,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Error(ExabStatus, String);

impl Error {
    fn input(msg: impl ToString) -> Self {
        Error(ExabStatus::InputError, msg.to_string())
    }
}

/// Runs `f`, records its error message and converts panics into a status.
fn guarded(f: impl FnOnce() -> Result<ExabStatus, Error>) -> ExabStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Error(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ExabStatus::Panic
        }
    }
}

/// # Safety
/// `s` must be null or a valid nul-terminated string.
unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Error> {
    if s.is_null() {
        return Err(Error(ExabStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Error(ExabStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

/// # Safety
/// As [`str_arg`], but null maps to `None`.
unsafe fn opt_str_arg<'a>(s: *const c_char, what: &str) -> Result<Option<&'a str>, Error> {
    if s.is_null() {
        Ok(None)
    } else {
        str_arg(s, what).map(Some)
    }
}

fn parse_enum<T: ValueEnum>(s: &str, what: &str) -> Result<T, Error> {
    T::from_str(s, false).map_err(|_| Error::input(format!("unknown {what} `{s}`")))
}

fn format_of(json: bool) -> Format {
    if json {
        Format::Json
    } else {
        Format::Text
    }
}

fn status_of(code: i32) -> ExabStatus {
    match code {
        cli::EXIT_OK => ExabStatus::Ok,
        cli::EXIT_FAIL => ExabStatus::Fail,
        cli::EXIT_LABELING => ExabStatus::LabelingError,
        _ => ExabStatus::InputError,
    }
}

/// Hands the outcome's stdout to the caller; stderr becomes the last error.
///
/// # Safety
/// `out` must be valid for writes.
unsafe fn deliver(outcome: Outcome, out: *mut *mut c_char) -> Result<ExabStatus, Error> {
    let status = status_of(outcome.code);
    let msg = outcome.stderr.trim_start_matches("error: ").trim_end();
    if !msg.is_empty() {
        set_error(msg);
    }
    match status {
        ExabStatus::Ok | ExabStatus::Fail => {
            let s = CString::new(outcome.stdout).map_err(|_| Error::input("output contains a nul byte"))?;
            *out = s.into_raw();
            Ok(status)
        }
        _ => Err(Error(status, msg.to_string())),
    }
}

fn check_out<T>(out: *mut T) -> Result<(), Error> {
    if out.is_null() {
        Err(Error(ExabStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn check_rank(rank: usize, force: bool) -> Result<(), Error> {
    cli::guard_rank(rank, force).map_err(|o| Error::input(o.stderr.trim_start_matches("error: ").trim_end()))
}

/// The last error message on this thread, or null. Owned by the library and
/// valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn exab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn exab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn exab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a poset file held in memory. Inputs above the
/// `EXAB_MAX_RANK` limit are refused unless `force` is set.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exab_poset_from_json(
    json: *const c_char,
    force: bool,
    out: *mut *mut ExabPoset,
) -> ExabStatus {
    guarded(|| {
        check_out(out)?;
        let text = str_arg(json, "json")?;
        let file = PosetFile::parse(text).map_err(|e| Error::input(format!("invalid poset file: {e}")))?;
        let poset = file.poset().map_err(|e| Error::input(format!("invalid poset: {e}")))?;
        check_rank(poset.rank(), force)?;
        *out = Box::into_raw(Box::new(ExabPoset { file, poset }));
        Ok(ExabStatus::Ok)
    })
}

/// # Safety
/// `p` must be null or a handle from [`exab_poset_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn exab_poset_free(p: *mut ExabPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle and `rank` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exab_poset_rank(p: *const ExabPoset, rank: *mut usize) -> ExabStatus {
    guarded(|| {
        check_out(rank)?;
        let p = p
            .as_ref()
            .ok_or(Error(ExabStatus::NullPointer, "poset is null".into()))?;
        *rank = p.poset.rank();
        Ok(ExabStatus::Ok)
    })
}

/// Computes `op` (`poincare`, `ab`, `extab`, `pullback`, `num`, `cd`,
/// `iota-extab`) and writes the rendered polynomial to `*out`. `labeling` is
/// `file`, `min-atom`, `none`, or null for the default.
///
/// # Safety
/// `p` must be a live handle, the strings nul-terminated, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exab_poset_compute(
    p: *const ExabPoset,
    op: *const c_char,
    labeling: *const c_char,
    json: bool,
    out: *mut *mut c_char,
) -> ExabStatus {
    guarded(|| {
        check_out(out)?;
        let p = p
            .as_ref()
            .ok_or(Error(ExabStatus::NullPointer, "poset is null".into()))?;
        let op: ComputeOp = parse_enum(str_arg(op, "op")?, "operation")?;
        let source: Option<LabelingSource> = opt_str_arg(labeling, "labeling")?
            .map(|s| parse_enum(s, "labeling"))
            .transpose()?;
        deliver(cli::compute_poset(&p.file, &p.poset, op, source, format_of(json)), out)
    })
}

/// Runs the comma-separated `checks` (null means `all`) and writes the report
/// to `*out`. Returns `EXAB_STATUS_FAIL` when any check fails.
///
/// # Safety
/// As [`exab_poset_compute`].
#[no_mangle]
pub unsafe extern "C" fn exab_poset_verify(
    p: *const ExabPoset,
    checks: *const c_char,
    json: bool,
    out: *mut *mut c_char,
) -> ExabStatus {
    guarded(|| {
        check_out(out)?;
        let p = p
            .as_ref()
            .ok_or(Error(ExabStatus::NullPointer, "poset is null".into()))?;
        let checks = opt_str_arg(checks, "checks")?.unwrap_or("all");
        deliver(cli::verify_poset(&p.file, &p.poset, checks, None, format_of(json)), out)
    })
}

/// Parses `{"dim": d, "normals": [...]}`.
///
/// # Safety
/// As [`exab_poset_from_json`].
#[no_mangle]
pub unsafe extern "C" fn exab_arrangement_from_json(
    json: *const c_char,
    force: bool,
    out: *mut *mut ExabArrangement,
) -> ExabStatus {
    guarded(|| {
        check_out(out)?;
        let text = str_arg(json, "json")?;
        let value = serde_json::from_str(text).map_err(|e| Error::input(format!("invalid JSON: {e}")))?;
        let arrangement = Arrangement::from_json(&value).map_err(Error::input)?;
        check_rank(arrangement.rank(), force)?;
        *out = Box::into_raw(Box::new(ExabArrangement { arrangement }));
        Ok(ExabStatus::Ok)
    })
}

/// # Safety
/// `a` must be null or a handle from [`exab_arrangement_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn exab_arrangement_free(a: *mut ExabArrangement) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Runs `op` (`flats`, `faces`, `check-pullback`, `fibers`) and writes the
/// result to `*out`.
///
/// # Safety
/// `a` must be a live handle, `op` nul-terminated, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exab_arrangement_run(
    a: *const ExabArrangement,
    op: *const c_char,
    json: bool,
    out: *mut *mut c_char,
) -> ExabStatus {
    guarded(|| {
        check_out(out)?;
        let a = a
            .as_ref()
            .ok_or(Error(ExabStatus::NullPointer, "arrangement is null".into()))?;
        let op: ArrangementOp = parse_enum(str_arg(op, "op")?, "operation")?;
        deliver(cli::arrangement_run(&a.arrangement, op, format_of(json)), out)
    })
}
