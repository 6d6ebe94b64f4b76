//! C ABI over `gsss`.
//!
//! Conventions:
//! - Every fallible function returns a [`GsssStatus`]; results come back
//!   through out-pointers, which are written only on success.
//! - Objects are opaque handles created by `gsss_*_from_json`, `gsss_deal`
//!   and friends, and released with the matching `gsss_*_free`.
//! - Strings returned to the caller are NUL-terminated UTF-8 owned by the
//!   caller and must be released with [`gsss_string_free`].
//! - On failure, [`gsss_last_error`] returns a description of the most recent
//!   error on the calling thread.
//!
//! Big integers (secrets, primes, moduli) cross the boundary as decimal
//! strings; secrets may also be `0x`-prefixed hex. Structured data uses the
//! same JSON formats as the command-line tool.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gsss::attack::{hardening_report, parse_rational, AttackError, ShareMeta};
use gsss::bundle::to_json_string;
use gsss::scheme::{self, PublicPolynomialFile, SchemeError, Secret, ShareFile};
use gsss::shamir::{self, ShamirError, ThresholdParams, ThresholdShareFile};
use gsss::{AccessError, AccessStructure, AccessStructureFile, Dealing, PrimeShare, PublicPolynomial};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsssStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed JSON, number, structure or parameter.
    InvalidInput = 3,
    /// Not enough primes of the requested size, or a bad bit length.
    PrimeGeneration = 4,
    /// The same participant or prime was supplied twice.
    DuplicateShare = 5,
    /// Monotone closure would exceed the cap.
    ClosureTooLarge = 6,
    /// A participant id is not part of the structure.
    UnknownParticipant = 7,
    /// The critical-value analysis could not be carried out.
    AnalysisFailed = 8,
    /// Internal error; the library caught a panic.
    Panic = 255,
}

/// Access structure handle.
pub struct GsssStructure(AccessStructure);

/// Result of dealing: shares and the public polynomial.
pub struct GsssDealing(Dealing);

/// Public polynomial handle.
pub struct GsssPublic(PublicPolynomial);

struct Failure {
    status: GsssStatus,
    message: String,
}

impl Failure {
    fn new(status: GsssStatus, message: impl ToString) -> Self {
        Failure {
            status,
            message: message.to_string(),
        }
    }

    fn invalid(message: impl ToString) -> Self {
        Failure::new(GsssStatus::InvalidInput, message)
    }
}

impl From<SchemeError> for Failure {
    fn from(e: SchemeError) -> Self {
        let status = match &e {
            SchemeError::Primes(_) => GsssStatus::PrimeGeneration,
            SchemeError::DuplicateShare(_) => GsssStatus::DuplicateShare,
            SchemeError::UnknownParticipant(_) => GsssStatus::UnknownParticipant,
            SchemeError::Structure(AccessError::ClosureTooLarge { .. }) => GsssStatus::ClosureTooLarge,
            _ => GsssStatus::InvalidInput,
        };
        Failure::new(status, e)
    }
}

impl From<AccessError> for Failure {
    fn from(e: AccessError) -> Self {
        let status = match &e {
            AccessError::ClosureTooLarge { .. } => GsssStatus::ClosureTooLarge,
            AccessError::UnknownParticipant(_) => GsssStatus::UnknownParticipant,
            _ => GsssStatus::InvalidInput,
        };
        Failure::new(status, e)
    }
}

impl From<ShamirError> for Failure {
    fn from(e: ShamirError) -> Self {
        Failure::invalid(e)
    }
}

impl From<AttackError> for Failure {
    fn from(e: AttackError) -> Self {
        Failure::new(GsssStatus::AnalysisFailed, e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::invalid(format!("json: {e}"))
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GsssStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GsssStatus::Ok
        }
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(_) => {
            set_last_error("internal panic");
            GsssStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(GsssStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(GsssStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(GsssStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn bytes_arg<'a>(p: *const u8, len: usize, what: &str) -> Result<&'a [u8], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::new(GsssStatus::NullPointer, format!("{what} is NULL")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn str_array_arg<'a>(
    p: *const *const c_char,
    count: usize,
    what: &str,
) -> Result<Vec<&'a str>, Failure> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if p.is_null() {
        return Err(Failure::new(GsssStatus::NullPointer, format!("{what} is NULL")));
    }
    std::slice::from_raw_parts(p, count)
        .iter()
        .enumerate()
        .map(|(i, &s)| str_arg(s, &format!("{what}[{i}]")))
        .collect()
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::new(GsssStatus::NullPointer, "output pointer is NULL"))
    } else {
        Ok(())
    }
}

unsafe fn put_handle<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn put_string(out: *mut *mut c_char, s: String) {
    *out = CString::new(s).expect("no interior NUL").into_raw();
}

unsafe fn free_handle<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Library version, a static string that must not be freed.
#[no_mangle]
pub extern "C" fn gsss_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy of the last error message on this thread, or NULL if the most recent
/// call succeeded. Free with [`gsss_string_free`].
#[no_mangle]
pub extern "C" fn gsss_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(m) => m.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn gsss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates an access structure from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gsss_structure_from_json(
    json: *const c_char,
    out: *mut *mut GsssStructure,
) -> GsssStatus {
    guard(|| {
        check_out(out)?;
        let file: AccessStructureFile = serde_json::from_str(str_arg(json, "json")?)?;
        put_handle(out, GsssStructure(AccessStructure::from_file(&file)?));
        Ok(())
    })
}

/// Canonical JSON form of a structure.
///
/// # Safety
/// `structure` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gsss_structure_to_json(
    structure: *const GsssStructure,
    out: *mut *mut c_char,
) -> GsssStatus {
    guard(|| {
        check_out(out)?;
        let s = ref_arg(structure, "structure")?;
        put_string(out, to_json_string(&s.0.to_file()));
        Ok(())
    })
}

/// Adds every superset of an authorized set, refusing to produce more than
/// `cap` sets.
///
/// # Safety
/// `structure` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gsss_structure_closure(
    structure: *const GsssStructure,
    cap: usize,
    out: *mut *mut GsssStructure,
) -> GsssStatus {
    guard(|| {
        check_out(out)?;
        let s = ref_arg(structure, "structure")?;
        put_handle(out, GsssStructure(s.0.monotone_closure_with_cap(cap)?));
        Ok(())
    })
}

/// Whether the coalition of the given participant ids is an authorized set.
///
/// # Safety
/// `ids` must point to `count` NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gsss_structure_is_authorized(
    structure: *const GsssStructure,
    ids: *const *const c_char,
    count: usize,
    out: *mut bool,
) -> GsssStatus {
    guard(|| {
        check_out(out)?;
        let s = ref_arg(structure, "structure")?;
        let ids = str_array_arg(ids, count, "ids")?;
        let coalition = s.0.coalition(ids)?;
        *out = s.0.is_authorized(coalition);
        Ok(())
    })
}

/// # Safety
/// `structure` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gsss_structure_free(structure: *mut GsssStructure) {
    free_handle(structure);
}

/// Deals `secret` (decimal or 0x hex) over `structure` with primes of
/// `bit_length` bits drawn deterministically from `seed`.
///
/// # Safety
/// `seed` must point to `seed_len` readable bytes (or be NULL with length 0).
#[no_mangle]
pub unsafe extern "C" fn gsss_deal(
    structure: *const GsssStructure,
    secret: *const c_char,
    bit_length: u64,
    seed: *const u8,
    seed_len: usize,
    out: *mut *mut GsssDealing,
) -> GsssStatus {
    guard(|| {
        check_out(out)?;
        let s = ref_arg(structure, "structure")?;
        let secret: Secret = str_arg(secret, "secret")?.parse()?;
        let seed = bytes_arg(seed, seed_len, "seed")?;
        put_handle(out, GsssDealing(scheme::deal(&s.0, &secret, bit_length, seed)?));
        Ok(())
    })
}

/// The public polynomial of a dealing, as a new handle.
///
/// # Safety
/// `dealing` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gsss_dealing_public(
    dealing: *const GsssDealing,
    out: *mut *mut GsssPublic,
) -> GsssStatus {
    guard(|| {
        check_out(out)?;
        let d = ref_arg(dealing, "dealing")?;
        put_handle(out, GsssPublic(d.0.public.clone()));
        Ok(())
    })
}

/// Share file JSON for one participant.
///
/// # Safety
/// `dealing` must be a live handle; `participant` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gsss_dealing_share_json(
    dealing: *const GsssDealing,
    participant: *const c_char,
    out: *mut *mut c_char,
) -> GsssStatus {
    guard(|| {
        check_out(out)?;
        let d = ref_arg(dealing, "dealing")?;
        let id = str_arg(participant, "participant")?;
        let share = d.0.share(id).ok_or_else(|| {
            Failure::new(GsssStatus::UnknownParticipant, format!("unknown participant {id:?}"))
        })?;
        put_string(out, to_json_string(&ShareFile::from(share)));
        Ok(())
    })
}

/// # Safety
/// `dealing` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gsss_dealing_free(dealing: *mut GsssDealing) {
    free_handle(dealing);
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gsss_public_from_json(
    json: *const c_char,
    out: *mut *mut GsssPublic,
) -> GsssStatus {
    guard(|| {
        check_out(out)?;
        let file: PublicPolynomialFile = serde_json::from_str(str_arg(json, "json")?)?;
        put_handle(out, GsssPublic(PublicPolynomial::from_file(&file)?));
        Ok(())
    })
}

/// # Safety
/// `public` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gsss_public_to_json(
    public: *const GsssPublic,
    out: *mut *mut c_char,
) -> GsssStatus {
    guard(|| {
        check_out(out)?;
        let p = ref_arg(public, "public")?;
        put_string(out, to_json_string(&p.0.to_file()));
        Ok(())
    })
}

/// # Safety
/// `public` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gsss_public_free(public: *mut GsssPublic) {
    free_handle(public);
}

/// Evaluates the public polynomial at the product of the given shares'
/// primes and returns the result in decimal. For an authorized coalition
/// this is the secret; otherwise it is an unrelated value.
///
/// # Safety
/// `shares` must point to `count` NUL-terminated share-file JSON strings.
#[no_mangle]
pub unsafe extern "C" fn gsss_reconstruct(
    public: *const GsssPublic,
    shares: *const *const c_char,
    count: usize,
    out: *mut *mut c_char,
) -> GsssStatus {
    guard(|| {
        check_out(out)?;
        let p = ref_arg(public, "public")?;
        let shares = str_array_arg(shares, count, "shares")?
            .into_iter()
            .map(|json| {
                let file: ShareFile = serde_json::from_str(json)?;
                Ok(PrimeShare::try_from(&file)?)
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        let r = scheme::coalition_product(&shares)?;
        put_string(out, scheme::reconstruct(&p.0, &r).to_string());
        Ok(())
    })
}

/// Interval analysis of the public polynomial, as the JSON report the
/// command-line `analyze` prints. `precision` is "p/q", a decimal, or
/// exponent notation such as "1e-9".
///
/// # Safety
/// `public` must be a live handle; `precision` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gsss_analyze(
    public: *const GsssPublic,
    precision: *const c_char,
    out: *mut *mut c_char,
) -> GsssStatus {
    guard(|| {
        check_out(out)?;
        let p = ref_arg(public, "public")?;
        let text = str_arg(precision, "precision")?;
        let precision = parse_rational(text)
            .ok_or_else(|| Failure::invalid(format!("bad precision {text:?}")))?;
        let meta = ShareMeta {
            k: p.0.k(),
            ..ShareMeta::default()
        };
        let report = hardening_report(&p.0, &meta, &precision)?;
        put_string(out, to_json_string(&report.to_file()));
        Ok(())
    })
}

/// Splits `secret` into `n` threshold-`t` shares over GF(q) and returns them
/// as a JSON array of share files. `q` may be NULL for 2^61 - 1.
///
/// # Safety
/// String arguments must be NUL-terminated; `seed` must point to `seed_len`
/// readable bytes (or be NULL with length 0).
#[no_mangle]
pub unsafe extern "C" fn gsss_shamir_split(
    secret: *const c_char,
    n: usize,
    t: usize,
    q: *const c_char,
    seed: *const u8,
    seed_len: usize,
    out: *mut *mut c_char,
) -> GsssStatus {
    guard(|| {
        check_out(out)?;
        let secret: Secret = str_arg(secret, "secret")?.parse()?;
        let q = if q.is_null() {
            shamir::mersenne61()
        } else {
            let text = str_arg(q, "q")?;
            text.parse()
                .map_err(|_| Failure::invalid(format!("bad modulus {text:?}")))?
        };
        let params = ThresholdParams::new(n, t, q)?;
        let seed = bytes_arg(seed, seed_len, "seed")?;
        let shares = shamir::shamir_split(secret.value(), &params, seed)?;
        let files: Vec<ThresholdShareFile> =
            shares.iter().map(|s| ThresholdShareFile::new(s, &params)).collect();
        put_string(out, to_json_string(&files));
        Ok(())
    })
}

/// Recovers a threshold secret from a JSON array of share files; the result
/// is decimal.
///
/// # Safety
/// `shares_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gsss_shamir_combine(
    shares_json: *const c_char,
    out: *mut *mut c_char,
) -> GsssStatus {
    guard(|| {
        check_out(out)?;
        let files: Vec<ThresholdShareFile> =
            serde_json::from_str(str_arg(shares_json, "shares_json")?)?;
        put_string(out, shamir::combine_share_files(&files)?.to_string());
        Ok(())
    })
}
