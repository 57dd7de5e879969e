//! C ABI for the `bmkit` library.
//!
//! Every fallible entry point returns a [`BmStatus`] and writes its result
//! through an out-pointer. On failure, [`bm_last_error`] returns a message
//! owned by the calling thread, valid until the next call on that thread.
//! Strings handed out by this library are released with [`bm_string_free`];
//! matrix handles with [`bm_matrix_free`]. Arbitrary-precision integers are
//! returned as decimal strings.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bmkit::bmcycles::{self, RepLabel, VirtualRep};
use bmkit::partitions::Partition;
use bmkit::quasibanal::{self, DistinguishedPoint, QuasiBanalParams, TypeSequence};
use bmkit::symrep::{self, PartitionMatrix};
use bmkit::types::InertialType;
use bmkit::{limits, moduli, Error};

/// Result of a library call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BmStatus {
    Ok = 0,
    /// A verification ran and found a counterexample.
    Counterexample = 1,
    InvalidArgument = 2,
    ResourceBound = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    /// The value does not fit the requested fixed-width type.
    Overflow = 6,
    Panic = 7,
}

/// Opaque square matrix indexed by partitions of one degree.
pub struct BmMatrix {
    inner: PartitionMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(BmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Argument(_) => BmStatus::InvalidArgument,
            Error::ResourceBound(_) => BmStatus::ResourceBound,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BmStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BmStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BmStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(BmStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: caller guarantees a valid NUL-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Failure(BmStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn parse<T: std::str::FromStr<Err = Error>>(
    p: *const c_char,
    what: &str,
) -> Result<T, Failure> {
    Ok(unsafe { read_str(p, what) }?.parse::<T>()?)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            BmStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    // SAFETY: checked non-null; caller guarantees it is writable.
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: impl Into<String>) -> Result<(), Failure> {
    let c = CString::new(s.into())
        .map_err(|_| Failure(BmStatus::InvalidArgument, "nul in output".into()))?;
    if out.is_null() {
        return Err(Failure(
            BmStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    unsafe { write_out(out, c.into_raw()) }
}

fn weights(s: &str) -> Result<Vec<Partition>, Failure> {
    if s.contains(':') {
        return Ok(s.parse::<TypeSequence>()?.weights());
    }
    Ok(s.split(';').map(str::parse).collect::<Result<_, Error>>()?)
}

/// Message describing the last failure on this thread, or null.
#[no_mangle]
pub extern "C" fn bm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn bm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Sets the largest degree any enumeration may reach.
#[no_mangle]
pub extern "C" fn bm_set_max_degree(n: usize) -> BmStatus {
    guard(|| Ok(limits::set_max_degree(n)?))
}

/// Current degree bound.
#[no_mangle]
pub extern "C" fn bm_max_degree() -> usize {
    limits::max_degree()
}

/// Kostka number for partitions written like `2,1`.
///
/// # Safety
/// String arguments must be valid NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bm_kostka(
    shape: *const c_char,
    content: *const c_char,
    out: *mut *mut c_char,
) -> BmStatus {
    guard(|| unsafe {
        let k = symrep::kostka(&parse(shape, "shape")?, &parse(content, "content")?);
        write_string(out, k.to_string())
    })
}

/// Kostka number through the character-theoretic oracle.
///
/// # Safety
/// As for [`bm_kostka`].
#[no_mangle]
pub unsafe extern "C" fn bm_kostka_oracle(
    shape: *const c_char,
    content: *const c_char,
    out: *mut *mut c_char,
) -> BmStatus {
    guard(|| unsafe {
        let k = symrep::kostka_oracle(&parse(shape, "shape")?, &parse(content, "content")?)?;
        write_string(out, k.to_string())
    })
}

/// Character value χ^shape at cycle type `cycle_type`.
///
/// # Safety
/// As for [`bm_kostka`].
#[no_mangle]
pub unsafe extern "C" fn bm_character(
    shape: *const c_char,
    cycle_type: *const c_char,
    out: *mut *mut c_char,
) -> BmStatus {
    guard(|| unsafe {
        let v = symrep::character(&parse(shape, "shape")?, &parse(cycle_type, "cycle_type")?)?;
        write_string(out, v.to_string())
    })
}

/// Littlewood-Richardson multiplicity; factors separated by `;`.
///
/// # Safety
/// As for [`bm_kostka`].
#[no_mangle]
pub unsafe extern "C" fn bm_lr_mult(
    target: *const c_char,
    factors: *const c_char,
    out: *mut *mut c_char,
) -> BmStatus {
    guard(|| unsafe {
        let f = weights(read_str(factors, "factors")?)?;
        let m = symrep::lr_mult(&parse(target, "target")?, &f)?;
        write_string(out, m.to_string())
    })
}

/// Multinomial coefficient n! / Π p_i!.
///
/// # Safety
/// As for [`bm_kostka`].
#[no_mangle]
pub unsafe extern "C" fn bm_multinomial(p: *const c_char, out: *mut *mut c_char) -> BmStatus {
    guard(|| unsafe {
        write_string(
            out,
            parse::<Partition>(p, "partition")?
                .multinomial()
                .to_string(),
        )
    })
}

/// Number of bipartitions with the given weights (`;`-separated) and column sums `q`.
///
/// # Safety
/// As for [`bm_kostka`].
#[no_mangle]
pub unsafe extern "C" fn bm_bip_count(
    w: *const c_char,
    q: *const c_char,
    out: *mut *mut c_char,
) -> BmStatus {
    guard(|| unsafe {
        let ws = weights(read_str(w, "weights")?)?;
        let c = quasibanal::bip_count(&ws, &parse(q, "Q")?)?;
        write_string(out, c.to_string())
    })
}

/// r(τ) rendered as a signed sum of K-types.
///
/// # Safety
/// As for [`bm_kostka`].
#[no_mangle]
pub unsafe extern "C" fn bm_r_tau(tau: *const c_char, out: *mut *mut c_char) -> BmStatus {
    guard(|| unsafe {
        let r = bmcycles::r_tau(&parse::<InertialType>(tau, "type")?)?;
        write_string(out, r.to_string())
    })
}

/// cyc(σ(τ)) rendered as a sum of components.
///
/// # Safety
/// As for [`bm_kostka`].
#[no_mangle]
pub unsafe extern "C" fn bm_cyc(tau: *const c_char, out: *mut *mut c_char) -> BmStatus {
    guard(|| unsafe {
        let t: InertialType = parse(tau, "type")?;
        let c = bmcycles::cyc(&VirtualRep::basis(RepLabel::KType(t)))?;
        write_string(out, c.to_string())
    })
}

/// Checks the local identity for one type sequence and point. Pass `l = 0`
/// to pick the smallest admissible ℓ and q. Writes the JSON report to
/// `report` (may be null) and returns `BM_STATUS_COUNTEREXAMPLE` when the
/// sides differ.
///
/// # Safety
/// As for [`bm_kostka`]; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn bm_verify_local_bm(
    tau: *const c_char,
    point: *const c_char,
    l: u64,
    q: u64,
    report: *mut *mut c_char,
) -> BmStatus {
    let mut ok = true;
    let status = guard(|| unsafe {
        let t: TypeSequence = parse(tau, "type")?;
        let p: Partition = parse(point, "Q")?;
        let params = if l == 0 {
            QuasiBanalParams::smallest_for(t.degree())?
        } else {
            QuasiBanalParams::new(l, q, t.degree())?
        };
        let r = quasibanal::verify_local_bm(&t, &DistinguishedPoint::new(p), &params)?;
        ok = r.ok;
        if !report.is_null() {
            write_string(report, serde_json::to_string(&r).expect("serializable"))?;
        }
        Ok(())
    });
    if status == BmStatus::Ok && !ok {
        set_error("local identity fails");
        return BmStatus::Counterexample;
    }
    status
}

/// Number of irreducible components of M(n, q); `l = 0` for characteristic zero.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bm_count_components(n: usize, q: u64, l: u64, out: *mut u64) -> BmStatus {
    guard(|| unsafe {
        let list = moduli::enumerate_components(n, q, (l != 0).then_some(l))?;
        write_out(out, list.components.len() as u64)
    })
}

fn matrix_new(
    out: *mut *mut BmMatrix,
    build: impl FnOnce() -> Result<PartitionMatrix, Error>,
) -> BmStatus {
    guard(|| {
        let m = Box::new(BmMatrix { inner: build()? });
        unsafe { write_out(out, Box::into_raw(m)) }
    })
}

/// Kostka matrix of degree n, rows and columns in canonical order.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bm_kostka_matrix_new(n: usize, out: *mut *mut BmMatrix) -> BmStatus {
    matrix_new(out, || symrep::kostka_matrix(n))
}

/// Inverse Kostka matrix of degree n.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bm_inverse_kostka_matrix_new(
    n: usize,
    out: *mut *mut BmMatrix,
) -> BmStatus {
    matrix_new(out, || symrep::inverse_kostka_matrix(n))
}

/// Number of rows (and columns). Returns 0 for null.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bm_matrix_size(m: *const BmMatrix) -> usize {
    unsafe { m.as_ref() }.map_or(0, |m| m.inner.size())
}

/// Entry (i, j) as a signed 64-bit integer.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bm_matrix_entry(
    m: *const BmMatrix,
    i: usize,
    j: usize,
    out: *mut i64,
) -> BmStatus {
    guard(|| unsafe {
        let m = m
            .as_ref()
            .ok_or_else(|| Failure(BmStatus::NullPointer, "matrix is null".into()))?;
        let n = m.inner.size();
        if i >= n || j >= n {
            return Err(Failure(
                BmStatus::InvalidArgument,
                format!("index ({i}, {j}) out of range {n}"),
            ));
        }
        let v = i64::try_from(&m.inner.entries[i][j])
            .map_err(|_| Failure(BmStatus::Overflow, "entry exceeds 64 bits".into()))?;
        write_out(out, v)
    })
}

/// Partition labelling row and column i, written like `2,1`.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bm_matrix_label(
    m: *const BmMatrix,
    i: usize,
    out: *mut *mut c_char,
) -> BmStatus {
    guard(|| unsafe {
        let m = m
            .as_ref()
            .ok_or_else(|| Failure(BmStatus::NullPointer, "matrix is null".into()))?;
        let p =
            m.inner.order.get(i).ok_or_else(|| {
                Failure(BmStatus::InvalidArgument, format!("index {i} out of range"))
            })?;
        write_string(out, p.comma_list())
    })
}

/// Releases a matrix handle. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bm_matrix_free(m: *mut BmMatrix) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}
