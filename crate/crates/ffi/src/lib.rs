//! C ABI over `kquiver`.
//!
//! Conventions:
//! - every function returns a [`KqStatus`]; results go through out-pointers;
//! - on failure the message is available from [`kq_last_error_message`] on the same thread;
//! - handles are opaque and released with their `_free` function;
//! - strings returned by the library are released with [`kq_string_free`];
//! - panics are caught at the boundary and reported as [`KqStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use kquiver::ktheory::{run_suite, CheckKind, SuiteConfig};
use kquiver::quiver::quiver_dim;
use kquiver::relations::verify_module;
use kquiver::{CartanData, Error, GraphData, IntegrableModule, Weight};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Arithmetic = 5,
    CheckFailed = 6,
    Internal = 7,
    Panic = 8,
}

/// Cartan data of a loop-free graph.
pub struct KqCartan(CartanData);

/// A built integrable module.
pub struct KqModule(IntegrableModule);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes removed"));
}

fn status_of(e: &Error) -> KqStatus {
    match e {
        Error::Parse(_) => KqStatus::Parse,
        Error::DivisionByZero => KqStatus::Arithmetic,
        Error::Internal(_) => KqStatus::Internal,
        _ => KqStatus::InvalidInput,
    }
}

type Outcome = std::result::Result<(), (KqStatus, String)>;

fn fail(status: KqStatus, msg: impl Into<String>) -> Outcome {
    Err((status, msg.into()))
}

fn lift<T>(r: kquiver::Result<T>) -> std::result::Result<T, (KqStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

/// Runs `f` behind the panic boundary and records any error message.
fn guard(f: impl FnOnce() -> Outcome) -> KqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KqStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside kquiver");
            KqStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> std::result::Result<&'a str, (KqStatus, String)> {
    if p.is_null() {
        return Err((KqStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (KqStatus::InvalidUtf8, e.to_string()))
}

unsafe fn slice<'a>(
    p: *const i64,
    len: usize,
) -> std::result::Result<&'a [i64], (KqStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err((KqStatus::NullPointer, "null array".into()));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn handle<'a, T>(p: *const T) -> std::result::Result<&'a T, (KqStatus, String)> {
    p.as_ref()
        .ok_or((KqStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return fail(KqStatus::NullPointer, "null out-pointer");
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message of the last failed call on this thread; empty if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn kq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn kq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn kq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Cartan data from a graph file (JSON with `vertices`, `edges`).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kq_cartan_from_json(
    json: *const c_char,
    out: *mut *mut KqCartan,
) -> KqStatus {
    guard(|| {
        let file = lift(kquiver::cartan::GraphFile::parse(text(json)?))?;
        let cd = lift(CartanData::new(file.graph()))?;
        put(out, Box::into_raw(Box::new(KqCartan(cd))))
    })
}

/// Cartan data from a type string such as `A3` or `A1xA1`.
///
/// # Safety
/// `kind` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kq_cartan_from_type(
    kind: *const c_char,
    out: *mut *mut KqCartan,
) -> KqStatus {
    guard(|| {
        let cd = lift(GraphData::from_type(text(kind)?).and_then(CartanData::new))?;
        put(out, Box::into_raw(Box::new(KqCartan(cd))))
    })
}

/// # Safety
/// `c` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn kq_cartan_free(c: *mut KqCartan) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of vertices.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kq_cartan_rank(c: *const KqCartan, out: *mut usize) -> KqStatus {
    guard(|| put(out, handle(c)?.0.rank()))
}

unsafe fn weight(
    cd: &CartanData,
    w: *const i64,
    v: *const i64,
    len: usize,
) -> std::result::Result<Weight, (KqStatus, String)> {
    if len != cd.rank() {
        return Err((
            KqStatus::InvalidInput,
            format!("length {len} differs from rank {}", cd.rank()),
        ));
    }
    Ok(Weight::new(
        slice(w, len)?.to_vec(),
        slice(v, len)?.to_vec(),
    ))
}

/// `<Lambda_w - alpha_v, alpha_i>`.
///
/// # Safety
/// `w` and `v` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kq_cartan_pair(
    c: *const KqCartan,
    w: *const i64,
    v: *const i64,
    len: usize,
    i: usize,
    out: *mut i64,
) -> KqStatus {
    guard(|| {
        let cd = &handle(c)?.0;
        let l = weight(cd, w, v, len)?;
        put(out, lift(cd.pair(&l, i))?)
    })
}

/// Dimension of the quiver variety of weight `Lambda_w - alpha_v`.
///
/// # Safety
/// `w` and `v` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kq_quiver_dim(
    c: *const KqCartan,
    w: *const i64,
    v: *const i64,
    len: usize,
    out: *mut i64,
) -> KqStatus {
    guard(|| {
        let cd = &handle(c)?.0;
        put(out, quiver_dim(cd, &weight(cd, w, v, len)?).dim)
    })
}

/// Builds `V(Lambda_w)`; a negative `depth` means no depth limit.
///
/// # Safety
/// `w` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kq_module_build(
    c: *const KqCartan,
    w: *const i64,
    len: usize,
    depth: i64,
    out: *mut *mut KqModule,
) -> KqStatus {
    guard(|| {
        let cd = &handle(c)?.0;
        let depth = (depth >= 0).then_some(depth);
        let m = lift(IntegrableModule::build(cd, slice(w, len)?, depth))?;
        put(out, Box::into_raw(Box::new(KqModule(m))))
    })
}

/// # Safety
/// `m` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn kq_module_free(m: *mut KqModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Total dimension of the module.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kq_module_total_dim(m: *const KqModule, out: *mut usize) -> KqStatus {
    guard(|| put(out, handle(m)?.0.total_dim()))
}

/// Dimension of the weight space at `v`.
///
/// # Safety
/// `v` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kq_module_weight_dim(
    m: *const KqModule,
    v: *const i64,
    len: usize,
    out: *mut usize,
) -> KqStatus {
    guard(|| {
        let m = &handle(m)?.0;
        if len != m.rank() {
            return fail(
                KqStatus::InvalidInput,
                format!("length {len} differs from rank {}", m.rank()),
            );
        }
        put(out, m.dim(slice(v, len)?))
    })
}

/// Module file JSON; release with [`kq_string_free`].
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kq_module_to_json(m: *const KqModule, out: *mut *mut c_char) -> KqStatus {
    guard(|| {
        let file = handle(m)?.0.to_json();
        let s = serde_json::to_string(&file).map_err(|e| (KqStatus::Internal, e.to_string()))?;
        put(out, owned_string(s))
    })
}

/// Checks the relation families. The JSON report is written to `out` (if not
/// null) in every case where checks ran; a failed family gives `CheckFailed`.
///
/// # Safety
/// `m` must be a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn kq_module_verify(m: *const KqModule, out: *mut *mut c_char) -> KqStatus {
    guard(|| {
        let families = lift(verify_module(&handle(m)?.0))?;
        let passed = families.iter().all(|f| f.passed);
        if !out.is_null() {
            let s = serde_json::to_string(&families)
                .map_err(|e| (KqStatus::Internal, e.to_string()))?;
            put(out, owned_string(s))?;
        }
        if passed {
            Ok(())
        } else {
            fail(KqStatus::CheckFailed, "a relation family failed")
        }
    })
}

/// Runs the localized K-theory checks on `T*G(k,N)` for all k. `checks` is a
/// comma-separated list or null for all. The JSON report goes to `out` (if not
/// null); a failed check gives `CheckFailed`.
///
/// # Safety
/// `checks` must be null or a nul-terminated string; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn kq_ktheory_verify(
    n: usize,
    checks: *const c_char,
    symbolic: bool,
    seed: u64,
    points: usize,
    out: *mut *mut c_char,
) -> KqStatus {
    guard(|| {
        let kinds = if checks.is_null() {
            CheckKind::ALL.to_vec()
        } else {
            lift(CheckKind::parse_list(text(checks)?))?
        };
        let cfg = SuiteConfig {
            checks: kinds,
            symbolic,
            seed,
            points,
            ..SuiteConfig::new(n)
        };
        let report = lift(run_suite(&cfg))?;
        if !out.is_null() {
            let s =
                serde_json::to_string(&report).map_err(|e| (KqStatus::Internal, e.to_string()))?;
            put(out, owned_string(s))?;
        }
        if report.passed {
            Ok(())
        } else {
            fail(KqStatus::CheckFailed, "a K-theory check failed")
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn errors_are_recorded() {
        let mut c = ptr::null_mut();
        let s = unsafe { kq_cartan_from_type(c"B2".as_ptr(), &mut c) };
        assert_ne!(s, KqStatus::Ok);
        assert!(c.is_null());
        let msg = unsafe { CStr::from_ptr(kq_last_error_message()) };
        assert!(!msg.to_bytes().is_empty());
    }

    #[test]
    fn null_arguments_are_rejected() {
        assert_eq!(
            unsafe { kq_cartan_rank(ptr::null(), ptr::null_mut()) },
            KqStatus::NullPointer
        );
        unsafe { kq_cartan_free(ptr::null_mut()) };
        unsafe { kq_string_free(ptr::null_mut()) };
    }
}
