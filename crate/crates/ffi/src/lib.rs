//! C ABI over `ffgs`. Objects cross the boundary as opaque handles or as
//! JSON documents in the CLI format. Every function returns an
//! [`FfgsStatus`]; on failure `ffgs_last_error_message` describes the error
//! for the calling thread. Handles are released with the matching `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ffgs::cokernel::{cokernel, quotient};
use ffgs::dvr::RingSpec;
use ffgs::hopf::{canonical_form, fixtures, FiniteFlatHopf, GenericHopfMorphism, HopfMorphism};
use ffgs::io::{from_json, to_json, DocError, Document};
use ffgs::pushout::{group_pushout, lower_bound, PushoutResult};
use ffgs::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FfgsStatus {
    Ok = 0,
    /// A precondition or validation check failed.
    Invalid = 1,
    /// A saturation guard tripped.
    NonTerminating = 2,
    /// Malformed JSON, bad rational, wrong document kind or invalid UTF-8.
    Parse = 3,
    NullPointer = 4,
    /// A Rust panic was caught at the boundary.
    Panic = 5,
}

pub struct FfgsHopf(FiniteFlatHopf);

pub struct FfgsMorphism(HopfMorphism);

pub struct FfgsGenericMorphism(GenericHopfMorphism);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(FfgsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NonTerminating(_) => FfgsStatus::NonTerminating,
            _ => FfgsStatus::Invalid,
        };
        Failure(status, e.to_string())
    }
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        match e {
            DocError::Invalid(e) => e.into(),
            other => Failure(FfgsStatus::Parse, other.to_string()),
        }
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FfgsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FfgsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside ffgs".into());
            FfgsStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(FfgsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn string(s: *const c_char, what: &str) -> Result<String, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map(str::to_owned)
        .map_err(|_| Failure(FfgsStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(FfgsStatus::Invalid, "output contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn check_outs(outs: &[bool]) -> Result<(), Failure> {
    if outs.iter().any(|&is_null| is_null) {
        Err(null("an output pointer"))
    } else {
        Ok(())
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ffgs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ffgs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// A built-in Hopf algebra such as `mu4` or `constant-z2` over `Z_(p)`.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ffgs_hopf_fixture(p: u64, name: *const c_char, out: *mut *mut FfgsHopf) -> FfgsStatus {
    guard(|| {
        check_outs(&[out.is_null()])?;
        let name = string(name, "name")?;
        let h = fixtures::by_name(RingSpec::new(p)?, &name)?;
        put(out, FfgsHopf(h));
        Ok(())
    })
}

/// Parses a `hopf` document and checks the Hopf axioms.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ffgs_hopf_from_json(json: *const c_char, out: *mut *mut FfgsHopf) -> FfgsStatus {
    guard(|| {
        check_outs(&[out.is_null()])?;
        match from_json(&string(json, "json")?)? {
            Document::Hopf(h) => {
                h.check_axioms().into_result()?;
                put(out, FfgsHopf(h));
                Ok(())
            }
            other => Err(Failure(FfgsStatus::Parse, format!("expected a hopf document, found {:?}", other.kind()))),
        }
    })
}

/// # Safety
/// `h` must be a live handle and `out` writable; free the result with
/// `ffgs_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ffgs_hopf_to_json(h: *const FfgsHopf, out: *mut *mut c_char) -> FfgsStatus {
    guard(|| {
        check_outs(&[out.is_null()])?;
        let h = get(h, "h")?;
        put_string(out, to_json(&Document::Hopf(h.0.clone())))
    })
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ffgs_hopf_rank(h: *const FfgsHopf, out: *mut usize) -> FfgsStatus {
    guard(|| {
        check_outs(&[out.is_null()])?;
        *out = get(h, "h")?.0.rank();
        Ok(())
    })
}

/// Writes whether every Hopf axiom holds.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ffgs_hopf_check_axioms(h: *const FfgsHopf, out: *mut bool) -> FfgsStatus {
    guard(|| {
        check_outs(&[out.is_null()])?;
        *out = get(h, "h")?.0.check_axioms().passed();
        Ok(())
    })
}

/// The Cartier dual.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ffgs_hopf_dualize(h: *const FfgsHopf, out: *mut *mut FfgsHopf) -> FfgsStatus {
    guard(|| {
        check_outs(&[out.is_null()])?;
        let d = get(h, "h")?.0.dualize();
        put(out, FfgsHopf(d));
        Ok(())
    })
}

/// Compares canonical forms; fails with `Invalid` when no canonical form is
/// available (neither the object nor its dual has a split generic fibre).
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ffgs_hopf_isomorphic(a: *const FfgsHopf, b: *const FfgsHopf, out: *mut bool) -> FfgsStatus {
    guard(|| {
        check_outs(&[out.is_null()])?;
        let (a, b) = (get(a, "a")?, get(b, "b")?);
        let canon = |h: &FiniteFlatHopf| {
            canonical_form(h).ok_or_else(|| Failure(FfgsStatus::Invalid, "no canonical form for this object".into()))
        };
        *out = canon(&a.0)? == canon(&b.0)?;
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn ffgs_hopf_free(h: *mut FfgsHopf) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Parses a `morphism` document and checks that it is a Hopf morphism over `R`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ffgs_morphism_from_json(json: *const c_char, out: *mut *mut FfgsMorphism) -> FfgsStatus {
    guard(|| {
        check_outs(&[out.is_null()])?;
        match from_json(&string(json, "json")?)? {
            Document::Morphism(m) => {
                m.source.check_axioms().into_result()?;
                m.target.check_axioms().into_result()?;
                m.check().into_result()?;
                put(out, FfgsMorphism(m));
                Ok(())
            }
            other => Err(Failure(FfgsStatus::Parse, format!("expected a morphism document, found {:?}", other.kind()))),
        }
    })
}

/// # Safety
/// `m` must be a live handle and `out` writable; free the result with
/// `ffgs_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ffgs_morphism_to_json(m: *const FfgsMorphism, out: *mut *mut c_char) -> FfgsStatus {
    guard(|| {
        check_outs(&[out.is_null()])?;
        let m = get(m, "m")?;
        put_string(out, to_json(&Document::Morphism(m.0.clone())))
    })
}

/// # Safety
/// `m` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn ffgs_morphism_free(m: *mut FfgsMorphism) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Parses a `generic_morphism` document and checks it over `K`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ffgs_generic_morphism_from_json(
    json: *const c_char,
    out: *mut *mut FfgsGenericMorphism,
) -> FfgsStatus {
    guard(|| {
        check_outs(&[out.is_null()])?;
        match from_json(&string(json, "json")?)? {
            Document::GenericMorphism(m) => {
                m.check()?.into_result()?;
                put(out, FfgsGenericMorphism(m));
                Ok(())
            }
            other => Err(Failure(
                FfgsStatus::Parse,
                format!("expected a generic_morphism document, found {:?}", other.kind()),
            )),
        }
    })
}

/// # Safety
/// `m` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn ffgs_generic_morphism_free(m: *mut FfgsGenericMorphism) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

unsafe fn put_pushout(
    res: PushoutResult,
    out_p: *mut *mut FfgsHopf,
    out_alpha: *mut *mut FfgsMorphism,
    out_beta: *mut *mut FfgsMorphism,
) {
    put(out_p, FfgsHopf(res.p));
    put(out_alpha, FfgsMorphism(res.alpha));
    put(out_beta, FfgsMorphism(res.beta));
}

/// Pushout of `m: M → U` (a model map) and `n: N → U` on coordinate rings.
/// Writes `P` and the legs `alpha: P → M`, `beta: P → N`.
///
/// # Safety
/// `m`, `n` must be live handles and the outputs writable.
#[no_mangle]
pub unsafe extern "C" fn ffgs_group_pushout(
    m: *const FfgsMorphism,
    n: *const FfgsMorphism,
    max_iterations: usize,
    out_p: *mut *mut FfgsHopf,
    out_alpha: *mut *mut FfgsMorphism,
    out_beta: *mut *mut FfgsMorphism,
) -> FfgsStatus {
    guard(|| {
        check_outs(&[out_p.is_null(), out_alpha.is_null(), out_beta.is_null()])?;
        let res = group_pushout(&get(m, "m")?.0, &get(n, "n")?.0, max_iterations)?;
        put_pushout(res, out_p, out_alpha, out_beta);
        Ok(())
    })
}

/// Lower bound of `M` and `N` over `psi: N ⊗ K → M ⊗ K`.
///
/// # Safety
/// `m`, `n`, `psi` must be live handles and the outputs writable.
#[no_mangle]
pub unsafe extern "C" fn ffgs_lower_bound(
    m: *const FfgsHopf,
    n: *const FfgsHopf,
    psi: *const FfgsGenericMorphism,
    max_iterations: usize,
    out_p: *mut *mut FfgsHopf,
    out_alpha: *mut *mut FfgsMorphism,
    out_beta: *mut *mut FfgsMorphism,
) -> FfgsStatus {
    guard(|| {
        check_outs(&[out_p.is_null(), out_alpha.is_null(), out_beta.is_null()])?;
        let res = lower_bound(&get(m, "m")?.0, &get(n, "n")?.0, &get(psi, "psi")?.0, max_iterations)?;
        put_pushout(res, out_p, out_alpha, out_beta);
        Ok(())
    })
}

/// Cokernel of the group map whose coordinate-ring map is `f: G → H`.
/// Writes `C` and the projection, a map from the algebra of `C` to that of `G`.
///
/// # Safety
/// `f` must be a live handle and the outputs writable.
#[no_mangle]
pub unsafe extern "C" fn ffgs_cokernel(
    f: *const FfgsMorphism,
    out_c: *mut *mut FfgsHopf,
    out_proj: *mut *mut FfgsMorphism,
) -> FfgsStatus {
    guard(|| {
        check_outs(&[out_c.is_null(), out_proj.is_null()])?;
        let cok = cokernel(&get(f, "f")?.0)?;
        put(out_c, FfgsHopf(cok.hopf));
        put(out_proj, FfgsMorphism(cok.proj));
        Ok(())
    })
}

/// `G/H` for a closed immersion given as `incl: G → H` on coordinate rings.
///
/// # Safety
/// `g`, `h`, `incl` must be live handles and the outputs writable.
#[no_mangle]
pub unsafe extern "C" fn ffgs_quotient(
    g: *const FfgsHopf,
    h: *const FfgsHopf,
    incl: *const FfgsMorphism,
    out_q: *mut *mut FfgsHopf,
    out_proj: *mut *mut FfgsMorphism,
) -> FfgsStatus {
    guard(|| {
        check_outs(&[out_q.is_null(), out_proj.is_null()])?;
        let q = quotient(&get(g, "g")?.0, &get(h, "h")?.0, &get(incl, "incl")?.0)?;
        put(out_q, FfgsHopf(q.cokernel.hopf));
        put(out_proj, FfgsMorphism(q.cokernel.proj));
        Ok(())
    })
}
