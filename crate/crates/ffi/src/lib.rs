//! C ABI for `polyaut`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`PaStatus`]; on failure `pa_last_error()` describes it until the next
//! call on the same thread. Strings returned through `char **` are released
//! with `pa_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polyaut::algebra::text::{parse_components, ParsedComponents};
use polyaut::algebra::ScalarField;
use polyaut::conjugacy::{are_conjugate, normal_form, Verdict};
use polyaut::endo::{Endo, PlaneAut};
use polyaut::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidField = 4,
    InvalidArgument = 5,
    NotInvertible = 6,
    Pole = 7,
    Domain = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaVerdict {
    No = 0,
    Yes = 1,
    Unknown = 2,
}

/// A scalar field, `Q` or `F_p`.
pub struct PaField(ScalarField);

/// An automorphism of the plane with its inverse.
pub struct PaMap(PlaneAut);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(PaStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => PaStatus::Parse,
            Error::InvalidField(_) => PaStatus::InvalidField,
            Error::InvalidArgument(_) | Error::ArityMismatch { .. } => PaStatus::InvalidArgument,
            Error::NotInvertible(_) => PaStatus::NotInvertible,
            Error::Pole(_) => PaStatus::Pole,
            _ => PaStatus::Domain,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PaStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PaStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(PaStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(PaStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(PaStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(PaStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(PaStatus::Domain, "string has interior nul".into()))?;
    write_out(out, c.into_raw())
}

fn parse_endo(src: &str, field: &ScalarField) -> Result<Endo<ScalarField>, Fail> {
    match parse_components(src, field).map_err(Error::from)? {
        ParsedComponents::Plain(v) => Ok(Endo::new(v)?),
        ParsedComponents::Family(_) => Err(Fail(
            PaStatus::InvalidArgument,
            "families in t are not accepted here".into(),
        )),
    }
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn pa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn pa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse `Q` or `Fp:<prime>`.
///
/// # Safety
/// `descriptor` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pa_field_new(descriptor: *const c_char, out: *mut *mut PaField) -> PaStatus {
    guard(|| {
        let field: ScalarField = text(descriptor)?.parse()?;
        write_out(out, Box::into_raw(Box::new(PaField(field))))
    })
}

/// # Safety
/// `field` must be null or a handle from `pa_field_new`.
#[no_mangle]
pub unsafe extern "C" fn pa_field_free(field: *mut PaField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// `field` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pa_field_characteristic(field: *const PaField) -> u64 {
    field.as_ref().map_or(0, |f| f.0.characteristic())
}

/// Parse a plane automorphism such as `"(-x2, x1 + x2^2)"`.
///
/// # Safety
/// Pointers must be valid; `out` receives an owned handle.
#[no_mangle]
pub unsafe extern "C" fn pa_map_parse(field: *const PaField, src: *const c_char, out: *mut *mut PaMap) -> PaStatus {
    guard(|| {
        let field = handle(field)?;
        let endo = parse_endo(text(src)?, &field.0)?;
        let map = PlaneAut::new(endo)?;
        write_out(out, Box::into_raw(Box::new(PaMap(map))))
    })
}

/// # Safety
/// `map` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pa_map_free(map: *mut PaMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Canonical text of the map.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pa_map_to_string(map: *const PaMap, out: *mut *mut c_char) -> PaStatus {
    guard(|| write_string(out, handle(map)?.0.forward().to_string()))
}

/// `first ∘ second`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pa_map_compose(first: *const PaMap, second: *const PaMap, out: *mut *mut PaMap) -> PaStatus {
    guard(|| {
        let c = handle(first)?.0.compose(&handle(second)?.0)?;
        write_out(out, Box::into_raw(Box::new(PaMap(c))))
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pa_map_inverse(map: *const PaMap, out: *mut *mut PaMap) -> PaStatus {
    guard(|| {
        let inv = handle(map)?.0.inverted();
        write_out(out, Box::into_raw(Box::new(PaMap(inv))))
    })
}

/// Total degree; 0 for the zero map.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pa_map_degree(map: *const PaMap, out: *mut u32) -> PaStatus {
    guard(|| write_out(out, handle(map)?.0.degree().or_zero()))
}

/// Whether `deg(f²) = deg(f)²` with `deg f ≥ 2`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pa_map_is_regular(map: *const PaMap, out: *mut bool) -> PaStatus {
    guard(|| write_out(out, handle(map)?.0.regularity().regular))
}

/// Family label of an algebraic map (`"I"`..`"IV"`), or `"henon"`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pa_map_classify(map: *const PaMap, out: *mut *mut c_char) -> PaStatus {
    guard(|| {
        let m = &handle(map)?.0;
        let label = if m.is_algebraic() {
            normal_form(m)?.form.family()
        } else {
            "henon"
        };
        write_string(out, label.to_string())
    })
}

/// Decide whether `g = h f h⁻¹` for some `h`. On `Yes` and a non-null
/// `conjugator`, an owned handle to `h` is written there; otherwise it is
/// set to null.
///
/// # Safety
/// Pointers must be valid; `conjugator` may be null.
#[no_mangle]
pub unsafe extern "C" fn pa_conjugacy(
    f: *const PaMap,
    g: *const PaMap,
    verdict: *mut PaVerdict,
    conjugator: *mut *mut PaMap,
) -> PaStatus {
    guard(|| {
        let v = are_conjugate(&handle(f)?.0, &handle(g)?.0)?;
        let (code, h) = match v {
            Verdict::Yes { conjugator } => (PaVerdict::Yes, Some(conjugator)),
            Verdict::No { .. } => (PaVerdict::No, None),
            Verdict::Unknown { .. } => (PaVerdict::Unknown, None),
        };
        write_out(verdict, code)?;
        if !conjugator.is_null() {
            conjugator.write(h.map_or(ptr::null_mut(), |h| Box::into_raw(Box::new(PaMap(h)))));
        }
        Ok(())
    })
}

/// Degrees of `f, f², …, f^n` for an endomorphism of any dimension. Writes
/// the sequence into `buf` (capacity `len`) and its length into `written`;
/// fails with `BufferTooSmall` when `len < n` and still reports `written`.
///
/// # Safety
/// `buf` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn pa_degree_sequence(
    field: *const PaField,
    src: *const c_char,
    n: u32,
    buf: *mut u64,
    len: usize,
    written: *mut usize,
) -> PaStatus {
    guard(|| {
        let endo = parse_endo(text(src)?, &handle(field)?.0)?;
        let seq = endo.degree_sequence(n)?;
        write_out(written, seq.len())?;
        if seq.len() > len {
            return Err(Fail(
                PaStatus::BufferTooSmall,
                format!("need room for {} degrees", seq.len()),
            ));
        }
        if buf.is_null() && !seq.is_empty() {
            return Err(Fail(PaStatus::NullPointer, "null buffer".into()));
        }
        for (i, d) in seq.iter().enumerate() {
            buf.add(i).write(u64::from(d.or_zero()));
        }
        Ok(())
    })
}

/// Run the command-line front end on `argv` (without the program name).
/// Standard output is returned through `out`, standard error through `err`
/// when non-null; the return value is the exit status, or -1 if the
/// arguments could not be read.
///
/// # Safety
/// `argv` must point to `argc` nul-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn pa_cli_run(
    argc: c_int,
    argv: *const *const c_char,
    out: *mut *mut c_char,
    err: *mut *mut c_char,
) -> c_int {
    let mut code: c_int = -1;
    let status = guard(|| {
        if argc < 0 || (argc > 0 && argv.is_null()) {
            return Err(Fail(PaStatus::NullPointer, "bad argv".into()));
        }
        let mut args = vec!["polyaut".to_string()];
        for i in 0..argc as usize {
            args.push(text(*argv.add(i))?.to_string());
        }
        let (mut o, mut e) = (Vec::new(), Vec::new());
        code = polyaut::cli::main_with_args(args, &mut o, &mut e);
        write_string(out, String::from_utf8_lossy(&o).into_owned())?;
        if !err.is_null() {
            write_string(err, String::from_utf8_lossy(&e).into_owned())?;
        }
        Ok(())
    });
    if status == PaStatus::Ok {
        code
    } else {
        -1
    }
}
