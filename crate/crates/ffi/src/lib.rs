//! C ABI over `contra-core`.
//!
//! Objects are built from the same JSON documents the `contra` binary reads
//! and handed out as opaque pointers. Every function returns a
//! [`ContraStatus`]; on failure the message is available from
//! [`contra_last_error`] until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use contra_core::cli::{run_job, Job};
use contra_core::coalgebra::{Coalgebra, CoalgebraMorphism};
use contra_core::comodule::{cotensor, hom_comodules, Comodule};
use contra_core::contramodule::{cohom, contratensor, hom_contra, is_projective, Contramodule};
use contra_core::error::Error;
use contra_core::field::{Field, FieldSpec, PrimeField, Rationals};
use contra_core::functors::induce;
use contra_core::io::{self, Loader, Node};
use serde_json::Value;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContraStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    Schema = 4,
    Shape = 5,
    FieldMismatch = 6,
    CoalgebraMismatch = 7,
    Side = 8,
    NotSurjective = 9,
    Invalid = 10,
    Inconsistent = 11,
    Unsupported = 12,
    Io = 13,
    Panic = 14,
}

impl From<&Error> for ContraStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Shape(_) => ContraStatus::Shape,
            Error::CoalgebraMismatch => ContraStatus::CoalgebraMismatch,
            Error::FieldMismatch(..) => ContraStatus::FieldMismatch,
            Error::Side(_) => ContraStatus::Side,
            Error::NotSurjective => ContraStatus::NotSurjective,
            Error::Invalid(_) => ContraStatus::Invalid,
            Error::Inconsistent(_) => ContraStatus::Inconsistent,
            Error::Unsupported(_) => ContraStatus::Unsupported,
            Error::Parse(_) | Error::Json(_) => ContraStatus::Parse,
            Error::Schema { .. } => ContraStatus::Schema,
            Error::Io(_) => ContraStatus::Io,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Message for the last failed call on this thread, or NULL.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn contra_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Version string of the library. Static; do not free.
#[no_mangle]
pub extern "C" fn contra_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

enum Fail {
    Null,
    Utf8,
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> ContraStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ContraStatus::Ok,
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument".into());
            ContraStatus::NullPointer
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("argument is not valid UTF-8".into());
            ContraStatus::Utf8
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            ContraStatus::from(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            ContraStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null);
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(value);
    Ok(())
}

/// An object over Q or over a prime field.
enum Over<Q, P> {
    Q(Q),
    P(P),
}

impl<Q, P> Over<Q, P> {
    fn spec(&self, p: impl Fn(&P) -> FieldSpec) -> FieldSpec {
        match self {
            Over::Q(_) => FieldSpec::Rational,
            Over::P(x) => p(x),
        }
    }
}

pub struct ContraCoalgebra(Over<Coalgebra<Rationals>, Coalgebra<PrimeField>>);
pub struct ContraComodule(Over<Comodule<Rationals>, Comodule<PrimeField>>);
pub struct ContraContramodule(Over<Contramodule<Rationals>, Contramodule<PrimeField>>);
pub struct ContraMorphism(Over<CoalgebraMorphism<Rationals>, CoalgebraMorphism<PrimeField>>);

fn parse_doc<Q, P>(
    json: &str,
    q: impl FnOnce(&Loader, &Node) -> contra_core::error::Result<Q>,
    p: impl FnOnce(PrimeField, &Loader, &Node) -> contra_core::error::Result<P>,
) -> Result<Over<Q, P>, Fail> {
    let value: Value = serde_json::from_str(json).map_err(Error::from)?;
    let loader = Loader::new(".");
    let node = Node::root(&value);
    let spec = io::declared_field(&loader, &node)?.unwrap_or(FieldSpec::Rational);
    Ok(match spec {
        FieldSpec::Rational => Over::Q(q(&loader, &node)?),
        FieldSpec::PrimeField(prime) => Over::P(p(PrimeField::new(prime)?, &loader, &node)?),
    })
}

fn mismatch(a: FieldSpec, b: FieldSpec) -> Fail {
    Fail::Core(Error::FieldMismatch(a, b))
}

macro_rules! pair {
    ($a:expr, $b:expr, |$x:ident, $y:ident| $body:expr) => {
        match ($a, $b) {
            (Over::Q($x), Over::Q($y)) => $body,
            (Over::P($x), Over::P($y)) if $x.field() == $y.field() => $body,
            (a, b) => {
                return Err(mismatch(
                    a.spec(|x| x.field().spec()),
                    b.spec(|x| x.field().spec()),
                ))
            }
        }
    };
}

macro_rules! each {
    ($a:expr, |$x:ident| $body:expr) => {
        match $a {
            Over::Q($x) => $body,
            Over::P($x) => $body,
        }
    };
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// The pointer must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn contra_coalgebra_free(h: *mut ContraCoalgebra) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// The pointer must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn contra_comodule_free(h: *mut ContraComodule) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// The pointer must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn contra_contramodule_free(h: *mut ContraContramodule) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// The pointer must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn contra_morphism_free(h: *mut ContraMorphism) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Parses a coalgebra document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_coalgebra_from_json(json: *const c_char, out: *mut *mut ContraCoalgebra) -> ContraStatus {
    guard(|| {
        let doc = parse_doc(
            text(json)?,
            |l, n| io::parse_coalgebra(Rationals, l, n),
            |f, l, n| io::parse_coalgebra(f, l, n),
        )?;
        put(out, Box::into_raw(Box::new(ContraCoalgebra(doc))))
    })
}

/// Parses a comodule document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_comodule_from_json(json: *const c_char, out: *mut *mut ContraComodule) -> ContraStatus {
    guard(|| {
        let doc = parse_doc(
            text(json)?,
            |l, n| io::parse_comodule(Rationals, l, n),
            |f, l, n| io::parse_comodule(f, l, n),
        )?;
        put(out, Box::into_raw(Box::new(ContraComodule(doc))))
    })
}

/// Parses a contramodule document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_contramodule_from_json(
    json: *const c_char,
    out: *mut *mut ContraContramodule,
) -> ContraStatus {
    guard(|| {
        let doc = parse_doc(
            text(json)?,
            |l, n| io::parse_contramodule(Rationals, l, n),
            |f, l, n| io::parse_contramodule(f, l, n),
        )?;
        put(out, Box::into_raw(Box::new(ContraContramodule(doc))))
    })
}

/// Parses a coalgebra map document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_morphism_from_json(json: *const c_char, out: *mut *mut ContraMorphism) -> ContraStatus {
    guard(|| {
        let doc = parse_doc(
            text(json)?,
            |l, n| io::parse_morphism(Rationals, l, n),
            |f, l, n| io::parse_morphism(f, l, n),
        )?;
        put(out, Box::into_raw(Box::new(ContraMorphism(doc))))
    })
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_coalgebra_dim(h: *const ContraCoalgebra, out: *mut usize) -> ContraStatus {
    guard(|| put(out, each!(&borrow(h)?.0, |c| c.dim())))
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_comodule_dim(h: *const ContraComodule, out: *mut usize) -> ContraStatus {
    guard(|| put(out, each!(&borrow(h)?.0, |m| m.dim())))
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_contramodule_dim(h: *const ContraContramodule, out: *mut usize) -> ContraStatus {
    guard(|| put(out, each!(&borrow(h)?.0, |b| b.dim())))
}

/// Checks the coalgebra axioms; `*ok` is false if any fails.
///
/// # Safety
/// `h` must be a live handle and `ok` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_coalgebra_verify(h: *const ContraCoalgebra, ok: *mut bool) -> ContraStatus {
    guard(|| put(ok, each!(&borrow(h)?.0, |c| c.check().is_ok())))
}

/// # Safety
/// `h` must be a live handle and `ok` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_comodule_verify(h: *const ContraComodule, ok: *mut bool) -> ContraStatus {
    guard(|| put(ok, each!(&borrow(h)?.0, |m| m.check().is_ok())))
}

/// # Safety
/// `h` must be a live handle and `ok` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_contramodule_verify(h: *const ContraContramodule, ok: *mut bool) -> ContraStatus {
    guard(|| put(ok, each!(&borrow(h)?.0, |b| b.check().is_ok())))
}

/// # Safety
/// `h` must be a live handle and `ok` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_morphism_verify(h: *const ContraMorphism, ok: *mut bool) -> ContraStatus {
    guard(|| put(ok, each!(&borrow(h)?.0, |r| r.check().is_ok())))
}

/// Whether the contramodule is projective.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_contramodule_is_projective(h: *const ContraContramodule, out: *mut bool) -> ContraStatus {
    guard(|| put(out, each!(&borrow(h)?.0, |b| is_projective(b)?.is_some())))
}

/// Dimension of the space of comodule maps `a -> b`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_hom_comodules_dim(
    a: *const ContraComodule,
    b: *const ContraComodule,
    out: *mut usize,
) -> ContraStatus {
    guard(|| put(out, pair!(&borrow(a)?.0, &borrow(b)?.0, |x, y| hom_comodules(x, y)?.dim())))
}

/// Dimension of the space of contramodule maps `a -> b`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_hom_contra_dim(
    a: *const ContraContramodule,
    b: *const ContraContramodule,
    out: *mut usize,
) -> ContraStatus {
    guard(|| put(out, pair!(&borrow(a)?.0, &borrow(b)?.0, |x, y| hom_contra(x, y)?.dim())))
}

/// `dim M □ N` for a right comodule `m` and a left comodule `n`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_cotensor_dim(
    m: *const ContraComodule,
    n: *const ContraComodule,
    out: *mut usize,
) -> ContraStatus {
    guard(|| put(out, pair!(&borrow(m)?.0, &borrow(n)?.0, |x, y| cotensor(x, y)?.dim())))
}

/// `dim M ⊙ B` for a right comodule `m`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_contratensor_dim(
    m: *const ContraComodule,
    b: *const ContraContramodule,
    out: *mut usize,
) -> ContraStatus {
    guard(|| put(out, pair!(&borrow(m)?.0, &borrow(b)?.0, |x, y| contratensor(x, y)?.dim())))
}

/// `dim Cohom(M, B)` for a left comodule `m`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_cohom_dim(
    m: *const ContraComodule,
    b: *const ContraContramodule,
    out: *mut usize,
) -> ContraStatus {
    guard(|| put(out, pair!(&borrow(m)?.0, &borrow(b)?.0, |x, y| cohom(x, y)?.dim())))
}

/// Induces `w` along the surjection `rho`; the result is a new handle.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_induce(
    rho: *const ContraMorphism,
    w: *const ContraContramodule,
    out: *mut *mut ContraContramodule,
) -> ContraStatus {
    guard(|| {
        let ind = match (&borrow(rho)?.0, &borrow(w)?.0) {
            (Over::Q(r), Over::Q(x)) => Over::Q(induce(r, x)?.induced),
            (Over::P(r), Over::P(x)) if r.source.field() == x.field() => Over::P(induce(r, x)?.induced),
            (a, b) => return Err(mismatch(a.spec(|r| r.source.field().spec()), b.spec(|x| x.field().spec()))),
        };
        put(out, Box::into_raw(Box::new(ContraContramodule(ind))))
    })
}

/// Runs a job document `{"command", "inputs", "seed"?, "field"?}` as the
/// `contra run` command would, relative to the current directory. The
/// report is written to `*report` (free with [`contra_string_free`]) and
/// whether its checks passed to `*ok`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `report` and `ok` writable.
#[no_mangle]
pub unsafe extern "C" fn contra_run_job(json: *const c_char, report: *mut *mut c_char, ok: *mut bool) -> ContraStatus {
    guard(|| {
        if report.is_null() || ok.is_null() {
            return Err(Fail::Null);
        }
        let value: Value = serde_json::from_str(text(json)?).map_err(Error::from)?;
        let root = Node::root(&value);
        let inputs = match root.opt("inputs")? {
            Some(n) => n.value.as_object().cloned().unwrap_or_default(),
            None => Default::default(),
        };
        let job = Job {
            command: root.get("command")?.str()?.to_string(),
            inputs,
            seed: root.opt("seed")?.map(|n| n.u64()).transpose()?.unwrap_or(contra_core::random::DEFAULT_SEED),
            field: root.opt("field")?.map(|n| io::parse_field_spec(&n)).transpose()?,
            loader: Loader::new("."),
        };
        let outcome = run_job(&job)?;
        let s = CString::new(outcome.report.to_string()).map_err(|_| Fail::Utf8)?;
        put(report, s.into_raw())?;
        put(ok, outcome.ok)
    })
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// The pointer must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn contra_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
