//! C ABI over the `vlimit` engine.
//!
//! Every fallible call returns a [`VlStatus`]; on failure the message and the
//! stable error kind of the last failing call on this thread are available
//! from [`vl_last_error_message`] and [`vl_last_error_kind`]. Strings handed
//! out through `char **` parameters are owned by the caller and released with
//! [`vl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use vlimit::cli::{execute, render, Command, Format, RunConfig};
use vlimit::limit::{fk_character, OrbifoldLimit};
use vlimit::orbifold::{Method, OrbifoldTower, OrbitLabel};
use vlimit::perm::GroupFamily;
use vlimit::seed::{SeedSpec, SeedVA};
use vlimit::{Error, RadicalScalar};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON, unknown command or method, invalid config.
    InvalidArgument = 3,
    /// A weight, level or basis index outside what the handle covers.
    OutOfRange = 4,
    /// The engine reported an error; see the error kind.
    Compute = 5,
    /// Output buffer too small.
    BufferTooSmall = 6,
    Panic = 7,
}

/// A permutation-orbifold tower over a seed.
pub struct VlTower {
    inner: Arc<OrbifoldTower>,
}

/// The large-N limit of a tower, with labels saturated below a level bound.
pub struct VlLimit {
    inner: OrbifoldLimit,
}

struct Failure {
    status: VlStatus,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Config(_) | Error::Parse { .. } => VlStatus::InvalidArgument,
            Error::CutoffExceeded { .. } | Error::Unsaturated { .. } => VlStatus::OutOfRange,
            _ => VlStatus::Compute,
        };
        Failure { status, kind: e.kind(), message: e.to_string() }
    }
}

fn fail(status: VlStatus, kind: &'static str, message: impl Into<String>) -> Failure {
    Failure { status, kind, message: message.into() }
}

thread_local! {
    static LAST: RefCell<(CString, CString)> = RefCell::new((CString::default(), CString::default()));
}

fn record(kind: &str, message: &str) {
    let clean = |s: &str| CString::new(s.replace('\0', " ")).unwrap_or_default();
    LAST.with(|l| *l.borrow_mut() = (clean(kind), clean(message)));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> VlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            record("", "");
            VlStatus::Ok
        }
        Ok(Err(e)) => {
            record(e.kind, &e.message);
            e.status
        }
        Err(_) => {
            record("panic", "internal panic");
            VlStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(VlStatus::NullPointer, "null_pointer", format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(VlStatus::InvalidUtf8, "invalid_utf8", format!("{what} is not UTF-8")))
}

fn json<T: serde::de::DeserializeOwned>(s: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(s).map_err(|e| fail(VlStatus::InvalidArgument, "config", format!("{what}: {e}")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| fail(VlStatus::NullPointer, "null_pointer", format!("{what} is null")))
}

fn give_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

unsafe fn put_exact(x: &RadicalScalar, value: *mut f64, exact: *mut *mut c_char) {
    if let Some(v) = value.as_mut() {
        *v = x.to_f64();
    }
    if let Some(e) = exact.as_mut() {
        *e = give_string(x.to_string());
    }
}

fn method(code: u32) -> Result<Method, Failure> {
    Method::ALL
        .get(code as usize)
        .copied()
        .ok_or_else(|| fail(VlStatus::InvalidArgument, "config", format!("method code {code} (expected 0, 1 or 2)")))
}

fn pick(labels: &[OrbitLabel], index: usize, weight: u32) -> Result<OrbitLabel, Failure> {
    labels.get(index).cloned().ok_or_else(|| {
        fail(VlStatus::OutOfRange, "out_of_range", format!("index {index} outside the {} labels of weight {weight}", labels.len()))
    })
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn vl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread (empty after a success). Valid
/// until the next call on this thread.
#[no_mangle]
pub extern "C" fn vl_last_error_message() -> *const c_char {
    LAST.with(|l| l.borrow().1.as_ptr())
}

/// Stable tag of the last failure (`config`, `unsaturated`, ...).
#[no_mangle]
pub extern "C" fn vl_last_error_kind() -> *const c_char {
    LAST.with(|l| l.borrow().0.as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn vl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a tower from JSON specs, e.g. `{"kind":"heisenberg"}` and
/// `{"family":"symmetric"}`.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_tower_new(
    seed_json: *const c_char,
    family_json: *const c_char,
    cutoff: u32,
    out_tower: *mut *mut VlTower,
) -> VlStatus {
    guard(|| {
        let slot = out(out_tower, "out_tower")?;
        *slot = ptr::null_mut();
        let spec: SeedSpec = json(text(seed_json, "seed_json")?, "seed_json")?;
        let family: GroupFamily = json(text(family_json, "family_json")?, "family_json")?;
        let seed = SeedVA::new(spec, cutoff)?;
        *slot = Box::into_raw(Box::new(VlTower { inner: Arc::new(OrbifoldTower::new(Arc::new(seed), family)) }));
        Ok(())
    })
}

/// # Safety
/// `tower` must come from [`vl_tower_new`] or be null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn vl_tower_free(tower: *mut VlTower) {
    if !tower.is_null() {
        drop(Box::from_raw(tower));
    }
}

/// `b_n(G_N)`: the number of orbit basis vectors of weight `n` at level `N`.
///
/// # Safety
/// `tower` must be a live handle; `out_dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_tower_dim(tower: *const VlTower, level: usize, weight: u32, out_dim: *mut usize) -> VlStatus {
    guard(|| {
        let t = tower.as_ref().ok_or_else(|| fail(VlStatus::NullPointer, "null_pointer", "tower is null"))?;
        *out(out_dim, "out_dim")? = t.inner.b_n(level, weight)?;
        Ok(())
    })
}

/// `C^N_abc` at level `N` for the basis labels `(weights[i], indices[i])`
/// anchored at `N`. `method`: 0 definition, 1 group sum, 2 oligo. Either
/// output may be null; `out_exact` receives an owned string.
///
/// # Safety
/// `weights` and `indices` must point to three elements each.
#[no_mangle]
pub unsafe extern "C" fn vl_tower_sc(
    tower: *const VlTower,
    level: usize,
    weights: *const u32,
    indices: *const usize,
    method_code: u32,
    out_value: *mut f64,
    out_exact: *mut *mut c_char,
) -> VlStatus {
    guard(|| {
        let t = tower.as_ref().ok_or_else(|| fail(VlStatus::NullPointer, "null_pointer", "tower is null"))?;
        if weights.is_null() || indices.is_null() {
            return Err(fail(VlStatus::NullPointer, "null_pointer", "weights or indices is null"));
        }
        let (w, ix) = (std::slice::from_raw_parts(weights, 3), std::slice::from_raw_parts(indices, 3));
        let m = method(method_code)?;
        let mut l = Vec::with_capacity(3);
        for k in 0..3 {
            l.push(pick(&t.inner.labels(level, w[k])?, ix[k], w[k])?);
        }
        let v = t.inner.sc_finite(level, &l[0], &l[1], &l[2], m)?;
        put_exact(&v, out_value, out_exact);
        Ok(())
    })
}

/// The limit algebra of `tower` on weights `0..=cutoff`, saturated by `max_level`.
///
/// # Safety
/// `tower` must be a live handle; `out_limit` must be writable. The limit
/// keeps its own reference, so the tower may be freed first.
#[no_mangle]
pub unsafe extern "C" fn vl_limit_new(
    tower: *const VlTower,
    cutoff: u32,
    max_level: usize,
    out_limit: *mut *mut VlLimit,
) -> VlStatus {
    guard(|| {
        let slot = out(out_limit, "out_limit")?;
        *slot = ptr::null_mut();
        let t = tower.as_ref().ok_or_else(|| fail(VlStatus::NullPointer, "null_pointer", "tower is null"))?;
        let inner = OrbifoldLimit::new(t.inner.clone(), cutoff, max_level)?;
        *slot = Box::into_raw(Box::new(VlLimit { inner }));
        Ok(())
    })
}

/// # Safety
/// `limit` must come from [`vl_limit_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn vl_limit_free(limit: *mut VlLimit) {
    if !limit.is_null() {
        drop(Box::from_raw(limit));
    }
}

/// # Safety
/// `limit` must be a live handle; `out_dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_limit_dim(limit: *const VlLimit, weight: u32, out_dim: *mut usize) -> VlStatus {
    guard(|| {
        let l = limit.as_ref().ok_or_else(|| fail(VlStatus::NullPointer, "null_pointer", "limit is null"))?;
        *out(out_dim, "out_dim")? = l.inner.labels(weight)?.len();
        Ok(())
    })
}

/// Exact `C^∞_abc` for limit labels `(weights[i], indices[i])`.
///
/// # Safety
/// As for [`vl_tower_sc`].
#[no_mangle]
pub unsafe extern "C" fn vl_limit_constant(
    limit: *const VlLimit,
    weights: *const u32,
    indices: *const usize,
    out_value: *mut f64,
    out_exact: *mut *mut c_char,
) -> VlStatus {
    guard(|| {
        let lim = limit.as_ref().ok_or_else(|| fail(VlStatus::NullPointer, "null_pointer", "limit is null"))?;
        if weights.is_null() || indices.is_null() {
            return Err(fail(VlStatus::NullPointer, "null_pointer", "weights or indices is null"));
        }
        let (w, ix) = (std::slice::from_raw_parts(weights, 3), std::slice::from_raw_parts(indices, 3));
        let mut l = Vec::with_capacity(3);
        for k in 0..3 {
            l.push(pick(lim.inner.labels(w[k])?, ix[k], w[k])?);
        }
        let v = lim.inner.limit_constant(&l[0], &l[1], &l[2])?;
        put_exact(&v, out_value, out_exact);
        Ok(())
    })
}

/// Coefficients of the `F^k` character up to `q^order`, written to
/// `buffer[0..=order]`.
///
/// # Safety
/// `buffer` must hold `len` elements.
#[no_mangle]
pub unsafe extern "C" fn vl_fk_character(k: u32, order: usize, buffer: *mut u64, len: usize) -> VlStatus {
    guard(|| {
        if buffer.is_null() {
            return Err(fail(VlStatus::NullPointer, "null_pointer", "buffer is null"));
        }
        if k == 0 {
            return Err(fail(VlStatus::InvalidArgument, "config", "k must be at least 1"));
        }
        if len < order + 1 {
            return Err(fail(VlStatus::BufferTooSmall, "buffer_too_small", format!("need {} slots, got {len}", order + 1)));
        }
        let c = fk_character(k, order);
        std::slice::from_raw_parts_mut(buffer, order + 1).copy_from_slice(&c);
        Ok(())
    })
}

/// Runs a CLI command (`"dims"`, `"sc"`, `"limit"`, ...) on a JSON config
/// (null or `""` for defaults) and returns the JSON document.
///
/// # Safety
/// String arguments must be NUL-terminated; `out_document` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_run(command: *const c_char, config_json: *const c_char, out_document: *mut *mut c_char) -> VlStatus {
    guard(|| {
        let slot = out(out_document, "out_document")?;
        *slot = ptr::null_mut();
        let name = text(command, "command")?;
        let cmd = Command::from_name(name)
            .ok_or_else(|| fail(VlStatus::InvalidArgument, "config", format!("unknown command `{name}`")))?;
        let cfg: RunConfig = if config_json.is_null() {
            RunConfig::default()
        } else {
            match text(config_json, "config_json")?.trim() {
                "" => RunConfig::default(),
                s => json(s, "config_json")?,
            }
        };
        let table = execute(cmd, &cfg)?;
        *slot = give_string(render(cmd.name(), &cfg, &table, Format::Json)?);
        Ok(())
    })
}
