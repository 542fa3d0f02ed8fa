//! C ABI over `stancu-core`.
//!
//! Every entry point returns a [`StancuStatus`] and writes results through
//! out-pointers. Functions are passed as opaque [`StancuFunction`] handles
//! created by `stancu_function_builtin` / `stancu_function_tabulated` and
//! released with `stancu_function_free`. On a non-`OK` status a message is
//! kept per thread and can be read with `stancu_last_error_message`.
//!
//! The header `include/stancu.h` is regenerated by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use stancu_core::bounds::{self, BoundConfig, RatioFamily};
use stancu_core::nodes;
use stancu_core::operators::{self, StancuOperator, StancuParams};
use stancu_core::{Error, FunctionSpec};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StancuStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    InvalidArgument = 3,
    BufferTooSmall = 4,
    Unbounded = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

/// Opaque function handle.
pub struct StancuFunction {
    inner: FunctionSpec,
}

/// Grid and constant settings for the bound computations.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StancuBoundConfig {
    pub c1: f64,
    pub mod_grid_size: usize,
    pub sup_grid_size: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(StancuStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Domain(_) => StancuStatus::Domain,
            Error::InvalidArgument(_) => StancuStatus::InvalidArgument,
            Error::Unbounded(_) => StancuStatus::Unbounded,
        };
        Failure(status, e.to_string())
    }
}

type FfiResult<T = ()> = Result<T, Failure>;

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> FfiResult) -> StancuStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StancuStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside stancu-ffi");
            StancuStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(StancuStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> FfiResult<&'a mut T> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn func<'a>(f: *const StancuFunction) -> FfiResult<&'a FunctionSpec> {
    f.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| null("function handle"))
}

unsafe fn out_slice<'a>(p: *mut f64, len: usize, need: usize) -> FfiResult<&'a mut [f64]> {
    if p.is_null() {
        return Err(null("output buffer"));
    }
    if len < need {
        return Err(Failure(
            StancuStatus::BufferTooSmall,
            format!("output buffer holds {len} values, {need} needed"),
        ));
    }
    Ok(slice::from_raw_parts_mut(p, need))
}

unsafe fn in_slice<'a, T>(p: *const T, len: usize, what: &str) -> FfiResult<&'a [T]> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn config(cfg: *const StancuBoundConfig) -> FfiResult<BoundConfig> {
    match cfg.as_ref() {
        None => Ok(BoundConfig::default()),
        Some(c) => Ok(BoundConfig::new(c.c1, c.mod_grid_size, c.sup_grid_size)?),
    }
}

fn params(n: u32, alpha: f64, beta: f64) -> FfiResult<StancuParams> {
    Ok(StancuParams::new(n, alpha, beta)?)
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn stancu_status_message(status: StancuStatus) -> *const c_char {
    let s: &'static CStr = match status {
        StancuStatus::Ok => c"ok",
        StancuStatus::NullPointer => c"null pointer argument",
        StancuStatus::Domain => c"domain error",
        StancuStatus::InvalidArgument => c"invalid argument",
        StancuStatus::BufferTooSmall => c"output buffer too small",
        StancuStatus::Unbounded => c"unbounded constant",
        StancuStatus::InvalidUtf8 => c"string is not valid UTF-8",
        StancuStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Bytes needed (including the terminating NUL) for the last error message
/// of this thread; 0 when there is none.
#[no_mangle]
pub extern "C" fn stancu_last_error_length() -> usize {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(0, |c| c.as_bytes_with_nul().len())
    })
}

/// Copies the last error message of this thread into `buf`.
///
/// # Safety
/// `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn stancu_last_error_message(buf: *mut c_char, len: usize) -> StancuStatus {
    if buf.is_null() {
        return StancuStatus::NullPointer;
    }
    LAST_ERROR.with(|slot| {
        let slot = slot.borrow();
        let bytes = slot.as_ref().map_or(&[0u8][..], |c| c.as_bytes_with_nul());
        if bytes.len() > len {
            return StancuStatus::BufferTooSmall;
        }
        ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, bytes.len());
        StancuStatus::Ok
    })
}

/// Default `c1`, modulus grid and sup grid.
#[no_mangle]
pub extern "C" fn stancu_bound_config_default() -> StancuBoundConfig {
    let d = BoundConfig::default();
    StancuBoundConfig {
        c1: d.c1(),
        mod_grid_size: d.mod_grid_size(),
        sup_grid_size: d.sup_grid_size(),
    }
}

/// Creates a handle for a builtin function: `e0`, `e1`, `e2`, `sin15`, `abshalf`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_function_builtin(
    name: *const c_char,
    out: *mut *mut StancuFunction,
) -> StancuStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if name.is_null() {
            return Err(null("name"));
        }
        let name = CStr::from_ptr(name)
            .to_str()
            .map_err(|e| Failure(StancuStatus::InvalidUtf8, e.to_string()))?;
        let inner: FunctionSpec = name.parse()?;
        *out = Box::into_raw(Box::new(StancuFunction { inner }));
        Ok(())
    })
}

/// Creates a piecewise-linear function through `(xs[i], ys[i])`; `xs` must
/// increase strictly from 0 to 1.
///
/// # Safety
/// `xs` and `ys` must each point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_function_tabulated(
    xs: *const f64,
    ys: *const f64,
    len: usize,
    out: *mut *mut StancuFunction,
) -> StancuStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let xs = in_slice(xs, len, "xs")?;
        let ys = in_slice(ys, len, "ys")?;
        let samples: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).collect();
        let inner = FunctionSpec::tabulated("tabulated", &samples)?;
        *out = Box::into_raw(Box::new(StancuFunction { inner }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `f` must come from a `stancu_function_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn stancu_function_free(f: *mut StancuFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_function_eval(
    f: *const StancuFunction,
    x: f64,
    out: *mut f64,
) -> StancuStatus {
    guard(|| {
        *out_ref(out, "out")? = func(f)?.eval(x)?;
        Ok(())
    })
}

/// Writes `b_{n,0}(x) … b_{n,n}(x)` into `out` (capacity `len ≥ n+1`).
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn stancu_basis_row(
    n: u32,
    x: f64,
    out: *mut f64,
    len: usize,
) -> StancuStatus {
    guard(|| {
        let row = operators::basis_row(n, x)?;
        out_slice(out, len, row.len())?.copy_from_slice(&row);
        Ok(())
    })
}

/// `B_n^{α,β}(f; x)`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_apply_operator(
    f: *const StancuFunction,
    n: u32,
    alpha: f64,
    beta: f64,
    x: f64,
    out: *mut f64,
) -> StancuStatus {
    guard(|| {
        *out_ref(out, "out")? = operators::apply_operator(func(f)?, params(n, alpha, beta)?, x)?;
        Ok(())
    })
}

/// Operator values on the uniform grid of `grid_size` points.
///
/// # Safety
/// `f` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn stancu_apply_operator_curve(
    f: *const StancuFunction,
    n: u32,
    alpha: f64,
    beta: f64,
    grid_size: usize,
    out: *mut f64,
    len: usize,
) -> StancuStatus {
    guard(|| {
        let buf = out_slice(out, len, grid_size)?;
        let curve = operators::apply_operator_curve(func(f)?, params(n, alpha, beta)?, grid_size)?;
        buf.copy_from_slice(curve.values());
        Ok(())
    })
}

/// Closed-form image of `t^i`, `i ∈ {0, 1, 2}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_moment(
    i: u8,
    n: u32,
    alpha: f64,
    beta: f64,
    x: f64,
    out: *mut f64,
) -> StancuStatus {
    guard(|| {
        *out_ref(out, "out")? = operators::moment_closed_form(i, params(n, alpha, beta)?, x)?;
        Ok(())
    })
}

/// Writes the `n+1` nodes `(k+α)/(n+β)`.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn stancu_nodes(
    n: u32,
    alpha: f64,
    beta: f64,
    out: *mut f64,
    len: usize,
) -> StancuStatus {
    guard(|| {
        let set = nodes::stancu_nodes(params(n, alpha, beta)?);
        out_slice(out, len, set.nodes.len())?.copy_from_slice(&set.nodes);
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_node_gap(
    k: u32,
    n: u32,
    alpha: f64,
    beta: f64,
    out: *mut f64,
) -> StancuStatus {
    guard(|| {
        *out_ref(out, "out")? = nodes::node_gap(k, params(n, alpha, beta)?)?;
        Ok(())
    })
}

/// Node-gap bound along the strictly increasing `degrees`.
///
/// # Safety
/// `degrees` must point to `len` readable values; `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_check_theorem1(
    alpha: f64,
    beta: f64,
    degrees: *const u32,
    len: usize,
    holds: *mut bool,
) -> StancuStatus {
    guard(|| {
        let holds = out_ref(holds, "holds")?;
        *holds = nodes::check_theorem1(alpha, beta, in_slice(degrees, len, "degrees")?)?.holds();
        Ok(())
    })
}

/// Clustering around `α/β` (`β > 0`).
///
/// # Safety
/// `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_check_theorem2(
    n: u32,
    alpha: f64,
    beta: f64,
    holds: *mut bool,
) -> StancuStatus {
    guard(|| {
        let holds = out_ref(holds, "holds")?;
        *holds = nodes::check_theorem2(params(n, alpha, beta)?)?.holds();
        Ok(())
    })
}

/// Nested clustering of `(α1, β1)` and `(α2, β2)` with equal ratio.
///
/// # Safety
/// `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_check_theorem3(
    n: u32,
    alpha1: f64,
    beta1: f64,
    alpha2: f64,
    beta2: f64,
    holds: *mut bool,
) -> StancuStatus {
    guard(|| {
        let holds = out_ref(holds, "holds")?;
        *holds =
            nodes::check_theorem3(params(n, alpha1, beta1)?, params(n, alpha2, beta2)?)?.holds();
        Ok(())
    })
}

/// `ω(f; δ)`. A null `cfg` selects the defaults.
///
/// # Safety
/// `f` must be a live handle; `cfg` null or readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_modulus_of_continuity(
    f: *const StancuFunction,
    delta: f64,
    cfg: *const StancuBoundConfig,
    out: *mut f64,
) -> StancuStatus {
    guard(|| {
        *out_ref(out, "out")? = bounds::modulus_of_continuity(func(f)?, delta, &config(cfg)?)?;
        Ok(())
    })
}

type BoundFn = fn(&FunctionSpec, StancuParams, &BoundConfig) -> stancu_core::Result<f64>;

unsafe fn bound_call(
    g: BoundFn,
    f: *const StancuFunction,
    n: u32,
    alpha: f64,
    beta: f64,
    cfg: *const StancuBoundConfig,
    out: *mut f64,
) -> StancuStatus {
    guard(|| {
        *out_ref(out, "out")? = g(func(f)?, params(n, alpha, beta)?, &config(cfg)?)?;
        Ok(())
    })
}

/// Grid maximum of `|B_n^{α,β} f − f|`.
///
/// # Safety
/// `f` must be a live handle; `cfg` null or readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_sup_error(
    f: *const StancuFunction,
    n: u32,
    alpha: f64,
    beta: f64,
    cfg: *const StancuBoundConfig,
    out: *mut f64,
) -> StancuStatus {
    bound_call(bounds::sup_error, f, n, alpha, beta, cfg, out)
}

/// Grid maximum of `|B_n^{α,β} f − B_n f|`.
///
/// # Safety
/// `f` must be a live handle; `cfg` null or readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_operator_distance(
    f: *const StancuFunction,
    n: u32,
    alpha: f64,
    beta: f64,
    cfg: *const StancuBoundConfig,
    out: *mut f64,
) -> StancuStatus {
    bound_call(bounds::operator_distance, f, n, alpha, beta, cfg, out)
}

/// `ω(f; (α+β)/(n+β)) + c1 · ω(f; n^{-1/2})`.
///
/// # Safety
/// `f` must be a live handle; `cfg` null or readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_corollary2_bound(
    f: *const StancuFunction,
    n: u32,
    alpha: f64,
    beta: f64,
    cfg: *const StancuBoundConfig,
    out: *mut f64,
) -> StancuStatus {
    bound_call(bounds::corollary2_bound, f, n, alpha, beta, cfg, out)
}

/// Ratio of the two-term bound to `ω(f; n^{-1/2})`; `UNBOUNDED` when the
/// denominator vanishes under a non-zero bound.
///
/// # Safety
/// `f` must be a live handle; `cfg` null or readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stancu_derive_c(
    f: *const StancuFunction,
    n: u32,
    alpha: f64,
    beta: f64,
    cfg: *const StancuBoundConfig,
    out: *mut f64,
) -> StancuStatus {
    bound_call(bounds::derive_c, f, n, alpha, beta, cfg, out)
}

/// For each scale `s_j`, writes `|B_n^{s_j α, s_j β}(f; m) − f(m)|` to
/// `d_at_m[j]` and its grid supremum over `x` to `d_sup[j]` (`m = α/β`).
/// Either output may be null.
///
/// # Safety
/// `f` must be a live handle; `scales` must hold `len` doubles; non-null
/// outputs must hold `len` doubles; `cfg` null or readable.
#[no_mangle]
pub unsafe extern "C" fn stancu_theorem4_experiment(
    f: *const StancuFunction,
    n: u32,
    alpha: f64,
    beta: f64,
    scales: *const f64,
    len: usize,
    cfg: *const StancuBoundConfig,
    d_at_m: *mut f64,
    d_sup: *mut f64,
) -> StancuStatus {
    guard(|| {
        let fam = RatioFamily::new(alpha, beta, in_slice(scales, len, "scales")?.to_vec())?;
        let report = bounds::theorem4_experiment(func(f)?, n, &fam, &config(cfg)?)?;
        if !d_at_m.is_null() {
            let buf = out_slice(d_at_m, len, len)?;
            for (d, l) in buf.iter_mut().zip(&report.levels) {
                *d = l.d_at_m;
            }
        }
        if !d_sup.is_null() {
            let buf = out_slice(d_sup, len, len)?;
            for (d, l) in buf.iter_mut().zip(&report.levels) {
                *d = l.d_sup;
            }
        }
        Ok(())
    })
}

/// Evaluates `B_n^{α,β}(f; ·)` at `len` points, sampling `f` once.
///
/// # Safety
/// `f` must be a live handle; `xs` and `out` must each hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn stancu_apply_operator_many(
    f: *const StancuFunction,
    n: u32,
    alpha: f64,
    beta: f64,
    xs: *const f64,
    out: *mut f64,
    len: usize,
) -> StancuStatus {
    guard(|| {
        let xs = in_slice(xs, len, "xs")?;
        let buf = out_slice(out, len, len)?;
        let op = StancuOperator::new(func(f)?, params(n, alpha, beta)?)?;
        for (o, &x) in buf.iter_mut().zip(xs) {
            *o = op.eval(x)?;
        }
        Ok(())
    })
}
