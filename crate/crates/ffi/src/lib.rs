//! C interface to `homsim`.
//!
//! Every fallible call returns a [`HomsimStatus`] and writes its result
//! through an out-pointer. On failure, [`homsim_last_error`] returns a
//! message for the calling thread. Geometries are opaque handles created by
//! [`homsim_geometry_new`] and released with [`homsim_geometry_free`].
//! Strings returned by the library are released with [`homsim_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use homsim::oracle::{oracle_hom, oracle_marginal, oracle_windowed};
use homsim::scenario::{parse_config, run_scenario, ScenarioError};
use homsim::{
    hom_probability, joint_probability, marginal_probability, no_interference_probability, validate_splitter,
    windowed_probability, Error, ExperimentGeometry, QuadratureResult, QuadratureSpec,
};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomsimStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Unitarity = 3,
    UnbalancedSplitter = 4,
    Convergence = 5,
    Config = 6,
    InvalidUtf8 = 7,
    Panic = 8,
    Internal = 9,
}

/// Opaque experiment geometry.
pub struct HomsimGeometry(ExperimentGeometry);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> HomsimStatus {
    match err {
        Error::Domain(_) => HomsimStatus::Domain,
        Error::Unitarity { .. } => HomsimStatus::Unitarity,
        Error::UnbalancedSplitter { .. } => HomsimStatus::UnbalancedSplitter,
        Error::Convergence { .. } => HomsimStatus::Convergence,
        _ => HomsimStatus::Internal,
    }
}

fn fail(status: HomsimStatus, msg: impl Into<String>) -> HomsimStatus {
    set_last_error(msg);
    status
}

/// Runs `body` with panics converted to `Panic` and errors recorded.
fn guard(body: impl FnOnce() -> Result<(), HomsimStatus>) -> HomsimStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => HomsimStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(HomsimStatus::Panic, "internal panic"),
    }
}

fn lib_err(e: Error) -> HomsimStatus {
    let status = status_of(&e);
    fail(status, e.to_string())
}

unsafe fn geometry<'a>(handle: *const HomsimGeometry) -> Result<&'a ExperimentGeometry, HomsimStatus> {
    match handle.as_ref() {
        Some(h) => Ok(&h.0),
        None => Err(fail(HomsimStatus::NullPointer, "geometry handle is null")),
    }
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), HomsimStatus> {
    if out.is_null() {
        return Err(fail(HomsimStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_f64(out: *mut f64, value: Result<f64, Error>) -> Result<(), HomsimStatus> {
    if out.is_null() {
        return Err(fail(HomsimStatus::NullPointer, "output pointer is null"));
    }
    out.write(value.map_err(lib_err)?);
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn homsim_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn homsim_status_name(status: HomsimStatus) -> *const c_char {
    let s: &'static CStr = match status {
        HomsimStatus::Ok => c"ok",
        HomsimStatus::NullPointer => c"null pointer",
        HomsimStatus::Domain => c"domain error",
        HomsimStatus::Unitarity => c"beam splitter not unitary",
        HomsimStatus::UnbalancedSplitter => c"closed forms need a balanced splitter",
        HomsimStatus::Convergence => c"quadrature did not converge",
        HomsimStatus::Config => c"scenario config error",
        HomsimStatus::InvalidUtf8 => c"string is not UTF-8",
        HomsimStatus::Panic => c"internal panic",
        HomsimStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Creates a balanced-splitter geometry.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn homsim_geometry_new(
    t_a: f64,
    t_b: f64,
    t_c: f64,
    t_d: f64,
    delta_a: f64,
    delta_b: f64,
    delta_c: f64,
    delta_d: f64,
    out: *mut *mut HomsimGeometry,
) -> HomsimStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(HomsimStatus::NullPointer, "output pointer is null"));
        }
        let geom = ExperimentGeometry::new([t_a, t_b, t_c, t_d], [delta_a, delta_b, delta_c, delta_d]).map_err(lib_err)?;
        out.write(Box::into_raw(Box::new(HomsimGeometry(geom))));
        Ok(())
    })
}

/// Replaces the splitter amplitudes. Closed forms then reject the handle
/// unless `r = t = 1/sqrt 2`.
///
/// # Safety
/// `geom` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn homsim_geometry_set_splitter(geom: *mut HomsimGeometry, r: f64, t: f64) -> HomsimStatus {
    guard(|| {
        let Some(h) = geom.as_mut() else {
            return Err(fail(HomsimStatus::NullPointer, "geometry handle is null"));
        };
        h.0.splitter = validate_splitter(r, t).map_err(lib_err)?;
        Ok(())
    })
}

/// Releases a geometry. Null is ignored.
///
/// # Safety
/// `geom` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn homsim_geometry_free(geom: *mut HomsimGeometry) {
    if !geom.is_null() {
        drop(Box::from_raw(geom));
    }
}

/// # Safety
/// `geom` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn homsim_joint_probability(
    geom: *const HomsimGeometry,
    tau_c: f64,
    tau_d: f64,
    out: *mut f64,
) -> HomsimStatus {
    guard(|| write_f64(out, joint_probability(geometry(geom)?, tau_c, tau_d)))
}

/// # Safety
/// `geom` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn homsim_no_interference_probability(
    geom: *const HomsimGeometry,
    tau_c: f64,
    tau_d: f64,
    out: *mut f64,
) -> HomsimStatus {
    guard(|| write_f64(out, no_interference_probability(geometry(geom)?, tau_c, tau_d)))
}

/// # Safety
/// `geom` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn homsim_hom_probability(geom: *const HomsimGeometry, out: *mut f64) -> HomsimStatus {
    guard(|| write_f64(out, hom_probability(geometry(geom)?)))
}

/// # Safety
/// `geom` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn homsim_marginal_probability(
    geom: *const HomsimGeometry,
    tau_c: f64,
    out: *mut f64,
) -> HomsimStatus {
    guard(|| write_f64(out, marginal_probability(geometry(geom)?, tau_c)))
}

/// # Safety
/// `geom` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn homsim_windowed_probability(
    geom: *const HomsimGeometry,
    tau_c: f64,
    window_center: f64,
    t_w: f64,
    out: *mut f64,
) -> HomsimStatus {
    guard(|| write_f64(out, windowed_probability(geometry(geom)?, tau_c, window_center, t_w)))
}

#[no_mangle]
pub extern "C" fn homsim_erf(x: f64) -> f64 {
    homsim::erf(x)
}

/// Quadrature value and its error estimate.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HomsimQuadrature {
    pub value: f64,
    pub error_estimate: f64,
}

unsafe fn write_quad(
    out: *mut HomsimQuadrature,
    res: impl FnOnce(&QuadratureSpec) -> Result<QuadratureResult, Error>,
    absolute_tolerance: f64,
) -> Result<(), HomsimStatus> {
    if out.is_null() {
        return Err(fail(HomsimStatus::NullPointer, "output pointer is null"));
    }
    let spec = if absolute_tolerance > 0.0 {
        QuadratureSpec::default().with_tolerance(absolute_tolerance)
    } else {
        QuadratureSpec::default()
    };
    let r = res(&spec).map_err(lib_err)?;
    write(
        out,
        HomsimQuadrature {
            value: r.value,
            error_estimate: r.error_estimate,
        },
    )
}

/// Double integral of the joint density by quadrature. A tolerance `<= 0`
/// selects the default 1e-11.
///
/// # Safety
/// `geom` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn homsim_oracle_hom(
    geom: *const HomsimGeometry,
    absolute_tolerance: f64,
    out: *mut HomsimQuadrature,
) -> HomsimStatus {
    guard(|| {
        let g = geometry(geom)?;
        write_quad(out, |spec| oracle_hom(g, spec), absolute_tolerance)
    })
}

/// # Safety
/// `geom` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn homsim_oracle_marginal(
    geom: *const HomsimGeometry,
    tau_c: f64,
    absolute_tolerance: f64,
    out: *mut HomsimQuadrature,
) -> HomsimStatus {
    guard(|| {
        let g = geometry(geom)?;
        write_quad(out, |spec| oracle_marginal(g, tau_c, spec), absolute_tolerance)
    })
}

/// # Safety
/// `geom` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn homsim_oracle_windowed(
    geom: *const HomsimGeometry,
    tau_c: f64,
    window_center: f64,
    t_w: f64,
    absolute_tolerance: f64,
    out: *mut HomsimQuadrature,
) -> HomsimStatus {
    guard(|| {
        let g = geometry(geom)?;
        write_quad(out, |spec| oracle_windowed(g, tau_c, window_center, t_w, spec), absolute_tolerance)
    })
}

/// Runs a TOML scenario config and returns the CSV dataset. `jobs = 0` uses
/// the available parallelism. Free the result with [`homsim_string_free`].
///
/// # Safety
/// `config` must be null or a NUL-terminated string; `out_csv` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn homsim_run_scenario(
    config: *const c_char,
    jobs: usize,
    out_csv: *mut *mut c_char,
) -> HomsimStatus {
    guard(|| {
        if config.is_null() || out_csv.is_null() {
            return Err(fail(HomsimStatus::NullPointer, "config or output pointer is null"));
        }
        let text = CStr::from_ptr(config)
            .to_str()
            .map_err(|e| fail(HomsimStatus::InvalidUtf8, e.to_string()))?;
        let jobs = (jobs > 0).then_some(jobs);
        let dataset = parse_config(text)
            .and_then(|c| run_scenario(&c, jobs))
            .map_err(|e| match e {
                ScenarioError::Point { ref source, .. } => fail(status_of(source), e.to_string()),
                other => fail(HomsimStatus::Config, other.to_string()),
            })?;
        let csv = CString::new(dataset.to_csv()).map_err(|e| fail(HomsimStatus::Internal, e.to_string()))?;
        out_csv.write(csv.into_raw());
        Ok(())
    })
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn homsim_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
