//! C ABI for `tropfit`.
//!
//! Samples and fitted models are opaque handles created by `tf_*_new` /
//! `tf_fit_*` functions and released with the matching `tf_*_free`. Every
//! fallible call returns a [`TfStatus`]; on failure a message is available
//! from [`tf_last_error_message`] on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tropfit::cli::{ConfigEcho, ModelDocument, Provenance};
use tropfit::search::{random_search, SearchConfig};
use tropfit::{
    fit_polynomial, fit_rational, DegreeVector, Error, FitReport, Model, Rational, SampleSet,
    Semifield,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NonRegularInput = 4,
    Malformed = 5,
    SolverFailure = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfSemifield {
    MaxPlus = 0,
    MaxTimes = 1,
}

/// Which polynomial of a fitted model to address.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfPart {
    Numerator = 0,
    Denominator = 1,
}

/// Random search settings; `n_terms_denominator == 0` searches polynomials
/// and `threads == 0` uses every available processor.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TfSearchConfig {
    pub n_terms_numerator: usize,
    pub n_terms_denominator: usize,
    pub degree_min: i64,
    pub degree_max: i64,
    pub n_samples: usize,
    pub seed: u64,
    pub max_iter: usize,
    pub threads: usize,
}

/// Opaque sample set.
pub struct TfSamples {
    inner: SampleSet,
}

/// Opaque fitted (or loaded) model.
pub struct TfFit {
    doc: ModelDocument,
    model: Model,
    iterations: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TfStatus {
    match e {
        Error::DimensionMismatch { .. } => TfStatus::DimensionMismatch,
        Error::NonRegularInput(_) | Error::ZeroAbscissa(_) | Error::ZeroArgument => {
            TfStatus::NonRegularInput
        }
        Error::MalformedModel(_) | Error::MalformedRow(_) | Error::EmptyFile => TfStatus::Malformed,
        Error::NoSuccessfulFit | Error::ResidualMismatch { .. } | Error::InversionOfZero => {
            TfStatus::SolverFailure
        }
        _ => TfStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (TfStatus, String)>) -> TfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TfStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside tropfit");
            TfStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (TfStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (TfStatus, String) {
    (TfStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `ptr` must be null or point to `len` readable values.
unsafe fn slice<'a, T>(
    ptr: *const T,
    len: usize,
    what: &str,
) -> Result<&'a [T], (TfStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null_err(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

/// # Safety
/// `nums` must hold `n` values; `dens` must be null or hold `n` values.
unsafe fn degrees(
    nums: *const i64,
    dens: *const i64,
    n: usize,
) -> Result<DegreeVector, (TfStatus, String)> {
    let nums = slice(nums, n, "degree numerators")?;
    let dens = if dens.is_null() {
        None
    } else {
        Some(slice(dens, n, "degree denominators")?)
    };
    let list = nums
        .iter()
        .enumerate()
        .map(|(i, &p)| Rational::new(p, dens.map_or(1, |d| d[i])))
        .collect::<Result<Vec<_>, _>>()
        .map_err(lib_err)?;
    DegreeVector::new(list).map_err(lib_err)
}

fn semifield(sf: TfSemifield) -> Semifield {
    match sf {
        TfSemifield::MaxPlus => Semifield::MaxPlus,
        TfSemifield::MaxTimes => Semifield::MaxTimes,
    }
}

fn make_fit(fit: FitReport, echo: ConfigEcho, seed: Option<u64>) -> Box<TfFit> {
    let echo = ConfigEcho {
        iterations: fit.iterations,
        termination: fit.termination.name().to_string(),
        ..echo
    };
    let provenance = Provenance {
        seed,
        config: echo,
        tool_version: tropfit_version().to_string(),
    };
    Box::new(TfFit {
        doc: ModelDocument::from_fit(&fit, provenance),
        iterations: fit.iterations,
        model: fit.model,
    })
}

fn tropfit_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a sample set from conventional reals. In max-plus `-INFINITY`
/// encodes the semifield zero, in max-times `0.0` does.
///
/// # Safety
/// `xs` and `ys` must each point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_samples_new(
    sf: TfSemifield,
    xs: *const f64,
    ys: *const f64,
    len: usize,
    out: *mut *mut TfSamples,
) -> TfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let xs = slice(xs, len, "xs")?;
        let ys = slice(ys, len, "ys")?;
        let inner = SampleSet::from_reals(semifield(sf), xs, ys).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(TfSamples { inner }));
        Ok(())
    })
}

/// # Safety
/// `samples` must be null or a handle from [`tf_samples_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tf_samples_free(samples: *mut TfSamples) {
    if !samples.is_null() {
        drop(Box::from_raw(samples));
    }
}

/// Fits a polynomial with exponents `deg_num[i] / deg_den[i]`; pass a null
/// `deg_den` for integer exponents.
///
/// # Safety
/// `samples` must be a live handle; `deg_num` (and `deg_den` unless null)
/// must hold `n` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_polynomial(
    samples: *const TfSamples,
    deg_num: *const i64,
    deg_den: *const i64,
    n: usize,
    out: *mut *mut TfFit,
) -> TfStatus {
    guard(|| {
        if samples.is_null() || out.is_null() {
            return Err(null_err("samples or out"));
        }
        let d = degrees(deg_num, deg_den, n)?;
        let fit = fit_polynomial(&(*samples).inner, &d).map_err(lib_err)?;
        let echo = ConfigEcho {
            mode: "degrees".into(),
            ..Default::default()
        };
        *out = Box::into_raw(make_fit(fit, echo, None));
        Ok(())
    })
}

/// Fits a rational function `P/Q` by the alternating two-sided iteration.
///
/// # Safety
/// As [`tf_fit_polynomial`], for both exponent lists.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn tf_fit_rational(
    samples: *const TfSamples,
    p_num: *const i64,
    p_den: *const i64,
    n: usize,
    q_num: *const i64,
    q_den: *const i64,
    l: usize,
    max_iter: usize,
    out: *mut *mut TfFit,
) -> TfStatus {
    guard(|| {
        if samples.is_null() || out.is_null() {
            return Err(null_err("samples or out"));
        }
        let p = degrees(p_num, p_den, n)?;
        let q = degrees(q_num, q_den, l)?;
        let fit = fit_rational(&(*samples).inner, &p, &q, max_iter).map_err(lib_err)?;
        let echo = ConfigEcho {
            mode: "degrees".into(),
            max_iter: Some(max_iter),
            ..Default::default()
        };
        *out = Box::into_raw(make_fit(fit, echo, None));
        Ok(())
    })
}

/// Random search over integer degree classes; the result does not depend on
/// the thread count.
///
/// # Safety
/// `samples` and `config` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_random_search(
    samples: *const TfSamples,
    config: *const TfSearchConfig,
    out: *mut *mut TfFit,
) -> TfStatus {
    guard(|| {
        if samples.is_null() || config.is_null() || out.is_null() {
            return Err(null_err("samples, config or out"));
        }
        let c = *config;
        let cfg = SearchConfig {
            n_terms_numerator: c.n_terms_numerator,
            n_terms_denominator: (c.n_terms_denominator > 0).then_some(c.n_terms_denominator),
            degree_min: c.degree_min,
            degree_max: c.degree_max,
            n_samples: c.n_samples,
            rng_seed: c.seed,
            max_iter_two_sided: c.max_iter,
            record_trace: false,
        };
        let mut builder = rayon::ThreadPoolBuilder::new();
        if c.threads > 0 {
            builder = builder.num_threads(c.threads);
        }
        let pool = builder
            .build()
            .map_err(|e| (TfStatus::InvalidArgument, e.to_string()))?;
        let samples = &(*samples).inner;
        let report = pool
            .install(|| random_search(samples, &cfg))
            .map_err(lib_err)?;
        let echo = ConfigEcho {
            mode: "search".into(),
            terms: Some(cfg.n_terms_numerator),
            den_terms: cfg.n_terms_denominator,
            range: Some(format!("{}:{}", cfg.degree_min, cfg.degree_max)),
            samples: Some(cfg.n_samples),
            max_iter: cfg.n_terms_denominator.map(|_| cfg.max_iter_two_sided),
            best_draw: Some(report.best_index),
            ..Default::default()
        };
        *out = Box::into_raw(make_fit(report.best, echo, Some(cfg.rng_seed)));
        Ok(())
    })
}

/// Loads a model document (the JSON written by `tropfit fit`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_from_json(json: *const c_char, out: *mut *mut TfFit) -> TfStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return Err(null_err("json or out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| (TfStatus::Malformed, "model text is not UTF-8".to_string()))?;
        let doc = ModelDocument::from_json(text).map_err(lib_err)?;
        let model = doc.to_model().map_err(lib_err)?;
        let iterations = doc.provenance.config.iterations;
        *out = Box::into_raw(Box::new(TfFit {
            doc,
            model,
            iterations,
        }));
        Ok(())
    })
}

/// Serializes a fit as a model document. Free the result with
/// [`tf_string_free`]; null on failure.
///
/// # Safety
/// `fit` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_to_json(fit: *const TfFit) -> *mut c_char {
    if fit.is_null() {
        set_last_error("fit is null");
        return ptr::null_mut();
    }
    CString::new((*fit).doc.to_json()).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `fit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_free(fit: *mut TfFit) {
    if !fit.is_null() {
        drop(Box::from_raw(fit));
    }
}

/// Squared error `Δ*` as a conventional real; NaN for a null handle.
///
/// # Safety
/// `fit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_delta_star(fit: *const TfFit) -> f64 {
    fit.as_ref().map_or(f64::NAN, |f| f.doc.delta_star)
}

/// Error `√Δ*` as a conventional real; NaN for a null handle.
///
/// # Safety
/// `fit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_error(fit: *const TfFit) -> f64 {
    fit.as_ref().map_or(f64::NAN, |f| f.doc.error)
}

/// # Safety
/// `fit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_iterations(fit: *const TfFit) -> usize {
    fit.as_ref().map_or(0, |f| f.iterations)
}

/// # Safety
/// `fit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_is_rational(fit: *const TfFit) -> bool {
    fit.as_ref()
        .is_some_and(|f| matches!(f.model, Model::Rational(_)))
}

/// Number of terms of the requested part; 0 when absent.
///
/// # Safety
/// `fit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_num_terms(fit: *const TfFit, part: TfPart) -> usize {
    fit.as_ref().map_or(0, |f| match part {
        TfPart::Numerator => f.doc.numerator.coefficients.len(),
        TfPart::Denominator => f
            .doc
            .denominator
            .as_ref()
            .map_or(0, |d| d.coefficients.len()),
    })
}

/// Copies the coefficients of one part into `out` (capacity `cap`), in the
/// order of increasing exponent.
///
/// # Safety
/// `fit` must be a live handle and `out` must have room for `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_coefficients(
    fit: *const TfFit,
    part: TfPart,
    out: *mut f64,
    cap: usize,
) -> TfStatus {
    guard(|| {
        let f = fit.as_ref().ok_or_else(|| null_err("fit"))?;
        let coeffs = match part {
            TfPart::Numerator => &f.doc.numerator.coefficients,
            TfPart::Denominator => match &f.doc.denominator {
                Some(d) => &d.coefficients,
                None => return Err((TfStatus::InvalidArgument, "model has no denominator".into())),
            },
        };
        if cap < coeffs.len() {
            return Err((
                TfStatus::DimensionMismatch,
                format!("need room for {} coefficients", coeffs.len()),
            ));
        }
        if out.is_null() {
            return Err(null_err("out"));
        }
        ptr::copy_nonoverlapping(coeffs.as_ptr(), out, coeffs.len());
        Ok(())
    })
}

/// Evaluates the model at a conventional real `x`.
///
/// # Safety
/// `fit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_eval(fit: *const TfFit, x: f64, out: *mut f64) -> TfStatus {
    guard(|| {
        let f = fit.as_ref().ok_or_else(|| null_err("fit"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let sf = f.model.semifield();
        let v = f
            .model
            .eval(sf.scalar(x).map_err(lib_err)?)
            .map_err(lib_err)?;
        *out = sf.to_real(v);
        Ok(())
    })
}
