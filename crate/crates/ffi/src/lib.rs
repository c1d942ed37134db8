//! C ABI over `cpplc`.
//!
//! Every function returns a [`CpplcStatus`]. On failure a description is
//! available from [`cpplc_last_error_message`] on the same thread. Instances
//! are opaque handles created by `cpplc_instance_parse` or
//! `cpplc_instance_read` and released with `cpplc_instance_free`. Edge ids
//! are 1-based and directions are 1 (forward, `u` to `v`) or 2 (backward),
//! matching the text formats.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cpplc::format::{parse_instance, read_instance};
use cpplc::metaheuristics::EtaMode;
use cpplc::{solve, Algorithm, EdgeId, Error, Evaluator, Instance, ShortestPaths, SolverConfig};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpplcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    InvalidInstance = 5,
    InvalidTour = 6,
    TooLarge = 7,
    InvalidArgument = 8,
    Panic = 9,
}

/// Opaque instance handle. Holds the parsed instance and its shortest paths.
pub struct CpplcInstance {
    instance: Instance,
    paths: ShortestPaths,
}

impl CpplcInstance {
    fn new(instance: Instance) -> Self {
        let paths = ShortestPaths::compute(&instance);
        CpplcInstance { instance, paths }
    }

    fn evaluator(&self) -> Evaluator<'_> {
        Evaluator::new(&self.instance, &self.paths)
    }
}

/// Algorithm codes for `CpplcSolveOptions.algorithm`.
pub const CPPLC_ALG_GHC: u32 = 0;
pub const CPPLC_ALG_ILS: u32 = 1;
pub const CPPLC_ALG_VNS: u32 = 2;
pub const CPPLC_ALG_EA: u32 = 3;
pub const CPPLC_ALG_ACO: u32 = 4;
pub const CPPLC_ALG_EXACT: u32 = 5;

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CpplcSolveOptions {
    pub algorithm: u32,
    pub seed: u64,
    pub max_iters: usize,
    /// Zero means no cap on evaluations.
    pub max_evals: u64,
    pub pop: usize,
    /// Nonzero selects `1/sqrt` attractiveness for ACO.
    pub inverse_eta: u8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(CpplcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Io { .. } => CpplcStatus::Io,
            Error::Parse { .. } | Error::Version { .. } => CpplcStatus::Parse,
            Error::InvalidInstance(_) => CpplcStatus::InvalidInstance,
            Error::InvalidTour(_) | Error::MismatchedParents => CpplcStatus::InvalidTour,
            Error::TooLarge { .. } => CpplcStatus::TooLarge,
            Error::Config(_) => CpplcStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CpplcStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CpplcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CpplcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".to_string());
            CpplcStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure(
            CpplcStatus::InvalidUtf8,
            format!("{what} is not valid UTF-8"),
        )
    })
}

unsafe fn handle<'a>(p: *const CpplcInstance) -> Result<&'a CpplcInstance, Failure> {
    p.as_ref().ok_or_else(|| null("instance"))
}

unsafe fn edge_order(
    inst: &CpplcInstance,
    order: *const u32,
    len: usize,
) -> Result<Vec<EdgeId>, Failure> {
    if order.is_null() && len > 0 {
        return Err(null("order"));
    }
    let m = inst.instance.num_edges();
    if len != m {
        return Err(Failure(
            CpplcStatus::InvalidTour,
            format!("order has {len} entries, instance has {m} edges"),
        ));
    }
    let ids: Vec<EdgeId> = std::slice::from_raw_parts(order, len)
        .iter()
        .map(|&e| EdgeId(e as usize))
        .collect();
    cpplc::AbbreviatedTour::new(ids.clone()).validate(&inst.instance)?;
    Ok(ids)
}

/// Parses an instance from NUL-terminated text.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cpplc_instance_parse(
    text: *const c_char,
    out: *mut *mut CpplcInstance,
) -> CpplcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inst = parse_instance(c_str(text, "text")?)?;
        *out = Box::into_raw(Box::new(CpplcInstance::new(inst)));
        Ok(())
    })
}

/// Reads an instance file.
///
/// # Safety
/// `path` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cpplc_instance_read(
    path: *const c_char,
    out: *mut *mut CpplcInstance,
) -> CpplcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inst = read_instance(c_str(path, "path")?)?;
        *out = Box::into_raw(Box::new(CpplcInstance::new(inst)));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `inst` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cpplc_instance_free(inst: *mut CpplcInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cpplc_instance_num_edges(
    inst: *const CpplcInstance,
    out: *mut usize,
) -> CpplcStatus {
    guard(|| {
        let inst = handle(inst)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = inst.instance.num_edges();
        Ok(())
    })
}

/// Optimal cost of servicing the edges in `order` (length `len`, 1-based ids).
///
/// # Safety
/// `order` must point to `len` readable values and `out_cost` be valid.
#[no_mangle]
pub unsafe extern "C" fn cpplc_tour_cost(
    inst: *const CpplcInstance,
    order: *const u32,
    len: usize,
    out_cost: *mut f64,
) -> CpplcStatus {
    guard(|| {
        let inst = handle(inst)?;
        let out = out_cost.as_mut().ok_or_else(|| null("out_cost"))?;
        let ids = edge_order(inst, order, len)?;
        *out = inst.evaluator().cost(&ids);
        Ok(())
    })
}

/// Optimal directions for `order`, written to `out_dirs` (length `len`).
/// `out_cost` may be null.
///
/// # Safety
/// `order` must point to `len` readable values and `out_dirs` to `len`
/// writable bytes.
#[no_mangle]
pub unsafe extern "C" fn cpplc_tour_directions(
    inst: *const CpplcInstance,
    order: *const u32,
    len: usize,
    out_dirs: *mut u8,
    out_cost: *mut f64,
) -> CpplcStatus {
    guard(|| {
        let inst = handle(inst)?;
        if out_dirs.is_null() && len > 0 {
            return Err(null("out_dirs"));
        }
        let ids = edge_order(inst, order, len)?;
        let tour = inst.evaluator().directions(&ids);
        let dirs = std::slice::from_raw_parts_mut(out_dirs, len);
        for (slot, step) in dirs.iter_mut().zip(&tour.seq) {
            *slot = step.dir.code();
        }
        if let Some(c) = out_cost.as_mut() {
            *c = tour.cost;
        }
        Ok(())
    })
}

/// Default options: EA, seed 0, 100 iterations, no evaluation cap,
/// population 10.
#[no_mangle]
pub extern "C" fn cpplc_solve_options_default() -> CpplcSolveOptions {
    let d = SolverConfig::default();
    CpplcSolveOptions {
        algorithm: CPPLC_ALG_EA,
        seed: d.seed,
        max_iters: d.max_iters,
        max_evals: 0,
        pop: d.pop,
        inverse_eta: 0,
    }
}

/// Runs a solver. The best order and directions are written to `out_order`
/// and `out_dirs`, each of capacity `len`, which must equal the edge count.
/// `out_cost` and `out_evals` may be null.
///
/// # Safety
/// `opts` must be valid, `out_order` must point to `len` writable values and
/// `out_dirs` to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn cpplc_solve(
    inst: *const CpplcInstance,
    opts: *const CpplcSolveOptions,
    out_order: *mut u32,
    out_dirs: *mut u8,
    len: usize,
    out_cost: *mut f64,
    out_evals: *mut u64,
) -> CpplcStatus {
    guard(|| {
        let inst = handle(inst)?;
        let opts = opts.as_ref().ok_or_else(|| null("opts"))?;
        if out_order.is_null() || out_dirs.is_null() {
            return Err(null("output buffer"));
        }
        let m = inst.instance.num_edges();
        if len != m {
            return Err(Failure(
                CpplcStatus::InvalidArgument,
                format!("buffers hold {len} entries, instance has {m} edges"),
            ));
        }
        let alg = match opts.algorithm {
            CPPLC_ALG_GHC => Algorithm::Ghc,
            CPPLC_ALG_ILS => Algorithm::Ils,
            CPPLC_ALG_VNS => Algorithm::Vns,
            CPPLC_ALG_EA => Algorithm::Ea,
            CPPLC_ALG_ACO => Algorithm::Aco,
            CPPLC_ALG_EXACT => Algorithm::Exact,
            other => {
                return Err(Failure(
                    CpplcStatus::InvalidArgument,
                    format!("unknown algorithm code {other}"),
                ))
            }
        };
        let cfg = SolverConfig {
            seed: opts.seed,
            max_iters: opts.max_iters,
            max_evals: (opts.max_evals > 0).then_some(opts.max_evals),
            pop: opts.pop,
            eta: if opts.inverse_eta != 0 {
                EtaMode::Inverse
            } else {
                EtaMode::Root
            },
        };
        let r = solve(&inst.evaluator(), alg, &cfg)?;
        let order = std::slice::from_raw_parts_mut(out_order, len);
        let dirs = std::slice::from_raw_parts_mut(out_dirs, len);
        for (k, step) in r.best_tour.seq.iter().enumerate() {
            order[k] = step.edge.0 as u32;
            dirs[k] = step.dir.code();
        }
        if let Some(c) = out_cost.as_mut() {
            *c = r.best_cost;
        }
        if let Some(e) = out_evals.as_mut() {
            *e = r.evals_used;
        }
        Ok(())
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn cpplc_status_message(status: CpplcStatus) -> *const c_char {
    let s: &'static CStr = match status {
        CpplcStatus::Ok => c"ok",
        CpplcStatus::NullPointer => c"null pointer argument",
        CpplcStatus::InvalidUtf8 => c"string is not valid UTF-8",
        CpplcStatus::Io => c"i/o error",
        CpplcStatus::Parse => c"parse error",
        CpplcStatus::InvalidInstance => c"invalid instance",
        CpplcStatus::InvalidTour => c"invalid tour",
        CpplcStatus::TooLarge => c"instance too large",
        CpplcStatus::InvalidArgument => c"invalid argument",
        CpplcStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cpplc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
