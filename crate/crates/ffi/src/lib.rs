//! C ABI over `weylcover`.
//!
//! Every fallible call returns a [`WcStatus`]; on failure a message for the
//! calling thread is available from [`wc_last_error_message`]. Objects are
//! handed out as opaque pointers and must be released with the matching
//! `*_free` function. Coordinates are `double[3]` in radians and 4×4 matrices
//! are passed as separate row-major real and imaginary `double[16]` arrays.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weylcover::cartan::{cartan_coordinates, local_invariants, CartanCoord};
use weylcover::cli::parse_gate;
use weylcover::coverage::{coverage_region, CoverageRegion};
use weylcover::exact::rat_string;
use weylcover::numerics::matrix::c;
use weylcover::numerics::{Mat4, Unitary4};
use weylcover::symmetry::{canonicalize, symmetry_flags};
use weylcover::synthesis::{synthesize, SynthesisOptions, SynthesisResult};
use weylcover::Error;

/// Result codes shared by every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WcStatus {
    Ok = 0,
    /// A required pointer was null or a buffer was too small.
    InvalidArgument = 1,
    /// Malformed text input, or a value outside its documented range.
    Parse = 2,
    NotUnitary = 3,
    NotInChamber = 4,
    /// The target class lies outside the two-application region.
    NotReachable = 5,
    /// Eigensolver, KAK or exact-arithmetic failure.
    Numerical = 6,
    /// Synthesis ran out of iterations; the best attempt is still returned.
    BudgetExhausted = 7,
    Io = 8,
    /// A Rust panic was caught at the boundary.
    Internal = 9,
}

/// Opaque two-qubit gate.
pub struct WcGate {
    unitary: Unitary4,
}

/// Opaque two-application coverage region.
pub struct WcCoverage {
    region: CoverageRegion,
}

/// Opaque synthesis result.
pub struct WcSynthesis {
    result: SynthesisResult,
}

/// The three invariance flags of a class.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WcSymmetryFlags {
    pub inverse: bool,
    pub mirror: bool,
    pub mirrored_inverse: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> WcStatus {
    match e {
        Error::NotUnitary(_) => WcStatus::NotUnitary,
        Error::NotInChamber(..) => WcStatus::NotInChamber,
        Error::NotReachable(_) | Error::NotReachableByFamily(_) => WcStatus::NotReachable,
        Error::BudgetExhausted(_) => WcStatus::BudgetExhausted,
        Error::ConvergenceFailure(_) | Error::NumericOverflow | Error::CalibrationFailure(_) | Error::NotSymmetric(_) => {
            WcStatus::Numerical
        }
        Error::Io(_) => WcStatus::Io,
        _ => WcStatus::Parse,
    }
}

fn fail(e: Error) -> WcStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn invalid(what: &str) -> WcStatus {
    set_error(format!("invalid argument: {what}"));
    WcStatus::InvalidArgument
}

/// Runs `f`, turning a panic into `Internal`.
fn guard<F: FnOnce() -> WcStatus>(f: F) -> WcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic".into());
            WcStatus::Internal
        }
    }
}

unsafe fn read_coord(p: *const f64) -> CartanCoord {
    let s = std::slice::from_raw_parts(p, 3);
    CartanCoord::new(s[0], s[1], s[2])
}

unsafe fn write_coord(c: &CartanCoord, out: *mut f64) {
    let s = std::slice::from_raw_parts_mut(out, 3);
    s.copy_from_slice(&c.to_array());
}

/// Message describing the last failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Number of inequality tuples in the committed list.
#[no_mangle]
pub extern "C" fn wc_qlr_count() -> usize {
    weylcover::qlr::enumerate_inequality_tuples().len()
}

/// Parses a gate: a builtin name (`cnot`, `b`, ...), `fsim:θ,φ`,
/// `coord:c1,c2,c3`, or a path to a matrix file.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wc_gate_parse(spec: *const c_char, out: *mut *mut WcGate) -> WcStatus {
    guard(|| {
        if spec.is_null() || out.is_null() {
            return invalid("null pointer");
        }
        let Ok(text) = CStr::from_ptr(spec).to_str() else {
            return invalid("spec is not UTF-8");
        };
        match parse_gate(text, 1e-10) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(WcGate { unitary: g.unitary }));
                WcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Builds a gate from row-major real and imaginary parts, checking
/// unitarity to `tol`.
///
/// # Safety
/// `re` and `im` must each point to 16 doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn wc_gate_from_matrix(re: *const f64, im: *const f64, tol: f64, out: *mut *mut WcGate) -> WcStatus {
    guard(|| {
        if re.is_null() || im.is_null() || out.is_null() {
            return invalid("null pointer");
        }
        let (re, im) = (std::slice::from_raw_parts(re, 16), std::slice::from_raw_parts(im, 16));
        let m = Mat4::from_fn(|r, col| c(re[4 * r + col], im[4 * r + col]));
        match Unitary4::new(m, tol) {
            Ok(unitary) => {
                *out = Box::into_raw(Box::new(WcGate { unitary }));
                WcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Copies the gate's entries into row-major `re[16]`, `im[16]`.
///
/// # Safety
/// `gate` must come from this library; `re` and `im` must hold 16 doubles.
#[no_mangle]
pub unsafe extern "C" fn wc_gate_matrix(gate: *const WcGate, re: *mut f64, im: *mut f64) -> WcStatus {
    guard(|| {
        if gate.is_null() || re.is_null() || im.is_null() {
            return invalid("null pointer");
        }
        let m = (*gate).unitary.matrix();
        let (re, im) = (std::slice::from_raw_parts_mut(re, 16), std::slice::from_raw_parts_mut(im, 16));
        for r in 0..4 {
            for c in 0..4 {
                re[4 * r + c] = m[(r, c)].re;
                im[4 * r + c] = m[(r, c)].im;
            }
        }
        WcStatus::Ok
    })
}

/// Releases a gate. Null is accepted.
///
/// # Safety
/// `gate` must be null or a pointer returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn wc_gate_free(gate: *mut WcGate) {
    if !gate.is_null() {
        drop(Box::from_raw(gate));
    }
}

/// Chamber coordinates of the gate's class.
///
/// # Safety
/// `gate` must come from this library; `out` must hold 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn wc_gate_cartan(gate: *const WcGate, out: *mut f64) -> WcStatus {
    guard(|| {
        if gate.is_null() || out.is_null() {
            return invalid("null pointer");
        }
        match cartan_coordinates((*gate).unitary.matrix()) {
            Ok(c) => {
                write_coord(&c, out);
                WcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Local invariants `G1 = g1_re + i g1_im` and `G2`.
///
/// # Safety
/// `gate` must come from this library; the outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn wc_gate_invariants(gate: *const WcGate, g1_re: *mut f64, g1_im: *mut f64, g2: *mut f64) -> WcStatus {
    guard(|| {
        if gate.is_null() || g1_re.is_null() || g1_im.is_null() || g2.is_null() {
            return invalid("null pointer");
        }
        match local_invariants((*gate).unitary.matrix()) {
            Ok(inv) => {
                *g1_re = inv.g1.re;
                *g1_im = inv.g1.im;
                *g2 = inv.g2;
                WcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Inverse, mirror and mirrored-inverse invariance of the gate's class.
///
/// # Safety
/// `gate` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn wc_gate_symmetry(gate: *const WcGate, out: *mut WcSymmetryFlags) -> WcStatus {
    guard(|| {
        if gate.is_null() || out.is_null() {
            return invalid("null pointer");
        }
        match cartan_coordinates((*gate).unitary.matrix()) {
            Ok(c) => {
                let f = symmetry_flags(&c);
                *out = WcSymmetryFlags { inverse: f.inverse, mirror: f.mirror, mirrored_inverse: f.mirrored_inverse };
                WcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Chamber representative of an arbitrary triple.
///
/// # Safety
/// `raw` and `out` must each hold 3 doubles; they may alias.
#[no_mangle]
pub unsafe extern "C" fn wc_canonicalize(raw: *const f64, out: *mut f64) -> WcStatus {
    guard(|| {
        if raw.is_null() || out.is_null() {
            return invalid("null pointer");
        }
        let c = read_coord(raw);
        if !(c.c1.is_finite() && c.c2.is_finite() && c.c3.is_finite()) {
            return invalid("non-finite coordinate");
        }
        write_coord(&canonicalize(c), out);
        WcStatus::Ok
    })
}

/// Classes reachable as `U1 · L · U2` for chamber points `c_u1`, `c_u2`.
///
/// # Safety
/// `c_u1`, `c_u2` must hold 3 doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn wc_coverage_new(c_u1: *const f64, c_u2: *const f64, out: *mut *mut WcCoverage) -> WcStatus {
    guard(|| {
        if c_u1.is_null() || c_u2.is_null() || out.is_null() {
            return invalid("null pointer");
        }
        match coverage_region(&read_coord(c_u1), &read_coord(c_u2)) {
            Ok(region) => {
                *out = Box::into_raw(Box::new(WcCoverage { region }));
                WcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a coverage region. Null is accepted.
///
/// # Safety
/// `cov` must be null or a pointer returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn wc_coverage_free(cov: *mut WcCoverage) {
    if !cov.is_null() {
        drop(Box::from_raw(cov));
    }
}

/// Covered fraction of the chamber.
///
/// # Safety
/// `cov` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn wc_coverage_fraction(cov: *const WcCoverage, out: *mut f64) -> WcStatus {
    guard(|| {
        if cov.is_null() || out.is_null() {
            return invalid("null pointer");
        }
        match (*cov).region.fractional_volume() {
            Ok(f) => {
                *out = f;
                WcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Exact covered fraction as a `p/q` string written into `buf`. `needed`
/// receives the size including the NUL; a short buffer gives
/// `InvalidArgument` and leaves `buf` untouched.
///
/// # Safety
/// `cov` must come from this library; `buf` must hold `len` bytes (it may be
/// null when `len` is 0); `needed` must be valid.
#[no_mangle]
pub unsafe extern "C" fn wc_coverage_fraction_exact(cov: *const WcCoverage, buf: *mut c_char, len: usize, needed: *mut usize) -> WcStatus {
    guard(|| {
        if cov.is_null() || needed.is_null() {
            return invalid("null pointer");
        }
        let text = match (*cov).region.fractional_volume_exact() {
            Ok(f) => rat_string(&f),
            Err(e) => return fail(e),
        };
        *needed = text.len() + 1;
        if buf.is_null() || len < text.len() + 1 {
            return invalid("buffer too small");
        }
        ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
        *buf.add(text.len()) = 0;
        WcStatus::Ok
    })
}

/// Dimension of the covered set, or -1 when it is empty.
///
/// # Safety
/// `cov` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn wc_coverage_dim(cov: *const WcCoverage, out: *mut i32) -> WcStatus {
    guard(|| {
        if cov.is_null() || out.is_null() {
            return invalid("null pointer");
        }
        *out = (*cov).region.union_dim().map_or(-1, |d| d as i32);
        WcStatus::Ok
    })
}

/// Membership of a point with outward slack `tol` (radians).
///
/// # Safety
/// `cov` must come from this library; `coord` must hold 3 doubles; `out`
/// must be valid.
#[no_mangle]
pub unsafe extern "C" fn wc_coverage_contains(cov: *const WcCoverage, coord: *const f64, tol: f64, out: *mut bool) -> WcStatus {
    guard(|| {
        if cov.is_null() || coord.is_null() || out.is_null() {
            return invalid("null pointer");
        }
        *out = (*cov).region.contains(&read_coord(coord), tol);
        WcStatus::Ok
    })
}

/// Finds locals with `L1 · U · L2 · U · L3 = V`. `budget` caps the
/// optimizer iterations per restart (0 selects the default). On
/// `BudgetExhausted` the best attempt is still stored in `out`.
///
/// # Safety
/// `u`, `v` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn wc_synthesize(u: *const WcGate, v: *const WcGate, budget: usize, seed: u64, out: *mut *mut WcSynthesis) -> WcStatus {
    guard(|| {
        if u.is_null() || v.is_null() || out.is_null() {
            return invalid("null pointer");
        }
        let mut opts = SynthesisOptions { seed, ..SynthesisOptions::default() };
        if budget > 0 {
            opts.budget = budget;
        }
        match synthesize(&(*u).unitary, &(*v).unitary, &opts) {
            Ok(result) => {
                *out = Box::into_raw(Box::new(WcSynthesis { result }));
                WcStatus::Ok
            }
            Err(Error::BudgetExhausted(best)) => {
                let msg = format!("optimizer budget exhausted (best fidelity {:.9})", best.fidelity);
                *out = Box::into_raw(Box::new(WcSynthesis { result: *best }));
                set_error(msg);
                WcStatus::BudgetExhausted
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a synthesis result. Null is accepted.
///
/// # Safety
/// `s` must be null or a pointer returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn wc_synthesis_free(s: *mut WcSynthesis) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// `|tr(V† W)| / 4` of the assembled circuit.
///
/// # Safety
/// `s` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn wc_synthesis_fidelity(s: *const WcSynthesis, out: *mut f64) -> WcStatus {
    guard(|| {
        if s.is_null() || out.is_null() {
            return invalid("null pointer");
        }
        *out = (*s).result.fidelity;
        WcStatus::Ok
    })
}

/// Local layer `which` (0 for L1, 1 for L2, 2 for L3) as its two 2×2
/// factors, row-major: entries 0..4 are the first qubit, 4..8 the second.
///
/// # Safety
/// `s` must come from this library; `re` and `im` must hold 8 doubles.
#[no_mangle]
pub unsafe extern "C" fn wc_synthesis_local(s: *const WcSynthesis, which: u32, re: *mut f64, im: *mut f64) -> WcStatus {
    guard(|| {
        if s.is_null() || re.is_null() || im.is_null() {
            return invalid("null pointer");
        }
        let r = &(*s).result;
        let pair = match which {
            0 => &r.l1,
            1 => &r.l2,
            2 => &r.l3,
            _ => return invalid("layer index must be 0, 1 or 2"),
        };
        let (re, im) = (std::slice::from_raw_parts_mut(re, 8), std::slice::from_raw_parts_mut(im, 8));
        for (k, m) in [&pair.0, &pair.1].into_iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    re[4 * k + 2 * i + j] = m[(i, j)].re;
                    im[4 * k + 2 * i + j] = m[(i, j)].im;
                }
            }
        }
        WcStatus::Ok
    })
}
