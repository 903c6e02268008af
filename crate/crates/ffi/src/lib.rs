// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

//! C ABI for gamowlab.
//!
//! Conventions:
//! - Every fallible function returns a [`GamowlabStatus`]; on failure a
//!   message is kept per thread and can be copied out with
//!   [`gamowlab_last_error_message`].
//! - A `d×d` complex matrix is `2·d·d` doubles, row-major, with real and
//!   imaginary parts interleaved: `re(0,0), im(0,0), re(0,1), ...`.
//! - `GamowlabSpace` and `GamowlabTrajectory` are opaque; free them with the
//!   matching `_free` function. Passing NULL to a `_free` function is a no-op.
//! - Panics never cross the boundary; they surface as `GAMOWLAB_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gamowlab::channels::{damping_channel, damping_closed_form};
use gamowlab::commutators::{
    commutation_time, envelope_fit, envelope_fit_window, growth_witness, trajectory,
    CommutatorTrajectory,
};
use gamowlab::evolution::evolution_operator;
use gamowlab::qlattice::{join, meet, Projector};
use gamowlab::{ComplexMatrix, Error, EvolutionVariant, GamowSpace, Resonance, C64};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GamowlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    VariantMismatch = 4,
    Numerical = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Values accepted by the `variant` parameters.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GamowlabVariant {
    SemigroupD = 0,
    Invertible = 1,
    Hermitian = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GamowlabDecayFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_abs_residual: f64,
    pub n_points: usize,
}

/// Opaque resonance space.
pub struct GamowlabSpace(GamowSpace);

/// Opaque commutator trajectory.
pub struct GamowlabTrajectory(CommutatorTrajectory);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(GamowlabStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::DimensionMismatch { .. } | Error::NotSquare { .. } | Error::BadLength { .. } => {
                GamowlabStatus::DimensionMismatch
            }
            Error::VariantMismatch { .. } => GamowlabStatus::VariantMismatch,
            Error::Singular
            | Error::EmptyFit(_)
            | Error::UndefinedWitness
            | Error::IncompleteChannel(_) => GamowlabStatus::Numerical,
            _ => GamowlabStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: GamowlabStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GamowlabStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GamowlabStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {msg}"));
            GamowlabStatus::Panic
        }
    }
}

fn variant_from(v: i32) -> Result<EvolutionVariant, Failure> {
    match v {
        0 => Ok(EvolutionVariant::SemigroupD),
        1 => Ok(EvolutionVariant::Invertible),
        2 => Ok(EvolutionVariant::Hermitian),
        other => fail(
            GamowlabStatus::InvalidArgument,
            format!("unknown variant {other}"),
        ),
    }
}

unsafe fn slice_in<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if p.is_null() {
        return fail(GamowlabStatus::NullPointer, format!("{name} is NULL"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_out<'a, T>(p: *mut T, len: usize, name: &str) -> Result<&'a mut [T], Failure> {
    if p.is_null() {
        return fail(GamowlabStatus::NullPointer, format!("{name} is NULL"));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(GamowlabStatus::NullPointer, format!("{name} is NULL")))
}

fn matrix_in(buf: &[f64], d: usize, name: &str) -> Result<ComplexMatrix, Failure> {
    if buf.len() != 2 * d * d {
        return fail(
            GamowlabStatus::DimensionMismatch,
            format!(
                "{name} has {} doubles, expected {} for a {d}x{d} matrix",
                buf.len(),
                2 * d * d
            ),
        );
    }
    let data = buf.chunks_exact(2).map(|p| C64::new(p[0], p[1])).collect();
    Ok(ComplexMatrix::new(d, d, data)?)
}

fn matrix_out(m: &ComplexMatrix, out: &mut [f64]) -> Result<(), Failure> {
    let need = 2 * m.data().len();
    if out.len() < need {
        return fail(
            GamowlabStatus::BufferTooSmall,
            format!("output buffer holds {} doubles, need {need}", out.len()),
        );
    }
    for (slot, z) in out.chunks_exact_mut(2).zip(m.data()) {
        slot[0] = z.re;
        slot[1] = z.im;
    }
    Ok(())
}

/// Dimension implied by a buffer of `len` doubles holding a square matrix.
fn dim_of(len: usize, name: &str) -> Result<usize, Failure> {
    let d = ((len / 2) as f64).sqrt().round() as usize;
    if d == 0 || 2 * d * d != len {
        return fail(
            GamowlabStatus::DimensionMismatch,
            format!("{name}: {len} doubles is not a square complex matrix"),
        );
    }
    Ok(d)
}

/// Copies the calling thread's last error message into `buf` (NUL
/// terminated, truncated to `len − 1` bytes) and returns the full message
/// length in bytes, excluding the NUL. Returns 0 when there is no error.
///
/// # Safety
/// `buf` must be NULL or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let slot = slot.borrow();
        let Some(msg) = slot.as_ref() else {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Static, NUL-terminated name of a status code ("unknown status" for
/// values outside [`GamowlabStatus`]).
#[no_mangle]
pub extern "C" fn gamowlab_status_name(status: i32) -> *const c_char {
    let s: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"null pointer\0",
        2 => b"invalid argument\0",
        3 => b"dimension mismatch\0",
        4 => b"variant mismatch\0",
        5 => b"numerical failure\0",
        6 => b"buffer too small\0",
        7 => b"internal panic\0",
        _ => b"unknown status\0",
    };
    s.as_ptr().cast()
}

/// Creates a space of `n` resonances from parallel `energies`/`widths`.
///
/// # Safety
/// `energies` and `widths` must point to `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_space_new(
    energies: *const f64,
    widths: *const f64,
    n: usize,
    out: *mut *mut GamowlabSpace,
) -> GamowlabStatus {
    guard(|| {
        if out.is_null() {
            return fail(GamowlabStatus::NullPointer, "out is NULL");
        }
        *out = ptr::null_mut();
        let e = slice_in(energies, n, "energies")?;
        let w = slice_in(widths, n, "widths")?;
        let resonances = e
            .iter()
            .zip(w)
            .map(|(&e, &w)| Resonance::new(e, w))
            .collect::<Result<Vec<_>, _>>()?;
        let space = GamowSpace::new(resonances)?;
        *out = Box::into_raw(Box::new(GamowlabSpace(space)));
        Ok(())
    })
}

/// # Safety
/// `space` must be NULL or a pointer returned by [`gamowlab_space_new`] that
/// has not been freed.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_space_free(space: *mut GamowlabSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Matrix dimension `2N`, or 0 for NULL.
///
/// # Safety
/// `space` must be NULL or a live space handle.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_space_dim(space: *const GamowlabSpace) -> usize {
    space.as_ref().map_or(0, |s| s.0.dim())
}

/// Writes `U(t)` for `variant` into `out` (`2·d·d` doubles).
///
/// # Safety
/// `space` must be a live handle; `out` must point to `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_evolution_operator(
    space: *const GamowlabSpace,
    t: f64,
    variant: i32,
    out: *mut f64,
    out_len: usize,
) -> GamowlabStatus {
    guard(|| {
        let space = &deref(space, "space")?.0;
        let u = evolution_operator(space, t, variant_from(variant)?)?;
        matrix_out(u.matrix(), slice_out(out, out_len, "out")?)
    })
}

/// Writes the evolved observable `O(t)` into `out`.
///
/// # Safety
/// `space` must be a live handle; `obs` must point to `obs_len` doubles and
/// `out` to `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_heisenberg(
    space: *const GamowlabSpace,
    t: f64,
    variant: i32,
    obs: *const f64,
    obs_len: usize,
    out: *mut f64,
    out_len: usize,
) -> GamowlabStatus {
    guard(|| {
        let space = &deref(space, "space")?.0;
        let o = matrix_in(slice_in(obs, obs_len, "obs")?, space.dim(), "obs")?;
        let u = evolution_operator(space, t, variant_from(variant)?)?;
        matrix_out(&u.heisenberg(&o)?, slice_out(out, out_len, "out")?)
    })
}

/// Computes `[O₁(t), O₂(t)]` on a strictly increasing time grid.
///
/// # Safety
/// `space` must be a live handle; `o1`, `o2` must point to `obs_len` doubles,
/// `times` to `n_times` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_trajectory_new(
    space: *const GamowlabSpace,
    o1: *const f64,
    o2: *const f64,
    obs_len: usize,
    times: *const f64,
    n_times: usize,
    variant: i32,
    out: *mut *mut GamowlabTrajectory,
) -> GamowlabStatus {
    guard(|| {
        if out.is_null() {
            return fail(GamowlabStatus::NullPointer, "out is NULL");
        }
        *out = ptr::null_mut();
        let space = &deref(space, "space")?.0;
        let d = space.dim();
        let a = matrix_in(slice_in(o1, obs_len, "o1")?, d, "o1")?;
        let b = matrix_in(slice_in(o2, obs_len, "o2")?, d, "o2")?;
        let ts = slice_in(times, n_times, "times")?;
        let traj = trajectory(space, &a, &b, ts, variant_from(variant)?)?;
        *out = Box::into_raw(Box::new(GamowlabTrajectory(traj)));
        Ok(())
    })
}

/// # Safety
/// `traj` must be NULL or a live trajectory handle.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_trajectory_free(traj: *mut GamowlabTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}

/// Number of grid points, or 0 for NULL.
///
/// # Safety
/// `traj` must be NULL or a live trajectory handle.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_trajectory_len(traj: *const GamowlabTrajectory) -> usize {
    traj.as_ref().map_or(0, |t| t.0.len())
}

/// Copies the Frobenius norms (one per grid point) into `out`.
///
/// # Safety
/// `traj` must be a live handle; `out` must point to `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_trajectory_norms(
    traj: *const GamowlabTrajectory,
    out: *mut f64,
    out_len: usize,
) -> GamowlabStatus {
    guard(|| {
        let norms = deref(traj, "traj")?.0.norms();
        let out = slice_out(out, out_len, "out")?;
        if out.len() < norms.len() {
            return fail(
                GamowlabStatus::BufferTooSmall,
                format!("output holds {} doubles, need {}", out.len(), norms.len()),
            );
        }
        out[..norms.len()].copy_from_slice(norms);
        Ok(())
    })
}

/// Copies the commutator at grid index `k` into `out`.
///
/// # Safety
/// `traj` must be a live handle; `out` must point to `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_trajectory_value(
    traj: *const GamowlabTrajectory,
    k: usize,
    out: *mut f64,
    out_len: usize,
) -> GamowlabStatus {
    guard(|| {
        let traj = &deref(traj, "traj")?.0;
        let Some(value) = traj.values().get(k) else {
            return fail(
                GamowlabStatus::InvalidArgument,
                format!("index {k} out of range for {} points", traj.len()),
            );
        };
        matrix_out(value, slice_out(out, out_len, "out")?)
    })
}

/// Log-linear decay fit. `window` in (0, 1] selects the last fraction of the
/// grid; any other value uses the default (full grid for one resonance,
/// last half otherwise).
///
/// # Safety
/// `traj` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_trajectory_fit(
    traj: *const GamowlabTrajectory,
    window: f64,
    out: *mut GamowlabDecayFit,
) -> GamowlabStatus {
    guard(|| {
        let traj = &deref(traj, "traj")?.0;
        if out.is_null() {
            return fail(GamowlabStatus::NullPointer, "out is NULL");
        }
        let fit = if window > 0.0 && window <= 1.0 {
            envelope_fit_window(traj, window)?
        } else {
            envelope_fit(traj)?
        };
        *out = GamowlabDecayFit {
            slope: fit.slope,
            intercept: fit.intercept,
            max_abs_residual: fit.max_abs_residual,
            n_points: fit.n_points,
        };
        Ok(())
    })
}

/// First grid time `k·dt ≤ t_max` with commutator norm below `eps`.
/// `*found` is set to 1 and `*out_t` to the time when one exists, else
/// `*found` is 0.
///
/// # Safety
/// `space` must be a live handle; `o1`, `o2` must point to `obs_len` doubles;
/// `out_t` and `found` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_commutation_time(
    space: *const GamowlabSpace,
    o1: *const f64,
    o2: *const f64,
    obs_len: usize,
    eps: f64,
    variant: i32,
    t_max: f64,
    dt: f64,
    out_t: *mut f64,
    found: *mut i32,
) -> GamowlabStatus {
    guard(|| {
        let space = &deref(space, "space")?.0;
        if out_t.is_null() || found.is_null() {
            return fail(GamowlabStatus::NullPointer, "out_t or found is NULL");
        }
        let d = space.dim();
        let a = matrix_in(slice_in(o1, obs_len, "o1")?, d, "o1")?;
        let b = matrix_in(slice_in(o2, obs_len, "o2")?, d, "o2")?;
        match commutation_time(space, &a, &b, eps, variant_from(variant)?, t_max, dt)? {
            Some(t) => {
                *out_t = t;
                *found = 1;
            }
            None => *found = 0,
        }
        Ok(())
    })
}

/// `|O₁(t)_{G,D}| / |O₁_{G,D}|` under the invertible evolution (one
/// resonance).
///
/// # Safety
/// `space` must be a live handle; `o1` must point to `obs_len` doubles;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_growth_witness(
    space: *const GamowlabSpace,
    o1: *const f64,
    obs_len: usize,
    t: f64,
    out: *mut f64,
) -> GamowlabStatus {
    guard(|| {
        let space = &deref(space, "space")?.0;
        if out.is_null() {
            return fail(GamowlabStatus::NullPointer, "out is NULL");
        }
        let a = matrix_in(slice_in(o1, obs_len, "o1")?, space.dim(), "o1")?;
        *out = growth_witness(space, &a, t)?;
        Ok(())
    })
}

/// Applies the dual amplitude-damping channel `n` times to a 2×2 observable
/// (8 doubles in, 8 doubles out).
///
/// # Safety
/// `obs` and `out` must each point to 8 doubles.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_damping_iterate(
    p: f64,
    n: usize,
    obs: *const f64,
    out: *mut f64,
) -> GamowlabStatus {
    guard(|| {
        let o = matrix_in(slice_in(obs, 8, "obs")?, 2, "obs")?;
        let evolved = damping_channel(p)?.iterate_heisenberg(&o, n)?;
        matrix_out(&evolved, slice_out(out, 8, "out")?)
    })
}

/// Closed form of [`gamowlab_damping_iterate`].
///
/// # Safety
/// `obs` and `out` must each point to 8 doubles.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_damping_closed_form(
    p: f64,
    n: usize,
    obs: *const f64,
    out: *mut f64,
) -> GamowlabStatus {
    guard(|| {
        let o = matrix_in(slice_in(obs, 8, "obs")?, 2, "obs")?;
        matrix_out(&damping_closed_form(p, n, &o)?, slice_out(out, 8, "out")?)
    })
}

unsafe fn lattice_op(
    p: *const f64,
    q: *const f64,
    len: usize,
    out: *mut f64,
    op: fn(&Projector, &Projector) -> gamowlab::Result<Projector>,
) -> GamowlabStatus {
    guard(|| {
        let d = dim_of(len, "p")?;
        let a = Projector::new(matrix_in(slice_in(p, len, "p")?, d, "p")?)?;
        let b = Projector::new(matrix_in(slice_in(q, len, "q")?, d, "q")?)?;
        matrix_out(op(&a, &b)?.matrix(), slice_out(out, len, "out")?)
    })
}

/// Projector onto `range(p) ∩ range(q)`; all buffers hold `len = 2·d·d`
/// doubles.
///
/// # Safety
/// `p`, `q` and `out` must each point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_projector_meet(
    p: *const f64,
    q: *const f64,
    len: usize,
    out: *mut f64,
) -> GamowlabStatus {
    lattice_op(p, q, len, out, meet)
}

/// Projector onto `range(p) + range(q)`; all buffers hold `len = 2·d·d`
/// doubles.
///
/// # Safety
/// `p`, `q` and `out` must each point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn gamowlab_projector_join(
    p: *const f64,
    q: *const f64,
    len: usize,
    out: *mut f64,
) -> GamowlabStatus {
    lattice_op(p, q, len, out, join)
}
