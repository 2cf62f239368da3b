// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

//! C ABI for the vsq simulator and pulse-schedule compiler.
//!
//! Every function returns a [`VsqStatus`]. On any status other than
//! `VSQ_STATUS_OK` a description of the failure can be fetched once with
//! [`vsq_last_error_message`]. Handles are opaque, owned by the caller, and
//! released with their matching `_free` function; no function retains a
//! pointer beyond the call. The generated header lives in `include/vsq.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use vsq::compiler::{
    circuit_unitary, compile, export_schedule, make_schedule, parse_circuit, Circuit, RunConfig,
    Schedule,
};
use vsq::levels::{scheme, SpectroscopicDataset};
use vsq::pulses::PulseProgram;
use vsq::qmath::Matrix4;
use vsq::runtime::{ground_state, measure, run_program};

/// Outcome of an FFI call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VsqStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The operation itself failed; see `vsq_last_error_message`.
    Error = 3,
}

/// A parsed circuit.
pub struct VsqCircuit(Circuit);

/// A compiled pulse program.
pub struct VsqProgram(PulseProgram);

/// A pulse program timed against a level scheme.
pub struct VsqSchedule(Schedule);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: VsqStatus, message: impl Into<String>) -> VsqStatus {
    let text = CString::new(message.into())
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
    status
}

fn domain(e: vsq::Error) -> VsqStatus {
    fail(VsqStatus::Error, e.to_string())
}

fn null_argument(name: &str) -> VsqStatus {
    fail(VsqStatus::NullArgument, format!("{name} must not be null"))
}

unsafe fn utf8_argument<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, VsqStatus> {
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(VsqStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn write_matrix(u: &Matrix4, out_reim: *mut f64) {
    for r in 0..4 {
        for c in 0..4 {
            let z = u.entry(r, c);
            *out_reim.add(2 * (4 * r + c)) = z.re;
            *out_reim.add(2 * (4 * r + c) + 1) = z.im;
        }
    }
}

/// Takes the most recent error message as a NUL-terminated string, or null
/// when no error is pending. Fetching clears the slot.
///
/// # Safety
/// The returned pointer, when non-null, must be released with
/// [`vsq_string_free`].
#[no_mangle]
pub unsafe extern "C" fn vsq_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| slot.borrow_mut().take()).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Releases a string returned by this library.
///
/// # Safety
/// `ptr` must be a pointer obtained from a function in this library that
/// documents this release path, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn vsq_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(CString::from_raw(ptr));
    }
}

/// Parses a circuit JSON document into a new circuit handle written to
/// `*out`.
///
/// # Safety
/// `json` must point to a NUL-terminated string and `out` to writable
/// storage for one pointer; both must remain valid for the duration of the
/// call.
#[no_mangle]
pub unsafe extern "C" fn vsq_circuit_parse(
    json: *const c_char,
    out: *mut *mut VsqCircuit,
) -> VsqStatus {
    if json.is_null() {
        return null_argument("json");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let text = match utf8_argument(json, "json") {
        Ok(text) => text,
        Err(status) => return status,
    };
    match parse_circuit(text) {
        Ok(circuit) => {
            *out = Box::into_raw(Box::new(VsqCircuit(circuit)));
            VsqStatus::Ok
        }
        Err(e) => domain(e),
    }
}

/// Releases a circuit handle.
///
/// # Safety
/// `ptr` must be a pointer returned by [`vsq_circuit_parse`], not yet freed,
/// or null.
#[no_mangle]
pub unsafe extern "C" fn vsq_circuit_free(ptr: *mut VsqCircuit) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// Lowers a circuit to its pulse program, written to `*out`.
///
/// # Safety
/// `circuit` must be a live circuit handle and `out` writable storage for
/// one pointer.
#[no_mangle]
pub unsafe extern "C" fn vsq_circuit_compile(
    circuit: *const VsqCircuit,
    out: *mut *mut VsqProgram,
) -> VsqStatus {
    let Some(circuit) = circuit.as_ref() else {
        return null_argument("circuit");
    };
    if out.is_null() {
        return null_argument("out");
    }
    match compile(&circuit.0) {
        Ok(program) => {
            *out = Box::into_raw(Box::new(VsqProgram(program)));
            VsqStatus::Ok
        }
        Err(e) => domain(e),
    }
}

/// Releases a program handle.
///
/// # Safety
/// `ptr` must be a pointer returned by [`vsq_circuit_compile`], not yet
/// freed, or null.
#[no_mangle]
pub unsafe extern "C" fn vsq_program_free(ptr: *mut VsqProgram) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// Writes a circuit's closed-form unitary into `out_reim` as 32 doubles:
/// row-major entries, each as a real then an imaginary part.
///
/// # Safety
/// `circuit` must be a live circuit handle and `out_reim` must point to
/// writable storage for 32 doubles.
#[no_mangle]
pub unsafe extern "C" fn vsq_circuit_unitary(
    circuit: *const VsqCircuit,
    out_reim: *mut f64,
) -> VsqStatus {
    let Some(circuit) = circuit.as_ref() else {
        return null_argument("circuit");
    };
    if out_reim.is_null() {
        return null_argument("out_reim");
    }
    write_matrix(&circuit_unitary(&circuit.0), out_reim);
    VsqStatus::Ok
}

/// Writes a program's pulse-product unitary into `out_reim` as 32 doubles:
/// row-major entries, each as a real then an imaginary part.
///
/// # Safety
/// `program` must be a live program handle and `out_reim` must point to
/// writable storage for 32 doubles.
#[no_mangle]
pub unsafe extern "C" fn vsq_program_unitary(
    program: *const VsqProgram,
    out_reim: *mut f64,
) -> VsqStatus {
    let Some(program) = program.as_ref() else {
        return null_argument("program");
    };
    if out_reim.is_null() {
        return null_argument("out_reim");
    }
    write_matrix(&program.0.unitary(), out_reim);
    VsqStatus::Ok
}

/// Evolves the ground state under a program and samples `shots` seeded
/// measurements, writing the four basis counts to `out_counts`.
///
/// # Safety
/// `program` must be a live program handle and `out_counts` must point to
/// writable storage for 4 `uint64_t`.
#[no_mangle]
pub unsafe extern "C" fn vsq_program_simulate(
    program: *const VsqProgram,
    seed: u64,
    shots: u64,
    out_counts: *mut u64,
) -> VsqStatus {
    let Some(program) = program.as_ref() else {
        return null_argument("program");
    };
    if out_counts.is_null() {
        return null_argument("out_counts");
    }
    let state = match run_program(&program.0, &ground_state()) {
        Ok(state) => state,
        Err(e) => return domain(e),
    };
    let histogram = measure(&state, seed, shots);
    for (k, &count) in histogram.counts.iter().enumerate() {
        *out_counts.add(k) = count;
    }
    VsqStatus::Ok
}

/// Times a program against a named level scheme (`"fig3"` or `"fig4"`) at
/// the Rabi frequency `rabi_hz` with `gap_s` seconds between groups,
/// writing a new schedule handle to `*out`. The spectroscopic dataset is
/// the builtin one unless the `VSQ_DATASET` environment variable names a
/// dataset file.
///
/// # Safety
/// `program` must be a live program handle, `scheme_name` a NUL-terminated
/// string, and `out` writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn vsq_program_schedule(
    program: *const VsqProgram,
    scheme_name: *const c_char,
    rabi_hz: f64,
    gap_s: f64,
    out: *mut *mut VsqSchedule,
) -> VsqStatus {
    let Some(program) = program.as_ref() else {
        return null_argument("program");
    };
    if scheme_name.is_null() {
        return null_argument("scheme_name");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let name = match utf8_argument(scheme_name, "scheme_name") {
        Ok(name) => name,
        Err(status) => return status,
    };
    let build = || -> vsq::Result<Schedule> {
        let s = scheme(name)?;
        let d = SpectroscopicDataset::from_env_or_builtin()?;
        let cfg = RunConfig::from_rabi_hz(rabi_hz, gap_s)?;
        make_schedule(&program.0, &s, &d, &cfg)
    };
    match build() {
        Ok(schedule) => {
            *out = Box::into_raw(Box::new(VsqSchedule(schedule)));
            VsqStatus::Ok
        }
        Err(e) => domain(e),
    }
}

/// Releases a schedule handle.
///
/// # Safety
/// `ptr` must be a pointer returned by [`vsq_program_schedule`], not yet
/// freed, or null.
#[no_mangle]
pub unsafe extern "C" fn vsq_schedule_free(ptr: *mut VsqSchedule) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// Writes the number of scheduled pulses to `*out_count`.
///
/// # Safety
/// `schedule` must be a live schedule handle and `out_count` writable
/// storage for one `size_t`.
#[no_mangle]
pub unsafe extern "C" fn vsq_schedule_entry_count(
    schedule: *const VsqSchedule,
    out_count: *mut usize,
) -> VsqStatus {
    let Some(schedule) = schedule.as_ref() else {
        return null_argument("schedule");
    };
    if out_count.is_null() {
        return null_argument("out_count");
    }
    *out_count = schedule.0.entries().len();
    VsqStatus::Ok
}

/// Writes the schedule's total duration in seconds to `*out_seconds`.
///
/// # Safety
/// `schedule` must be a live schedule handle and `out_seconds` writable
/// storage for one double.
#[no_mangle]
pub unsafe extern "C" fn vsq_schedule_total_time(
    schedule: *const VsqSchedule,
    out_seconds: *mut f64,
) -> VsqStatus {
    let Some(schedule) = schedule.as_ref() else {
        return null_argument("schedule");
    };
    if out_seconds.is_null() {
        return null_argument("out_seconds");
    }
    *out_seconds = schedule.0.total_time();
    VsqStatus::Ok
}

/// Renders a schedule to its CSV form and writes the new string to `*out`.
///
/// # Safety
/// `schedule` must be a live schedule handle and `out` writable storage for
/// one pointer. The string written to `*out` must be released with
/// [`vsq_string_free`].
#[no_mangle]
pub unsafe extern "C" fn vsq_schedule_to_csv(
    schedule: *const VsqSchedule,
    out: *mut *mut c_char,
) -> VsqStatus {
    let Some(schedule) = schedule.as_ref() else {
        return null_argument("schedule");
    };
    if out.is_null() {
        return null_argument("out");
    }
    let csv = export_schedule(&schedule.0);
    match CString::new(csv) {
        Ok(text) => {
            *out = text.into_raw();
            VsqStatus::Ok
        }
        Err(_) => fail(VsqStatus::Error, "schedule CSV contained a NUL byte"),
    }
}
