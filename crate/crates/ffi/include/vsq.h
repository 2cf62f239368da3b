#ifndef VSQ_H
#define VSQ_H

/* Generated by cbindgen from the vsq-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of an FFI call.
 */
typedef enum VsqStatus {
  /**
   * The call succeeded.
   */
  VSQ_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  VSQ_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  VSQ_STATUS_INVALID_UTF8 = 2,
  /**
   * The operation itself failed; see `vsq_last_error_message`.
   */
  VSQ_STATUS_ERROR = 3,
} VsqStatus;

/**
 * A parsed circuit.
 */
typedef struct VsqCircuit VsqCircuit;

/**
 * A compiled pulse program.
 */
typedef struct VsqProgram VsqProgram;

/**
 * A pulse program timed against a level scheme.
 */
typedef struct VsqSchedule VsqSchedule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Takes the most recent error message as a NUL-terminated string, or null
 * when no error is pending. Fetching clears the slot.
 *
 * # Safety
 * The returned pointer, when non-null, must be released with
 * [`vsq_string_free`].
 */
char *vsq_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `ptr` must be a pointer obtained from a function in this library that
 * documents this release path, not yet freed, or null.
 */
void vsq_string_free(char *ptr);

/**
 * Parses a circuit JSON document into a new circuit handle written to
 * `*out`.
 *
 * # Safety
 * `json` must point to a NUL-terminated string and `out` to writable
 * storage for one pointer; both must remain valid for the duration of the
 * call.
 */
enum VsqStatus vsq_circuit_parse(const char *json, struct VsqCircuit **out);

/**
 * Releases a circuit handle.
 *
 * # Safety
 * `ptr` must be a pointer returned by [`vsq_circuit_parse`], not yet freed,
 * or null.
 */
void vsq_circuit_free(struct VsqCircuit *ptr);

/**
 * Lowers a circuit to its pulse program, written to `*out`.
 *
 * # Safety
 * `circuit` must be a live circuit handle and `out` writable storage for
 * one pointer.
 */
enum VsqStatus vsq_circuit_compile(const struct VsqCircuit *circuit, struct VsqProgram **out);

/**
 * Releases a program handle.
 *
 * # Safety
 * `ptr` must be a pointer returned by [`vsq_circuit_compile`], not yet
 * freed, or null.
 */
void vsq_program_free(struct VsqProgram *ptr);

/**
 * Writes a circuit's closed-form unitary into `out_reim` as 32 doubles:
 * row-major entries, each as a real then an imaginary part.
 *
 * # Safety
 * `circuit` must be a live circuit handle and `out_reim` must point to
 * writable storage for 32 doubles.
 */
enum VsqStatus vsq_circuit_unitary(const struct VsqCircuit *circuit, double *out_reim);

/**
 * Writes a program's pulse-product unitary into `out_reim` as 32 doubles:
 * row-major entries, each as a real then an imaginary part.
 *
 * # Safety
 * `program` must be a live program handle and `out_reim` must point to
 * writable storage for 32 doubles.
 */
enum VsqStatus vsq_program_unitary(const struct VsqProgram *program, double *out_reim);

/**
 * Evolves the ground state under a program and samples `shots` seeded
 * measurements, writing the four basis counts to `out_counts`.
 *
 * # Safety
 * `program` must be a live program handle and `out_counts` must point to
 * writable storage for 4 `uint64_t`.
 */
enum VsqStatus vsq_program_simulate(const struct VsqProgram *program,
                                    uint64_t seed,
                                    uint64_t shots,
                                    uint64_t *out_counts);

/**
 * Times a program against a named level scheme (`"fig3"` or `"fig4"`) at
 * the Rabi frequency `rabi_hz` with `gap_s` seconds between groups,
 * writing a new schedule handle to `*out`. The spectroscopic dataset is
 * the builtin one unless the `VSQ_DATASET` environment variable names a
 * dataset file.
 *
 * # Safety
 * `program` must be a live program handle, `scheme_name` a NUL-terminated
 * string, and `out` writable storage for one pointer.
 */
enum VsqStatus vsq_program_schedule(const struct VsqProgram *program,
                                    const char *scheme_name,
                                    double rabi_hz,
                                    double gap_s,
                                    struct VsqSchedule **out);

/**
 * Releases a schedule handle.
 *
 * # Safety
 * `ptr` must be a pointer returned by [`vsq_program_schedule`], not yet
 * freed, or null.
 */
void vsq_schedule_free(struct VsqSchedule *ptr);

/**
 * Writes the number of scheduled pulses to `*out_count`.
 *
 * # Safety
 * `schedule` must be a live schedule handle and `out_count` writable
 * storage for one `size_t`.
 */
enum VsqStatus vsq_schedule_entry_count(const struct VsqSchedule *schedule, size_t *out_count);

/**
 * Writes the schedule's total duration in seconds to `*out_seconds`.
 *
 * # Safety
 * `schedule` must be a live schedule handle and `out_seconds` writable
 * storage for one double.
 */
enum VsqStatus vsq_schedule_total_time(const struct VsqSchedule *schedule, double *out_seconds);

/**
 * Renders a schedule to its CSV form and writes the new string to `*out`.
 *
 * # Safety
 * `schedule` must be a live schedule handle and `out` writable storage for
 * one pointer. The string written to `*out` must be released with
 * [`vsq_string_free`].
 */
enum VsqStatus vsq_schedule_to_csv(const struct VsqSchedule *schedule, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VSQ_H */
