#ifndef COREP_H
#define COREP_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four coincide with the CLI exit codes.
 */
typedef enum CorepStatus {
  /**
   * FOUND, or a true check.
   */
  COREP_STATUS_OK = 0,
  /**
   * NO, or a false check.
   */
  COREP_STATUS_NO = 1,
  /**
   * NO_WITNESS_FOUND or UNKNOWN.
   */
  COREP_STATUS_INCONCLUSIVE = 2,
  /**
   * Parse, resolution or verification error in the input.
   */
  COREP_STATUS_INPUT_ERROR = 3,
  COREP_STATUS_NULL_POINTER = 4,
  COREP_STATUS_INVALID_UTF8 = 5,
  COREP_STATUS_PANIC = 6,
} CorepStatus;

/**
 * A loaded and verified instance.
 */
typedef struct CorepInstance CorepInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Loads an instance file. On success `*out` receives a new handle.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CorepStatus corep_instance_load(const char *path, struct CorepInstance **out);

/**
 * Parses an instance from its text form.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CorepStatus corep_instance_from_str(const char *text, struct CorepInstance **out);

/**
 * Writes the canonical text form of an instance to `*out`.
 *
 * # Safety
 * `instance` must be a live handle and `out` a valid pointer.
 */
enum CorepStatus corep_instance_emit(const struct CorepInstance *instance, char **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `instance` must be null or a handle not yet freed.
 */
void corep_instance_free(struct CorepInstance *instance);

/**
 * Runs a CLI command (arguments without the program name) and writes the
 * report to `*report`. `instance` may be null when the arguments name a
 * file or only catalog objects. The return value is the command's exit
 * status.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings, `instance` must be
 * null or a live handle and `report` a valid pointer.
 */
enum CorepStatus corep_run(const struct CorepInstance *instance,
                           int argc,
                           const char *const *argv,
                           char **report);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void corep_string_free(char *s);

/**
 * The last error message on this thread, or null. The pointer stays valid
 * until the next library call on the same thread.
 */
const char *corep_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COREP_H */
