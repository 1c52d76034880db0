/* C interface for the ccql engine. Generated by cbindgen; do not edit. */

#ifndef CCQL_H
#define CCQL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of an FFI call.
typedef enum CcqlStatus {
  // The call succeeded.
  CCQL_STATUS_OK = 0,
  // The input statements failed to tokenize, parse, validate, or
  // execute, or a fixture check found violations.
  CCQL_STATUS_QUERY_ERROR = 1,
  // The environment is unusable: bad config, unreadable file.
  CCQL_STATUS_ENV_ERROR = 2,
  // A required pointer argument was NULL or not valid UTF-8.
  CCQL_STATUS_INVALID_ARGUMENT = 3,
  // An internal invariant failed; the library caught a panic.
  CCQL_STATUS_PANIC = 4,
} CcqlStatus;

// Opaque query engine bound to a fixed set of chain backends.
typedef struct CcqlEngine CcqlEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or an empty string
// after a success. The pointer stays valid until the next ccql call on
// the same thread.
const char *ccql_last_error(void);

// Library version as a static NUL-terminated string.
const char *ccql_version(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a pointer previously returned through one of this
// library's out-parameters, not yet freed.
void ccql_string_free(char *s);

// Creates an engine from a backend config file (same format the CLI
// takes). Returns NULL on failure; see [`ccql_last_error`].
//
// # Safety
// `config_path` must be NULL or a NUL-terminated string valid for the
// duration of the call.
struct CcqlEngine *ccql_engine_new(const char *config_path);

// Destroys an engine created by [`ccql_engine_new`]. NULL is ignored.
//
// # Safety
// `engine` must be NULL or a live pointer from [`ccql_engine_new`], not
// yet freed.
void ccql_engine_free(struct CcqlEngine *engine);

// Executes statements and stores a JSON array of result tables (one
// `{columns, rows, warnings}` document per statement) in `*out_json`.
//
// # Safety
// `engine` must be a live pointer from [`ccql_engine_new`]; `statements`
// a NUL-terminated string; `out_json` a valid location to store a
// pointer. On success the caller owns `*out_json` and must release it
// with [`ccql_string_free`].
enum CcqlStatus ccql_execute(const struct CcqlEngine *engine,
                             const char *statements,
                             char **out_json);

// Parses statements without executing them and stores a JSON array of
// syntax trees (the `ccql parse --ast` format) in `*out_json`.
//
// # Safety
// `statements` must be a NUL-terminated string and `out_json` a valid
// location to store a pointer. On success the caller owns `*out_json`
// and must release it with [`ccql_string_free`].
enum CcqlStatus ccql_parse(const char *statements, char **out_json);

// Validates a fixture document or directory. On a clean check stores the
// census line in `*out_report` and returns OK; when violations exist,
// stores one line per violation and returns the query-error status.
//
// # Safety
// `path` must be a NUL-terminated string and `out_report` a valid
// location to store a pointer. Whenever a report is stored the caller
// owns `*out_report` and must release it with [`ccql_string_free`].
enum CcqlStatus ccql_check_fixtures(const char *path, char **out_report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CCQL_H */
