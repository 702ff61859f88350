#ifndef VEECHLAB_H
#define VEECHLAB_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a call.
typedef enum VlStatus {
  VL_STATUS_OK = 0,
  VL_STATUS_NULL_POINTER = 1,
  // Bad `n`, degree, monodromy or JSON.
  VL_STATUS_INVALID_ARGUMENT = 2,
  // A computation hit a cap or an internal check.
  VL_STATUS_COMPUTATION_FAILED = 3,
  // The library panicked; the handle passed in should not be reused.
  VL_STATUS_PANIC = 4,
} VlStatus;

// Verdict of a certificate.
typedef enum VlVerdict {
  VL_VERDICT_PASS = 0,
  VL_VERDICT_FAIL = 1,
  VL_VERDICT_INCONCLUSIVE = 2,
} VlVerdict;

// A certificate produced by [`vl_verify`] or parsed from JSON.
typedef struct VlCertificate VlCertificate;

// A covering of the base surface.
typedef struct VlCover VlCover;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failing call on this thread, or null. Owned by the library.
const char *vl_last_error(void);

// Library version as a static string.
const char *vl_version(void);

// The standard covering of degree `d` over the base surface for `n`.
//
// # Safety
// `out` must be a valid pointer.
enum VlStatus vl_cover_standard(size_t n, size_t d, struct VlCover **out);

// The `Z`-indexed covering over the base surface for `n`.
//
// # Safety
// `out` must be a valid pointer.
enum VlStatus vl_cover_infinite(size_t n, struct VlCover **out);

// A finite covering from generator images, given as a JSON array of image arrays:
// `[[1,0,2],[0,2,1],...]`, one per base generator.
//
// # Safety
// `perms_json` must be a nul-terminated string and `out` a valid pointer.
enum VlStatus vl_cover_custom(size_t n, const char *perms_json, struct VlCover **out);

// Number of sheets, or 0 for the `Z`-indexed covering.
//
// # Safety
// `cover` must come from this library and `out` must be a valid pointer.
enum VlStatus vl_cover_degree(const struct VlCover *cover, size_t *out);

// # Safety
// `cover` must come from this library and not be used afterwards. Null is ignored.
void vl_cover_free(struct VlCover *cover);

// Certifies the Veech group of the covering.
//
// # Safety
// `cover` must come from this library and `out` must be a valid pointer.
enum VlStatus vl_verify(const struct VlCover *cover, struct VlCertificate **out);

// Stored verdict of the certificate.
//
// # Safety
// `cert` must come from this library and `out` must be a valid pointer.
enum VlStatus vl_certificate_verdict(const struct VlCertificate *cert, enum VlVerdict *out);

// Verdict recomputed from the evidence alone.
//
// # Safety
// `cert` must come from this library and `out` must be a valid pointer.
enum VlStatus vl_certificate_revalidate(const struct VlCertificate *cert, enum VlVerdict *out);

// JSON form of the certificate; release with [`vl_string_free`].
//
// # Safety
// `cert` must come from this library and `out` must be a valid pointer.
enum VlStatus vl_certificate_to_json(const struct VlCertificate *cert, char **out);

// Parses a certificate written by [`vl_certificate_to_json`].
//
// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum VlStatus vl_certificate_from_json(const char *json, struct VlCertificate **out);

// # Safety
// `cert` must come from this library and not be used afterwards. Null is ignored.
void vl_certificate_free(struct VlCertificate *cert);

// Genus, cusp widths, elliptic points and index of the quotient, as JSON; release with
// [`vl_string_free`].
//
// # Safety
// `out` must be a valid pointer.
enum VlStatus vl_quotient_json(size_t n, char **out);

// # Safety
// `s` must be a string returned by this library and not be used afterwards. Null is
// ignored.
void vl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VEECHLAB_H */
