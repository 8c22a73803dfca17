#ifndef PDCT_H
#define PDCT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes.
typedef enum PdctStatus {
  PDCT_STATUS_OK = 0,
  PDCT_STATUS_NULL_POINTER = 1,
  PDCT_STATUS_INVALID_ARGUMENT = 2,
  PDCT_STATUS_UNKNOWN_TRANSFORM = 3,
  PDCT_STATUS_SHAPE_MISMATCH = 4,
  PDCT_STATUS_BUFFER_TOO_SMALL = 5,
  PDCT_STATUS_UNSUPPORTED_DEPTH = 6,
  PDCT_STATUS_EMPTY_IMAGE = 7,
  PDCT_STATUS_ZERO_ENERGY = 8,
  PDCT_STATUS_INTERNAL = 9,
} PdctStatus;

// Opaque codec handle.
typedef struct PdctCodec PdctCodec;

// Opaque transform handle.
typedef struct PdctTransform PdctTransform;

// Arithmetic operations performed by one transform call.
typedef struct PdctOpCount {
  uint64_t mult;
  uint64_t add;
  uint64_t shift;
} PdctOpCount;

// Image metrics. `psnr_db` is +infinity for a lossless result and
// `energy_compaction` is NaN for an image with no energy.
typedef struct PdctMetrics {
  double psnr_db;
  double nz_pct;
  double energy_compaction;
} PdctMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *pdct_last_error(void);

// Static description of a status code.
const char *pdct_status_str(enum PdctStatus status);

// Creates a transform by registry name (`exact-dct`, `sdct`, `rdct`,
// `modified-rdct`, `pruned`). With `pruned` only the four lowest
// frequencies are computed.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum PdctStatus pdct_transform_new(const char *name, bool pruned, struct PdctTransform **out);

// Releases a transform. NULL is ignored.
//
// # Safety
// `t` must come from [`pdct_transform_new`] and not have been freed.
void pdct_transform_free(struct PdctTransform *t);

// Output coefficients per dimension: 4 or 8. Returns 0 for NULL.
//
// # Safety
// `t` must be NULL or a live handle.
size_t pdct_transform_rows(const struct PdctTransform *t);

// Scaling diagonal; writes `rows` values.
//
// # Safety
// `out` must have room for `out_len` doubles.
enum PdctStatus pdct_transform_scaling(const struct PdctTransform *t, double *out, size_t out_len);

// Unscaled 1-D forward transform of 8 samples into `rows` outputs.
// `ops` may be NULL.
//
// # Safety
// `input` must point to 8 doubles, `out` to `out_len` doubles.
enum PdctStatus pdct_forward_1d(const struct PdctTransform *t,
                                const double *input,
                                double *out,
                                size_t out_len,
                                struct PdctOpCount *ops);

// 2-D forward transform of a 64-sample block into `rows × rows`
// row-major coefficients. `ops` may be NULL.
//
// # Safety
// `input` must point to 64 doubles, `out` to `out_len` doubles.
enum PdctStatus pdct_forward_2d(const struct PdctTransform *t,
                                const double *input,
                                bool scaled,
                                double *out,
                                size_t out_len,
                                struct PdctOpCount *ops);

// Inverse 2-D transform of `rows × rows` coefficients into 64 samples.
// `in_len` must equal `rows * rows`.
//
// # Safety
// `input` must point to `in_len` doubles, `out` to 64 doubles.
enum PdctStatus pdct_inverse_2d(const struct PdctTransform *t,
                                const double *input,
                                size_t in_len,
                                bool scaled,
                                double *out);

// Energy fraction of a block kept by the 4×4 low-frequency corner of the
// scaled 2-D modified RDCT.
//
// # Safety
// `input` must point to 64 doubles; `out` must be writable.
enum PdctStatus pdct_energy_compaction(const double *input, double *out);

// Instrumented operation count of a registered transform (or
// `dct-definition`) in 1-D or 2-D.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum PdctStatus pdct_measure(const char *name, bool two_d, bool pruned, struct PdctOpCount *out);

// Creates a codec with the JPEG luminance table.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum PdctStatus pdct_codec_new(const char *name,
                               bool pruned,
                               bool level_shift,
                               struct PdctCodec **out);

// Releases a codec. NULL is ignored.
//
// # Safety
// `c` must come from [`pdct_codec_new`] and not have been freed.
void pdct_codec_free(struct PdctCodec *c);

// Compresses one block of pixel values. Either output may be NULL.
//
// # Safety
// `input` must point to 64 doubles; non-NULL outputs to 64 elements.
enum PdctStatus pdct_codec_compress_block(const struct PdctCodec *c,
                                          const double *input,
                                          int32_t *quantized,
                                          double *reconstructed);

// Compresses an 8-bit grayscale image (row-major, `width * height`
// bytes). `out_pixels` (may be NULL) receives the reconstruction.
//
// # Safety
// `pixels` must point to `width * height` bytes, `out_pixels` likewise
// when non-NULL; `metrics` must be writable.
enum PdctStatus pdct_codec_compress_image(const struct PdctCodec *c,
                                          size_t width,
                                          size_t height,
                                          const uint8_t *pixels,
                                          uint8_t *out_pixels,
                                          struct PdctMetrics *metrics);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PDCT_H */
