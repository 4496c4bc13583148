#ifndef INPLACE_POLY_H
#define INPLACE_POLY_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Lower triangular orientation for the triangular Toeplitz calls.
#define IP_LOWER 0

// Upper triangular orientation for the triangular Toeplitz calls.
#define IP_UPPER 1

typedef enum IpStatus {
  IP_STATUS_OK = 0,
  IP_STATUS_NULL_POINTER = 1,
  IP_STATUS_NOT_PRIME = 2,
  IP_STATUS_INVERSION_OF_ZERO = 3,
  IP_STATUS_NON_CANONICAL = 4,
  IP_STATUS_LENGTH_MISMATCH = 5,
  IP_STATUS_BAD_PARAMETER = 6,
  IP_STATUS_SINGULAR_DIAGONAL = 7,
  IP_STATUS_NON_INVERTIBLE_LEADING = 8,
  IP_STATUS_DEGREE_CONSTRAINT = 9,
  IP_STATUS_ALIASING = 10,
  IP_STATUS_INTERNAL = 11,
  IP_STATUS_PANIC = 12,
} IpStatus;

// Opaque context: a prime field and the multiplication threshold.
typedef struct IpContext IpContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a context for the prime `p` and stores it in `*out`.
// `threshold` is the size below which quadratic kernels are used; 0 picks
// the library default.
//
// # Safety
// `out` must be null or valid for a pointer write.
enum IpStatus ip_context_new(uint64_t p, size_t threshold, struct IpContext **out);

// Releases a context. Null is ignored.
//
// # Safety
// `ctx` must be null or a pointer from [`ip_context_new`] not yet freed.
void ip_context_free(struct IpContext *ctx);

// The context's modulus, or 0 for a null context.
//
// # Safety
// `ctx` must be null or a live context.
uint64_t ip_context_modulus(const struct IpContext *ctx);

// Static, NUL-terminated description of a status code.
const char *ip_status_str(int32_t status);

// `c += a b mod (X^n - f)`; `a` and `b` are restored.
//
// # Safety
// `c`, `a`, `b` must each be valid for `n` elements.
enum IpStatus ip_conv_acc(const struct IpContext *ctx,
                          uint64_t *c,
                          uint64_t *a,
                          uint64_t *b,
                          size_t n,
                          uint64_t f);

// `c += Circ_f(a) b` for the f-circulant matrix with first row `a`.
//
// # Safety
// `c`, `a`, `b` must each be valid for `n` elements.
enum IpStatus ip_circulant_acc(const struct IpContext *ctx,
                               uint64_t *c,
                               uint64_t *a,
                               uint64_t *b,
                               size_t n,
                               uint64_t f);

// `c += T b` for the `rows x cols` Toeplitz matrix `T[i][j] = v[rows-1+j-i]`.
//
// # Safety
// `c` valid for `rows`, `v` for `rows + cols - 1`, `b` for `cols` elements.
enum IpStatus ip_rect_toeplitz_acc(const struct IpContext *ctx,
                                   uint64_t *c,
                                   size_t rows,
                                   uint64_t *v,
                                   uint64_t *b,
                                   size_t cols);

// `b <- L b` or `b <- U b`, the triangular Toeplitz matrix defined by `a`
// (`[a, 0]` for [`IP_LOWER`], `[0, a]` for [`IP_UPPER`]).
//
// # Safety
// `a` and `b` must each be valid for `m` elements.
enum IpStatus ip_tri_toeplitz_mul(const struct IpContext *ctx,
                                  uint64_t *a,
                                  uint64_t *b,
                                  size_t m,
                                  uint32_t orient);

// Inverse of [`ip_tri_toeplitz_mul`].
//
// # Safety
// `a` and `b` must each be valid for `m` elements.
enum IpStatus ip_tri_toeplitz_solve(const struct IpContext *ctx,
                                    uint64_t *a,
                                    uint64_t *b,
                                    size_t m,
                                    uint32_t orient);

// `r = a mod b` with `r` of length `b_len - 1`. `a` is only read; `b` is
// restored.
//
// # Safety
// `r` valid for `b_len - 1`, `a` for `a_len` reads, `b` for `b_len` elements.
enum IpStatus ip_iper(const struct IpContext *ctx,
                      uint64_t *r,
                      const uint64_t *a,
                      size_t a_len,
                      uint64_t *b,
                      size_t b_len);

// Overwrites `a` with `[a mod b, a div b]`; `b` is restored.
//
// # Safety
// `a` valid for `a_len`, `b` for `b_len` elements.
enum IpStatus ip_oper(const struct IpContext *ctx,
                      uint64_t *a,
                      size_t a_len,
                      uint64_t *b,
                      size_t b_len);

// Inverse of [`ip_oper`].
//
// # Safety
// `a` valid for `a_len`, `b` for `b_len` elements.
enum IpStatus ip_oper_inv(const struct IpContext *ctx,
                          uint64_t *a,
                          size_t a_len,
                          uint64_t *b,
                          size_t b_len);

// `r += a mod b` with `r` of length `b_len - 1`; `a` and `b` are restored.
//
// # Safety
// `r` valid for `b_len - 1`, `a` for `a_len`, `b` for `b_len` elements.
enum IpStatus ip_aper(const struct IpContext *ctx,
                      uint64_t *r,
                      uint64_t *a,
                      size_t a_len,
                      uint64_t *b,
                      size_t b_len);

// `r += a c mod b` with `r` of length `b_len - 1`; `a`, `c`, `b` are restored.
//
// # Safety
// `r` valid for `b_len - 1`, `a` for `a_len`, `c` for `c_len`, `b` for
// `b_len` elements.
enum IpStatus ip_fullaxpyin(const struct IpContext *ctx,
                            uint64_t *r,
                            uint64_t *a,
                            size_t a_len,
                            uint64_t *c,
                            size_t c_len,
                            uint64_t *b,
                            size_t b_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INPLACE_POLY_H */
