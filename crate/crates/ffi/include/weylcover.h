#ifndef WEYLCOVER_H
#define WEYLCOVER_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes shared by every call.
typedef enum WcStatus {
  WC_STATUS_OK = 0,
  // A required pointer was null or a buffer was too small.
  WC_STATUS_INVALID_ARGUMENT = 1,
  // Malformed text input, or a value outside its documented range.
  WC_STATUS_PARSE = 2,
  WC_STATUS_NOT_UNITARY = 3,
  WC_STATUS_NOT_IN_CHAMBER = 4,
  // The target class lies outside the two-application region.
  WC_STATUS_NOT_REACHABLE = 5,
  // Eigensolver, KAK or exact-arithmetic failure.
  WC_STATUS_NUMERICAL = 6,
  // Synthesis ran out of iterations; the best attempt is still returned.
  WC_STATUS_BUDGET_EXHAUSTED = 7,
  WC_STATUS_IO = 8,
  // A Rust panic was caught at the boundary.
  WC_STATUS_INTERNAL = 9,
} WcStatus;

// Opaque two-application coverage region.
typedef struct WcCoverage WcCoverage;

// Opaque two-qubit gate.
typedef struct WcGate WcGate;

// Opaque synthesis result.
typedef struct WcSynthesis WcSynthesis;

// The three invariance flags of a class.
typedef struct WcSymmetryFlags {
  bool inverse;
  bool mirror;
  bool mirrored_inverse;
} WcSymmetryFlags;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *wc_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *wc_version(void);

// Number of inequality tuples in the committed list.
size_t wc_qlr_count(void);

// Parses a gate: a builtin name (`cnot`, `b`, ...), `fsim:θ,φ`,
// `coord:c1,c2,c3`, or a path to a matrix file.
//
// # Safety
// `spec` must be a valid NUL-terminated string and `out` a valid pointer.
enum WcStatus wc_gate_parse(const char *spec, struct WcGate **out);

// Builds a gate from row-major real and imaginary parts, checking
// unitarity to `tol`.
//
// # Safety
// `re` and `im` must each point to 16 doubles; `out` must be valid.
enum WcStatus wc_gate_from_matrix(const double *re,
                                  const double *im,
                                  double tol,
                                  struct WcGate **out);

// Copies the gate's entries into row-major `re[16]`, `im[16]`.
//
// # Safety
// `gate` must come from this library; `re` and `im` must hold 16 doubles.
enum WcStatus wc_gate_matrix(const struct WcGate *gate, double *re, double *im);

// Releases a gate. Null is accepted.
//
// # Safety
// `gate` must be null or a pointer returned by this library, freed once.
void wc_gate_free(struct WcGate *gate);

// Chamber coordinates of the gate's class.
//
// # Safety
// `gate` must come from this library; `out` must hold 3 doubles.
enum WcStatus wc_gate_cartan(const struct WcGate *gate, double *out);

// Local invariants `G1 = g1_re + i g1_im` and `G2`.
//
// # Safety
// `gate` must come from this library; the outputs must be valid.
enum WcStatus wc_gate_invariants(const struct WcGate *gate,
                                 double *g1_re,
                                 double *g1_im,
                                 double *g2);

// Inverse, mirror and mirrored-inverse invariance of the gate's class.
//
// # Safety
// `gate` must come from this library; `out` must be valid.
enum WcStatus wc_gate_symmetry(const struct WcGate *gate, struct WcSymmetryFlags *out);

// Chamber representative of an arbitrary triple.
//
// # Safety
// `raw` and `out` must each hold 3 doubles; they may alias.
enum WcStatus wc_canonicalize(const double *raw, double *out);

// Classes reachable as `U1 · L · U2` for chamber points `c_u1`, `c_u2`.
//
// # Safety
// `c_u1`, `c_u2` must hold 3 doubles; `out` must be valid.
enum WcStatus wc_coverage_new(const double *c_u1, const double *c_u2, struct WcCoverage **out);

// Releases a coverage region. Null is accepted.
//
// # Safety
// `cov` must be null or a pointer returned by this library, freed once.
void wc_coverage_free(struct WcCoverage *cov);

// Covered fraction of the chamber.
//
// # Safety
// `cov` must come from this library; `out` must be valid.
enum WcStatus wc_coverage_fraction(const struct WcCoverage *cov, double *out);

// Exact covered fraction as a `p/q` string written into `buf`. `needed`
// receives the size including the NUL; a short buffer gives
// `InvalidArgument` and leaves `buf` untouched.
//
// # Safety
// `cov` must come from this library; `buf` must hold `len` bytes (it may be
// null when `len` is 0); `needed` must be valid.
enum WcStatus wc_coverage_fraction_exact(const struct WcCoverage *cov,
                                         char *buf,
                                         size_t len,
                                         size_t *needed);

// Dimension of the covered set, or -1 when it is empty.
//
// # Safety
// `cov` must come from this library; `out` must be valid.
enum WcStatus wc_coverage_dim(const struct WcCoverage *cov, int32_t *out);

// Membership of a point with outward slack `tol` (radians).
//
// # Safety
// `cov` must come from this library; `coord` must hold 3 doubles; `out`
// must be valid.
enum WcStatus wc_coverage_contains(const struct WcCoverage *cov,
                                   const double *coord,
                                   double tol,
                                   bool *out);

// Finds locals with `L1 · U · L2 · U · L3 = V`. `budget` caps the
// optimizer iterations per restart (0 selects the default). On
// `BudgetExhausted` the best attempt is still stored in `out`.
//
// # Safety
// `u`, `v` must come from this library; `out` must be valid.
enum WcStatus wc_synthesize(const struct WcGate *u,
                            const struct WcGate *v,
                            size_t budget,
                            uint64_t seed,
                            struct WcSynthesis **out);

// Releases a synthesis result. Null is accepted.
//
// # Safety
// `s` must be null or a pointer returned by this library, freed once.
void wc_synthesis_free(struct WcSynthesis *s);

// `|tr(V† W)| / 4` of the assembled circuit.
//
// # Safety
// `s` must come from this library; `out` must be valid.
enum WcStatus wc_synthesis_fidelity(const struct WcSynthesis *s, double *out);

// Local layer `which` (0 for L1, 1 for L2, 2 for L3) as its two 2×2
// factors, row-major: entries 0..4 are the first qubit, 4..8 the second.
//
// # Safety
// `s` must come from this library; `re` and `im` must hold 8 doubles.
enum WcStatus wc_synthesis_local(const struct WcSynthesis *s,
                                 uint32_t which,
                                 double *re,
                                 double *im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEYLCOVER_H */
