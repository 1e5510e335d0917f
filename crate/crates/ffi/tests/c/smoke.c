#include <math.h>
#include <stdio.h>
#include <string.h>

#include "weylcover.h"

#define CHECK(cond)                                                    \
  do {                                                                 \
    if (!(cond)) {                                                     \
      const char *msg = wc_last_error_message();                      \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,  \
              msg ? msg : "no message");                               \
      return 1;                                                        \
    }                                                                  \
  } while (0)

int main(void) {
  WcGate *b = NULL, *swap = NULL, *cnot = NULL;
  CHECK(wc_gate_parse("b", &b) == WC_STATUS_OK);
  CHECK(wc_gate_parse("swap", &swap) == WC_STATUS_OK);
  CHECK(wc_gate_parse("cnot", &cnot) == WC_STATUS_OK);
  CHECK(wc_gate_parse("nonsense", &cnot) == WC_STATUS_PARSE);
  CHECK(wc_qlr_count() == 74);

  double c[3];
  CHECK(wc_gate_cartan(b, c) == WC_STATUS_OK);
  CHECK(fabs(c[0] - M_PI / 2) < 1e-9 && fabs(c[1] - M_PI / 4) < 1e-9);

  WcSymmetryFlags f;
  CHECK(wc_gate_symmetry(b, &f) == WC_STATUS_OK);
  CHECK(f.inverse && f.mirror && f.mirrored_inverse);

  WcCoverage *cov = NULL;
  CHECK(wc_coverage_new(c, c, &cov) == WC_STATUS_OK);
  char buf[32];
  size_t needed = 0;
  CHECK(wc_coverage_fraction_exact(cov, buf, sizeof buf, &needed) == WC_STATUS_OK);
  CHECK(strcmp(buf, "1") == 0);
  wc_coverage_free(cov);

  WcSynthesis *s = NULL;
  CHECK(wc_synthesize(b, swap, 0, 7, &s) == WC_STATUS_OK);
  double fid = 0;
  CHECK(wc_synthesis_fidelity(s, &fid) == WC_STATUS_OK);
  CHECK(fid >= 1 - 1e-6);
  wc_synthesis_free(s);

  CHECK(wc_synthesize(cnot, swap, 0, 7, &s) == WC_STATUS_NOT_REACHABLE);
  CHECK(wc_last_error_message() != NULL);

  wc_gate_free(b);
  wc_gate_free(swap);
  wc_gate_free(cnot);
  printf("ok\n");
  return 0;
}
