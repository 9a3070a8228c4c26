#include <stdio.h>
#include <string.h>

#include "qlcm.h"

#define CHECK(cond)                                                        \
  do {                                                                     \
    if (!(cond)) {                                                         \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);           \
      return 1;                                                            \
    }                                                                      \
  } while (0)

int main(void) {
  QlcmReport *r = NULL;
  CHECK(qlcm_verify(5, QLCM_DEPTH_POLYNOMIAL, &r) == QLCM_STATUS_OK);
  bool passed = false;
  CHECK(qlcm_report_passed(r, &passed) == QLCM_STATUS_OK && passed);
  char *line = NULL;
  CHECK(qlcm_report_to_text(r, &line) == QLCM_STATUS_OK);
  CHECK(strcmp(line, "n=5: lhs=Phi_4 * Phi_5 rhs=Phi_4 * Phi_5 PASS") == 0);
  qlcm_string_free(line);
  qlcm_report_free(r);

  QlcmPoly *p = NULL;
  CHECK(qlcm_q_binomial(4, 2, &p) == QLCM_STATUS_OK);
  int64_t deg = 0, c2 = 0;
  CHECK(qlcm_poly_degree(p, &deg) == QLCM_STATUS_OK && deg == 4);
  CHECK(qlcm_poly_coeff(p, 2, &c2) == QLCM_STATUS_OK && c2 == 2);
  qlcm_poly_free(p);

  uint64_t v = 0;
  CHECK(qlcm_phi_at_one(8, &v) == QLCM_STATUS_OK && v == 2);
  CHECK(qlcm_phi_at_one(1, &v) == QLCM_STATUS_INVALID_ARGUMENT);
  CHECK(qlcm_last_error() != NULL);
  printf("ok %s\n", qlcm_version());
  return 0;
}
