// Decomposes the unaided distance vision table and prints the measures,
// the nearest quasi-symmetric table and the quasi-skewness contributions.

#include <cstdio>

#include "aitchison/aitchison.hpp"

int main() {
  using namespace aitchison;

  Matrix counts(4, 4);
  counts << 1520, 266, 124, 66,  //
      234, 1512, 432, 78,        //
      117, 362, 1772, 205,       //
      36, 82, 179, 492;
  ProbabilityTable p = closure(counts);

  DecompositionBundle parts(p);
  MeasureReport m = measure_report(parts);
  std::printf("E2 = %.4f  Q2 = %.4f  M2 = %.4f\n", m.e2, m.q2, m.m2);

  std::printf("\nnearest quasi-symmetric table\n");
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) std::printf(" %.4f", parts.qs()(i, j));
    std::printf("\n");
  }

  ContributionArray q = contribution_array(parts, ContributionKind::quasi_skewness);
  std::printf("\nquasi-skewness contributions (%%)\n");
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) std::printf(" %7.2f", q.percent(i, j));
    std::printf("\n");
  }

  std::printf("\nquasi-symmetric: %s\n", is_quasi_symmetric(p, 1e-9) ? "yes" : "no");
  return 0;
}
