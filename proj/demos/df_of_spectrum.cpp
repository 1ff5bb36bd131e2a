// Minimal example: interaction distance of a spectrum, exact and numeric.

#include <cstdio>

#include "freefit/idistance.hpp"

int main() {
  using namespace freefit;
  const auto s = spectrum_from_probabilities({1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0});

  const DfResult exact = df_four_level(s);
  std::printf("exact:   df = %.12f, b = (%.6f, %.6f)\n", exact.df, exact.params.b[0],
              exact.params.b[1]);

  const DfResult numeric = df_numeric(s, 2);
  std::printf("numeric: df = %.12f, b = (%.6f, %.6f)\n", numeric.df, numeric.params.b[0],
              numeric.params.b[1]);

  std::printf("optimal spectrum:");
  for (double p : exact.free_spectrum.probs) std::printf(" %.6f", p);
  std::printf("\n");
  return 0;
}
