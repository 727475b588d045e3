// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include "chronoq/optimize.hpp"

namespace chronoq {

CompassResult compass_maximize(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                               double step, double min_step, int max_evals) {
  CompassResult best{std::move(x0), 0.0};
  best.value = f(best.x);
  int evals = 1;
  for (double h = step; h > min_step && evals < max_evals; h /= 2.0) {
    bool improved = true;
    while (improved && evals < max_evals) {
      improved = false;
      for (std::size_t c = 0; c < best.x.size(); ++c) {
        for (double dir : {1.0, -1.0}) {
          std::vector<double> trial = best.x;
          trial[c] += dir * h;
          const double v = f(trial);
          ++evals;
          if (v > best.value + 1e-15) {
            best.value = v;
            best.x = std::move(trial);
            improved = true;
            break;
          }
        }
      }
    }
  }
  return best;
}

}  // namespace chronoq
