// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

namespace chronoq {

/// Compass (pattern) search maximiser: tries +/- step along each coordinate,
/// halving the step when no move improves. Deterministic.
struct CompassResult {
  std::vector<double> x;
  double value = 0.0;
};
CompassResult compass_maximize(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                               double step, double min_step = 1e-10, int max_evals = 200000);

}  // namespace chronoq
