#pragma once

#include <functional>

namespace ybchain {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int initial_panels = 8;
  int max_panels = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // sum of per-panel |K15 - G7|
  int panels = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration with an absolute
/// tolerance. The panel with the largest error estimate is bisected until the
/// summed estimate drops below abs_tol or max_panels is reached. Never throws;
/// check `converged`.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options = {});

}  // namespace ybchain
