#include "ybchain/grid.h"

#include "ybchain/errors.h"

namespace ybchain {
namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw InvalidArgument("grid resolution must be at least 2");
  std::vector<double> axis(n);
  for (int i = 0; i < n; ++i) axis[i] = lo + (hi - lo) * i / (n - 1);
  axis.back() = hi;
  return axis;
}

void check_step(const DerivativeOptions& options) {
  if (!(options.step > 0.0)) throw InvalidArgument("finite-difference step must be positive");
}

}  // namespace

std::vector<double> GridSpec::theta1_axis() const { return linspace(theta1_min, theta1_max, n_theta1); }
std::vector<double> GridSpec::theta2_axis() const { return linspace(theta2_min, theta2_max, n_theta2); }

std::size_t ScanGrid::valid_count() const {
  std::size_t n = 0;
  for (const auto& v : values) n += v.has_value();
  return n;
}

ScanGrid make_grid(const GridSpec& spec, std::string label) {
  ScanGrid g;
  g.theta1_axis = spec.theta1_axis();
  g.theta2_axis = spec.theta2_axis();
  g.values.assign(g.theta1_axis.size() * g.theta2_axis.size(), std::nullopt);
  g.quantity_label = std::move(label);
  return g;
}

std::optional<double> finite_difference(const ScalarField& field, DerivativeOrder order,
                                        double theta1, double theta2,
                                        const DerivativeOptions& options) {
  check_step(options);
  auto stencil = [&](double h) -> std::optional<double> {
    switch (order) {
      case DerivativeOrder::d_theta1:
      case DerivativeOrder::d_theta2: {
        const double d1 = order == DerivativeOrder::d_theta1 ? h : 0.0;
        const double d2 = order == DerivativeOrder::d_theta2 ? h : 0.0;
        const auto plus = field(theta1 + d1, theta2 + d2);
        const auto minus = field(theta1 - d1, theta2 - d2);
        if (!plus || !minus) return std::nullopt;
        return (*plus - *minus) / (2.0 * h);
      }
      case DerivativeOrder::mixed: {
        const auto pp = field(theta1 + h, theta2 + h);
        const auto pm = field(theta1 + h, theta2 - h);
        const auto mp = field(theta1 - h, theta2 + h);
        const auto mm = field(theta1 - h, theta2 - h);
        if (!pp || !pm || !mp || !mm) return std::nullopt;
        return (*pp - *pm - *mp + *mm) / (4.0 * h * h);
      }
    }
    return std::nullopt;
  };

  const auto coarse = stencil(options.step);
  if (!options.richardson || !coarse) return coarse;
  const auto fine = stencil(0.5 * options.step);
  if (!fine) return std::nullopt;
  return (4.0 * *fine - *coarse) / 3.0;
}

ScanGrid derivative_map(const ScalarField& field, DerivativeOrder order, const GridSpec& spec,
                        const DerivativeOptions& options) {
  check_step(options);
  ScanGrid g = make_grid(spec, "derivative");
  const auto n2 = static_cast<long>(g.n2());
  const auto cells = static_cast<long>(g.values.size());
#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < cells; ++c)
    g.values[c] = finite_difference(field, order, g.theta1_axis[c / n2], g.theta2_axis[c % n2], options);
  return g;
}

ScanGrid derivative_map_serial(const ScalarField& field, DerivativeOrder order,
                               const GridSpec& spec, const DerivativeOptions& options) {
  ScanGrid g = make_grid(spec, "derivative");
  for (std::size_t i1 = 0; i1 < g.n1(); ++i1)
    for (std::size_t i2 = 0; i2 < g.n2(); ++i2)
      g.at(i1, i2) = finite_difference(field, order, g.theta1_axis[i1], g.theta2_axis[i2], options);
  return g;
}

}  // namespace ybchain
