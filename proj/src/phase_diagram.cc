#include "ybchain/phase_diagram.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ybchain/entanglement.h"
#include "ybchain/errors.h"
#include "ybchain/export.h"
#include "ybchain/freefermion.h"
#include "ybchain/wick.h"

namespace ybchain {
namespace {

struct QuantityName {
  Quantity q;
  const char* name;
};

constexpr QuantityName kNames[] = {
    {Quantity::berry, "berry"},
    {Quantity::dberry_dtheta2, "dberry-dtheta2"},
    {Quantity::d2berry, "d2berry"},
    {Quantity::ce1, "Ce1"},
    {Quantity::co1, "Co1"},
    {Quantity::c2, "C2"},
    {Quantity::dce1_dtheta2, "dCe1-dtheta2"},
    {Quantity::d2ce1, "d2Ce1"},
    {Quantity::f0, "F0"},
    {Quantity::g0, "G0"},
    {Quantity::g1, "G1"},
    {Quantity::energy_density, "energy-density"},
};

std::string mode_label(const SumMode& mode) {
  if (const auto* l = std::get_if<Lattice>(&mode)) return "lattice(" + std::to_string(l->n_cells) + ")";
  return "thermodynamic";
}

double quad_tol(const SumMode& mode) {
  if (const auto* t = std::get_if<Thermodynamic>(&mode)) return t->quadrature.abs_tol;
  return 0.0;
}

// Analytic quantities at one point; throws on gapless or quadrature failure.
double evaluate_base(Quantity q, double theta1, double theta2, const ScanOptions& o) {
  static constexpr int kNearest[] = {0, 1};
  switch (q) {
    case Quantity::berry:
      if (const auto* l = std::get_if<Lattice>(&o.mode))
        return berry_phase_finite(validate_params(theta1, theta2, o.phi, l->n_cells), Band::plus).value;
      return berry_phase_thermo(theta1, theta2, Band::plus,
                                std::get<Thermodynamic>(o.mode).quadrature)
          .value;
    case Quantity::ce1:
    case Quantity::co1: {
      const auto cs = ff_functions(theta1, theta2, o.phi, kNearest, o.mode);
      return concurrence_closed_form(cs, q == Quantity::ce1 ? PairKind::even_odd : PairKind::odd_even);
    }
    case Quantity::c2:
      return concurrence_distance2(ff_functions(theta1, theta2, o.phi, kNearest, o.mode)).value;
    case Quantity::f0: {
      static constexpr int d[] = {0};
      return ff_functions(theta1, theta2, o.phi, d, o.mode).F(0);
    }
    case Quantity::g0: {
      static constexpr int d[] = {0};
      return ff_functions(theta1, theta2, o.phi, d, o.mode).G(0);
    }
    case Quantity::g1: {
      static constexpr int d[] = {1};
      return ff_functions(theta1, theta2, o.phi, d, o.mode).G(1);
    }
    case Quantity::energy_density:
      if (const auto* l = std::get_if<Lattice>(&o.mode)) {
        const auto p = validate_params(theta1, theta2, o.phi, l->n_cells);
        return ground_energy(p) / (2.0 * p.n_cells);
      }
      return ground_energy_density_thermo(theta1, theta2,
                                          std::get<Thermodynamic>(o.mode).quadrature.abs_tol);
    default:
      break;
  }
  throw InvalidArgument("not a base quantity");
}

std::optional<double> try_base(Quantity q, double theta1, double theta2, const ScanOptions& o) {
  try {
    return evaluate_base(q, theta1, theta2, o);
  } catch (const GaplessPoint&) {
  } catch (const QuadratureError&) {
  } catch (const NotPositiveSemidefinite&) {
  }
  return std::nullopt;
}

bool excluded(double theta1, double theta2, double radius) {
  constexpr double h = 0.5 * std::numbers::pi;
  return std::hypot(theta1 - h, theta2 - h) < radius;
}

std::optional<double> evaluate_cell(Quantity q, double theta1, double theta2, const ScanOptions& o) {
  if (excluded(theta1, theta2, o.excluded_radius)) return std::nullopt;
  return evaluate_quantity(q, theta1, theta2, o);
}

ScanGrid labelled_grid(Quantity q, const GridSpec& spec, const ScanOptions& o) {
  // Input errors must surface here, not inside the parallel loop.
  if (const auto* l = std::get_if<Lattice>(&o.mode)) validate_params(0.0, 0.0, o.phi, l->n_cells);
  if (!(o.derivative.step > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  ScanGrid g = make_grid(spec, to_string(q));
  g.metadata["quantity"] = to_string(q);
  g.metadata["phi"] = format_double(o.phi);
  g.metadata["mode"] = mode_label(o.mode);
  g.metadata["quad_tol"] = format_double(quad_tol(o.mode));
  g.metadata["fd_step"] = format_double(o.derivative.step);
  g.metadata["richardson"] = o.derivative.richardson ? "true" : "false";
  g.metadata["excluded_radius"] = format_double(o.excluded_radius);
  return g;
}

}  // namespace

const char* to_string(Quantity q) {
  for (const auto& n : kNames)
    if (n.q == q) return n.name;
  return "?";
}

std::optional<Quantity> parse_quantity(const std::string& name) {
  for (const auto& n : kNames)
    if (name == n.name) return n.q;
  return std::nullopt;
}

const std::vector<Quantity>& all_quantities() {
  static const std::vector<Quantity> all = [] {
    std::vector<Quantity> v;
    for (const auto& n : kNames) v.push_back(n.q);
    return v;
  }();
  return all;
}

std::optional<double> evaluate_quantity(Quantity q, double theta1, double theta2,
                                        const ScanOptions& options) {
  const bool derivative = q == Quantity::dberry_dtheta2 || q == Quantity::d2berry ||
                          q == Quantity::dce1_dtheta2 || q == Quantity::d2ce1;
  // The stencil would straddle the singular point and still return a number.
  if (derivative && structure_factor(theta1, theta2, 0.0).delta <= kGaplessTolerance) return std::nullopt;
  auto field_of = [&options](Quantity base) -> ScalarField {
    return [base, &options](double t1, double t2) { return try_base(base, t1, t2, options); };
  };
  switch (q) {
    case Quantity::dberry_dtheta2:
      return finite_difference(field_of(Quantity::berry), DerivativeOrder::d_theta2, theta1, theta2,
                               options.derivative);
    case Quantity::d2berry:
      return finite_difference(field_of(Quantity::berry), DerivativeOrder::mixed, theta1, theta2,
                               options.derivative);
    case Quantity::dce1_dtheta2:
      return finite_difference(field_of(Quantity::ce1), DerivativeOrder::d_theta2, theta1, theta2,
                               options.derivative);
    case Quantity::d2ce1:
      return finite_difference(field_of(Quantity::ce1), DerivativeOrder::mixed, theta1, theta2,
                               options.derivative);
    default:
      return try_base(q, theta1, theta2, options);
  }
}

ScanGrid phase_diagram(Quantity q, const GridSpec& spec, const ScanOptions& options) {
  ScanGrid g = labelled_grid(q, spec, options);
  const auto n2 = static_cast<long>(g.n2());
  const auto cells = static_cast<long>(g.values.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long c = 0; c < cells; ++c)
    g.values[c] = evaluate_cell(q, g.theta1_axis[c / n2], g.theta2_axis[c % n2], options);
  return g;
}

ScanGrid phase_diagram_serial(Quantity q, const GridSpec& spec, const ScanOptions& options) {
  ScanGrid g = labelled_grid(q, spec, options);
  for (std::size_t i1 = 0; i1 < g.n1(); ++i1)
    for (std::size_t i2 = 0; i2 < g.n2(); ++i2)
      g.at(i1, i2) = evaluate_cell(q, g.theta1_axis[i1], g.theta2_axis[i2], options);
  return g;
}

std::vector<bool> flag_steep_cells(const ScanGrid& grid, double factor) {
  const std::size_t n1 = grid.n1(), n2 = grid.n2();
  std::vector<std::optional<double>> grad(grid.values.size());

  // One-sided differences at edges and next to invalid neighbours.
  auto partial = [&](std::size_t i1, std::size_t i2, bool along1) -> std::optional<double> {
    const auto& axis = along1 ? grid.theta1_axis : grid.theta2_axis;
    const std::size_t i = along1 ? i1 : i2;
    auto value = [&](std::size_t j) -> const std::optional<double>& {
      return along1 ? grid.at(j, i2) : grid.at(i1, j);
    };
    const bool has_lo = i > 0 && value(i - 1).has_value();
    const bool has_hi = i + 1 < axis.size() && value(i + 1).has_value();
    if (has_lo && has_hi) return (*value(i + 1) - *value(i - 1)) / (axis[i + 1] - axis[i - 1]);
    if (has_hi) return (*value(i + 1) - *value(i)) / (axis[i + 1] - axis[i]);
    if (has_lo) return (*value(i) - *value(i - 1)) / (axis[i] - axis[i - 1]);
    return std::nullopt;
  };

  std::vector<double> magnitudes;
  for (std::size_t i1 = 0; i1 < n1; ++i1)
    for (std::size_t i2 = 0; i2 < n2; ++i2) {
      if (!grid.at(i1, i2)) continue;
      const auto g1 = partial(i1, i2, true);
      const auto g2 = partial(i1, i2, false);
      if (!g1 || !g2) continue;
      const double m = std::hypot(*g1, *g2);
      grad[i1 * n2 + i2] = m;
      magnitudes.push_back(m);
    }

  std::vector<bool> flags(grid.values.size(), false);
  if (magnitudes.empty()) return flags;
  auto median_of = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  double median = median_of(magnitudes);
  if (median <= 0.0) {
    std::vector<double> positive;
    for (double m : magnitudes)
      if (m > 0.0) positive.push_back(m);
    if (positive.empty()) return flags;
    median = median_of(positive);
  }
  for (std::size_t c = 0; c < grad.size(); ++c)
    if (grad[c] && *grad[c] > factor * median) flags[c] = true;
  return flags;
}

}  // namespace ybchain
