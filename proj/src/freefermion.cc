#include "ybchain/freefermion.h"

#include <cmath>
#include <numbers>

#include "ybchain/errors.h"
#include "ybchain/quadrature.h"

namespace ybchain {

MomentumGrid momentum_grid(int n_cells) {
  if (n_cells < 1 || n_cells % 2 == 0) throw InvalidArgument("n_cells must be odd");
  MomentumGrid g;
  g.n_cells = n_cells;
  const int m = (n_cells - 1) / 2;
  g.k_values.reserve(n_cells);
  g.angles.reserve(n_cells);
  for (int k = -m; k <= m; ++k) {
    g.k_values.push_back(k);
    g.angles.push_back(2.0 * std::numbers::pi * k / n_cells);
  }
  return g;
}

StructureFactor structure_factor(double theta1, double theta2, double k_angle) {
  const double c1 = std::cos(theta1), s1 = std::sin(theta1);
  const double c2 = std::cos(theta2), s2 = std::sin(theta2);
  const double sin2t1 = 2.0 * s1 * c1;
  const double sin2t2 = 2.0 * s2 * c2;
  StructureFactor f;
  f.xi = sin2t2 * std::polar(1.0, k_angle) - sin2t1;
  f.delta = 2.0 * (c1 * c1 + c2 * c2);
  return f;
}

double dispersion(double theta1, double theta2, double k_angle) {
  const auto f = structure_factor(theta1, theta2, k_angle);
  return std::hypot(std::abs(f.xi), f.delta);
}

ModeData bogoliubov_coefficients(double theta1, double theta2, double k_angle,
                                 double gapless_tolerance) {
  const auto f = structure_factor(theta1, theta2, k_angle);
  ModeData m;
  m.k_angle = k_angle;
  m.xi = f.xi;
  m.delta = f.delta;
  m.epsilon = std::hypot(std::abs(f.xi), f.delta);
  if (m.epsilon <= gapless_tolerance) throw GaplessPoint("epsilon_k vanishes");

  // delta >= 0, so delta + epsilon >= epsilon > 0 and the norm is well defined.
  const double norm = std::sqrt(2.0 * m.epsilon * (m.delta + m.epsilon));
  m.u_bar = (m.delta + m.epsilon) / norm;
  m.v_bar = -m.xi / norm;
  m.u = -m.u_bar;
  m.v = std::conj(m.v_bar);
  return m;
}

double bogoliubov_cross_residual(const ModeData& mode) {
  return std::abs(mode.u_bar * std::conj(mode.u) + mode.v_bar * std::conj(mode.v));
}

double ground_energy(const ModelParams& params) {
  const auto grid = momentum_grid(params.n_cells);
  double sum = 0.0;
  for (double k : grid.angles) sum += dispersion(params.theta1, params.theta2, k);
  return -0.5 * sum * ModelParams::energy_scale;
}

double ground_energy_density_thermo(double theta1, double theta2, double abs_tol) {
  QuadratureOptions opts;
  opts.abs_tol = abs_tol;
  const auto r = integrate_adaptive(
      [&](double k) { return dispersion(theta1, theta2, k); }, 0.0, std::numbers::pi, opts);
  const double scale = 1.0 / (4.0 * std::numbers::pi);
  if (!r.converged) throw QuadratureError(-scale * r.value, scale * r.error);
  return -scale * r.value;
}

}  // namespace ybchain
