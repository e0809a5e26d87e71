#include "ybchain/observables.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "ybchain/errors.h"
#include "ybchain/freefermion.h"

namespace ybchain {
namespace {

constexpr double kPi = std::numbers::pi;

// Delta vanishes only at theta1 = theta2 = pi/2, where every band closes.
void require_gapped(double theta1, double theta2) {
  const auto f = structure_factor(theta1, theta2, 0.0);
  if (f.delta <= kGaplessTolerance) throw GaplessPoint("theta1 = theta2 = pi/2");
}

double band_sign(Band band) { return band == Band::plus ? 1.0 : -1.0; }

QuadratureResult integrate_or_throw(const std::function<double(double)>& f,
                                    const QuadratureOptions& options, double scale) {
  auto r = integrate_adaptive(f, 0.0, kPi, options);
  if (!r.converged) throw QuadratureError(scale * r.value, std::abs(scale) * r.error);
  return r;
}

}  // namespace

double CorrelatorSet::F(int d) const {
  const auto it = f_values.find(std::abs(d));
  if (it == f_values.end()) throw DistanceNotPrecomputed(d);
  return it->second;
}

double CorrelatorSet::G(int d) const {
  const auto it = g_values.find(d);
  if (it == g_values.end()) throw DistanceNotPrecomputed(d);
  return it->second;
}

BerryPhaseResult berry_phase_finite(const ModelParams& params, Band band) {
  const auto grid = momentum_grid(params.n_cells);
  double sum = 0.0;
  for (double k : grid.angles) {
    const auto f = structure_factor(params.theta1, params.theta2, k);
    const double eps = std::hypot(std::abs(f.xi), f.delta);
    if (eps <= kGaplessTolerance) throw GaplessPoint("epsilon_k vanishes");
    sum += f.delta / eps;
  }
  BerryPhaseResult r;
  r.band = band;
  r.n_cells = params.n_cells;
  r.value = -band_sign(band) * kPi * sum / params.n_cells;
  return r;
}

BerryPhaseResult berry_phase_thermo(double theta1, double theta2, Band band,
                                    const QuadratureOptions& options) {
  require_gapped(theta1, theta2);
  const double sign = -band_sign(band);
  const auto q = integrate_or_throw(
      [&](double k) {
        const auto f = structure_factor(theta1, theta2, k);
        return f.delta / std::hypot(std::abs(f.xi), f.delta);
      },
      options, sign);
  BerryPhaseResult r;
  r.band = band;
  r.value = sign * q.value;
  r.quadrature_error_estimate = q.error;
  return r;
}

double berry_phase_thermo_derivative(double theta1, double theta2, int wrt,
                                     const QuadratureOptions& options) {
  if (wrt != 1 && wrt != 2) throw InvalidArgument("wrt must be 1 or 2");
  require_gapped(theta1, theta2);
  const double s1 = std::sin(2.0 * theta1), s2 = std::sin(2.0 * theta2);
  const double t = wrt == 1 ? theta1 : theta2;
  const double own = wrt == 1 ? s1 : s2;
  const double other = wrt == 1 ? s2 : s1;
  const double d_delta = -2.0 * std::sin(2.0 * t);
  const double cos2t = std::cos(2.0 * t);

  const auto q = integrate_or_throw(
      [&](double k) {
        const auto f = structure_factor(theta1, theta2, k);
        const double xi2 = std::norm(f.xi);
        const double eps = std::sqrt(xi2 + f.delta * f.delta);
        const double d_xi2 = 4.0 * cos2t * (own - other * std::cos(k));
        const double d_eps = (d_xi2 + 2.0 * f.delta * d_delta) / (2.0 * eps);
        return d_delta / eps - f.delta * d_eps / (eps * eps);
      },
      options, -1.0);
  return -q.value;
}

CorrelatorSet ff_functions(double theta1, double theta2, double phi, std::span<const int> distances,
                           const SumMode& mode) {
  CorrelatorSet cs;
  cs.theta1 = theta1;
  cs.theta2 = theta2;
  cs.phi = phi;
  cs.mode = mode;

  std::set<int> f_dist, g_dist;
  for (int d : distances) {
    f_dist.insert(std::abs(d));
    g_dist.insert(d);
  }

  if (const auto* lattice = std::get_if<Lattice>(&mode)) {
    const auto grid = momentum_grid(lattice->n_cells);
    std::vector<ModeData> modes;
    modes.reserve(grid.angles.size());
    for (double k : grid.angles) modes.push_back(bogoliubov_coefficients(theta1, theta2, k));
    const double inv_n = 1.0 / lattice->n_cells;

    // F(n - m) = (1/N) sum_k e^{i k (n-m)} (|u_bar|^2 - |v_bar|^2)
    for (int d : f_dist) {
      cplx sum = 0.0;
      for (const auto& m : modes)
        sum += std::polar(1.0, m.k_angle * d) * (std::norm(m.u_bar) - std::norm(m.v_bar));
      sum *= inv_n;
      cs.f_values[d] = sum.real();
      cs.imag_residual = std::max(cs.imag_residual, std::abs(sum.imag()));
    }
    // G(m - n) = (1/N) sum_k e^{-i k (n-m)} 2 u_k v_k
    for (int d : g_dist) {
      cplx sum = 0.0;
      for (const auto& m : modes) sum += std::polar(1.0, m.k_angle * d) * 2.0 * m.u * m.v;
      sum *= inv_n;
      cs.g_values[d] = sum.real();
      cs.imag_residual = std::max(cs.imag_residual, std::abs(sum.imag()));
    }
    return cs;
  }

  const auto& quad = std::get<Thermodynamic>(mode).quadrature;
  require_gapped(theta1, theta2);
  const double s1 = std::sin(2.0 * theta1), s2 = std::sin(2.0 * theta2);
  for (int d : f_dist) {
    const auto q = integrate_or_throw(
        [&](double k) {
          const auto f = structure_factor(theta1, theta2, k);
          return std::cos(k * d) * f.delta / std::hypot(std::abs(f.xi), f.delta);
        },
        quad, 1.0 / kPi);
    cs.f_values[d] = q.value / kPi;
    cs.quadrature_error = std::max(cs.quadrature_error, q.error / kPi);
  }
  for (int d : g_dist) {
    const auto q = integrate_or_throw(
        [&](double k) {
          const auto f = structure_factor(theta1, theta2, k);
          return (s2 * std::cos(k * (d - 1)) - s1 * std::cos(k * d)) /
                 std::hypot(std::abs(f.xi), f.delta);
        },
        quad, 1.0 / kPi);
    cs.g_values[d] = q.value / kPi;
    cs.quadrature_error = std::max(cs.quadrature_error, q.error / kPi);
  }
  return cs;
}

}  // namespace ybchain
