#include "ybchain/model.h"

#include <cmath>
#include <numbers>

#include "ybchain/errors.h"

namespace ybchain {

const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::odd_even: return "odd-even";
    case PairKind::even_odd: return "even-odd";
    case PairKind::odd_odd_distance2: return "odd-odd-distance-2";
  }
  return "?";
}

double canonical_theta(double theta) {
  if (!std::isfinite(theta)) throw InvalidArgument("theta must be finite");
  constexpr double pi = std::numbers::pi;
  if (theta >= 0.0 && theta <= pi) return theta;
  double r = std::fmod(theta, pi);
  if (r < 0.0) r += pi;
  return r;
}

double canonical_phi(double phi) {
  if (!std::isfinite(phi)) throw InvalidArgument("phi must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

ModelParams validate_params(double theta1, double theta2, double phi, int n_cells) {
  if (n_cells < 1) throw InvalidArgument("n_cells must be positive");
  if (n_cells % 2 == 0) throw InvalidArgument("n_cells must be odd");
  ModelParams p;
  p.theta1 = canonical_theta(theta1);
  p.theta2 = canonical_theta(theta2);
  p.phi = canonical_phi(phi);
  p.n_cells = n_cells;
  return p;
}

DimerEigensystem dimer_eigensystem(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const cplx phase = std::polar(1.0, -phi);

  DimerEigensystem d;
  d.energy_plus = std::cos(theta);
  d.energy_minus = -d.energy_plus;
  d.state_minus << c, 0.0, 0.0, s * phase;
  d.state_plus << s, 0.0, 0.0, -c * phase;
  return d;
}

double dimer_concurrence(double theta) { return std::abs(std::sin(theta)); }

}  // namespace ybchain
