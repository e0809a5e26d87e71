#pragma once

#include <vector>

#include "ybchain/model.h"
#include "ybchain/types.h"

namespace ybchain {

inline constexpr double kGaplessTolerance = 1e-14;

/// Momenta k = -M..M, M = (N-1)/2, with angles 2 pi k / N.
struct MomentumGrid {
  int n_cells = 1;
  std::vector<int> k_values;
  std::vector<double> angles;
};

MomentumGrid momentum_grid(int n_cells);

/// Pairing amplitude xi and the diagonal term delta for one momentum.
struct StructureFactor {
  cplx xi;
  double delta = 0.0;
};

/// xi = sin(2 theta2) e^{i k} - sin(2 theta1), delta = cos(2 theta1) + cos(2 theta2) + 2.
/// delta is evaluated as 2(cos^2 theta1 + cos^2 theta2), which is the same
/// quantity without the cancellation near theta1 = theta2 = pi/2.
StructureFactor structure_factor(double theta1, double theta2, double k_angle);

/// Positive quasiparticle band sqrt(|xi|^2 + delta^2).
double dispersion(double theta1, double theta2, double k_angle);

/// Mode data for one momentum on the positive band. The same routine serves
/// lattice momenta 2 pi k / N and the continuum variable in [0, pi].
struct ModeData {
  double k_angle = 0.0;
  cplx xi;
  double delta = 0.0;
  double epsilon = 0.0;
  cplx u;
  cplx v;
  cplx u_bar;  // real, >= 0
  cplx v_bar;
};

/// Throws GaplessPoint when epsilon <= gapless_tolerance.
ModeData bogoliubov_coefficients(double theta1, double theta2, double k_angle,
                                 double gapless_tolerance = kGaplessTolerance);

/// |u_bar u* + v_bar v*| for the coefficients as constructed. This is a
/// diagnostic: with u = -u_bar and v = conj(v_bar) it equals |v_bar^2 - u_bar^2|,
/// which is generally nonzero.
double bogoliubov_cross_residual(const ModeData& mode);

/// Vacuum energy of the positive-band quasiparticles, -1/2 sum_k epsilon_k.
double ground_energy(const ModelParams& params);

/// Thermodynamic ground-state energy per site, -(1/(4 pi)) int_0^pi epsilon.
/// Throws QuadratureError if the tolerance is not met.
double ground_energy_density_thermo(double theta1, double theta2, double abs_tol = 1e-12);

}  // namespace ybchain
