#pragma once

#include <map>
#include <optional>
#include <span>
#include <variant>

#include "ybchain/model.h"
#include "ybchain/quadrature.h"

namespace ybchain {

enum class Band { plus, minus };

/// Momentum sums over the finite grid of n_cells momenta.
struct Lattice {
  int n_cells = 1;
};

/// N -> infinity: (1/N) sum_k -> (1/pi) int_0^pi.
struct Thermodynamic {
  QuadratureOptions quadrature{};
};

using SumMode = std::variant<Lattice, Thermodynamic>;

struct BerryPhaseResult {
  double value = 0.0;
  Band band = Band::plus;
  std::optional<int> n_cells;  // empty in the thermodynamic limit
  double quadrature_error_estimate = 0.0;
};

/// -(pi/N) sum_k delta/epsilon_k on the + band; the - band is its negative.
/// Throws GaplessPoint if any epsilon_k is at or below the gapless tolerance.
BerryPhaseResult berry_phase_finite(const ModelParams& params, Band band);

/// -int_0^pi delta/epsilon on the + band. Throws GaplessPoint or QuadratureError.
BerryPhaseResult berry_phase_thermo(double theta1, double theta2, Band band,
                                    const QuadratureOptions& options = {});

/// Derivative of the thermodynamic + band Berry phase with respect to theta1
/// (wrt == 1) or theta2 (wrt == 2), differentiated under the integral sign.
double berry_phase_thermo_derivative(double theta1, double theta2, int wrt,
                                     const QuadratureOptions& options = {});

/// F(d) and G(d) at a set of distances, plus the flux that enters the
/// Majorana pair table.
///   F(|d|) = (1/N) sum_k cos(k d) delta/epsilon_k
///   G(d)   = (1/N) sum_k [sin 2theta2 cos(k(d-1)) - sin 2theta1 cos(k d)] / epsilon_k
/// G uses the (m - n) argument convention of the pair table below.
struct CorrelatorSet {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double phi = 0.0;
  std::map<int, double> f_values;  // keyed by d >= 0
  std::map<int, double> g_values;  // keyed by signed d
  SumMode mode = Thermodynamic{};
  double imag_residual = 0.0;     // lattice: largest discarded imaginary part
  double quadrature_error = 0.0;  // thermodynamic: largest error estimate

  /// Throws DistanceNotPrecomputed.
  double F(int d) const;
  double G(int d) const;
};

/// For every d in `distances`, computes F(|d|) and G(d). Lattice sums are
/// formed from the complex Bogoliubov coefficients and must come out real;
/// the thermodynamic limit integrates the real forms.
/// Throws GaplessPoint, QuadratureError.
CorrelatorSet ff_functions(double theta1, double theta2, double phi, std::span<const int> distances,
                           const SumMode& mode);

}  // namespace ybchain
