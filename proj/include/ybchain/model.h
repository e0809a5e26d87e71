#pragma once

#include <array>

#include "ybchain/types.h"

namespace ybchain {

/// Physical parameters of the alternating chain. Energies are in units of
/// hbar*omega (energy_scale == 1). The chain has 2*n_cells sites.
struct ModelParams {
  double theta1 = 0.0;  // odd-even bonds, [0, pi]
  double theta2 = 0.0;  // even-odd bonds, [0, pi]
  double phi = 0.0;     // flux, [0, 2pi)
  int n_cells = 1;      // odd, >= 1
  static constexpr double energy_scale = 1.0;
};

/// Folds a coupling angle into [0, pi]. Values already in [0, pi] are kept
/// as-is; anything else is reduced modulo pi. The Hamiltonian depends on theta
/// only through cos^2(theta) and sin(2 theta)/2, so the fold is exact.
double canonical_theta(double theta);

/// Folds phi into [0, 2pi).
double canonical_phi(double phi);

/// Canonicalizes angles and checks n_cells (odd, >= 1). Throws InvalidArgument.
ModelParams validate_params(double theta1, double theta2, double phi, int n_cells);

/// Eigensystem of the two-body term restricted to span{|↑↑⟩, |↓↓⟩}.
/// state_minus carries energy -cos(theta) and is the dimer ground state for
/// cos(theta) > 0: cos(theta/2)|↑↑⟩ + sin(theta/2) e^{-i phi}|↓↓⟩.
struct DimerEigensystem {
  double energy_plus = 0.0;
  double energy_minus = 0.0;
  Vector4c state_plus;
  Vector4c state_minus;
};

DimerEigensystem dimer_eigensystem(double theta, double phi);

/// Concurrence of either dimer eigenstate, |sin theta|.
double dimer_concurrence(double theta);

}  // namespace ybchain
