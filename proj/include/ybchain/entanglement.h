#pragma once

#include <array>
#include <optional>

#include "ybchain/observables.h"
#include "ybchain/types.h"
#include "ybchain/wick.h"

namespace ybchain {

struct TwoSiteState {
  Matrix4c matrix = Matrix4c::Zero();
  std::optional<PairKind> pair_kind;  // empty for arbitrary site pairs
  double phi = 0.0;
};

/// rho = (I + <z_i> Z⊗1 + <z_j> 1⊗Z + <zz> Z⊗Z + sum_{X,Y in x,y} <XY> X⊗Y) / 4.
/// Throws NotPositiveSemidefinite if an eigenvalue is below -1e-8.
TwoSiteState two_site_rho(const SpinCorrelators& c, PairKind kind, double phi);

struct ConcurrenceResult {
  double value = 0.0;               // max(raw, 0)
  std::array<double, 4> r_roots{};  // descending
  double raw = 0.0;                 // r1 - r2 - r3 - r4
};

/// Wootters concurrence. The r_i, square roots of the eigenvalues of
/// rho * (σy⊗σy rho* σy⊗σy), are taken as singular values of sqrt(rho) sqrt(rho~).
/// Eigenvalues of rho in [-1e-10, 0) are floored to zero; anything lower
/// throws NotPositiveSemidefinite.
ConcurrenceResult concurrence(const Matrix4c& rho);
inline ConcurrenceResult concurrence(const TwoSiteState& s) { return concurrence(s.matrix); }

/// C_o(1) = max{0, |G(0)| - |F(0)^2 + G(0)^2 - 1| / 2} for odd_even, and the
/// same with G(1) for even_odd. Throws InvalidArgument for odd_odd_distance2.
double concurrence_closed_form(const CorrelatorSet& correlators, PairKind kind);

/// Full pipeline: Wick correlators -> two-site rho -> Wootters.
ConcurrenceResult concurrence_pipeline(const CorrelatorSet& correlators, PairKind kind);

/// Next-nearest odd-odd pair (2m-1, 2m+1); needs F(0), F(1), G(0), G(1).
ConcurrenceResult concurrence_distance2(const CorrelatorSet& correlators);

}  // namespace ybchain
