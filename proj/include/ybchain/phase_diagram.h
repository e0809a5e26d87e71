#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ybchain/grid.h"
#include "ybchain/observables.h"

namespace ybchain {

enum class Quantity {
  berry,
  dberry_dtheta2,
  d2berry,
  ce1,
  co1,
  c2,
  dce1_dtheta2,
  d2ce1,
  f0,
  g0,
  g1,
  energy_density,
};

/// CLI spelling: berry, dberry-dtheta2, d2berry, Ce1, Co1, C2, dCe1-dtheta2,
/// d2Ce1, F0, G0, G1, energy-density.
const char* to_string(Quantity q);
std::optional<Quantity> parse_quantity(const std::string& name);
const std::vector<Quantity>& all_quantities();

struct ScanOptions {
  double phi = 0.0;
  SumMode mode = Thermodynamic{};
  DerivativeOptions derivative{};
  /// Cells within this distance of (pi/2, pi/2) are marked invalid.
  double excluded_radius = 1e-3;
};

/// Value at one point, empty at gapless points or on quadrature failure.
/// Derivative quantities are evaluated by finite differences.
std::optional<double> evaluate_quantity(Quantity q, double theta1, double theta2,
                                        const ScanOptions& options = {});

/// Evaluates a quantity on a grid, cells in parallel.
ScanGrid phase_diagram(Quantity q, const GridSpec& spec, const ScanOptions& options = {});

/// Single-threaded reference for phase_diagram.
ScanGrid phase_diagram_serial(Quantity q, const GridSpec& spec, const ScanOptions& options = {});

/// Marks cells whose gradient magnitude exceeds factor * (median gradient
/// over valid cells). Used to locate the border between separable and
/// entangled regions where the concurrence has a kink.
std::vector<bool> flag_steep_cells(const ScanGrid& grid, double factor = 10.0);

}  // namespace ybchain
