#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ybchain {

/// Rectangular grid over (theta1, theta2); both axes include their endpoints.
struct GridSpec {
  double theta1_min = 0.0;
  double theta1_max = 0.0;
  double theta2_min = 0.0;
  double theta2_max = 0.0;
  int n_theta1 = 2;
  int n_theta2 = 2;

  std::vector<double> theta1_axis() const;
  std::vector<double> theta2_axis() const;
};

/// Per-cell scan results. values[i1 * n2 + i2] belongs to
/// (theta1_axis[i1], theta2_axis[i2]); an empty optional is an invalid cell.
struct ScanGrid {
  std::vector<double> theta1_axis;
  std::vector<double> theta2_axis;
  std::vector<std::optional<double>> values;
  std::string quantity_label;
  std::map<std::string, std::string> metadata;

  std::size_t n1() const { return theta1_axis.size(); }
  std::size_t n2() const { return theta2_axis.size(); }
  const std::optional<double>& at(std::size_t i1, std::size_t i2) const {
    return values[i1 * theta2_axis.size() + i2];
  }
  std::optional<double>& at(std::size_t i1, std::size_t i2) {
    return values[i1 * theta2_axis.size() + i2];
  }
  std::size_t valid_count() const;
};

ScanGrid make_grid(const GridSpec& spec, std::string label);

/// A scalar quantity over (theta1, theta2); empty where it is undefined.
using ScalarField = std::function<std::optional<double>(double, double)>;

enum class DerivativeOrder { d_theta1, d_theta2, mixed };

struct DerivativeOptions {
  double step = 1e-4;
  bool richardson = false;
};

/// Central differences at each grid cell. The mixed derivative uses the
/// four-point cross stencil. A cell is invalid if any stencil evaluation is.
/// Cells are evaluated in parallel; the result does not depend on the order.
ScanGrid derivative_map(const ScalarField& field, DerivativeOrder order, const GridSpec& spec,
                        const DerivativeOptions& options = {});

/// Single-threaded reference for derivative_map.
ScanGrid derivative_map_serial(const ScalarField& field, DerivativeOrder order,
                               const GridSpec& spec, const DerivativeOptions& options = {});

/// The stencil at one point.
std::optional<double> finite_difference(const ScalarField& field, DerivativeOrder order,
                                        double theta1, double theta2,
                                        const DerivativeOptions& options = {});

}  // namespace ybchain
