#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ybchain/grid.h"

namespace ybchain {

/// CSV with header `theta1,theta2,value,valid`, CRLF line ends, one row per
/// cell in row-major order. Numbers use 17 significant digits so a read
/// reproduces the doubles exactly; invalid cells have an empty value field.
void write_csv(std::ostream& out, const ScanGrid& grid);
ScanGrid read_csv(std::istream& in);

/// Heatmap with a linear color scale, a legend bar, and axis ticks at
/// multiples of pi/4. Invalid cells are drawn grey.
void write_svg(std::ostream& out, const ScanGrid& grid);

/// Formats a double with 17 significant digits.
std::string format_double(double x);

/// Parses "1.2", "pi", "pi/2", "3pi/4", "-0.5*pi". Throws InvalidArgument.
double parse_angle(const std::string& text);

/// Parses "a:b" into two angles. Throws InvalidArgument.
std::pair<double, double> parse_angle_range(const std::string& text);

}  // namespace ybchain
