#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ybchain {

using cplx = std::complex<double>;

/// Two-site basis, fixed globally: |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.
/// Index = 2*b_i + b_j with b = 1 for a down spin.
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

/// Nearest and next-nearest pairs distinguished by the alternating bond pattern.
///   odd_even          sites (2m-1, 2m),   joined by a theta1 bond
///   even_odd          sites (2m, 2m+1),   joined by a theta2 bond
///   odd_odd_distance2 sites (2m-1, 2m+1)
enum class PairKind { odd_even, even_odd, odd_odd_distance2 };

const char* to_string(PairKind kind);

}  // namespace ybchain
