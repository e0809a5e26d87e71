#include "ybchain/wick.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ybchain/errors.h"

namespace ybchain {
namespace {

constexpr cplx kI{0.0, 1.0};

int cell_of(int site) { return (site + 1) / 2; }
bool is_odd(int site) { return site % 2 != 0; }

cplx pfaffian_expansion_rec(const Eigen::MatrixXcd& m, std::vector<int>& idx) {
  if (idx.empty()) return 1.0;
  const int first = idx.front();
  cplx total = 0.0;
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const cplx a = m(first, idx[j]);
    if (a == cplx{0.0}) continue;
    std::vector<int> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t l = 1; l < idx.size(); ++l)
      if (l != j) rest.push_back(idx[l]);
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    total += sign * a * pfaffian_expansion_rec(m, rest);
  }
  return total;
}

}  // namespace

MajoranaPairTable::MajoranaPairTable(CorrelatorSet correlators)
    : correlators_(std::move(correlators)),
      sin_phi_(kI * std::sin(correlators_.phi)),
      cos_phi_(std::cos(correlators_.phi)) {}

cplx MajoranaPairTable::operator()(const Majorana& x, const Majorana& y) const {
  if (x == y) return x.flavor == Flavor::A ? 1.0 : -1.0;

  if (is_odd(x.site) == is_odd(y.site)) {
    if (x.flavor == y.flavor) return 0.0;
    const double f = correlators_.F(cell_of(x.site) - cell_of(y.site));
    return x.flavor == Flavor::A ? f : -f;
  }

  const bool even_first = !is_odd(x.site);
  const Majorana& even = even_first ? x : y;
  const Majorana& odd = even_first ? y : x;
  const double g = correlators_.G(cell_of(odd.site) - cell_of(even.site));
  const cplx value = (even.flavor == odd.flavor) ? sin_phi_ * g : cplx{cos_phi_ * g};
  return even_first ? value : -value;
}

cplx pfaffian_expansion(const Eigen::MatrixXcd& antisymmetric) {
  const auto n = antisymmetric.rows();
  if (n % 2 != 0) return 0.0;
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  return pfaffian_expansion_rec(antisymmetric, idx);
}

cplx pfaffian_parlett_reid(Eigen::MatrixXcd a) {
  const auto n = a.rows();
  if (n % 2 != 0) return 0.0;
  cplx result = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    // Pivot the largest entry of column k below the diagonal into row k+1.
    Eigen::Index kp = k + 1;
    for (Eigen::Index i = k + 2; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(kp, k))) kp = i;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      result = -result;
    }
    const cplx pivot = a(k, k + 1);
    if (pivot == cplx{0.0}) return 0.0;
    result *= pivot;
    if (k + 2 < n) {
      const Eigen::Index rest = n - k - 2;
      const Eigen::VectorXcd tau = a.row(k).tail(rest).transpose() / pivot;
      const Eigen::VectorXcd col = a.col(k + 1).tail(rest);
      // Gauss transformation that zeroes row/column k beyond k+1.
      a.bottomRightCorner(rest, rest) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return result;
}

cplx pfaffian(const Eigen::MatrixXcd& antisymmetric) {
  if (antisymmetric.rows() <= 8) return pfaffian_expansion(antisymmetric);
  return pfaffian_parlett_reid(antisymmetric);
}

cplx wick_contract(std::span<const Majorana> ops, const MajoranaPairTable& table) {
  const auto n = static_cast<Eigen::Index>(ops.size());
  if (n % 2 != 0) throw InvalidArgument("wick_contract needs an even number of operators");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      m(i, j) = table(ops[i], ops[j]);
      m(j, i) = -m(i, j);
    }
  return pfaffian(m);
}

MajoranaString pauli_pair_string(int site_i, char a, int site_j, char b) {
  if (site_i >= site_j) throw InvalidArgument("pauli_pair_string needs site_i < site_j");
  if ((a != 'x' && a != 'y') || (b != 'x' && b != 'y'))
    throw InvalidArgument("pauli_pair_string takes x or y");
  MajoranaString s;
  if (a == 'x') {
    s.ops.push_back({site_i, Flavor::Bt});
  } else {
    s.prefactor *= kI;
    s.ops.push_back({site_i, Flavor::A});
  }
  for (int l = site_i + 1; l < site_j; ++l) {
    s.ops.push_back({l, Flavor::A});
    s.ops.push_back({l, Flavor::Bt});
  }
  if (b == 'x') {
    s.ops.push_back({site_j, Flavor::A});
  } else {
    s.prefactor *= kI;
    s.ops.push_back({site_j, Flavor::Bt});
  }
  return s;
}

std::pair<int, int> representative_sites(PairKind kind) {
  switch (kind) {
    case PairKind::odd_even: return {1, 2};
    case PairKind::even_odd: return {2, 3};
    case PairKind::odd_odd_distance2: return {1, 3};
  }
  return {1, 2};
}

SpinCorrelators spin_correlators(const CorrelatorSet& correlators, PairKind kind) {
  const MajoranaPairTable table(correlators);
  const auto [i, j] = representative_sites(kind);
  SpinCorrelators c;

  auto real_part = [&c](cplx v) {
    c.imag_residual = std::max(c.imag_residual, std::abs(v.imag()));
    return v.real();
  };
  auto pair = [&](char a, char b) {
    const auto s = pauli_pair_string(i, a, j, b);
    return real_part(s.prefactor * wick_contract(s.ops, table));
  };

  c.xx = pair('x', 'x');
  c.yy = pair('y', 'y');
  c.xy = pair('x', 'y');
  c.yx = pair('y', 'x');
  const Majorana zz[] = {{i, Flavor::A}, {i, Flavor::Bt}, {j, Flavor::A}, {j, Flavor::Bt}};
  c.zz = real_part(wick_contract(zz, table));
  const Majorana zi[] = {{i, Flavor::A}, {i, Flavor::Bt}};
  const Majorana zj[] = {{j, Flavor::A}, {j, Flavor::Bt}};
  c.z_i = real_part(wick_contract(zi, table));
  c.z_j = real_part(wick_contract(zj, table));
  return c;
}

SpinCorrelators spin_correlators_closed_form(const CorrelatorSet& cs, PairKind kind) {
  const double cphi = std::cos(cs.phi), sphi = std::sin(cs.phi);
  const double f0 = cs.F(0);
  SpinCorrelators c;
  c.z_i = c.z_j = f0;
  switch (kind) {
    case PairKind::odd_even: {
      const double g0 = cs.G(0);
      c.xx = -cphi * g0;
      c.yy = cphi * g0;
      c.xy = c.yx = sphi * g0;
      c.zz = f0 * f0 + g0 * g0;
      break;
    }
    case PairKind::even_odd: {
      const double g1 = cs.G(1);
      c.xx = cphi * g1;
      c.yy = -cphi * g1;
      c.xy = c.yx = -sphi * g1;
      c.zz = f0 * f0 + g1 * g1;
      break;
    }
    case PairKind::odd_odd_distance2: {
      const double f1 = cs.F(1), g0 = cs.G(0), g1 = cs.G(1);
      c.xx = c.yy = -g0 * g1 - f0 * f1;
      c.xy = c.yx = 0.0;
      c.zz = f0 * f0 - f1 * f1;
      break;
    }
  }
  return c;
}

}  // namespace ybchain
