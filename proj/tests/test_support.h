#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

/// Independent brute-force references for the unit tests. Nothing here calls
/// into the library.
namespace ybtest {

using cplx = std::complex<double>;
using Eigen::Matrix2cd;
using Eigen::MatrixXcd;

inline const cplx kI{0.0, 1.0};

/// Spin-1/2 matrices in the (up, down) basis.
inline Matrix2cd pauli(char which) {
  Matrix2cd m;
  switch (which) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, -kI, kI, 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    case '+': m << 0, 1, 0, 0; break;  // sigma^+ = |up><down|
    case '-': m << 0, 0, 1, 0; break;
    default: m = Matrix2cd::Identity();
  }
  return m;
}

/// Matrix of a single-site operator on an L-site chain. Bit (site - 1) of the
/// basis index is set for a down spin.
inline MatrixXcd site_op(const Matrix2cd& local, int site, int n_sites) {
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  const Eigen::Index bit = Eigen::Index{1} << (site - 1);
  MatrixXcd m = MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const int b = (col & bit) ? 1 : 0;
    for (int b2 = 0; b2 < 2; ++b2) {
      const Eigen::Index row = b2 ? (col | bit) : (col & ~bit);
      m(row, col) += local(b2, b);
    }
  }
  return m;
}

/// Two-site operator in the basis index 2 b_i + b_j.
inline Eigen::Matrix4cd kron2(const Matrix2cd& a, const Matrix2cd& b) {
  Eigen::Matrix4cd m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = a(r >> 1, c >> 1) * b(r & 1, c & 1);
  return m;
}

/// Two-site term -cos t [cos t (S^z_a + S^z_b) + sin t (e^{i phi} S^+_a S^+_b + h.c.)].
inline MatrixXcd bond_term(double t, double phi, int a, int b, int n_sites) {
  const MatrixXcd sz_a = 0.5 * site_op(pauli('z'), a, n_sites);
  const MatrixXcd sz_b = 0.5 * site_op(pauli('z'), b, n_sites);
  const MatrixXcd pp = site_op(pauli('+'), a, n_sites) * site_op(pauli('+'), b, n_sites);
  const MatrixXcd mm = site_op(pauli('-'), a, n_sites) * site_op(pauli('-'), b, n_sites);
  const double c = std::cos(t), s = std::sin(t);
  return -c * (c * (sz_a + sz_b) + s * (std::polar(1.0, phi) * pp + std::polar(1.0, -phi) * mm));
}

/// Periodic chain of 2N sites from Kronecker products.
inline MatrixXcd chain_hamiltonian(double theta1, double theta2, double phi, int n_cells) {
  const int sites = 2 * n_cells;
  MatrixXcd h = MatrixXcd::Zero(Eigen::Index{1} << sites, Eigen::Index{1} << sites);
  for (int s = 1; s <= sites; ++s) {
    if (sites == 2 && s == 2) break;
    h += bond_term(s % 2 == 1 ? theta1 : theta2, phi, s, s % sites + 1, sites);
  }
  return h;
}

/// Pure two-qubit concurrence |<psi| sigma_y sigma_y |psi*>|.
inline double pure_concurrence(const Eigen::Vector4cd& psi) {
  Eigen::Matrix4cd yy;
  const Matrix2cd y = pauli('y');
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) yy(r, c) = y(r >> 1, c >> 1) * y(r & 1, c & 1);
  return std::abs(psi.dot(yy * psi.conjugate()));
}

/// Pfaffian from its definition: sum over permutations, divided by 2^n n!.
inline cplx pfaffian_by_permutations(const MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  if (n % 2) return 0.0;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  cplx sum = 0.0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    cplx term = (inversions % 2) ? -1.0 : 1.0;
    for (int i = 0; i < n; i += 2) term *= a(p[i], p[i + 1]);
    sum += term;
  } while (std::next_permutation(p.begin(), p.end()));
  double norm = 1.0;
  for (int k = 1; k <= n / 2; ++k) norm *= 2.0 * k;
  return sum / norm;
}

inline MatrixXcd random_antisymmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixXcd a = MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = cplx(g(rng), g(rng));
      a(j, i) = -a(i, j);
    }
  return a;
}

}  // namespace ybtest
