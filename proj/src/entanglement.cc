#include "ybchain/entanglement.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ybchain/errors.h"

namespace ybchain {
namespace {

constexpr double kRhoFloor = 1e-10;
constexpr double kPsdTolerance = 1e-8;

Eigen::Matrix2cd pauli(char which) {
  Eigen::Matrix2cd m;
  switch (which) {
    case 'x': m << 0.0, 1.0, 1.0, 0.0; break;
    case 'y': m << 0.0, cplx(0, -1), cplx(0, 1), 0.0; break;
    case 'z': m << 1.0, 0.0, 0.0, -1.0; break;
    default: m.setIdentity(); break;
  }
  return m;
}

Matrix4c kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

const Matrix4c& sigma_yy() {
  static const Matrix4c m = kron(pauli('y'), pauli('y'));
  return m;
}

}  // namespace

TwoSiteState two_site_rho(const SpinCorrelators& c, PairKind kind, double phi) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd x = pauli('x'), y = pauli('y'), z = pauli('z');
  Matrix4c rho = Matrix4c::Identity();
  rho += c.z_i * kron(z, id) + c.z_j * kron(id, z) + c.zz * kron(z, z);
  rho += c.xx * kron(x, x) + c.xy * kron(x, y) + c.yx * kron(y, x) + c.yy * kron(y, y);
  rho *= 0.25;

  const Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho, Eigen::EigenvaluesOnly);
  const double lowest = es.eigenvalues()(0);
  if (lowest < -kPsdTolerance)
    throw NotPositiveSemidefinite("two-site density matrix is not positive semidefinite", lowest);

  TwoSiteState s;
  s.matrix = rho;
  s.pair_kind = kind;
  s.phi = phi;
  return s;
}

ConcurrenceResult concurrence(const Matrix4c& rho) {
  // Hermitian part only; the input is Hermitian up to rounding.
  const Matrix4c h = 0.5 * (rho + rho.adjoint());
  const Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
  Eigen::Vector4d lambda = es.eigenvalues();
  if (lambda(0) < -kRhoFloor)
    throw NotPositiveSemidefinite("density matrix eigenvalue below floor", lambda(0));
  lambda = lambda.cwiseMax(0.0);

  const Matrix4c sqrt_rho =
      es.eigenvectors() * lambda.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  const Matrix4c sqrt_flipped = sigma_yy() * sqrt_rho.conjugate() * sigma_yy();

  const Eigen::JacobiSVD<Matrix4c> svd(sqrt_rho * sqrt_flipped);
  const Eigen::Vector4d r = svd.singularValues();

  ConcurrenceResult out;
  for (int i = 0; i < 4; ++i) out.r_roots[i] = r(i);
  std::sort(out.r_roots.begin(), out.r_roots.end(), std::greater<>());
  out.raw = out.r_roots[0] - out.r_roots[1] - out.r_roots[2] - out.r_roots[3];
  out.value = std::max(out.raw, 0.0);
  return out;
}

double concurrence_closed_form(const CorrelatorSet& cs, PairKind kind) {
  if (kind == PairKind::odd_odd_distance2)
    throw InvalidArgument("no closed form for the distance-2 pair");
  const double f0 = cs.F(0);
  const double g = kind == PairKind::odd_even ? cs.G(0) : cs.G(1);
  return std::max(0.0, std::abs(g) - 0.5 * std::abs(f0 * f0 + g * g - 1.0));
}

ConcurrenceResult concurrence_pipeline(const CorrelatorSet& cs, PairKind kind) {
  return concurrence(two_site_rho(spin_correlators(cs, kind), kind, cs.phi));
}

ConcurrenceResult concurrence_distance2(const CorrelatorSet& cs) {
  return concurrence_pipeline(cs, PairKind::odd_odd_distance2);
}

}  // namespace ybchain
