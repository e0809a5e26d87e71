#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "test_support.h"
#include "ybchain/errors.h"
#include "ybchain/model.h"

namespace {

using namespace ybchain;
constexpr double pi = std::numbers::pi;

/// Dimer term restricted to a single bond, built from Pauli matrices.
Eigen::Matrix4cd dimer_matrix(double t, double phi) {
  using ybtest::kron2;
  using ybtest::pauli;
  const Eigen::Matrix4cd sz = 0.5 * (kron2(pauli('z'), pauli('1')) + kron2(pauli('1'), pauli('z')));
  const Eigen::Matrix4cd pp = kron2(pauli('+'), pauli('+'));
  const Eigen::Matrix4cd mm = kron2(pauli('-'), pauli('-'));
  const double c = std::cos(t), s = std::sin(t);
  return -c * (c * sz + s * (std::polar(1.0, phi) * pp + std::polar(1.0, -phi) * mm));
}

TEST(CanonicalTheta, KeepsClosedInterval) {
  EXPECT_EQ(canonical_theta(0.0), 0.0);
  EXPECT_EQ(canonical_theta(pi), pi);
  EXPECT_EQ(canonical_theta(1.2), 1.2);
}

TEST(CanonicalTheta, FoldsModuloPi) {
  EXPECT_NEAR(canonical_theta(-0.3), pi - 0.3, 1e-15);
  EXPECT_NEAR(canonical_theta(pi + 0.4), 0.4, 1e-15);
  EXPECT_NEAR(canonical_theta(7.0), 7.0 - 2 * pi, 1e-14);
}

TEST(CanonicalTheta, FoldLeavesHamiltonianUnchanged) {
  for (double t : {-2.0, -0.3, 3.5, 5.0}) {
    const double f = canonical_theta(t);
    EXPECT_LT((dimer_matrix(t, 0.7) - dimer_matrix(f, 0.7)).cwiseAbs().maxCoeff(), 1e-14) << t;
  }
}

TEST(CanonicalPhi, FoldsIntoHalfOpenPeriod) {
  EXPECT_NEAR(canonical_phi(7.0), 7.0 - 2 * pi, 1e-15);
  EXPECT_NEAR(canonical_phi(-1.0), 2 * pi - 1.0, 1e-15);
  EXPECT_EQ(canonical_phi(0.0), 0.0);
  const double folded = canonical_phi(2 * pi);
  EXPECT_GE(folded, 0.0);
  EXPECT_LT(folded, 2 * pi);
}

TEST(ValidateParams, RejectsEvenAndNonPositiveCells) {
  EXPECT_THROW(validate_params(0.1, 0.2, 0.0, 4), InvalidArgument);
  EXPECT_THROW(validate_params(0.1, 0.2, 0.0, 0), InvalidArgument);
  EXPECT_THROW(validate_params(0.1, 0.2, 0.0, -3), InvalidArgument);
}

TEST(ValidateParams, RejectsNonFiniteAngles) {
  EXPECT_THROW(validate_params(NAN, 0.2, 0.0, 3), InvalidArgument);
  EXPECT_THROW(validate_params(0.1, INFINITY, 0.0, 3), InvalidArgument);
  EXPECT_THROW(validate_params(0.1, 0.2, NAN, 3), InvalidArgument);
}

TEST(ValidateParams, CanonicalizesAngles) {
  const auto p = validate_params(-0.3, 1.0, -1.0, 5);
  EXPECT_NEAR(p.theta1, pi - 0.3, 1e-15);
  EXPECT_EQ(p.theta2, 1.0);
  EXPECT_NEAR(p.phi, 2 * pi - 1.0, 1e-15);
  EXPECT_EQ(p.n_cells, 5);
}

TEST(DimerEigensystem, EigenpairsOfTheBondTerm) {
  for (double t : {0.0, 0.4, 1.0, pi / 2, 2.2, pi}) {
    for (double phi : {0.0, 1.3, 4.0}) {
      const auto h = dimer_matrix(t, phi);
      const auto es = dimer_eigensystem(t, phi);
      EXPECT_NEAR(es.energy_minus, -std::cos(t), 1e-15);
      EXPECT_NEAR(es.energy_plus, std::cos(t), 1e-15);
      EXPECT_NEAR(es.state_minus.norm(), 1.0, 1e-15);
      EXPECT_NEAR(es.state_plus.norm(), 1.0, 1e-15);
      EXPECT_LT((h * es.state_minus - es.energy_minus * es.state_minus).norm(), 1e-14);
      EXPECT_LT((h * es.state_plus - es.energy_plus * es.state_plus).norm(), 1e-14);
      EXPECT_LT(std::abs(es.state_minus.dot(es.state_plus)), 1e-15);
    }
  }
}

TEST(DimerEigensystem, SpectrumIsPlusMinusCosAndTwoZeros) {
  for (double t : {0.3, 1.1, 2.7}) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(dimer_matrix(t, 0.9));
    Eigen::Vector4d expected(-std::abs(std::cos(t)), 0.0, 0.0, std::abs(std::cos(t)));
    EXPECT_LT((es.eigenvalues() - expected).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(DimerEigensystem, PolarizedLimitIsAllUp) {
  const auto es = dimer_eigensystem(0.0, 0.0);
  EXPECT_NEAR(std::abs(es.state_minus(0)), 1.0, 1e-15);
  EXPECT_NEAR(es.state_minus.tail<3>().norm(), 0.0, 1e-15);
  EXPECT_NEAR(es.energy_minus, -1.0, 1e-15);
}

TEST(DimerConcurrence, MatchesPureStateFormula) {
  for (double t : {0.0, 0.2, pi / 3, pi / 2, 2.0, pi}) {
    const auto es = dimer_eigensystem(t, 0.6);
    EXPECT_NEAR(dimer_concurrence(t), std::abs(std::sin(t)), 1e-15);
    EXPECT_NEAR(ybtest::pure_concurrence(es.state_minus), dimer_concurrence(t), 1e-14);
    EXPECT_NEAR(ybtest::pure_concurrence(es.state_plus), dimer_concurrence(t), 1e-14);
  }
}

}  // namespace
