#pragma once

#include <span>
#include <vector>

#include "ybchain/observables.h"
#include "ybchain/types.h"

namespace ybchain {

/// Majorana operators per site n (1-based): A_n = a_n^† + a_n and
/// Bt_n = -i B_n = a_n - a_n^†. Bt is the combination the pair table is
/// written in; Bt^2 = -1.
enum class Flavor { A, Bt };

struct Majorana {
  int site = 1;
  Flavor flavor = Flavor::A;
  friend bool operator==(const Majorana&, const Majorana&) = default;
};

/// Ground-state expectation <x y> for every ordered pair of Majorana
/// operators, built from a CorrelatorSet. With cells m = ceil(site / 2):
///   <A A>, same sublattice       delta
///   <Bt Bt>, same sublattice     -delta
///   <A_p Bt_q>, same sublattice  F(|m_p - m_q|)
///   even 2n, odd 2m-1, d = m - n:
///   <A_2n A_2m-1>  = <Bt_2n Bt_2m-1> = i sin(phi) G(d)
///   <A_2n Bt_2m-1> = <Bt_2n A_2m-1>  = cos(phi) G(d)
/// Reversed orders of distinct operators pick up a minus sign.
class MajoranaPairTable {
 public:
  explicit MajoranaPairTable(CorrelatorSet correlators);

  /// Throws DistanceNotPrecomputed.
  cplx operator()(const Majorana& x, const Majorana& y) const;

  const CorrelatorSet& correlators() const { return correlators_; }

 private:
  CorrelatorSet correlators_;
  cplx sin_phi_;
  double cos_phi_;
};

/// Pfaffian of an antisymmetric matrix: recursive expansion up to 8x8,
/// Parlett-Reid skew tridiagonalization above. Odd dimension gives 0.
cplx pfaffian(const Eigen::MatrixXcd& antisymmetric);
cplx pfaffian_expansion(const Eigen::MatrixXcd& antisymmetric);
cplx pfaffian_parlett_reid(Eigen::MatrixXcd antisymmetric);

/// <o_1 o_2 ... o_2n> by Wick's theorem: Pfaffian of the ordered contractions
/// M_ij = <o_i o_j>, i < j. Throws InvalidArgument for an odd count.
cplx wick_contract(std::span<const Majorana> ops, const MajoranaPairTable& table);

/// Majorana string for sigma^a_i sigma^b_j (i < j, a, b in {x, y}) with its
/// scalar prefactor, after Jordan-Wigner strings are cancelled:
///   sigma^x_i ... = Bt_i (A Bt)_{i+1..j-1} Y_j
///   sigma^y_i ... = i A_i (A Bt)_{i+1..j-1} Y_j,   Y = A (x) or i Bt (y).
struct MajoranaString {
  cplx prefactor = 1.0;
  std::vector<Majorana> ops;
};

MajoranaString pauli_pair_string(int site_i, char a, int site_j, char b);

/// All entries of the two-site density matrix expansion for one pair kind,
/// each obtained by contracting its Majorana string. One-point functions are
/// <sigma^z_n> = <A_n Bt_n> = F(0).
struct SpinCorrelators {
  double xx = 0.0;
  double yy = 0.0;
  double xy = 0.0;
  double yx = 0.0;
  double zz = 0.0;
  double z_i = 0.0;
  double z_j = 0.0;
  double imag_residual = 0.0;  // largest imaginary part discarded
};

SpinCorrelators spin_correlators(const CorrelatorSet& correlators, PairKind kind);

/// The same entries from their closed forms in F and G.
SpinCorrelators spin_correlators_closed_form(const CorrelatorSet& correlators, PairKind kind);

/// Representative site pair (1-based) for a pair kind: (1,2), (2,3), (1,3).
std::pair<int, int> representative_sites(PairKind kind);

}  // namespace ybchain
