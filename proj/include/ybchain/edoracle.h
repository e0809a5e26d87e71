#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ybchain/entanglement.h"
#include "ybchain/model.h"
#include "ybchain/types.h"

namespace ybchain {

inline constexpr int kMaxLanczosSites = 16;
inline constexpr int kMaxDenseSites = 10;
inline constexpr int kMaxRdmSites = 12;

/// Periodic chain of 2N spins. Bit (s - 1) of a basis index is site s
/// (1-based), set for a down spin. Bonds (2n-1, 2n) carry theta1, bonds
/// (2n, 2n+1) carry theta2, including the wrap bond (2N, 1). Each bond
/// contributes -cos t [cos t (S^z_a + S^z_b) + sin t (e^{i phi} S^+_a S^+_b + h.c.)].
class SpinHamiltonian {
 public:
  SpinHamiltonian(double theta1, double theta2, double phi, int n_cells);

  int n_cells() const { return n_cells_; }
  int n_sites() const { return 2 * n_cells_; }
  std::size_t dim() const { return std::size_t{1} << n_sites(); }
  double theta1() const { return theta1_; }
  double theta2() const { return theta2_; }
  double phi() const { return phi_; }

  /// y = H x, rows in parallel (gather form).
  void apply(std::span<const cplx> x, std::span<cplx> y) const;
  /// Single-threaded reference (scatter form).
  void apply_serial(std::span<const cplx> x, std::span<cplx> y) const;

  Eigen::VectorXcd operator*(const Eigen::VectorXcd& x) const;

  /// Materialized matrix; requires 2N <= kMaxDenseSites.
  Eigen::MatrixXcd dense() const;

 private:
  struct Bond {
    std::uint64_t mask;  // both site bits
    cplx raise;          // amplitude of |↓↓⟩ -> |↑↑⟩
    cplx lower;          // amplitude of |↑↑⟩ -> |↓↓⟩
  };

  double theta1_;
  double theta2_;
  double phi_;
  int n_cells_;
  std::vector<Bond> bonds_;
  std::vector<double> diagonal_;
};

/// Throws InvalidArgument when 2 * n_cells exceeds kMaxLanczosSites. n_cells
/// may be even here; only the momentum-space solution needs it odd.
SpinHamiltonian build_hamiltonian(const ModelParams& params, int n_cells);

struct LanczosOptions {
  int krylov_dim = 60;
  int max_restarts = 100;
  double tolerance = 1e-11;  // residual relative to max(1, |E|)
  double degeneracy_tolerance = 1e-8;
  std::uint64_t seed = 20240901;
};

struct GroundStateSolution {
  double energy = 0.0;
  Eigen::VectorXcd vector;
  double residual = 0.0;  // ||H v - E v||
  bool degeneracy_flag = false;
  double second_energy = 0.0;
  int matvecs = 0;
};

/// Explicitly restarted Lanczos with full reorthogonalization. The second
/// level is found by a deflated run and sets degeneracy_flag. Throws
/// ConvergenceError after max_restarts.
GroundStateSolution ground_state(const SpinHamiltonian& h, const LanczosOptions& options = {});

/// Lowest eigenpair of H restricted to the complement of `deflate`.
GroundStateSolution lanczos_lowest(const SpinHamiltonian& h, std::span<const Eigen::VectorXcd> deflate,
                                   const LanczosOptions& options = {});

Eigen::VectorXd full_spectrum(const SpinHamiltonian& h);

struct NeelResiduals {
  double up_down = 0.0;  // |↑↓⟩^{⊗N}
  double down_up = 0.0;  // |↓↑⟩^{⊗N}
};

NeelResiduals neel_zero_mode_check(const SpinHamiltonian& h);

/// Max deviation between sorted spectra at two fluxes; 2N <= kMaxDenseSites.
double isospectrality_check(double theta1, double theta2, int n_cells, double phi_a, double phi_b);

/// max |g(phi/2) H(phi) g(phi/2)^† - H(0)| with g(a) = prod_l exp(-i sigma^z_l a / 2).
double gauge_equivalence_residual(double theta1, double theta2, double phi, int n_cells);

/// Global Z2 operator prod_n sigma^z_n applied to v.
Eigen::VectorXcd apply_parity(const Eigen::VectorXcd& v);

/// ||[H, P] v||.
double parity_commutator_norm(const SpinHamiltonian& h, const Eigen::VectorXcd& v);

/// <v|P|v> for normalized v.
double parity_expectation(const Eigen::VectorXcd& v);

/// Hermiticity probe: |<x|H y> - conj(<y|H x>)|.
double hermiticity_residual(const SpinHamiltonian& h, const Eigen::VectorXcd& x,
                            const Eigen::VectorXcd& y);

/// Two-site density matrix with all other spins traced out (sites 1-based).
/// Throws InvalidArgument for i == j or out-of-range sites.
TwoSiteState reduced_density_matrix(const Eigen::VectorXcd& state, int n_sites, int site_i, int site_j);

double sigma_z_expectation(const Eigen::VectorXcd& state, int site);

enum class OracleQuantity {
  energy_density,
  pair_concurrence_odd_even,
  pair_concurrence_even_odd,
  sigma_z,
};

const char* to_string(OracleQuantity q);

struct OracleRow {
  int n_cells = 0;
  double ed_value = 0.0;
  double analytic_value = 0.0;
  double deviation = 0.0;
  bool skipped = false;
  std::string note;
};

struct OracleReport {
  OracleQuantity quantity = OracleQuantity::energy_density;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double phi = 0.0;
  bool gapless = false;
  std::vector<OracleRow> rows;
  bool deviations_shrink = false;  // strictly decreasing over non-skipped rows
  double max_deviation = 0.0;
};

/// ED value per size against the thermodynamic analytic value. Energy sizes
/// are capped by kMaxLanczosSites, density-matrix quantities by kMaxRdmSites.
OracleReport oracle_compare(double theta1, double theta2, double phi, OracleQuantity quantity,
                            std::span<const int> sizes, const LanczosOptions& options = {});

}  // namespace ybchain
