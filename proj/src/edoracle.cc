#include "ybchain/edoracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "ybchain/errors.h"
#include "ybchain/freefermion.h"
#include "ybchain/observables.h"

namespace ybchain {
namespace {

double bit_sz(std::uint64_t index, int bit) { return ((index >> bit) & 1U) ? -0.5 : 0.5; }

void check_span(std::size_t dim, std::span<const cplx> x, std::span<cplx> y) {
  if (x.size() != dim || y.size() != dim) throw InvalidArgument("vector dimension mismatch");
}

}  // namespace

SpinHamiltonian::SpinHamiltonian(double theta1, double theta2, double phi, int n_cells)
    : theta1_(theta1), theta2_(theta2), phi_(phi), n_cells_(n_cells) {
  if (n_cells < 1) throw InvalidArgument("n_cells must be positive");
  if (2 * n_cells > kMaxLanczosSites)
    throw InvalidArgument("chain exceeds " + std::to_string(kMaxLanczosSites) + " sites");

  const int sites = n_sites();
  // N = 1 is a single dimer: bonds (1,2) and (2,1) would double count it.
  const int n_bonds = sites == 2 ? 1 : sites;
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> diag_coeff;
  for (int b = 0; b < n_bonds; ++b) {
    const double theta = (b % 2 == 0) ? theta1 : theta2;
    const double c = std::cos(theta), s = std::sin(theta);
    const int i = b, j = (b + 1) % sites;
    Bond bond;
    bond.mask = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
    bond.raise = -c * s * std::polar(1.0, phi);
    bond.lower = -c * s * std::polar(1.0, -phi);
    bonds_.push_back(bond);
    pairs.emplace_back(i, j);
    diag_coeff.push_back(-c * c);
  }

  diagonal_.assign(dim(), 0.0);
  for (std::size_t idx = 0; idx < dim(); ++idx) {
    double e = 0.0;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      e += diag_coeff[b] * (bit_sz(idx, pairs[b].first) + bit_sz(idx, pairs[b].second));
    diagonal_[idx] = e;
  }
}

void SpinHamiltonian::apply(std::span<const cplx> x, std::span<cplx> y) const {
  check_span(dim(), x, y);
  const auto n = static_cast<std::int64_t>(dim());
#pragma omp parallel for schedule(static)
  for (std::int64_t row = 0; row < n; ++row) {
    const auto j = static_cast<std::uint64_t>(row);
    cplx acc = diagonal_[j] * x[j];
    for (const auto& b : bonds_) {
      const std::uint64_t bits = j & b.mask;
      if (bits == 0)
        acc += b.raise * x[j | b.mask];
      else if (bits == b.mask)
        acc += b.lower * x[j & ~b.mask];
    }
    y[j] = acc;
  }
}

void SpinHamiltonian::apply_serial(std::span<const cplx> x, std::span<cplx> y) const {
  check_span(dim(), x, y);
  for (std::size_t i = 0; i < dim(); ++i) y[i] = diagonal_[i] * x[i];
  for (std::size_t i = 0; i < dim(); ++i) {
    for (const auto& b : bonds_) {
      const std::uint64_t bits = i & b.mask;
      if (bits == b.mask)
        y[i ^ b.mask] += b.raise * x[i];
      else if (bits == 0)
        y[i ^ b.mask] += b.lower * x[i];
    }
  }
}

Eigen::VectorXcd SpinHamiltonian::operator*(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y(x.size());
  apply({x.data(), static_cast<std::size_t>(x.size())}, {y.data(), static_cast<std::size_t>(y.size())});
  return y;
}

Eigen::MatrixXcd SpinHamiltonian::dense() const {
  if (n_sites() > kMaxDenseSites)
    throw InvalidArgument("dense matrix limited to " + std::to_string(kMaxDenseSites) + " sites");
  const auto d = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
  for (Eigen::Index col = 0; col < d; ++col) {
    e(col) = 1.0;
    m.col(col) = *this * e;
    e(col) = 0.0;
  }
  return m;
}

SpinHamiltonian build_hamiltonian(const ModelParams& params, int n_cells) {
  return SpinHamiltonian(params.theta1, params.theta2, params.phi, n_cells);
}

GroundStateSolution lanczos_lowest(const SpinHamiltonian& h, std::span<const Eigen::VectorXcd> deflate,
                                   const LanczosOptions& options) {
  const auto d = static_cast<Eigen::Index>(h.dim());
  const auto available = d - static_cast<Eigen::Index>(deflate.size());
  if (available <= 0) throw InvalidArgument("nothing left after deflation");
  const Eigen::Index m_max = std::min<Eigen::Index>(options.krylov_dim, available);

  auto project_out = [&](Eigen::VectorXcd& v) {
    for (const auto& u : deflate) v -= u * u.dot(v);
  };

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd start(d);
  for (Eigen::Index i = 0; i < d; ++i) start(i) = cplx(normal(rng), normal(rng));
  project_out(start);
  start.normalize();

  GroundStateSolution sol;
  Eigen::MatrixXcd basis(d, m_max);
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    std::vector<double> alpha, beta;
    basis.col(0) = start;
    Eigen::Index m = 0;
    Eigen::VectorXcd w(d);
    for (; m < m_max; ++m) {
      w = h * Eigen::VectorXcd(basis.col(m));
      ++sol.matvecs;
      const double a = basis.col(m).dot(w).real();
      alpha.push_back(a);
      // Full reorthogonalization, twice for stability.
      for (int pass = 0; pass < 2; ++pass) {
        w -= basis.leftCols(m + 1) * (basis.leftCols(m + 1).adjoint() * w);
        project_out(w);
      }
      const double b = w.norm();
      if (m + 1 == m_max) break;
      const double scale = std::max(1.0, std::abs(a));
      if (b <= 1e-14 * scale) {  // invariant subspace
        ++m;
        break;
      }
      beta.push_back(b);
      basis.col(m + 1) = w / b;
    }
    const Eigen::Index k = static_cast<Eigen::Index>(alpha.size());

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    Eigen::VectorXcd ritz = basis.leftCols(k) * es.eigenvectors().col(0).cast<cplx>();
    project_out(ritz);
    ritz.normalize();

    const double energy = es.eigenvalues()(0);
    const Eigen::VectorXcd hv = h * ritz;
    ++sol.matvecs;
    const double residual = (hv - energy * ritz).norm();
    sol.energy = energy;
    sol.vector = ritz;
    sol.residual = residual;
    if (residual <= options.tolerance * std::max(1.0, std::abs(energy))) return sol;
    start = ritz;
  }
  throw ConvergenceError("Lanczos did not converge", sol.residual);
}

GroundStateSolution ground_state(const SpinHamiltonian& h, const LanczosOptions& options) {
  GroundStateSolution ground = lanczos_lowest(h, {}, options);
  if (h.dim() > 1) {
    const Eigen::VectorXcd deflate[] = {ground.vector};
    LanczosOptions second_opts = options;
    second_opts.seed = options.seed + 1;
    const auto second = lanczos_lowest(h, deflate, second_opts);
    ground.second_energy = second.energy;
    ground.matvecs += second.matvecs;
    ground.degeneracy_flag = std::abs(second.energy - ground.energy) <= options.degeneracy_tolerance;
  }
  return ground;
}

Eigen::VectorXd full_spectrum(const SpinHamiltonian& h) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

NeelResiduals neel_zero_mode_check(const SpinHamiltonian& h) {
  const auto d = static_cast<Eigen::Index>(h.dim());
  std::uint64_t even_down = 0, odd_down = 0;
  for (int s = 1; s <= h.n_sites(); ++s) (s % 2 == 0 ? even_down : odd_down) |= std::uint64_t{1} << (s - 1);
  auto residual = [&](std::uint64_t index) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return (h * v).norm();
  };
  return {residual(even_down), residual(odd_down)};
}

double isospectrality_check(double theta1, double theta2, int n_cells, double phi_a, double phi_b) {
  if (2 * n_cells > kMaxDenseSites)
    throw InvalidArgument("full spectra limited to " + std::to_string(kMaxDenseSites) + " sites");
  const auto a = full_spectrum(SpinHamiltonian(theta1, theta2, phi_a, n_cells));
  const auto b = full_spectrum(SpinHamiltonian(theta1, theta2, phi_b, n_cells));
  return (a - b).cwiseAbs().maxCoeff();
}

double gauge_equivalence_residual(double theta1, double theta2, double phi, int n_cells) {
  const Eigen::MatrixXcd h = SpinHamiltonian(theta1, theta2, phi, n_cells).dense();
  const Eigen::MatrixXcd h0 = SpinHamiltonian(theta1, theta2, 0.0, n_cells).dense();
  const int sites = 2 * n_cells;
  const auto d = h.rows();
  // g(phi/2) = prod_l exp(-i sigma^z_l phi/4) is diagonal: exp(-i M phi / 4), M = sum sigma^z.
  Eigen::VectorXcd g(d);
  for (Eigen::Index idx = 0; idx < d; ++idx) {
    const int down = std::popcount(static_cast<std::uint64_t>(idx));
    const int magnetization = sites - 2 * down;
    g(idx) = std::polar(1.0, -magnetization * phi / 4.0);
  }
  const Eigen::MatrixXcd rotated = g.asDiagonal() * h * g.conjugate().asDiagonal();
  return (rotated - h0).cwiseAbs().maxCoeff();
}

Eigen::VectorXcd apply_parity(const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out(i) = (std::popcount(static_cast<std::uint64_t>(i)) % 2 == 0) ? v(i) : -v(i);
  return out;
}

double parity_commutator_norm(const SpinHamiltonian& h, const Eigen::VectorXcd& v) {
  return (h * apply_parity(v) - apply_parity(h * v)).norm();
}

double parity_expectation(const Eigen::VectorXcd& v) { return v.dot(apply_parity(v)).real(); }

double hermiticity_residual(const SpinHamiltonian& h, const Eigen::VectorXcd& x,
                            const Eigen::VectorXcd& y) {
  return std::abs(x.dot(h * y) - std::conj(y.dot(h * x)));
}

TwoSiteState reduced_density_matrix(const Eigen::VectorXcd& state, int n_sites, int site_i, int site_j) {
  if (site_i == site_j) throw InvalidArgument("reduced density matrix needs two distinct sites");
  if (site_i < 1 || site_j < 1 || site_i > n_sites || site_j > n_sites)
    throw InvalidArgument("site index out of range");
  if (state.size() != (Eigen::Index{1} << n_sites)) throw InvalidArgument("state dimension mismatch");

  const std::uint64_t bi = std::uint64_t{1} << (site_i - 1);
  const std::uint64_t bj = std::uint64_t{1} << (site_j - 1);
  const std::uint64_t offsets[4] = {0, bj, bi, bi | bj};  // |↑↑⟩ |↑↓⟩ |↓↑⟩ |↓↓⟩
  Matrix4c rho = Matrix4c::Zero();
  for (std::uint64_t rest = 0; rest < static_cast<std::uint64_t>(state.size()); ++rest) {
    if (rest & (bi | bj)) continue;
    Vector4c amp;
    for (int a = 0; a < 4; ++a) amp(a) = state(static_cast<Eigen::Index>(rest | offsets[a]));
    rho.noalias() += amp * amp.adjoint();
  }

  TwoSiteState s;
  s.matrix = rho;
  const int lo = std::min(site_i, site_j), hi = std::max(site_i, site_j);
  if (hi - lo == 1) s.pair_kind = (lo % 2 == 1) ? PairKind::odd_even : PairKind::even_odd;
  if (hi - lo == 2 && lo % 2 == 1) s.pair_kind = PairKind::odd_odd_distance2;
  return s;
}

double sigma_z_expectation(const Eigen::VectorXcd& state, int site) {
  const std::uint64_t bit = std::uint64_t{1} << (site - 1);
  double z = 0.0;
  for (Eigen::Index i = 0; i < state.size(); ++i)
    z += ((static_cast<std::uint64_t>(i) & bit) ? -1.0 : 1.0) * std::norm(state(i));
  return z;
}

const char* to_string(OracleQuantity q) {
  switch (q) {
    case OracleQuantity::energy_density: return "ground-energy-density";
    case OracleQuantity::pair_concurrence_odd_even: return "pair-concurrence-odd-even";
    case OracleQuantity::pair_concurrence_even_odd: return "pair-concurrence-even-odd";
    case OracleQuantity::sigma_z: return "sigma-z";
  }
  return "?";
}

OracleReport oracle_compare(double theta1, double theta2, double phi, OracleQuantity quantity,
                            std::span<const int> sizes, const LanczosOptions& options) {
  OracleReport report;
  report.quantity = quantity;
  report.theta1 = theta1;
  report.theta2 = theta2;
  report.phi = phi;
  report.gapless = structure_factor(theta1, theta2, 0.0).delta <= kGaplessTolerance;

  const bool needs_rdm = quantity != OracleQuantity::energy_density;
  const int cap = needs_rdm ? kMaxRdmSites : kMaxLanczosSites;
  for (int n : sizes)
    if (n < 1 || 2 * n > cap)
      throw InvalidArgument("size " + std::to_string(n) + " exceeds the " + std::to_string(cap) +
                            "-site cap for " + to_string(quantity));

  std::optional<double> analytic;
  if (!report.gapless) {
    static constexpr int kNearest[] = {0, 1};
    switch (quantity) {
      case OracleQuantity::energy_density:
        analytic = ground_energy_density_thermo(theta1, theta2);
        break;
      case OracleQuantity::pair_concurrence_odd_even:
      case OracleQuantity::pair_concurrence_even_odd: {
        const auto cs = ff_functions(theta1, theta2, phi, kNearest, Thermodynamic{});
        analytic = concurrence_closed_form(cs, quantity == OracleQuantity::pair_concurrence_odd_even
                                                   ? PairKind::odd_even
                                                   : PairKind::even_odd);
        break;
      }
      case OracleQuantity::sigma_z: {
        const auto cs = ff_functions(theta1, theta2, phi, kNearest, Thermodynamic{});
        analytic = cs.F(0);
        break;
      }
    }
  }

  std::vector<double> kept;
  for (int n : sizes) {
    OracleRow row;
    row.n_cells = n;
    const SpinHamiltonian h(theta1, theta2, phi, n);
    const auto gs = ground_state(h, options);
    switch (quantity) {
      case OracleQuantity::energy_density:
        row.ed_value = gs.energy / h.n_sites();
        break;
      case OracleQuantity::pair_concurrence_odd_even:
        row.ed_value = concurrence(reduced_density_matrix(gs.vector, h.n_sites(), 1, 2)).value;
        break;
      case OracleQuantity::pair_concurrence_even_odd:
        row.ed_value = concurrence(reduced_density_matrix(gs.vector, h.n_sites(), 2, 3 > h.n_sites() ? 1 : 3)).value;
        break;
      case OracleQuantity::sigma_z:
        row.ed_value = sigma_z_expectation(gs.vector, 1);
        break;
    }
    if (!analytic) {
      row.skipped = true;
      row.note = "gapless: analytic quantities skipped";
    } else if (needs_rdm && gs.degeneracy_flag) {
      row.skipped = true;
      row.note = "degenerate ground state: density matrix comparison skipped";
    } else {
      row.analytic_value = *analytic;
      row.deviation = std::abs(row.ed_value - *analytic);
      kept.push_back(row.deviation);
      report.max_deviation = std::max(report.max_deviation, row.deviation);
    }
    report.rows.push_back(row);
  }

  report.deviations_shrink = kept.size() >= 2;
  for (std::size_t i = 1; i < kept.size(); ++i)
    if (!(kept[i] < kept[i - 1])) report.deviations_shrink = false;
  return report;
}

}  // namespace ybchain
