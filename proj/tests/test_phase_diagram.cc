#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ybchain/errors.h"
#include "ybchain/phase_diagram.h"

namespace {

using namespace ybchain;
constexpr double pi = std::numbers::pi;

GridSpec full_square(int n) { return {0.0, pi, 0.0, pi, n, n}; }

TEST(GridSpec, AxesIncludeEndpoints) {
  const GridSpec spec{0.1, 0.9, -1.0, 1.0, 5, 3};
  const auto a = spec.theta1_axis(), b = spec.theta2_axis();
  ASSERT_EQ(a.size(), 5u);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(a.front(), 0.1);
  EXPECT_EQ(a.back(), 0.9);
  EXPECT_NEAR(a[2], 0.5, 1e-15);
  EXPECT_EQ(b[1], 0.0);
  EXPECT_THROW((GridSpec{0, 1, 0, 1, 1, 3}.theta1_axis()), InvalidArgument);
}

TEST(ScanGrid, RowMajorIndexing) {
  ScanGrid g = make_grid({0, 1, 0, 1, 2, 3}, "x");
  g.at(1, 2) = 5.0;
  EXPECT_EQ(g.values[5], 5.0);
  EXPECT_EQ(g.valid_count(), 1u);
  EXPECT_EQ(g.quantity_label, "x");
}

TEST(FiniteDifference, AnalyticField) {
  const ScalarField f = [](double a, double b) -> std::optional<double> { return std::sin(a) * std::cos(b); };
  const double a = 0.7, b = 1.9;
  EXPECT_NEAR(*finite_difference(f, DerivativeOrder::d_theta1, a, b), std::cos(a) * std::cos(b), 1e-8);
  EXPECT_NEAR(*finite_difference(f, DerivativeOrder::d_theta2, a, b), -std::sin(a) * std::sin(b), 1e-8);
  EXPECT_NEAR(*finite_difference(f, DerivativeOrder::mixed, a, b), -std::cos(a) * std::sin(b), 1e-6);
}

TEST(FiniteDifference, RichardsonImprovesTruncation) {
  const ScalarField f = [](double a, double b) -> std::optional<double> { return std::exp(2 * a) * std::sin(3 * b); };
  const double exact = 2 * std::exp(1.0) * std::sin(1.5);
  DerivativeOptions plain{1e-2, false}, rich{1e-2, true};
  const double e_plain = std::abs(*finite_difference(f, DerivativeOrder::d_theta1, 0.5, 0.5, plain) - exact);
  const double e_rich = std::abs(*finite_difference(f, DerivativeOrder::d_theta1, 0.5, 0.5, rich) - exact);
  EXPECT_LT(e_rich, e_plain / 100);
}

TEST(FiniteDifference, InvalidStencilPointInvalidatesCell) {
  const ScalarField f = [](double a, double) -> std::optional<double> {
    if (a > 1.0) return std::nullopt;
    return a;
  };
  EXPECT_FALSE(finite_difference(f, DerivativeOrder::d_theta1, 1.0, 0.0).has_value());
  EXPECT_TRUE(finite_difference(f, DerivativeOrder::d_theta1, 0.5, 0.0).has_value());
  EXPECT_TRUE(finite_difference(f, DerivativeOrder::d_theta2, 1.0, 0.0).has_value());
}

TEST(FiniteDifference, RejectsNonPositiveStep) {
  const ScalarField f = [](double, double) -> std::optional<double> { return 1.0; };
  EXPECT_THROW(finite_difference(f, DerivativeOrder::d_theta1, 0.0, 0.0, {0.0, false}), InvalidArgument);
  EXPECT_THROW(derivative_map(f, DerivativeOrder::mixed, full_square(3), {-1.0, false}), InvalidArgument);
}

TEST(DerivativeMap, ParallelMatchesSerial) {
  const ScalarField f = [](double a, double b) -> std::optional<double> {
    if (std::hypot(a - 1, b - 1) < 0.3) return std::nullopt;
    return std::sin(a * b);
  };
  for (auto order : {DerivativeOrder::d_theta1, DerivativeOrder::d_theta2, DerivativeOrder::mixed}) {
    const auto p = derivative_map(f, order, full_square(17));
    const auto s = derivative_map_serial(f, order, full_square(17));
    EXPECT_EQ(p.values, s.values);
    EXPECT_LT(p.valid_count(), p.values.size());
  }
}

TEST(Quantities, NamesRoundTrip) {
  EXPECT_EQ(all_quantities().size(), 12u);
  for (auto q : all_quantities()) EXPECT_EQ(parse_quantity(to_string(q)), q);
  EXPECT_FALSE(parse_quantity("ce1").has_value());
  EXPECT_FALSE(parse_quantity("").has_value());
  EXPECT_EQ(parse_quantity("dCe1-dtheta2"), Quantity::dce1_dtheta2);
}

TEST(Quantities, PolarizedPoint) {
  EXPECT_NEAR(*evaluate_quantity(Quantity::berry, 0.0, 0.0), -pi, 1e-12);
  EXPECT_NEAR(*evaluate_quantity(Quantity::ce1, 0.0, 0.0), 0.0, 1e-12);
  EXPECT_NEAR(*evaluate_quantity(Quantity::f0, 0.0, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(*evaluate_quantity(Quantity::energy_density, 0.0, 0.0), -1.0, 1e-12);
}

TEST(Quantities, DimerPoint) {
  EXPECT_NEAR(*evaluate_quantity(Quantity::co1, pi / 3, pi / 2), std::sin(pi / 3), 1e-10);
  EXPECT_NEAR(*evaluate_quantity(Quantity::berry, pi / 3, pi / 2), -pi / 2, 1e-10);
}

TEST(Quantities, GaplessPointIsUndefined) {
  for (auto q : all_quantities()) {
    if (q == Quantity::energy_density) continue;
    EXPECT_FALSE(evaluate_quantity(q, pi / 2, pi / 2).has_value()) << to_string(q);
  }
  // H vanishes there, so its ground energy is zero.
  EXPECT_NEAR(evaluate_quantity(Quantity::energy_density, pi / 2, pi / 2).value(), 0.0, 1e-15);
}

TEST(Quantities, BerryDerivativeMatchesAnalyticIntegrand) {
  ScanOptions o;
  o.derivative.richardson = true;
  for (auto [t1, t2] : {std::pair{0.9, 1.7}, {0.3, 2.5}, {2.0, 0.4}}) {
    EXPECT_NEAR(*evaluate_quantity(Quantity::dberry_dtheta2, t1, t2, o), berry_phase_thermo_derivative(t1, t2, 2), 1e-6);
    // Mixed derivative against a difference of the analytic first derivative.
    const double h = 1e-4;
    const double mixed =
        (berry_phase_thermo_derivative(t1 + h, t2, 2) - berry_phase_thermo_derivative(t1 - h, t2, 2)) / (2 * h);
    EXPECT_NEAR(*evaluate_quantity(Quantity::d2berry, t1, t2, o), mixed, 1e-4);
  }
}

TEST(Quantities, LatticeMode) {
  ScanOptions o;
  o.mode = Lattice{5};
  EXPECT_NEAR(*evaluate_quantity(Quantity::energy_density, 0.0, 0.0, o), -1.0, 1e-12);
  o.mode = Lattice{4};
  EXPECT_THROW(phase_diagram(Quantity::berry, full_square(3), o), InvalidArgument);
}

TEST(PhaseDiagram, ParallelMatchesSerial) {
  for (auto q : {Quantity::berry, Quantity::ce1, Quantity::c2, Quantity::dce1_dtheta2}) {
    const auto p = phase_diagram(q, full_square(15));
    const auto s = phase_diagram_serial(q, full_square(15));
    EXPECT_EQ(p.values, s.values) << to_string(q);
    EXPECT_EQ(p.metadata, s.metadata);
  }
}

TEST(PhaseDiagram, ExcludedDiskAroundCriticalPoint) {
  ScanOptions o;
  o.excluded_radius = 0.2;
  const auto g = phase_diagram(Quantity::co1, full_square(21), o);
  for (std::size_t i = 0; i < g.n1(); ++i)
    for (std::size_t j = 0; j < g.n2(); ++j) {
      const bool inside = std::hypot(g.theta1_axis[i] - pi / 2, g.theta2_axis[j] - pi / 2) < 0.2;
      EXPECT_EQ(g.at(i, j).has_value(), !inside);
    }
  EXPECT_EQ(g.metadata.at("excluded_radius"), "0.20000000000000001");
}

TEST(PhaseDiagram, CentreInvalidEvenWithoutExclusion) {
  ScanOptions o;
  o.excluded_radius = 0.0;
  const auto g = phase_diagram(Quantity::berry, full_square(5), o);
  EXPECT_FALSE(g.at(2, 2).has_value());
  EXPECT_EQ(g.valid_count(), 24u);
}

TEST(PhaseDiagram, MetadataRecordsSettings) {
  ScanOptions o;
  o.phi = 0.5;
  o.derivative.richardson = true;
  const auto g = phase_diagram(Quantity::f0, full_square(3), o);
  EXPECT_EQ(g.quantity_label, "F0");
  EXPECT_EQ(g.metadata.at("phi"), "0.5");
  EXPECT_EQ(g.metadata.at("mode"), "thermodynamic");
  EXPECT_EQ(g.metadata.at("richardson"), "true");
  EXPECT_EQ(g.metadata.at("fd_step"), "0.0001");
}

TEST(PhaseDiagram, DistanceTwoConcurrenceVanishes) {
  const auto g = phase_diagram(Quantity::c2, full_square(31));
  for (const auto& v : g.values)
    if (v) {
      EXPECT_LE(*v, 1e-10);
    }
}

TEST(SteepCells, FlagsAStep) {
  ScanGrid g = make_grid({0, 1, 0, 1, 20, 5}, "step");
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 5; ++j) g.at(i, j) = 0.01 * static_cast<double>(i + j) + (i >= 10 ? 1.0 : 0.0);
  const auto flags = flag_steep_cells(g);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(flags[i * 5 + j], i == 9 || i == 10) << i << " " << j;
}

TEST(SteepCells, FindsConcurrenceBorder) {
  const auto g = phase_diagram(Quantity::ce1, full_square(41));
  const auto flags = flag_steep_cells(g, 3.0);
  EXPECT_GT(std::count(flags.begin(), flags.end(), true), 0);
}

}  // namespace
