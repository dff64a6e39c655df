#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qcog/classicality.hpp"
#include "qcog/fitter.hpp"
#include "qcog/fock.hpp"
#include "support.hpp"

using namespace qcog;

TEST_CASE("table_from_margins") {
  auto goldfish = table_from_margins(0.93, 0.17, 0.1225);
  CHECK(goldfish.qAB == doctest::Approx(0.1225).epsilon(1e-15));
  CHECK(goldfish.qABp == doctest::Approx(0.8075).epsilon(1e-12));
  CHECK(goldfish.qApB == doctest::Approx(0.0475).epsilon(1e-12));
  CHECK(goldfish.qApBp == doctest::Approx(0.0225).epsilon(1e-12));
  CHECK(goldfish.marginA() == doctest::Approx(0.93).epsilon(1e-12));
  CHECK(goldfish.marginB() == doctest::Approx(0.17).epsilon(1e-12));

  auto uniform = table_from_margins(0.5, 0.5, 0.25);
  CHECK(uniform.qABp == 0.25);
  CHECK(uniform.qApBp == 0.25);

  auto forced = table_from_margins(1.0, 0.3, 0.3);
  CHECK(forced.qAB == 0.3);
  CHECK(forced.qApB == doctest::Approx(0.0).epsilon(1e-15));

  CHECK_THROWS_WITH_AS(table_from_margins(0.93, 0.17, 0.5),
                       doctest::Contains("Frechet"), InfeasibleError);
}

TEST_CASE("entangled state construction and quadrant masses") {
  auto uniform = entangled_state_from_table({0.25, 0.25, 0.25, 0.25});
  for (const auto& row : uniform.coeff) {
    for (double c : row) CHECK(c == 0.125);
  }
  CHECK(uniform.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));

  auto concentrated = entangled_state_from_table({1, 0, 0, 0});
  CHECK(concentrated.coeff[4][4] == 0.25);
  CHECK(concentrated.coeff[0][0] == 0.0);
  CHECK(concentrated.coeff[4][0] == 0.0);

  auto goldfish = table_from_margins(0.93, 0.17, 0.1225);
  auto masses = quadrant_masses(entangled_state_from_table(goldfish));
  CHECK(masses.qAB == doctest::Approx(goldfish.qAB).epsilon(1e-14));
  CHECK(masses.qABp == doctest::Approx(goldfish.qABp).epsilon(1e-14));
  CHECK(masses.qApB == doctest::Approx(goldfish.qApB).epsilon(1e-14));
  CHECK(masses.qApBp == doctest::Approx(goldfish.qApBp).epsilon(1e-14));
}

TEST_CASE("product state masses multiply the Born weights") {
  // c = a (x) b for unit vectors with Born weights 0.93 and 0.17
  Vec8 a{}, b{};
  a[0] = std::sqrt(1 - 0.93);
  a[4] = std::sqrt(0.93);
  b[1] = std::sqrt(1 - 0.17);
  b[5] = std::sqrt(0.17);
  EntangledState product;
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) product.coeff[i][j] = a[i] * b[j];
  }
  auto masses = quadrant_masses(product);
  CHECK(masses.qAB == doctest::Approx(0.93 * 0.17).epsilon(1e-12));
  CHECK(masses.qApBp == doctest::Approx(0.07 * 0.83).epsilon(1e-12));
}

TEST_CASE("record_from_table always yields classical records") {
  auto uniform = record_from_table({0.25, 0.25, 0.25, 0.25});
  CHECK(uniform.muA == 0.5);
  CHECK(uniform.muAB == 0.25);
  CHECK(check_classical(uniform, 1e-15).classical);

  auto goldfish = record_from_table(table_from_margins(0.93, 0.17, 0.1225));
  CHECK(goldfish.muAB == doctest::Approx(0.1225).epsilon(1e-15));
  auto params = compute_derived(goldfish);
  CHECK(std::abs(params.iA) <= 1e-15);
  CHECK(std::abs(params.iTotal) <= 1e-15);

  auto degenerate = record_from_table({0.3, 0.7, 0.0, 0.0});
  CHECK(degenerate.muApB == 0.0);
  CHECK(check_classical(degenerate, 1e-15).classical);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    double muA = unit(rng), muB = unit(rng);
    auto bounds = frechet_bounds(muA, muB);
    double q = bounds.lo + unit(rng) * bounds.width();
    auto record = record_from_table(table_from_margins(muA, muB, q));
    CHECK(check_classical(record, 1e-12).classical);
  }
}

TEST_CASE("state_from_classical_record") {
  auto uniform = state_from_classical_record(test::uniform_classical_record());
  CHECK(uniform.coeff[0][0] == 0.125);
  CHECK(uniform.coeff[7][7] == 0.125);

  KolmogorovModel model{{0.1, 0.2, 0.3, 0.4}};
  auto state = state_from_classical_record(model.to_record());
  auto masses = quadrant_masses(state);
  CHECK(masses.qAB == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(masses.qABp == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(masses.qApB == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(masses.qApBp == doctest::Approx(0.4).epsilon(1e-14));

  CHECK_THROWS_AS(state_from_classical_record(test::fixture_record("table4", "Olive")),
                  InfeasibleError);
}

TEST_CASE("fock_membership reproduces the worked parameterizations") {
  auto olive = model_document_from_json(
      test::read_file(test::data_path("published/olive.json")));
  FockParameters params;
  params.table = olive.table;
  auto& w = params.of(Combination::AB);
  w.m = 0.42;
  w.n = std::sqrt(1 - 0.42 * 0.42);
  w.phi = 57.31 * std::numbers::pi / 180;
  double value = fock_membership(params, olive.frame, Combination::AB);
  // published n is 0.91; with n^2 = 1 - m^2 the value shifts by ~3e-3
  CHECK(value == doctest::Approx(0.6548).epsilon(1e-2));

  auto goldfish = model_document_from_json(
      test::read_file(test::data_path("published/goldfish.json")));
  FockParameters gp;
  gp.table = goldfish.table;
  auto& gw = gp.of(Combination::AB);
  gw.m = 0.45;
  gw.n = std::sqrt(1 - 0.45 * 0.45);
  gw.phi = 78.9 * std::numbers::pi / 180;
  CHECK(fock_membership(gp, goldfish.frame, Combination::AB) ==
        doctest::Approx(0.4244).epsilon(1e-2));

  // pure first sector with a quarter-turn angle: the plain average
  FockParameters pure;
  pure.table = table_from_margins(0.53, 0.63, 0.3);
  auto& pw = pure.of(Combination::AB);
  pw.m = 0;
  pw.n = 1;
  pw.phi = std::numbers::pi / 2;
  double lam = interference_overlap(olive.frame, Combination::AB);
  double avg = 0.5 * (born_weight(olive.frame.vecA) + born_weight(olive.frame.vecB));
  CHECK(fock_membership(pure, olive.frame, Combination::AB) ==
        doctest::Approx(avg + lam * std::cos(pw.phi)).epsilon(1e-12));
}

TEST_CASE("fock_membership is linear in m^2 toward the quadrant mass") {
  auto record = test::fixture_record("table1", "Door Bell");
  auto frame = construct_frame(record);
  auto table = table_from_margins(record.muA, record.muB, 0.2);
  double phi = 1.0;
  auto at = [&](double m2) {
    FockParameters p;
    p.table = table;
    auto& w = p.of(Combination::AB);
    w.m = std::sqrt(m2);
    w.n = std::sqrt(1 - m2);
    w.phi = phi;
    return fock_membership(p, frame, Combination::AB);
  };
  double first = at(0.0), second = at(1.0);
  CHECK(second == doctest::Approx(table.qAB).epsilon(1e-12));
  for (double m2 : {0.25, 0.5, 0.75}) {
    CHECK(at(m2) ==
          doctest::Approx(m2 * second + (1 - m2) * first).epsilon(1e-12));
  }
}

TEST_CASE("sector phases never change the membership value") {
  auto record = test::fixture_record("table2", "Mint");
  auto fit = fit_record(record);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  for (auto c : kCombinations) {
    double base = fock_membership(fit.params, fit.frame, c);
    FockParameters shifted = fit.params;
    shifted.of(c).theta = angle(rng);
    shifted.of(c).rho = angle(rng);
    CHECK(fock_membership(shifted, fit.frame, c) == base);
  }
}

TEST_CASE("solution_interval") {
  auto olive = model_document_from_json(
      test::read_file(test::data_path("published/olive.json")));
  auto iv = solution_interval(olive.frame, olive.table, Combination::AB);
  CHECK(iv.lo == doctest::Approx(0.1936).epsilon(1e-12));
  CHECK(iv.hi == doctest::Approx(0.8938).epsilon(2e-3));

  // quadrant mass inside the first-sector interval leaves it unchanged
  auto record = test::fixture_record("table1", "Window Seat");
  auto frame = construct_frame(record);
  auto first = first_sector_interval(frame, Combination::AB);
  auto bounds = frechet_bounds(record.muA, record.muB);
  double q_inside = std::clamp(0.5 * (first.lo + first.hi),
                               std::max(bounds.lo, first.lo + 1e-6),
                               std::min(bounds.hi, first.hi - 1e-6));
  auto table = table_from_margins(record.muA, record.muB, q_inside);
  auto merged = solution_interval(frame, table, Combination::AB);
  CHECK(merged.lo == doctest::Approx(first.lo).epsilon(1e-12));
  CHECK(merged.hi == doctest::Approx(first.hi).epsilon(1e-12));

  // the degenerate first-sector case regains the classical target via q = 0
  MembershipRecord extreme;
  extreme.exemplar = "extreme";
  extreme.muA = 1;
  extreme.muB = 0;
  extreme.muAp = 0;
  extreme.muBp = 1;
  extreme.muAB = 0;
  extreme.muABp = 1;
  extreme.muApB = 0;
  extreme.muApBp = 0;
  auto eframe = construct_frame(extreme);
  auto etable = table_from_margins(1.0, 0.0, 0.0);
  auto eiv = solution_interval(eframe, etable, Combination::AB);
  CHECK(eiv.lo == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(eiv.hi == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(eiv.contains(0.0, 1e-9));
}

TEST_CASE("every target in the solution interval is attainable") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    auto record = test::random_record(rng);
    auto frame = construct_frame(record);
    auto bounds = frechet_bounds(record.muA, record.muB);
    auto table = table_from_margins(record.muA, record.muB,
                                    bounds.lo + unit(rng) * bounds.width());
    for (auto c : kCombinations) {
      auto u_sol = solution_interval(frame, table, c);
      double target = u_sol.lo + unit(rng) * u_sol.width();
      auto first = first_sector_interval(frame, c);
      auto sol = solve_sector_weights(target, table.q(c), first,
                                      0.5 * first.width());
      double avg = 0.5 * (first.lo + first.hi);
      double value = sol.m2 * table.q(c) +
                     (1 - sol.m2) * (avg + 0.5 * first.width() * std::cos(sol.phi));
      CHECK(value == doctest::Approx(target).epsilon(1e-9));
    }
  }
}
