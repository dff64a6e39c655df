#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "qcog/classicality.hpp"
#include "qcog/dataset.hpp"
#include "support.hpp"

using namespace qcog;

TEST_CASE("compute_derived reproduces table rows") {
  auto olive = test::fixture_record("table4", "Olive");
  auto p = compute_derived(olive);
  CHECK(p.deltaAB == doctest::Approx(0.12).epsilon(1e-12));
  CHECK(p.iA == doctest::Approx(-0.46).epsilon(1e-12));
  CHECK(p.iTotal == doctest::Approx(-0.86).epsilon(1e-12));

  auto goldfish = test::fixture_record("table3", "Goldfish");
  CHECK(compute_derived(goldfish).deltaABp == doctest::Approx(0.10).epsilon(1e-9));

  auto apple = test::fixture_record("table4", "Apple");
  CHECK(compute_derived(apple).kAB ==
        doctest::Approx(1 - 1 - 0.23 + 0.6).epsilon(1e-12));
}

TEST_CASE("footnote identity holds for every record") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto r = test::random_record(rng);
    auto p = compute_derived(r);
    CHECK(std::abs(p.iAAp - (p.iTotal - p.iA - p.iAp)) <= 1e-15);
    CHECK(std::abs(p.iBBp - (p.iTotal - p.iB - p.iBp)) <= 1e-15);
  }
}

TEST_CASE("check_classical") {
  CHECK(check_classical(test::uniform_classical_record(), 0).classical);
  CHECK(check_classical(test::uniform_classical_record(), 0).violations.empty());

  auto olive = test::fixture_record("table4", "Olive");
  auto result = check_classical(olive, 0.01);
  CHECK_FALSE(result.classical);
  bool found_iA = false;
  for (const auto& v : result.violations) {
    if (v.condition == "I_A") {
      found_iA = true;
      CHECK(v.residual == doctest::Approx(-0.46).epsilon(1e-9));
    }
  }
  CHECK(found_iA);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    CHECK(check_classical(test::random_classical_record(rng), 1e-12).classical);
  }
}

TEST_CASE("check_classical_full") {
  CHECK(check_classical_full(test::uniform_classical_record(), 1e-12).classical);

  auto olive = test::fixture_record("table4", "Olive");
  auto result = check_classical_full(olive, 0.01);
  CHECK_FALSE(result.classical);
  // mu(A) - mu(AB) = -0.12 while mu(AB') = 0.34
  bool found = false;
  for (const auto& v : result.violations) {
    if (v.condition == std::string("mu(A)-mu(AB)=mu(AB')")) {
      found = true;
      CHECK(v.residual == doctest::Approx(-0.12 - 0.34).epsilon(1e-9));
    }
  }
  CHECK(found);

  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    auto r = test::random_classical_record(rng);
    CHECK(check_classical_full(r, 1e-12).classical ==
          check_classical(r, 1e-12).classical);
  }
}

TEST_CASE("redundant eighth condition follows from the others") {
  // Records built from atoms satisfy the fifth through seventh conditions
  // exactly, so the eighth residual must vanish too.
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    auto r = test::random_classical_record(rng);
    auto result = check_classical_full(r, 1e-12);
    CHECK(std::abs(result.redundant_residual) <= 1e-15);
  }
}

TEST_CASE("the classicality formulations agree verdict for verdict") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    auto classical = test::random_classical_record(rng);
    auto perturbed = test::random_perturbed_record(rng);
    for (const auto& r : {classical, perturbed}) {
      bool verdict = check_classical(r, 1e-9).classical;
      CHECK(check_classical_full(r, 1e-9).classical == verdict);
      CHECK(check_classical_reduced(r, 1e-9).classical == verdict);
      CHECK(check_classical_marginal(r, 1e-9).classical == verdict);
    }
  }
}

TEST_CASE("classical conjunction weights sum to one") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 200; ++i) {
    auto r = test::random_classical_record(rng);
    CHECK(r.muAB + r.muABp + r.muApB + r.muApBp ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("build_kolmogorov_model") {
  SUBCASE("uniform record") {
    auto model = build_kolmogorov_model(test::uniform_classical_record(), 1e-12);
    for (double a : model.atoms) CHECK(a == 0.25);
  }
  SUBCASE("explicit atoms, all sixteen events") {
    KolmogorovModel expected{{0.1, 0.2, 0.3, 0.4}};
    auto record = expected.to_record("atoms");
    CHECK(record.muA == doctest::Approx(0.3).epsilon(1e-15));
    auto model = build_kolmogorov_model(record, 1e-12);
    for (unsigned mask = 0; mask < 16; ++mask) {
      CHECK(model.probability(mask) ==
            doctest::Approx(expected.probability(mask)).epsilon(1e-15));
    }
    CHECK(model.muA() == record.muA);
    CHECK(model.muB() == record.muB);
    CHECK(model.muAp() == record.muAp);
    CHECK(model.muBp() == record.muBp);
  }
  SUBCASE("non-classical input is refused with the violations") {
    auto olive = test::fixture_record("table4", "Olive");
    CHECK_THROWS_WITH_AS(build_kolmogorov_model(olive, 0.01),
                         doctest::Contains("I_A"), InfeasibleError);
  }
  SUBCASE("round trip is exact for generated records") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
      auto r = test::random_classical_record(rng);
      auto model = build_kolmogorov_model(r, 1e-12);
      CHECK(model.to_record().muA == r.muA);
      CHECK(model.to_record().muBp == r.muBp);
      CHECK(model.to_record().muApB == r.muApB);
    }
  }
}

TEST_CASE("classify_deviation") {
  auto uniform_flags = classify_deviation(test::uniform_classical_record());
  CHECK(uniform_flags.empty());

  auto olive = classify_deviation(test::fixture_record("table4", "Olive"));
  CHECK(olive.overextension.count(Combination::AB) == 1);
  CHECK(olive.double_overextension.count(Combination::AB) == 1);
  CHECK(olive.negation_deviation);

  auto bull = classify_deviation(test::fixture_record("table3", "Prize Bull"));
  CHECK(bull.double_overextension.count(Combination::ABp) == 1);
  CHECK(bull.overextension.count(Combination::AB) == 1);
}

TEST_CASE("classicality report emission") {
  auto dataset = load_dataset_file(test::data_path("table4.csv"));
  std::ostringstream out;
  write_classicality_report(dataset, out);
  std::istringstream lines(out.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header ==
        "exemplar,deltaAB,deltaABp,deltaApB,deltaApBp,iTotal,iA,iB,iAp,iBp,"
        "classical,deviations");
  CHECK(first.rfind("Apple,", 0) == 0);
  CHECK(first.find(",no,") != std::string::npos);

  std::ostringstream md;
  write_classicality_markdown(dataset, md);
  CHECK(md.str().find("| Apple ") != std::string::npos);
}
