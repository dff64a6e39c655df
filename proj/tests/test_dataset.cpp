#include <doctest.h>

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>
#include <vector>

#include "qcog/dataset.hpp"
#include "support.hpp"

using namespace qcog;

TEST_CASE("likert_to_weight follows the stated conversion") {
  std::vector<int> column;
  column.insert(column.end(), 20, 2);
  column.insert(column.end(), 10, 0);
  column.insert(column.end(), 10, -3);
  CHECK(likert_to_weight(column) == doctest::Approx(0.625).epsilon(1e-15));

  std::vector<int> saturated(40, 3);
  CHECK(likert_to_weight(saturated) == 1.0);

  std::vector<int> mixed{1, -1, 0, 0};
  CHECK(likert_to_weight(mixed) == 0.5);
}

TEST_CASE("likert_to_weight rejects bad input") {
  CHECK_THROWS_AS(likert_to_weight(std::vector<int>{}), Error);
  CHECK_THROWS_AS(likert_to_weight(std::vector<int>{1, 4}), ValidationError);
}

TEST_CASE("likert_to_weight properties") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> score(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> column(40);
    for (int& s : column) s = score(rng);
    double w = likert_to_weight(column);

    auto shuffled = column;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(likert_to_weight(shuffled) == w);

    auto flipped = column;
    for (int& s : flipped) s = -s;
    CHECK(likert_to_weight(flipped) == doctest::Approx(1 - w).epsilon(1e-15));
  }
}

TEST_CASE("load_dataset reads the bundled table") {
  auto dataset = load_dataset_file(test::data_path("table4.csv"));
  REQUIRE(dataset.records.size() == 24);
  CHECK(dataset.pair_label == "table4");
  const auto& apple = dataset.records.front();
  CHECK(apple.exemplar == "Apple");
  CHECK(apple.muA == 1.0);
  CHECK(apple.muAB == 0.6);
}

TEST_CASE("load_dataset edge cases") {
  std::istringstream empty(
      "exemplar,muA,muB,muAp,muBp,muAB,muABp,muApB,muApBp\n");
  CHECK(load_dataset(empty).records.empty());

  std::istringstream bad(
      "exemplar,muA,muB,muAp,muBp,muAB,muABp,muApB,muApBp\n"
      "Thing,1.2,0.5,0.5,0.5,0.25,0.25,0.25,0.25\n");
  try {
    load_dataset(bad);
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    std::string what = e.what();
    CHECK(what.find("row 2") != std::string::npos);
    CHECK(what.find("muA") != std::string::npos);
  }

  std::istringstream missing("exemplar,muA,muB\n");
  CHECK_THROWS_AS(load_dataset(missing), ParseError);

  std::istringstream dup(
      "exemplar,muA,muB,muAp,muBp,muAB,muABp,muApB,muApBp\n"
      "X,0,0,0,0,0,0,0,0\nX,1,1,1,1,1,1,1,1\n");
  CHECK_THROWS_AS(load_dataset(dup), ParseError);
}

TEST_CASE("dataset round-trips") {
  SUBCASE("byte-exact on the bundled fixtures") {
    for (const char* name : {"table1", "table2", "table3", "table4"}) {
      std::string raw = test::read_file(test::data_path(std::string(name) + ".csv"));
      std::istringstream in(raw);
      CHECK(serialize(load_dataset(in)) == raw);
    }
  }
  SUBCASE("value-exact on random datasets") {
    std::mt19937_64 rng(11);
    ConceptPairDataset dataset;
    for (int i = 0; i < 20; ++i) {
      auto r = test::random_record(rng);
      r.exemplar = "r" + std::to_string(i);
      dataset.records.push_back(r);
    }
    std::istringstream in(serialize(dataset));
    auto back = load_dataset(in);
    REQUIRE(back.records.size() == dataset.records.size());
    for (std::size_t i = 0; i < back.records.size(); ++i) {
      CHECK(back.records[i].muA == dataset.records[i].muA);
      CHECK(back.records[i].muApBp == dataset.records[i].muApBp);
    }
  }
}

TEST_CASE("likert long-form loader") {
  std::istringstream in(
      "subject,question,score\n"
      "s1,A,3\ns1,B,-2\n"
      "s2,A,0\ns2,B,1\n");
  auto panel = load_likert(in);
  CHECK(panel.subjects == 2);
  REQUIRE(panel.questions.size() == 2);
  CHECK(likert_to_weight(panel.column("A")) == 0.75);

  std::istringstream bad("subject,question,score\ns1,A,4\n");
  CHECK_THROWS_AS(load_likert(bad), ValidationError);

  std::istringstream ragged("subject,question,score\ns1,A,1\ns2,A,1\ns2,B,1\n");
  CHECK_THROWS_AS(load_likert(ragged), ParseError);
}

TEST_CASE("bundled fixtures match the checksum manifest") {
  std::istringstream manifest(test::read_file(test::data_path("MANIFEST.fnv1a")));
  std::string hex, rel;
  int checked = 0;
  while (manifest >> hex >> rel) {
    auto bytes = test::read_file(test::data_path(rel));
    std::ostringstream expect;
    expect << std::hex << std::setw(16) << std::setfill('0')
           << test::fnv1a64(bytes);
    CHECK_MESSAGE(expect.str() == hex, rel, " checksum mismatch");
    ++checked;
  }
  CHECK(checked == 16);
}
