#ifndef QCOG_TESTS_SUPPORT_HPP
#define QCOG_TESTS_SUPPORT_HPP

#include <array>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "qcog/classicality.hpp"
#include "qcog/dataset.hpp"
#include "qcog/types.hpp"

#ifndef QCOG_DATA_DIR
#error "QCOG_DATA_DIR must be defined by the build"
#endif

namespace qcog::test {

inline std::string data_path(const std::string& name) {
  return std::string(QCOG_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Record generated from a random four-atom measure; exactly classical
/// because the marginals are computed as the same atom sums the model uses.
inline MembershipRecord random_classical_record(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<double, 4> atoms{unit(rng), unit(rng), unit(rng), unit(rng)};
  double total = atoms[0] + atoms[1] + atoms[2] + atoms[3];
  if (total <= 0) atoms = {0.25, 0.25, 0.25, 0.25}, total = 1;
  for (double& a : atoms) a /= total;
  return KolmogorovModel{atoms}.to_record("random-classical");
}

/// Classical record with every weight nudged by a macroscopic amount
/// (magnitude in [0.02, 0.2], random sign), clamped back into [0, 1].
inline MembershipRecord random_perturbed_record(std::mt19937_64& rng) {
  MembershipRecord r = random_classical_record(rng);
  std::uniform_real_distribution<double> mag(0.02, 0.2);
  std::bernoulli_distribution coin(0.5);
  auto nudge = [&](double v) {
    double x = v + (coin(rng) ? mag(rng) : -mag(rng));
    return x < 0 ? 0.0 : (x > 1 ? 1.0 : x);
  };
  r.exemplar = "random-perturbed";
  r.muA = nudge(r.muA);
  r.muB = nudge(r.muB);
  r.muAp = nudge(r.muAp);
  r.muBp = nudge(r.muBp);
  r.muAB = nudge(r.muAB);
  r.muABp = nudge(r.muABp);
  r.muApB = nudge(r.muApB);
  r.muApBp = nudge(r.muApBp);
  return r;
}

/// Arbitrary record with independent uniform weights.
inline MembershipRecord random_record(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MembershipRecord r;
  r.exemplar = "random";
  r.muA = unit(rng);
  r.muB = unit(rng);
  r.muAp = unit(rng);
  r.muBp = unit(rng);
  r.muAB = unit(rng);
  r.muABp = unit(rng);
  r.muApB = unit(rng);
  r.muApBp = unit(rng);
  return r;
}

inline MembershipRecord uniform_classical_record() {
  MembershipRecord r;
  r.exemplar = "uniform";
  r.muA = r.muB = r.muAp = r.muBp = 0.5;
  r.muAB = r.muABp = r.muApB = r.muApBp = 0.25;
  return r;
}

inline MembershipRecord fixture_record(const std::string& table,
                                       const std::string& exemplar) {
  auto dataset = load_dataset_file(data_path(table + ".csv"));
  for (const auto& r : dataset.records) {
    if (r.exemplar == exemplar) return r;
  }
  REQUIRE_MESSAGE(false, "exemplar ", exemplar, " not in ", table);
  return {};
}

}  // namespace qcog::test

#endif  // QCOG_TESTS_SUPPORT_HPP
