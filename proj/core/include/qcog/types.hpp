#ifndef QCOG_TYPES_HPP
#define QCOG_TYPES_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcog {

// Errors ---------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (CSV/JSON); message carries row/field context.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A requested quantity has no solution; message carries the bounds.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Statistically degenerate input (e.g. zero variance).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Concept pairs and their four conjunction experiments ------------------

/// Index of one of the four measured vectors: A, B, and the negations.
enum class Concept : int { A = 0, B = 1, Ap = 2, Bp = 3 };

/// One of the four tested conjunctions: AB, AB', A'B, A'B'.
enum class Combination : int { AB = 0, ABp = 1, ApB = 2, ApBp = 3 };

inline constexpr std::array<Combination, 4> kCombinations{
    Combination::AB, Combination::ABp, Combination::ApB, Combination::ApBp};

/// The two concepts entering a combination, in (X, Y) order.
constexpr std::pair<Concept, Concept> concepts_of(Combination c) {
  switch (c) {
    case Combination::AB:   return {Concept::A, Concept::B};
    case Combination::ABp:  return {Concept::A, Concept::Bp};
    case Combination::ApB:  return {Concept::Ap, Concept::B};
    case Combination::ApBp: return {Concept::Ap, Concept::Bp};
  }
  return {Concept::A, Concept::B};
}

const char* to_string(Combination c);
const char* to_string(Concept c);

// Measured data ----------------------------------------------------------

/// Eight membership weights of one exemplar: the four concepts and the
/// four conjunctions. All weights are large-number relative frequencies,
/// so they live in [0, 1].
struct MembershipRecord {
  std::string exemplar;
  double muA = 0, muB = 0, muAp = 0, muBp = 0;
  double muAB = 0, muABp = 0, muApB = 0, muApBp = 0;

  double marginal(Concept c) const {
    switch (c) {
      case Concept::A:  return muA;
      case Concept::B:  return muB;
      case Concept::Ap: return muAp;
      case Concept::Bp: return muBp;
    }
    return 0;
  }

  double conjunction(Combination c) const {
    switch (c) {
      case Combination::AB:   return muAB;
      case Combination::ABp:  return muABp;
      case Combination::ApB:  return muApB;
      case Combination::ApBp: return muApBp;
    }
    return 0;
  }

  /// Marginals of the combination's two concepts, in (X, Y) order.
  std::pair<double, double> marginals(Combination c) const {
    auto [x, y] = concepts_of(c);
    return {marginal(x), marginal(y)};
  }

  /// Throws ValidationError if any weight leaves [0, 1].
  void validate() const;
};

struct ConceptPairDataset {
  std::string pair_label;
  std::vector<MembershipRecord> records;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
};

// Raw 7-point-scale responses --------------------------------------------

/// Long-form panel of 7-point-scale answers, one column per question.
/// Entries are restricted to {-3,...,+3}.
struct LikertResponseMatrix {
  std::size_t subjects = 0;
  std::vector<std::string> questions;
  // entries[q] is the per-subject column for questions[q]
  std::vector<std::vector<int>> entries;

  const std::vector<int>& column(const std::string& question) const;
};

/// Closed interval; lo <= hi.
struct Interval {
  double lo = 0, hi = 0;
  bool contains(double x, double slack = 0) const {
    return x >= lo - slack && x <= hi + slack;
  }
  double width() const { return hi - lo; }
  /// Distance from x to the interval (0 when inside).
  double distance(double x) const {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0;
  }
};

}  // namespace qcog

#endif  // QCOG_TYPES_HPP
