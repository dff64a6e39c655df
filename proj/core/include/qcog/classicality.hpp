#ifndef QCOG_CLASSICALITY_HPP
#define QCOG_CLASSICALITY_HPP

#include <array>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "qcog/types.hpp"

namespace qcog {

/// Default tolerance when judging data that carry 2-decimal rounding.
inline constexpr double kDefaultTolerance = 0.015;

/// The thirteen per-record diagnostics, plus the two footnote quantities
/// I_AA' and I_BB' derivable from them.
struct DerivedParams {
  // overextension of each conjunction beyond the smaller component
  double deltaAB = 0, deltaABp = 0, deltaApB = 0, deltaApBp = 0;
  // conjunction factors 1 - mu(X) - mu(Y) + mu(X and Y)
  double kAB = 0, kABp = 0, kApB = 0, kApBp = 0;
  // marginal-law deviations
  double iA = 0, iB = 0, iAp = 0, iBp = 0;
  // normalization deviation 1 - sum of the four conjunction weights
  double iTotal = 0;
  // complement deviations: iAAp == iTotal - iA - iAp (identity)
  double iAAp = 0, iBBp = 0;

  double delta(Combination c) const;
  double k(Combination c) const;
  double i(Concept c) const;
};

DerivedParams compute_derived(const MembershipRecord& record);

/// One failed classicality condition with its signed residual.
struct Violation {
  std::string condition;
  double residual = 0;
};

struct CheckResult {
  bool classical = false;
  std::vector<Violation> violations;
};

/// Marginal-law test: classical iff all five I residuals vanish within tol.
CheckResult check_classical(const MembershipRecord& record,
                            double tol = kDefaultTolerance);

struct FullCheckResult : CheckResult {
  // The eighth condition follows from the fifth through seventh, so it is
  // evaluated and reported here but never decides `classical`.
  double redundant_residual = 0;
};

/// The original eight-condition test (four bound chains, four equalities).
FullCheckResult check_classical_full(const MembershipRecord& record,
                              double tol = kDefaultTolerance);

/// The reduced five-condition variant keeping the AB bound chains.
CheckResult check_classical_reduced(const MembershipRecord& record,
                           double tol = kDefaultTolerance);

/// The symmetric marginal-law variant with two bound chains.
CheckResult check_classical_marginal(const MembershipRecord& record,
                           double tol = kDefaultTolerance);

// Constructive four-atom model ------------------------------------------

/// Probability measure on {1,2,3,4}; events are subsets encoded as bit
/// masks (bit 0 = sample point 1).
struct KolmogorovModel {
  std::array<double, 4> atoms{};

  double probability(unsigned subset_mask) const;

  double muA() const { return atoms[0] + atoms[1]; }    // {1,2}
  double muB() const { return atoms[0] + atoms[2]; }    // {1,3}
  double muAp() const { return atoms[2] + atoms[3]; }   // {3,4}
  double muBp() const { return atoms[1] + atoms[3]; }   // {2,4}

  /// The record whose eight weights this measure reproduces.
  MembershipRecord to_record(std::string exemplar = "") const;
};

/// Builds the measure with atoms (mu(A and B), mu(A and B'), mu(A' and B),
/// mu(A' and B')). Refuses non-classical input, carrying the violations in
/// the error message.
KolmogorovModel build_kolmogorov_model(const MembershipRecord& record,
                                       double tol = kDefaultTolerance);

// Deviation taxonomy -------------------------------------------------------

struct DeviationFlags {
  std::set<Combination> overextension;
  std::set<Combination> double_overextension;
  std::set<Combination> k_violation;   // k < -tol (k == 0 counts as pass)
  bool negation_deviation = false;     // any |I| above tol

  bool empty() const {
    return overextension.empty() && double_overextension.empty() &&
           k_violation.empty() && !negation_deviation;
  }
};

/// Flags the four deviation modes. Takes the record rather than just the
/// derived parameters: double overextension compares against the larger
/// component weight, which the Delta/k/I values do not determine.
DeviationFlags classify_deviation(const MembershipRecord& record,
                                  double tol = kDefaultTolerance);

std::string to_string(const DeviationFlags& flags);

// Report emission -----------------------------------------------------------

/// Per-record rows `exemplar,deltaAB,...,iBp,classical,deviations` in the
/// ingestion tabular format; column order follows the bundled tables.
void write_classicality_report(const ConceptPairDataset& dataset,
                               std::ostream& out,
                               double tol = kDefaultTolerance);

/// Same content as a markdown table (values rounded for display).
void write_classicality_markdown(const ConceptPairDataset& dataset,
                                 std::ostream& out,
                                 double tol = kDefaultTolerance);

/// Same content as a JSON document (one object per exemplar).
void write_classicality_json(const ConceptPairDataset& dataset,
                             std::ostream& out,
                             double tol = kDefaultTolerance);

}  // namespace qcog

#endif  // QCOG_CLASSICALITY_HPP
