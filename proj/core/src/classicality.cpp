#include "qcog/classicality.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcog/dataset.hpp"

namespace qcog {

namespace {

void check_eq(CheckResult& result, const char* name, double residual,
              double tol) {
  if (std::abs(residual) > tol) {
    result.violations.push_back({name, residual});
  }
}

// For a chain 0 <= lo <= hi <= 1 the residual is the worst violation amount.
void check_chain(CheckResult& result, const char* name, double lo, double hi,
                 double tol) {
  double v = std::max({-lo, lo - hi, hi - 1.0});
  if (v > tol) result.violations.push_back({name, v});
}

void check_nonneg(CheckResult& result, const char* name, double value,
                  double tol) {
  if (value < -tol) result.violations.push_back({name, -value});
}

std::string join_violations(const std::vector<Violation>& violations) {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << violations[i].condition << " residual "
        << format_double(violations[i].residual);
  }
  return out.str();
}

}  // namespace

double DerivedParams::delta(Combination c) const {
  switch (c) {
    case Combination::AB:   return deltaAB;
    case Combination::ABp:  return deltaABp;
    case Combination::ApB:  return deltaApB;
    case Combination::ApBp: return deltaApBp;
  }
  return 0;
}

double DerivedParams::k(Combination c) const {
  switch (c) {
    case Combination::AB:   return kAB;
    case Combination::ABp:  return kABp;
    case Combination::ApB:  return kApB;
    case Combination::ApBp: return kApBp;
  }
  return 0;
}

double DerivedParams::i(Concept c) const {
  switch (c) {
    case Concept::A:  return iA;
    case Concept::B:  return iB;
    case Concept::Ap: return iAp;
    case Concept::Bp: return iBp;
  }
  return 0;
}

DerivedParams compute_derived(const MembershipRecord& r) {
  DerivedParams p;
  p.deltaAB = r.muAB - std::min(r.muA, r.muB);
  p.deltaABp = r.muABp - std::min(r.muA, r.muBp);
  p.deltaApB = r.muApB - std::min(r.muAp, r.muB);
  p.deltaApBp = r.muApBp - std::min(r.muAp, r.muBp);
  p.kAB = 1 - r.muA - r.muB + r.muAB;
  p.kABp = 1 - r.muA - r.muBp + r.muABp;
  p.kApB = 1 - r.muAp - r.muB + r.muApB;
  p.kApBp = 1 - r.muAp - r.muBp + r.muApBp;
  p.iA = r.muA - r.muAB - r.muABp;
  p.iB = r.muB - r.muAB - r.muApB;
  p.iAp = r.muAp - r.muApBp - r.muApB;
  p.iBp = r.muBp - r.muApBp - r.muABp;
  p.iTotal = 1 - r.muAB - r.muABp - r.muApB - r.muApBp;
  p.iAAp = 1 - r.muA - r.muAp;
  p.iBBp = 1 - r.muB - r.muBp;
  return p;
}

CheckResult check_classical(const MembershipRecord& r, double tol) {
  if (tol < 0) throw Error("negative tolerance");
  auto p = compute_derived(r);
  CheckResult result;
  check_eq(result, "I_A", p.iA, tol);
  check_eq(result, "I_B", p.iB, tol);
  check_eq(result, "I_A'", p.iAp, tol);
  check_eq(result, "I_B'", p.iBp, tol);
  check_eq(result, "I_ABA'B'", p.iTotal, tol);
  result.classical = result.violations.empty();
  return result;
}

FullCheckResult check_classical_full(const MembershipRecord& r, double tol) {
  FullCheckResult result;
  check_chain(result, "0<=mu(AB)<=mu(A)<=1: bounds", std::min(r.muAB, r.muA),
              std::max(r.muAB, r.muA), tol);
  check_nonneg(result, "mu(A)-mu(AB)>=0", r.muA - r.muAB, tol);
  check_nonneg(result, "mu(B)-mu(AB)>=0", r.muB - r.muAB, tol);
  check_chain(result, "0<=mu(AB)<=mu(B)<=1: bounds", std::min(r.muAB, r.muB),
              std::max(r.muAB, r.muB), tol);
  check_nonneg(result, "mu(A')-mu(A'B')>=0", r.muAp - r.muApBp, tol);
  check_nonneg(result, "mu(B')-mu(A'B')>=0", r.muBp - r.muApBp, tol);
  check_eq(result, "mu(A)-mu(AB)=mu(AB')", r.muA - r.muAB - r.muABp, tol);
  check_eq(result, "mu(B')-mu(A'B')=mu(AB')", r.muBp - r.muApBp - r.muABp, tol);
  check_eq(result, "mu(B)-mu(AB)=mu(A'B)", r.muB - r.muAB - r.muApB, tol);
  check_eq(result, "mu(A')-mu(A'B')=mu(A'B)", r.muAp - r.muApBp - r.muApB, tol);
  check_eq(result, "1-mu(A)-mu(B)+mu(AB)=mu(A'B')",
           1 - r.muA - r.muB + r.muAB - r.muApBp, tol);
  result.redundant_residual = 1 - r.muAp - r.muBp + r.muApBp - r.muAB;
  result.classical = result.violations.empty();
  return result;
}

CheckResult check_classical_reduced(const MembershipRecord& r, double tol) {
  CheckResult result;
  check_chain(result, "0<=mu(AB)<=mu(A)<=1", std::min(r.muAB, r.muA),
              std::max(r.muAB, r.muA), tol);
  check_nonneg(result, "mu(A)-mu(AB)>=0", r.muA - r.muAB, tol);
  check_chain(result, "0<=mu(AB)<=mu(B)<=1", std::min(r.muAB, r.muB),
              std::max(r.muAB, r.muB), tol);
  check_nonneg(result, "mu(B)-mu(AB)>=0", r.muB - r.muAB, tol);
  check_eq(result, "mu(A)-mu(AB)=mu(AB')", r.muA - r.muAB - r.muABp, tol);
  check_eq(result, "mu(B')-mu(A'B')=mu(AB')", r.muBp - r.muApBp - r.muABp, tol);
  check_eq(result, "mu(B)-mu(AB)=mu(A'B)", r.muB - r.muAB - r.muApB, tol);
  check_eq(result, "mu(A')-mu(A'B')=mu(A'B)", r.muAp - r.muApBp - r.muApB, tol);
  check_eq(result, "1-mu(A)-mu(B)+mu(AB)=mu(A'B')",
           1 - r.muA - r.muB + r.muAB - r.muApBp, tol);
  check_nonneg(result, "mu(A'B')>=0", r.muApBp, tol);
  result.classical = result.violations.empty();
  return result;
}

CheckResult check_classical_marginal(const MembershipRecord& r, double tol) {
  CheckResult result;
  check_chain(result, "0<=mu(AB)<=mu(A)<=1", std::min(r.muAB, r.muA),
              std::max(r.muAB, r.muA), tol);
  check_nonneg(result, "mu(A)-mu(AB)>=0", r.muA - r.muAB, tol);
  check_chain(result, "0<=mu(AB)<=mu(B)<=1", std::min(r.muAB, r.muB),
              std::max(r.muAB, r.muB), tol);
  check_nonneg(result, "mu(B)-mu(AB)>=0", r.muB - r.muAB, tol);
  check_eq(result, "mu(A)=mu(AB)+mu(AB')", r.muA - r.muAB - r.muABp, tol);
  check_eq(result, "mu(B)=mu(AB)+mu(A'B)", r.muB - r.muAB - r.muApB, tol);
  check_eq(result, "mu(A')=mu(A'B')+mu(A'B)", r.muAp - r.muApBp - r.muApB, tol);
  check_eq(result, "mu(B')=mu(A'B')+mu(AB')", r.muBp - r.muApBp - r.muABp, tol);
  check_eq(result, "1-mu(AB)-mu(AB')-mu(A'B)=mu(A'B')",
           1 - r.muAB - r.muABp - r.muApB - r.muApBp, tol);
  check_nonneg(result, "mu(A'B')>=0", r.muApBp, tol);
  result.classical = result.violations.empty();
  return result;
}

double KolmogorovModel::probability(unsigned subset_mask) const {
  double p = 0;
  for (int i = 0; i < 4; ++i) {
    if (subset_mask & (1u << i)) p += atoms[static_cast<std::size_t>(i)];
  }
  return p;
}

MembershipRecord KolmogorovModel::to_record(std::string exemplar) const {
  MembershipRecord r;
  r.exemplar = std::move(exemplar);
  r.muAB = atoms[0];
  r.muABp = atoms[1];
  r.muApB = atoms[2];
  r.muApBp = atoms[3];
  r.muA = atoms[0] + atoms[1];
  r.muB = atoms[0] + atoms[2];
  r.muAp = atoms[2] + atoms[3];
  r.muBp = atoms[1] + atoms[3];
  return r;
}

KolmogorovModel build_kolmogorov_model(const MembershipRecord& r, double tol) {
  auto check = check_classical(r, tol);
  if (!check.classical) {
    throw InfeasibleError("record '" + r.exemplar +
                          "' is not classical: " + join_violations(check.violations));
  }
  return KolmogorovModel{{r.muAB, r.muABp, r.muApB, r.muApBp}};
}

DeviationFlags classify_deviation(const MembershipRecord& r, double tol) {
  auto p = compute_derived(r);
  DeviationFlags flags;
  for (auto c : kCombinations) {
    auto [mx, my] = r.marginals(c);
    if (p.delta(c) > tol) flags.overextension.insert(c);
    if (r.conjunction(c) - std::max(mx, my) > tol) {
      flags.double_overextension.insert(c);
    }
    if (p.k(c) < -tol) flags.k_violation.insert(c);
  }
  flags.negation_deviation =
      std::abs(p.iA) > tol || std::abs(p.iB) > tol || std::abs(p.iAp) > tol ||
      std::abs(p.iBp) > tol || std::abs(p.iTotal) > tol;
  return flags;
}

std::string to_string(const DeviationFlags& flags) {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const std::string& tag) {
    if (!first) out << ";";
    out << tag;
    first = false;
  };
  for (auto c : flags.overextension) emit(std::string("overextension(") + to_string(c) + ")");
  for (auto c : flags.double_overextension) emit(std::string("double-overextension(") + to_string(c) + ")");
  for (auto c : flags.k_violation) emit(std::string("k-violation(") + to_string(c) + ")");
  if (flags.negation_deviation) emit("negation-deviation");
  if (first) out << "none";
  return out.str();
}

namespace {

// Table column order: the four overextensions, the normalization
// deviation, then the four marginal-law deviations.
std::array<double, 9> report_columns(const DerivedParams& p) {
  return {p.deltaAB, p.deltaABp, p.deltaApB, p.deltaApBp,
          p.iTotal,  p.iA,       p.iB,       p.iAp,      p.iBp};
}

}  // namespace

void write_classicality_report(const ConceptPairDataset& dataset,
                               std::ostream& out, double tol) {
  out << "exemplar,deltaAB,deltaABp,deltaApB,deltaApBp,iTotal,iA,iB,iAp,iBp,"
         "classical,deviations\n";
  for (const auto& r : dataset.records) {
    auto p = compute_derived(r);
    out << r.exemplar;
    for (double v : report_columns(p)) out << ',' << format_double(v);
    out << ',' << (check_classical(r, tol).classical ? "yes" : "no");
    out << ',' << to_string(classify_deviation(r, tol)) << '\n';
  }
}

void write_classicality_json(const ConceptPairDataset& dataset,
                             std::ostream& out, double tol) {
  nlohmann::ordered_json doc;
  doc["pair_label"] = dataset.pair_label;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : dataset.records) {
    auto p = compute_derived(r);
    nlohmann::ordered_json row;
    row["exemplar"] = r.exemplar;
    const char* names[] = {"deltaAB", "deltaABp", "deltaApB", "deltaApBp",
                           "iTotal",  "iA",       "iB",       "iAp",
                           "iBp"};
    auto values = report_columns(p);
    for (std::size_t i = 0; i < values.size(); ++i) row[names[i]] = values[i];
    row["kAB"] = p.kAB;
    row["kABp"] = p.kABp;
    row["kApB"] = p.kApB;
    row["kApBp"] = p.kApBp;
    row["classical"] = check_classical(r, tol).classical;
    row["deviations"] = to_string(classify_deviation(r, tol));
    rows.push_back(std::move(row));
  }
  doc["records"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void write_classicality_markdown(const ConceptPairDataset& dataset,
                                 std::ostream& out, double tol) {
  auto cell = [](double v) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << v;
    return s.str();
  };
  if (!dataset.pair_label.empty()) out << "## " << dataset.pair_label << "\n\n";
  out << "| Exemplar | D_AB | D_AB' | D_A'B | D_A'B' | I_ABA'B' | I_A | I_B "
         "| I_A' | I_B' | classical | deviations |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : dataset.records) {
    auto p = compute_derived(r);
    out << "| " << r.exemplar << " ";
    for (double v : report_columns(p)) out << "| " << cell(v) << " ";
    out << "| " << (check_classical(r, tol).classical ? "yes" : "no") << " ";
    out << "| " << to_string(classify_deviation(r, tol)) << " |\n";
  }
}

}  // namespace qcog
