#include "qcog/fitter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "qcog/classicality.hpp"
#include "qcog/dataset.hpp"

namespace qcog {

namespace {

constexpr double kExactResidual = 1e-9;
constexpr double kGolden = 0.6180339887498949;  // 1/phi
constexpr double kDegPerRad = 180.0 / std::numbers::pi;

double quadrant_objective(const MembershipRecord& r, double q) {
  double s = std::abs(r.muAB - q);
  s += std::abs(r.muABp - (r.muA - q));
  s += std::abs(r.muApB - (r.muB - q));
  s += std::abs(r.muApBp - (1 - r.muA - r.muB + q));
  return s;
}

}  // namespace

bool FitResult::all_feasible() const {
  return std::all_of(combinations.begin(), combinations.end(),
                     [](const CombinationFit& f) { return f.feasible; });
}

double choose_correlation(const MembershipRecord& record) {
  Interval bounds = frechet_bounds(record.muA, record.muB);
  double a = bounds.lo, b = bounds.hi;
  if (b - a < 1e-15) return a;

  // Golden-section on the convex piecewise-linear objective.
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = quadrant_objective(record, x1);
  double f2 = quadrant_objective(record, x2);
  while (b - a > 1e-12) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = quadrant_objective(record, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = quadrant_objective(record, x2);
    }
  }
  double q = 0.5 * (a + b);
  double fq = quadrant_objective(record, q);

  // Ties break toward the independence table. The minimizing set is an
  // interval by convexity, so bisect along the segment toward mu_A*mu_B
  // for the farthest point still achieving the minimum.
  double independent =
      std::clamp(record.muA * record.muB, bounds.lo, bounds.hi);
  if (quadrant_objective(record, independent) <= fq + 1e-12) return independent;
  double lo = 0, hi = 1;  // parameter along [q, independent]
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    double cand = q + mid * (independent - q);
    if (quadrant_objective(record, cand) <= fq + 1e-12) lo = mid;
    else hi = mid;
  }
  return q + lo * (independent - q);
}

SectorSolution solve_sector_weights(double target, double q,
                                    const InterferenceInterval& interval,
                                    double capacity) {
  double avg = 0.5 * (interval.lo + interval.hi);
  Interval u_sol{std::min(q, interval.lo), std::max(q, interval.hi)};
  if (!u_sol.contains(target, 1e-12)) {
    throw InfeasibleError(
        "target " + format_double(target) + " outside U_sol [" +
        format_double(u_sol.lo) + ", " + format_double(u_sol.hi) +
        "], distance " + format_double(u_sol.distance(target)));
  }

  if (interval.contains(target, 1e-12)) {
    // Pure first sector; invert the cosine against the non-negative capacity.
    if (capacity <= 0) return {0.0, std::numbers::pi / 2};
    double ratio = std::clamp((target - avg) / capacity, -1.0, 1.0);
    return {0.0, std::acos(ratio)};
  }

  // Target beyond the first-sector interval: the nearest endpoint is
  // pushed toward q by the smallest sufficient m^2, with cos phi = +-1.
  double endpoint = target > interval.hi ? interval.hi : interval.lo;
  double phi = target > interval.hi ? 0.0 : std::numbers::pi;
  double m2 = (target - endpoint) / (q - endpoint);
  m2 = std::clamp(m2, 0.0, 1.0);
  if (1 - m2 < 1e-15) phi = 0.0;  // n = 0 leaves the angle inert
  return {m2, phi};
}

namespace {

CombinationFit fit_combination(const MembershipRecord& record,
                               const Frame& frame,
                               const SecondSectorTable& table, Combination c,
                               const FitOptions& options,
                               SectorWeights& weights) {
  CombinationFit fit;
  double target = record.conjunction(c);
  double q = table.q(c);
  Interval first = first_sector_interval(frame, c);
  double capacity = 0.5 * first.width();
  double lambda = interference_overlap(frame, c);
  fit.u_sol = {std::min(q, first.lo), std::max(q, first.hi)};
  fit.first_sector_only = first.contains(target, 1e-12);
  fit.feasible = fit.u_sol.contains(target, 1e-12);

  auto store = [&](double m2, double phi) {
    // The solved angle is relative to +capacity; flip when the frame's
    // signed overlap is negative so re-evaluation reproduces the target.
    if (lambda < 0 && m2 < 1) phi = std::numbers::pi - phi;
    weights.m = std::sqrt(m2);
    weights.n = std::sqrt(1 - m2);
    weights.phi = phi;
  };

  if (!fit.feasible) {
    fit.distance = fit.u_sol.distance(target);
    // Closest attainable point, reported honestly rather than clamped.
    double nearest = std::clamp(target, fit.u_sol.lo, fit.u_sol.hi);
    auto sol = solve_sector_weights(nearest, q, first, capacity);
    store(sol.m2, sol.phi);
  } else if (options.m2_target && *options.m2_target > 0) {
    // Target-m^2 mode: honor the requested mixture when some angle still
    // reaches the target; otherwise fall back to the minimal-m^2 solution.
    double m2 = std::clamp(*options.m2_target, 0.0, 1.0);
    double rest = m2 * q + (1 - m2) * 0.5 * (first.lo + first.hi);
    double reach = (1 - m2) * capacity;
    if (std::abs(target - rest) <= reach + 1e-12 && 1 - m2 > 1e-15) {
      double ratio = std::clamp((target - rest) / reach, -1.0, 1.0);
      store(m2, std::acos(ratio));
    } else if (std::abs(target - q) <= 1e-12 && m2 >= 1 - 1e-15) {
      store(1.0, 0.0);
    } else {
      auto sol = solve_sector_weights(target, q, first, capacity);
      store(sol.m2, sol.phi);
    }
  } else {
    auto sol = solve_sector_weights(target, q, first, capacity);
    store(sol.m2, sol.phi);
  }
  return fit;
}

}  // namespace

FitResult fit_record(const MembershipRecord& record, const FitOptions& options) {
  FitResult result;
  result.exemplar = record.exemplar;
  result.frame = construct_frame(record);
  double qAB = choose_correlation(record);
  result.params.table = table_from_margins(record.muA, record.muB, qAB);

  for (auto c : kCombinations) {
    auto idx = static_cast<std::size_t>(c);
    result.combinations[idx] =
        fit_combination(record, result.frame, result.params.table, c, options,
                        result.params.of(c));
    double refit = fock_membership(result.params, result.frame, c);
    result.combinations[idx].residual = refit - record.conjunction(c);
  }

  FrameResiduals fr = frame_residuals(result.frame, record);
  for (int i = 0; i < 4; ++i) {
    result.residuals[static_cast<std::size_t>(i)] = fr.born[static_cast<std::size_t>(i)];
  }
  for (auto c : kCombinations) {
    result.residuals[4 + static_cast<std::size_t>(c)] =
        result.combinations[static_cast<std::size_t>(c)].residual;
  }
  result.residuals[8] = result.params.table.marginA() - record.muA;
  result.residuals[9] = result.params.table.marginB() - record.muB;
  result.residuals[10] = (1 - record.muA) - record.muAp;
  result.residuals[11] = (1 - record.muB) - record.muBp;
  return result;
}

DatasetFit fit_dataset(const ConceptPairDataset& dataset,
                       const FitOptions& options) {
  DatasetFit fit;
  fit.summary.records = dataset.records.size();
  std::array<double, 4> sum_m{}, sum_n{};
  for (const auto& record : dataset.records) {
    FitResult r = fit_record(record, options);
    for (auto c : kCombinations) {
      auto idx = static_cast<std::size_t>(c);
      ++fit.summary.conjunction_targets;
      if (r.combinations[idx].feasible &&
          std::abs(r.combinations[idx].residual) < kExactResidual) {
        ++fit.summary.fitted_exactly;
      }
      sum_m[idx] += std::abs(r.params.of(c).m);
      sum_n[idx] += std::abs(r.params.of(c).n);
    }
    fit.results.push_back(std::move(r));
  }
  if (fit.summary.conjunction_targets == 0) {
    fit.summary.feasible_fraction = std::numeric_limits<double>::quiet_NaN();
  } else {
    fit.summary.feasible_fraction =
        static_cast<double>(fit.summary.fitted_exactly) /
        static_cast<double>(fit.summary.conjunction_targets);
    for (std::size_t i = 0; i < 4; ++i) {
      sum_m[i] /= static_cast<double>(fit.summary.records);
      sum_n[i] /= static_cast<double>(fit.summary.records);
    }
  }
  fit.summary.mean_abs_m = sum_m;
  fit.summary.mean_abs_n = sum_n;
  return fit;
}

// Verification --------------------------------------------------------------

double VerificationReport::max_abs_conjunction() const {
  double m = 0;
  for (double r : conjunction) m = std::max(m, std::abs(r));
  return m;
}

bool VerificationReport::within(double tol) const {
  return frame.within(tol) && max_abs_conjunction() <= tol;
}

VerificationReport verify_published(const ModelDocument& doc,
                                    const MembershipRecord& record) {
  VerificationReport report;
  report.exemplar = record.exemplar;
  report.frame = frame_residuals(doc.frame, record);
  for (auto c : kCombinations) {
    auto idx = static_cast<std::size_t>(c);
    const auto& entry = doc.combinations[idx];
    auto [mx, my] = record.marginals(c);
    // Documented m and n are used exactly as given; reference solutions
    // carry independently rounded values that need not satisfy m^2+n^2=1.
    double avg = 0.5 * (mx + my);
    double lambda = interference_overlap(doc.frame, c);
    double predicted = entry.m * entry.m * doc.table.q(c) +
                       entry.n * entry.n * (avg + lambda * std::cos(entry.phi));
    report.conjunction[idx] = predicted - record.conjunction(c);
  }
  return report;
}

// Documents ------------------------------------------------------------------

namespace {

nlohmann::ordered_json vec_json(const Vec8& v) {
  auto a = nlohmann::ordered_json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Vec8 vec_from(const nlohmann::json& j, const char* name) {
  const auto& a = j.at(name);
  if (!a.is_array() || a.size() != 8) {
    throw ParseError(std::string("field '") + name + "' must hold 8 numbers");
  }
  Vec8 v{};
  for (std::size_t i = 0; i < 8; ++i) v[i] = a[i].get<double>();
  return v;
}

nlohmann::ordered_json document_json(const ModelDocument& doc) {
  nlohmann::ordered_json j;
  j["exemplar"] = doc.exemplar;
  if (!doc.dataset.empty()) j["dataset"] = doc.dataset;
  j["frame"] = {{"vecA", vec_json(doc.frame.vecA)},
                {"vecB", vec_json(doc.frame.vecB)},
                {"vecAp", vec_json(doc.frame.vecAp)},
                {"vecBp", vec_json(doc.frame.vecBp)}};
  j["table"] = {{"qAB", doc.table.qAB},
                {"qABp", doc.table.qABp},
                {"qApB", doc.table.qApB},
                {"qApBp", doc.table.qApBp}};
  nlohmann::ordered_json combos;
  for (auto c : kCombinations) {
    const auto& e = doc.combinations[static_cast<std::size_t>(c)];
    nlohmann::ordered_json entry;
    entry["m"] = e.m;
    entry["n"] = e.n;
    entry["phi_deg"] = e.phi * kDegPerRad;
    if (e.feasible) entry["feasible"] = *e.feasible;
    if (e.residual) entry["residual"] = *e.residual;
    combos[to_string(c)] = std::move(entry);
  }
  j["combinations"] = std::move(combos);
  return j;
}

ModelDocument document_from_json(const nlohmann::json& j) {
  ModelDocument doc;
  doc.exemplar = j.at("exemplar").get<std::string>();
  doc.dataset = j.value("dataset", "");
  const auto& f = j.at("frame");
  doc.frame.vecA = vec_from(f, "vecA");
  doc.frame.vecB = vec_from(f, "vecB");
  doc.frame.vecAp = vec_from(f, "vecAp");
  doc.frame.vecBp = vec_from(f, "vecBp");
  const auto& t = j.at("table");
  doc.table = {t.at("qAB").get<double>(), t.at("qABp").get<double>(),
               t.at("qApB").get<double>(), t.at("qApBp").get<double>()};
  const auto& combos = j.at("combinations");
  for (auto c : kCombinations) {
    const auto& e = combos.at(to_string(c));
    auto& entry = doc.combinations[static_cast<std::size_t>(c)];
    entry.m = e.at("m").get<double>();
    entry.n = e.at("n").get<double>();
    entry.phi = e.at("phi_deg").get<double>() / kDegPerRad;
    if (e.contains("feasible")) entry.feasible = e["feasible"].get<bool>();
    if (e.contains("residual")) entry.residual = e["residual"].get<double>();
  }
  return doc;
}

}  // namespace

ModelDocument to_model_document(const FitResult& result,
                                const std::string& dataset_label) {
  ModelDocument doc;
  doc.exemplar = result.exemplar;
  doc.dataset = dataset_label;
  doc.frame = result.frame;
  doc.table = result.params.table;
  for (auto c : kCombinations) {
    auto idx = static_cast<std::size_t>(c);
    auto& entry = doc.combinations[idx];
    entry.m = result.params.of(c).m;
    entry.n = result.params.of(c).n;
    entry.phi = result.params.of(c).phi;
    entry.feasible = result.combinations[idx].feasible;
    entry.residual = result.combinations[idx].residual;
  }
  return doc;
}

std::string model_document_to_json(const ModelDocument& doc) {
  return document_json(doc).dump(2) + "\n";
}

std::string fit_to_json(const DatasetFit& fit, const std::string& pair_label) {
  nlohmann::ordered_json j;
  j["generator"] = "qcog-fitter/0.1.0";
  j["pair_label"] = pair_label;
  auto results = nlohmann::ordered_json::array();
  for (const auto& r : fit.results) {
    results.push_back(document_json(to_model_document(r, pair_label)));
  }
  j["results"] = std::move(results);
  nlohmann::ordered_json summary;
  summary["records"] = fit.summary.records;
  summary["conjunction_targets"] = fit.summary.conjunction_targets;
  summary["fitted_exactly"] = fit.summary.fitted_exactly;
  if (fit.summary.conjunction_targets > 0) {
    summary["feasible_fraction"] = fit.summary.feasible_fraction;
    for (auto c : kCombinations) {
      auto idx = static_cast<std::size_t>(c);
      summary[std::string("mean_abs_m_") + to_string(c)] =
          fit.summary.mean_abs_m[idx];
      summary[std::string("mean_abs_n_") + to_string(c)] =
          fit.summary.mean_abs_n[idx];
    }
  } else {
    summary["feasible_fraction"] = "n/a";
  }
  j["summary"] = std::move(summary);
  return j.dump(2) + "\n";
}

ModelDocument model_document_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model document: ") + e.what());
  }
  return document_from_json(j);
}

std::vector<ModelDocument> model_documents_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model document: ") + e.what());
  }
  std::vector<ModelDocument> docs;
  if (j.contains("results")) {
    for (const auto& entry : j["results"]) {
      docs.push_back(document_from_json(entry));
    }
  } else {
    docs.push_back(document_from_json(j));
  }
  return docs;
}

MembershipRecord emergence_only_record(double muA, double muB) {
  MembershipRecord r;
  r.exemplar = "emergence-only";
  r.muA = muA;
  r.muB = muB;
  r.muAp = 1 - muA;
  r.muBp = 1 - muB;
  r.muAB = 0.5 * (r.muA + r.muB);
  r.muABp = 0.5 * (r.muA + r.muBp);
  r.muApB = 0.5 * (r.muAp + r.muB);
  r.muApBp = 0.5 * (r.muAp + r.muBp);
  return r;
}

}  // namespace qcog
