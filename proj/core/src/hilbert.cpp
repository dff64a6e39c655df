#include "qcog/hilbert.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <nlohmann/json.hpp>

#include "qcog/dataset.hpp"

namespace qcog {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double dot_high(const Vec8& a, const Vec8& b) {
  double s = 0;
  for (int i = 4; i < 8; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
  return s;
}

double dot_full(const Vec8& a, const Vec8& b) {
  double s = 0;
  for (int i = 0; i < 8; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
  return s;
}

}  // namespace

const Vec8& Frame::vec(Concept c) const {
  switch (c) {
    case Concept::A:  return vecA;
    case Concept::B:  return vecB;
    case Concept::Ap: return vecAp;
    case Concept::Bp: return vecBp;
  }
  return vecA;
}

double Frame::phase(Concept c) const {
  switch (c) {
    case Concept::A:  return phiA;
    case Concept::B:  return phiB;
    case Concept::Ap: return phiAp;
    case Concept::Bp: return phiBp;
  }
  return 0;
}

double Frame::phase_difference(Combination c) const {
  auto [x, y] = concepts_of(c);
  return phase(y) - phase(x);
}

double born_weight(const Vec8& v) {
  double norm2 = dot_full(v, v);
  // loose gate: hand-transcribed frames carry 2-decimal rounding
  if (std::abs(norm2 - 1.0) > 0.05) {
    throw ValidationError("born_weight: vector norm^2 = " +
                          format_double(norm2) + ", expected 1");
  }
  return dot_high(v, v);
}

double interference_overlap(const Frame& frame, Combination c) {
  auto [x, y] = concepts_of(c);
  return dot_high(frame.vec(x), frame.vec(y));
}

double interference_term(const Frame& frame, Combination c) {
  return interference_overlap(frame, c) * std::cos(frame.phase_difference(c));
}

double first_sector_mu(const Frame& frame, Combination c) {
  auto [x, y] = concepts_of(c);
  double avg = 0.5 * (born_weight(frame.vec(x)) + born_weight(frame.vec(y)));
  return avg + interference_term(frame, c);
}

double first_sector_mu(const Frame& frame, Combination c, double angle) {
  auto [x, y] = concepts_of(c);
  double avg = 0.5 * (born_weight(frame.vec(x)) + born_weight(frame.vec(y)));
  return avg + interference_overlap(frame, c) * std::cos(angle);
}

double interference_capacity(double muX, double muY) {
  if (!(muX >= 0 && muX <= 1 && muY >= 0 && muY <= 1)) {
    throw ValidationError("interference_capacity: weights must be in [0, 1]");
  }
  return std::min(std::sqrt(muX * muY), std::sqrt((1 - muX) * (1 - muY)));
}

InterferenceInterval first_sector_interval(const Frame& frame, Combination c) {
  auto [x, y] = concepts_of(c);
  double avg = 0.5 * (born_weight(frame.vec(x)) + born_weight(frame.vec(y)));
  double lam = std::abs(interference_overlap(frame, c));
  return {avg - lam, avg + lam};
}

double solve_first_sector_angle(const Frame& frame, Combination c,
                                double target) {
  auto [x, y] = concepts_of(c);
  double avg = 0.5 * (born_weight(frame.vec(x)) + born_weight(frame.vec(y)));
  double lam = interference_overlap(frame, c);
  double diff = target - avg;
  if (lam == 0.0) {
    if (std::abs(diff) <= 1e-12) return std::numbers::pi / 2;
    throw InfeasibleError("target " + format_double(target) +
                          " unreachable: zero interference overlap");
  }
  double ratio = diff / lam;
  if (std::abs(ratio) > 1 + 1e-9) {
    Interval iv = first_sector_interval(frame, c);
    throw InfeasibleError("target " + format_double(target) +
                          " outside first-sector interval [" +
                          format_double(iv.lo) + ", " + format_double(iv.hi) + "]");
  }
  return std::acos(std::clamp(ratio, -1.0, 1.0));
}

double FrameResiduals::max_born() const {
  double m = 0;
  for (double b : born) m = std::max(m, std::abs(b));
  return m;
}

bool FrameResiduals::within(double tol) const {
  return max_norm <= tol && max_orthogonality <= tol && max_born() <= tol;
}

FrameResiduals frame_residuals(const Frame& frame,
                               const MembershipRecord& record) {
  FrameResiduals res;
  const Concept all[] = {Concept::A, Concept::B, Concept::Ap, Concept::Bp};
  for (int i = 0; i < 4; ++i) {
    const Vec8& v = frame.vec(all[i]);
    res.max_norm = std::max(res.max_norm, std::abs(dot_full(v, v) - 1.0));
    res.born[static_cast<std::size_t>(i)] =
        dot_high(v, v) - record.marginal(all[i]);
    for (int j = i + 1; j < 4; ++j) {
      res.max_orthogonality = std::max(
          res.max_orthogonality, std::abs(dot_full(v, frame.vec(all[j]))));
    }
  }
  return res;
}

// Gram construction ---------------------------------------------------------

namespace {

using Eigen::Matrix4d;
using Eigen::Vector4d;

// Loose feasibility margin used while searching; the final repair step
// tightens to 1e-13 before factorization.
constexpr double kSearchEps = 1e-9;

bool spectrum_ok(const Matrix4d& g, double eps) {
  Eigen::SelfAdjointEigenSolver<Matrix4d> es(g, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().maxCoeff();
  return lo >= -eps && hi <= 1 + eps;
}

// Largest s in [0,1] with diag + s*offdiag feasible at eps; the feasible
// set along this path is an interval containing s = 0.
Matrix4d pull_to_feasible(const Matrix4d& g, const Vector4d& mu, double eps) {
  if (spectrum_ok(g, eps)) return g;
  Matrix4d d = mu.asDiagonal();
  Matrix4d o = g - d;
  double lo = 0, hi = 1;
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    if (spectrum_ok(d + mid * o, eps)) lo = mid;
    else hi = mid;
  }
  return d + lo * o;
}

// Feasible range of entry (i,j) with all other entries held fixed.
Interval entry_interval(Matrix4d g, int i, int j) {
  auto ok = [&](double v) {
    g(i, j) = g(j, i) = v;
    return spectrum_ok(g, kSearchEps);
  };
  double cur = g(i, j);
  double lo = cur, hi = cur;
  for (double step = 1.0; step > 1e-12; step /= 2) {
    while (ok(hi + step)) hi += step;
    while (ok(lo - step)) lo -= step;
  }
  return {lo, hi};
}

struct PairEntry {
  int row, col;
};

// Gram index order (A, B, A', B'); the four combination entries and the
// two couplings no combination reads.
constexpr PairEntry kObjective[] = {{0, 1}, {0, 3}, {2, 1}, {2, 3}};
constexpr PairEntry kSlack[] = {{0, 2}, {1, 3}};

Matrix4d optimize_gram(const Vector4d& mu, const std::array<double, 4>& needs) {
  Matrix4d g = mu.asDiagonal();
  // Pass 1: grant each combination the overlap its target needs, as far
  // as the joint spectrum allows. A few sweeps settle the interplay.
  for (int sweep = 0; sweep < 6; ++sweep) {
    g = pull_to_feasible(g, mu, kSearchEps);
    for (int p = 0; p < 4; ++p) {
      auto [i, j] = kObjective[p];
      Interval iv = entry_interval(g, i, j);
      double cap = std::max(std::abs(iv.lo), std::abs(iv.hi));
      double want = std::min(needs[static_cast<std::size_t>(p)] + 1e-6,
                             cap * (1 - 1e-9));
      double v = std::abs(iv.hi) >= std::abs(iv.lo) ? want : -want;
      g(i, j) = g(j, i) = v;
    }
    for (auto [i, j] : kSlack) {
      Interval iv = entry_interval(g, i, j);
      g(i, j) = g(j, i) = 0.5 * (iv.lo + iv.hi);
    }
  }
  // Pass 2: spend the remaining spectral room growing each overlap toward
  // its larger feasible endpoint. Values only grow, so needs stay met.
  for (int sweep = 0; sweep < 3; ++sweep) {
    for (auto [i, j] : kObjective) {
      Interval iv = entry_interval(g, i, j);
      double v = std::abs(iv.lo) > std::abs(iv.hi) ? iv.lo : iv.hi;
      double mid = 0.5 * (iv.lo + iv.hi);
      g(i, j) = g(j, i) = v + 1e-7 * (mid - v);
    }
  }
  return g;
}

}  // namespace

Frame construct_frame(const MembershipRecord& record) {
  record.validate();
  Vector4d mu(record.muA, record.muB, record.muAp, record.muBp);
  std::array<double, 4> needs{};
  for (auto c : kCombinations) {
    auto [mx, my] = record.marginals(c);
    needs[static_cast<std::size_t>(c)] =
        std::abs(record.conjunction(c) - 0.5 * (mx + my));
  }

  Matrix4d g = optimize_gram(mu, needs);
  // Entries below the search tolerance's noise floor (sqrt(1e-9)) are
  // zero-capacity artifacts, not usable overlap.
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (std::abs(g(i, j)) < 1e-4) g(i, j) = g(j, i) = 0;
    }
  }
  // Strict repair: pull to a spectrum within 1e-13 of [0,1], then clip the
  // leftover eigenvalue dust at factorization time.
  g = pull_to_feasible(g, mu, 1e-13);

  Eigen::SelfAdjointEigenSolver<Matrix4d> low(Matrix4d(Matrix4d::Identity() - g));
  Eigen::SelfAdjointEigenSolver<Matrix4d> high(g);
  if (low.info() != Eigen::Success || high.info() != Eigen::Success) {
    throw Error("construct_frame: eigendecomposition failed for '" +
                record.exemplar + "'");
  }
  Matrix4d fLow = low.eigenvectors() *
                  low.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  Matrix4d fHigh = high.eigenvectors() *
                   high.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

  Frame frame;
  Vec8* out[] = {&frame.vecA, &frame.vecB, &frame.vecAp, &frame.vecBp};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      (*out[r])[static_cast<std::size_t>(c)] = fLow(r, c);
      (*out[r])[static_cast<std::size_t>(c) + 4] = fHigh(r, c);
    }
  }

  FrameResiduals res = frame_residuals(frame, record);
  if (res.max_norm > 1e-10 || res.max_orthogonality > 1e-10 ||
      res.max_born() > 1e-10) {
    throw Error("construct_frame: residuals too large for '" + record.exemplar +
                "': norm " + format_double(res.max_norm) + ", ortho " +
                format_double(res.max_orthogonality) + ", born " +
                format_double(res.max_born()));
  }
  return frame;
}

// Serialization --------------------------------------------------------------

namespace {

nlohmann::ordered_json vec_json(const Vec8& v) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Vec8 vec_from_json(const nlohmann::json& a, const char* name) {
  if (!a.is_array() || a.size() != 8) {
    throw ParseError(std::string("frame field '") + name +
                     "' must be an array of 8 numbers");
  }
  Vec8 v{};
  for (std::size_t i = 0; i < 8; ++i) v[i] = a[i].get<double>();
  return v;
}

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

}  // namespace

std::string frame_to_json(const Frame& frame, const MembershipRecord& record) {
  nlohmann::ordered_json j;
  j["exemplar"] = record.exemplar;
  j["marginals"] = {{"muA", record.muA},
                    {"muB", record.muB},
                    {"muAp", record.muAp},
                    {"muBp", record.muBp}};
  j["vecA"] = vec_json(frame.vecA);
  j["vecB"] = vec_json(frame.vecB);
  j["vecAp"] = vec_json(frame.vecAp);
  j["vecBp"] = vec_json(frame.vecBp);
  j["phi_deg"] = {{"A", frame.phiA * kDegPerRad},
                  {"B", frame.phiB * kDegPerRad},
                  {"Ap", frame.phiAp * kDegPerRad},
                  {"Bp", frame.phiBp * kDegPerRad}};
  return j.dump(2) + "\n";
}

Frame frame_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("frame document: ") + e.what());
  }
  Frame f;
  f.vecA = vec_from_json(j.at("vecA"), "vecA");
  f.vecB = vec_from_json(j.at("vecB"), "vecB");
  f.vecAp = vec_from_json(j.at("vecAp"), "vecAp");
  f.vecBp = vec_from_json(j.at("vecBp"), "vecBp");
  if (j.contains("phi_deg")) {
    const auto& p = j["phi_deg"];
    f.phiA = p.value("A", 0.0) / kDegPerRad;
    f.phiB = p.value("B", 0.0) / kDegPerRad;
    f.phiAp = p.value("Ap", 0.0) / kDegPerRad;
    f.phiBp = p.value("Bp", 0.0) / kDegPerRad;
  }
  return f;
}

}  // namespace qcog
