#ifndef QCOG_FITTER_HPP
#define QCOG_FITTER_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qcog/fock.hpp"
#include "qcog/hilbert.hpp"
#include "qcog/types.hpp"

namespace qcog {

struct FitOptions {
  /// Minimal m^2 (emergence-dominant) unless a target m^2 is requested.
  std::optional<double> m2_target;
};

struct CombinationFit {
  bool feasible = false;
  bool first_sector_only = false;  // representable with m^2 = 0
  double residual = 0;             // refitted value minus target
  double distance = 0;             // distance from target to U_sol (0 if feasible)
  Interval u_sol;                  // the solution interval used
};

/// Everything fit_record produces for one exemplar. The twelve residuals
/// are, in order: the four Born marginals (frame minus measured), the
/// four conjunctions (model minus measured), the two second-sector
/// margins (table minus measured muA/muB), and the two complement gaps
/// ((1 - muA) - muA', (1 - muB) - muB') the tensor-product margins force.
struct FitResult {
  std::string exemplar;
  Frame frame;
  FockParameters params;
  std::array<CombinationFit, 4> combinations{};  // indexed by Combination
  std::array<double, 12> residuals{};

  const CombinationFit& of(Combination c) const {
    return combinations[static_cast<int>(c)];
  }
  bool all_feasible() const;
};

/// Picks the shared table's qAB inside the Fréchet bounds minimizing the
/// summed distance from the four conjunction targets to their quadrants
/// (golden-section on the 1-D interval; ties resolved toward the
/// independence value muA*muB).
double choose_correlation(const MembershipRecord& record);

struct SectorSolution {
  double m2 = 0;
  double phi = 0;  // radians, [0, pi], relative to +capacity
};

/// Smallest m^2 in [0,1] for which some |cos phi| <= 1 satisfies
/// m^2 q + (1-m^2)(avg + capacity cos phi) = target; phi in [0, pi].
/// Throws InfeasibleError when the target lies outside
/// [min(q, interval.lo), max(q, interval.hi)].
SectorSolution solve_sector_weights(double target, double q,
                                    const InterferenceInterval& interval,
                                    double capacity);

/// Full per-record procedure: construct_frame, choose_correlation, then
/// per-combination sector weights. Infeasible combinations are reported
/// with their distance, never clamped.
FitResult fit_record(const MembershipRecord& record,
                     const FitOptions& options = {});

struct FitSummary {
  std::size_t records = 0;
  std::size_t conjunction_targets = 0;
  std::size_t fitted_exactly = 0;      // residual below 1e-9
  double feasible_fraction = 0;        // NaN when no targets
  std::array<double, 4> mean_abs_m{};  // per combination
  std::array<double, 4> mean_abs_n{};
};

struct DatasetFit {
  std::vector<FitResult> results;
  FitSummary summary;
};

DatasetFit fit_dataset(const ConceptPairDataset& dataset,
                       const FitOptions& options = {});

// Model documents -----------------------------------------------------------

/// A complete parameterization as found in a fit document or a
/// hand-transcribed reference solution: frame coefficients,
/// per-combination angle and convex weights (m, n taken as given, not
/// renormalized), and the shared quadrant table.
struct ModelDocument {
  std::string exemplar;
  std::string dataset;  // optional provenance hint
  Frame frame;
  SecondSectorTable table;
  struct CombinationEntry {
    double m = 0, n = 0;
    double phi = 0;  // radians
    std::optional<bool> feasible;
    std::optional<double> residual;
  };
  std::array<CombinationEntry, 4> combinations{};
};

/// Residuals of a documented model against a measured record: Born and
/// orthonormality checks of the frame plus per-combination
/// |predicted - measured| using the document's own m and n.
struct VerificationReport {
  std::string exemplar;
  FrameResiduals frame;
  std::array<double, 4> conjunction{};  // predicted - measured
  double max_abs_conjunction() const;
  bool within(double tol) const;
};

VerificationReport verify_published(const ModelDocument& doc,
                                    const MembershipRecord& record);

// Serialization ------------------------------------------------------------

std::string fit_to_json(const DatasetFit& fit, const std::string& pair_label);
std::string model_document_to_json(const ModelDocument& doc);
ModelDocument model_document_from_json(const std::string& text);
/// Reads either a single model document or a fit document (returning all
/// per-exemplar entries).
std::vector<ModelDocument> model_documents_from_json(const std::string& text);
ModelDocument to_model_document(const FitResult& result,
                                const std::string& dataset_label);

/// The record predicted by a pure-emergence model (m^2 = 0, zero
/// interference) for given base weights: negation marginals are the
/// complements and every conjunction is the plain average, which pins
/// I_X = -1/2 and the normalization deviation to -1.
MembershipRecord emergence_only_record(double muA, double muB);

}  // namespace qcog

#endif  // QCOG_FITTER_HPP
