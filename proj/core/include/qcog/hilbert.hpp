#ifndef QCOG_HILBERT_HPP
#define QCOG_HILBERT_HPP

#include <array>
#include <string>

#include "qcog/types.hpp"

namespace qcog {

using Vec8 = std::array<double, 8>;

/// Reachable first-sector membership values for one combination,
/// centered at the average of the two marginals.
using InterferenceInterval = Interval;

/// Four orthonormal real 8-vectors with one global phase each. The
/// membership projector is the fixed convention "coordinates 5-8", so it
/// is baked into the operations rather than stored.
///
/// Coefficients are kept real and phases factored out: every observable
/// quantity depends only on phase differences and real dot products.
struct Frame {
  Vec8 vecA{}, vecB{}, vecAp{}, vecBp{};
  double phiA = 0, phiB = 0, phiAp = 0, phiBp = 0;  // radians

  const Vec8& vec(Concept c) const;
  double phase(Concept c) const;
  /// phi_Y - phi_X for the combination's pair.
  double phase_difference(Combination c) const;
};

/// Weight of the membership outcome: sum of squared coordinates 5-8.
/// Throws ValidationError when the vector is not unit within 1e-6.
double born_weight(const Vec8& v);

/// Signed overlap of the two vectors restricted to coordinates 5-8
/// (the Lambda_XY amplitude multiplying the phase cosine).
double interference_overlap(const Frame& frame, Combination c);

/// Lambda_XY * cos(phase difference) using the frame's own phases.
double interference_term(const Frame& frame, Combination c);

/// Average of the two marginals plus the interference term. Out-of-[0,1]
/// values are returned as-is; feasibility is the caller's judgement.
double first_sector_mu(const Frame& frame, Combination c);
/// Same with an explicit phase-difference angle (radians).
double first_sector_mu(const Frame& frame, Combination c, double angle);

/// Largest |Lambda| two orthogonal unit vectors with the given weights
/// can realize: min(sqrt(muX*muY), sqrt((1-muX)*(1-muY))). The two
/// coordinate blocks must carry opposite overlaps, so both factors bind.
double interference_capacity(double muX, double muY);

/// Endpoints avg -+ |Lambda| of the membership values reachable in the
/// first sector for this combination.
InterferenceInterval first_sector_interval(const Frame& frame, Combination c);

/// Angle in [0, pi] with avg + Lambda*cos(angle) = target, where Lambda
/// is the frame's signed overlap. Throws InfeasibleError when the target
/// lies outside the reachable interval. Degenerate zero-overlap frames
/// return pi/2 when the target equals the average.
double solve_first_sector_angle(const Frame& frame, Combination c,
                                double target);

/// Orthonormality and Born residuals of a frame against a record.
struct FrameResiduals {
  double max_norm = 0;                 // | |v|^2 - 1 |
  double max_orthogonality = 0;        // |<v_X, v_Y>|
  std::array<double, 4> born{};        // born(v) - mu, in Concept order
  double max_born() const;
  bool within(double tol) const;
};

FrameResiduals frame_residuals(const Frame& frame,
                               const MembershipRecord& record);

/// Builds a frame whose Born weights reproduce the record's four
/// marginals to 1e-10 via a 4x4 Gram matrix G with diagonal
/// (muA, muB, muA', muB') and 0 <= G <= I: coordinates 5-8 factor G,
/// coordinates 1-4 factor I-G, making the vectors orthonormal with
/// pairwise overlaps Lambda_XY = G_XY.
///
/// Off-diagonal entries are chosen in two passes: first each combination
/// pair is granted the overlap magnitude its conjunction target needs
/// (when jointly feasible), then leftover spectral room is spent growing
/// the overlaps toward their feasible endpoints.
Frame construct_frame(const MembershipRecord& record);

/// Frame serialization (coefficients at full precision, phases in degrees).
std::string frame_to_json(const Frame& frame, const MembershipRecord& record);
Frame frame_from_json(const std::string& text);

}  // namespace qcog

#endif  // QCOG_HILBERT_HPP
