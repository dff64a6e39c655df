#ifndef QCOG_FOCK_HPP
#define QCOG_FOCK_HPP

#include <array>
#include <string>

#include "qcog/hilbert.hpp"
#include "qcog/types.hpp"

namespace qcog {

/// Masses of the four projector quadrants of an entangled second-sector
/// state. Rows split on the first factor (A vs not-A), columns on the
/// second (B vs not-B); margins are therefore (muA, 1-muA) and
/// (muB, 1-muB) by construction.
struct SecondSectorTable {
  double qAB = 0, qABp = 0, qApB = 0, qApBp = 0;

  double q(Combination c) const;
  double marginA() const { return qAB + qABp; }
  double marginB() const { return qAB + qApB; }
  double total() const { return qAB + qABp + qApB + qApBp; }
};

/// The classical limits on a 2x2 cell given its margins.
Interval frechet_bounds(double muA, double muB);

/// Table with margins (muA, 1-muA) x (muB, 1-muB) and top-left cell qAB.
/// Throws InfeasibleError when qAB violates the Fréchet bounds.
SecondSectorTable table_from_margins(double muA, double muB, double qAB);

/// 8x8 grid of non-negative coefficients c_ij with phase angles gamma_ij;
/// represents sum_ij c_ij e^{i gamma_ij} |i> (x) |j> with sum c^2 = 1.
struct EntangledState {
  std::array<std::array<double, 8>, 8> coeff{};
  std::array<std::array<double, 8>, 8> phase{};

  double norm_squared() const;
};

/// Uniform-within-quadrant state: c_ij = sqrt(q)/4 on each quadrant's 16
/// cells, phases zero, so every quadrant mass equals its q exactly.
EntangledState entangled_state_from_table(const SecondSectorTable& table);

/// Quadrant sums of c_ij^2; inverse of entangled_state_from_table.
SecondSectorTable quadrant_masses(const EntangledState& state);

/// Record read off a second-sector table: marginals from the margins,
/// conjunctions from the quadrants. Always classical.
MembershipRecord record_from_table(const SecondSectorTable& table,
                                  std::string exemplar = "");

/// Entangled state reproducing a classical record's conjunction weights
/// as quadrant masses. Refuses records failing the marginal law at tol.
EntangledState state_from_classical_record(const MembershipRecord& record,
                                double tol = 1e-9);

/// Sector mixture for one combination: m^2 second-sector weight, n^2
/// first-sector weight (m^2 + n^2 = 1), interference angle phi, and the
/// sector phases theta/rho which no membership expression depends on.
struct SectorWeights {
  double m = 0, n = 1;
  double phi = 0;               // radians
  double theta = 0, rho = 0;    // observably inert

  double m2() const { return m * m; }
  double n2() const { return n * n; }
};

/// Complete two-sector model for one exemplar: a shared quadrant table
/// plus per-combination sector weights and angles.
struct FockParameters {
  SecondSectorTable table;
  std::array<SectorWeights, 4> weights{};  // indexed by Combination

  const SectorWeights& of(Combination c) const {
    return weights[static_cast<int>(c)];
  }
  SectorWeights& of(Combination c) { return weights[static_cast<int>(c)]; }
};

/// m^2 q + n^2 (avg + Lambda cos phi) for the combination. Values outside
/// [0,1] are returned untouched; the caller flags infeasibility.
double fock_membership(const FockParameters& params, const Frame& frame,
                       Combination c);

/// Conjunction values reachable by the full two-sector model:
/// [min(q, first.lo), max(q, first.hi)].
Interval solution_interval(const Frame& frame, const SecondSectorTable& table,
                           Combination c);

}  // namespace qcog

#endif  // QCOG_FOCK_HPP
