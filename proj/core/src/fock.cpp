#include "qcog/fock.hpp"

#include <cmath>
#include <utility>

#include "qcog/classicality.hpp"
#include "qcog/dataset.hpp"

namespace qcog {

double SecondSectorTable::q(Combination c) const {
  switch (c) {
    case Combination::AB:   return qAB;
    case Combination::ABp:  return qABp;
    case Combination::ApB:  return qApB;
    case Combination::ApBp: return qApBp;
  }
  return 0;
}

Interval frechet_bounds(double muA, double muB) {
  return {std::max(0.0, muA + muB - 1), std::min(muA, muB)};
}

SecondSectorTable table_from_margins(double muA, double muB, double qAB) {
  if (!(muA >= 0 && muA <= 1 && muB >= 0 && muB <= 1)) {
    throw ValidationError("table_from_margins: margins must be in [0, 1]");
  }
  Interval bounds = frechet_bounds(muA, muB);
  if (!bounds.contains(qAB, 1e-12)) {
    throw InfeasibleError("qAB = " + format_double(qAB) +
                          " outside Frechet bounds [" + format_double(bounds.lo) +
                          ", " + format_double(bounds.hi) + "]");
  }
  return {qAB, muA - qAB, muB - qAB, 1 - muA - muB + qAB};
}

double EntangledState::norm_squared() const {
  double s = 0;
  for (const auto& row : coeff) {
    for (double c : row) s += c * c;
  }
  return s;
}

EntangledState entangled_state_from_table(const SecondSectorTable& table) {
  EntangledState state;
  auto fill = [&](int i0, int j0, double q) {
    double c = std::sqrt(std::max(q, 0.0)) / 4.0;
    for (int i = i0; i < i0 + 4; ++i) {
      for (int j = j0; j < j0 + 4; ++j) {
        state.coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
      }
    }
  };
  // Projector quadrant = coordinates 5-8 (indices 4-7) in each factor.
  fill(4, 4, table.qAB);
  fill(4, 0, table.qABp);
  fill(0, 4, table.qApB);
  fill(0, 0, table.qApBp);
  return state;
}

SecondSectorTable quadrant_masses(const EntangledState& state) {
  auto mass = [&](int i0, int j0) {
    double s = 0;
    for (int i = i0; i < i0 + 4; ++i) {
      for (int j = j0; j < j0 + 4; ++j) {
        double c = state.coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        s += c * c;
      }
    }
    return s;
  };
  return {mass(4, 4), mass(4, 0), mass(0, 4), mass(0, 0)};
}

MembershipRecord record_from_table(const SecondSectorTable& table,
                                  std::string exemplar) {
  MembershipRecord r;
  r.exemplar = std::move(exemplar);
  r.muAB = table.qAB;
  r.muABp = table.qABp;
  r.muApB = table.qApB;
  r.muApBp = table.qApBp;
  r.muA = table.qAB + table.qABp;
  r.muB = table.qAB + table.qApB;
  r.muAp = table.qApB + table.qApBp;
  r.muBp = table.qABp + table.qApBp;
  return r;
}

EntangledState state_from_classical_record(const MembershipRecord& record, double tol) {
  auto check = check_classical(record, tol);
  if (!check.classical) {
    std::string msg = "state_from_classical_record: record '" + record.exemplar +
                      "' is not classical;";
    for (const auto& v : check.violations) {
      msg += " " + v.condition + " = " + format_double(v.residual);
    }
    throw InfeasibleError(msg);
  }
  return entangled_state_from_table(
      {record.muAB, record.muABp, record.muApB, record.muApBp});
}

double fock_membership(const FockParameters& params, const Frame& frame,
                       Combination c) {
  const SectorWeights& w = params.of(c);
  return w.m2() * params.table.q(c) + w.n2() * first_sector_mu(frame, c, w.phi);
}

Interval solution_interval(const Frame& frame, const SecondSectorTable& table,
                           Combination c) {
  Interval first = first_sector_interval(frame, c);
  double q = table.q(c);
  return {std::min(q, first.lo), std::max(q, first.hi)};
}

}  // namespace qcog
