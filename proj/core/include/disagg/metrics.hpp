#pragma once

#include <cstddef>

#include "disagg/shares.hpp"

namespace disagg {

struct BalanceValue {
  double value = 0.0;  // in [-1, 1]
};

struct DispersionValue {
  double value = 0.0;  // in [0, 1]
};

struct DiscrepancyValue {
  double value = 0.0;  // in [0, 1]
};

// B = up - down, the classic balance statistic.
BalanceValue balance(const ThreeCategoryShares& s);

// DISP = sqrt(up + down - (up - down)^2): the standard deviation of the
// individual +1/0/-1 responses implied by the shares. Neutral answers enter
// only through the constraint up + same + down = 1.
DispersionValue dispersion(const ThreeCategoryShares& s);

// D = 1 - |s - barycenter| / max_vertex_distance(arity): one minus the
// distance to the equal-shares point, relative to the farthest a simplex
// point can be from it. 1 at the barycenter (answers equidistributed,
// maximal disagreement), 0 at any vertex (one category takes all answers).
DiscrepancyValue discrepancy(const SharesVector& s);

// Distance from the simplex barycenter to any vertex: sqrt((n - 1) / n).
double max_vertex_distance(std::size_t arity);

}  // namespace disagg
