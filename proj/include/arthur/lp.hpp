#pragma once

#include <optional>
#include <vector>

#include "arthur/linalg.hpp"

namespace arthur {

// Exact rational feasibility: find y with <rows[j], y> >= 1 for every j.
// Returns nullopt when the system is infeasible. Phase-one simplex with
// Bland's rule, so termination is guaranteed.
std::optional<RatVec> feasible_point(const std::vector<RatVec>& rows, int dim);

// Strict homogeneous system <rows[j], y> > 0 (same feasibility by scaling).
inline std::optional<RatVec> strict_cone_point(const std::vector<RatVec>& rows, int dim) {
    return feasible_point(rows, dim);
}

}  // namespace arthur
