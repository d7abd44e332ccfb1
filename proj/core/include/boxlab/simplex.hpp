#pragma once

#include <vector>

#include "boxlab/rational.hpp"

namespace boxlab {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::optimal;
    Rational objective;
    std::vector<Rational> x;  // structural variables only
    long pivot_count = 0;
};

/// max c.x subject to A x <= b, x >= 0, with b >= 0 entrywise (the slack
/// basis is then feasible and no phase-1 is needed).
LpResult simplex_max_leq(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                         const std::vector<Rational>& c);

/// min c.x subject to A x = b, x >= 0. Two-phase primal simplex; redundant
/// equality rows are detected and dropped after phase 1.
LpResult simplex_min_eq(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                        const std::vector<Rational>& c);

}  // namespace boxlab
