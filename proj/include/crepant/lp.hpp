#pragma once

#include <cstddef>
#include <vector>

#include "crepant/core.hpp"

namespace crepant {

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    std::vector<Rational> x;  // primal solution (Optimal)
    // Optimal: dual solution y with y^T A >= c.  Infeasible: Farkas ray with y^T A <= 0, y^T b > 0.
    std::vector<Rational> y;
    Rational value;
    std::size_t pivots = 0;
};

// maximize c^T x subject to A x = b, x >= 0. Exact two-phase simplex with Bland's rule.
LpResult solve_lp(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c, std::size_t max_pivots = 1'000'000);

}  // namespace crepant
