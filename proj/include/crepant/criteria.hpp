#pragma once

#include <string>
#include <vector>

#include "crepant/core.hpp"
#include "crepant/grouptype.hpp"

namespace crepant {

Int cyclic_polytope_facets(std::int64_t d, std::int64_t k);

// Upper bound for the facet count of a simplicial d-ball with b vertices, b' of them on the boundary.
Int ball_bound(std::int64_t d, std::int64_t b, std::int64_t b_prime);

struct CriterionReport {
    std::int64_t l = 0;
    std::int64_t point_count = 0;     // b
    std::int64_t boundary_count = 0;  // b'
    Int bound = 0;
    bool pass = true;
    std::string variant;              // r4_sharp | general | vacuous
    Int conjectural_bound = 0;        // informational only
    std::vector<std::int64_t> b1k;    // #B(1,k) for k = 2..r
    std::string note;
};

CriterionReport second_criterion(const QuotientType& t);

}  // namespace crepant
