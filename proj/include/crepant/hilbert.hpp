#pragma once

#include <vector>

#include "crepant/core.hpp"
#include "crepant/grouptype.hpp"

namespace crepant {

struct HilbertElement {
    IntVec numerators;  // point = numerators / exp_G
    std::int64_t exponent = 1;
    bool is_vertex = false;
    bool is_junior = false;
    Rational age;  // coordinate sum
};

struct HilbertBasis {
    std::vector<HilbertElement> elements;  // vertices first, then by increasing age and residue
};

// Hilbert basis of sigma_0 ∩ N_G by candidate reduction over the half-open unit cube.
HilbertBasis hilbert_basis(const QuotientType& t);

struct FirstCriterion {
    bool pass = false;
    std::vector<HilbertElement> witnesses;  // basis elements of age >= 2
};

FirstCriterion first_criterion(const QuotientType& t);

}  // namespace crepant
