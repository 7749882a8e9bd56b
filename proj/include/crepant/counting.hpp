#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "crepant/core.hpp"
#include "crepant/grouptype.hpp"

namespace crepant {

// #(nu * s_G ∩ N_G) through the decomposition over group elements.
Int ehrhart_eval(const QuotientType& t, std::int64_t nu);

struct EhrhartData {
    std::vector<Rational> coefficients;  // a_0..a_{r-1}
    std::vector<Int> evaluations;        // Ehr(0..r-1)
    std::vector<Int> hstar;              // length r

    Rational value(const Rational& x) const;  // polynomial evaluation, also at negative arguments
};

EhrhartData ehrhart_poly(const QuotientType& t);

// h* from the coefficient vector; shared by tests that feed their own coefficients.
std::vector<Int> hstar_from_coefficients(const std::vector<Rational>& a);

struct CohomologyDims {
    std::vector<Int> dims;  // dim H^{2i}, i = 0..r-1
    std::int64_t euler = 0;
};

CohomologyDims cohomology_dims(const QuotientType& t);

Rational dedekind_sum(std::int64_t p, std::int64_t q);

struct MpCount {
    Int count;
    Rational a1, a2, a3;
};

// Closed-form point count of s_G for cyclic Gorenstein msc types with r = 4.
// gamma_shift selects another solution gamma + shift*(l/gcd) of the extended-Euclid relation.
MpCount mp_count_r4(const QuotientType& t, std::int64_t gamma_shift = 0);

struct BCounts {
    std::map<std::pair<int, int>, std::int64_t> counts;                      // (age, height) -> count
    std::map<std::tuple<int, int, std::uint64_t>, std::int64_t> by_support;  // (age, height, support)
    bool gcd_checked = false;  // cyclic msc: gcd-formula totals compared against enumeration

    std::int64_t get(int i, int k) const;
    std::int64_t get(int i, int k, std::uint64_t support) const;
};

BCounts b_counts(const QuotientType& t);

// Elements of height k supported on `support`, all ages, via the gcd inclusion-exclusion (cyclic msc).
std::int64_t gcd_form_count(const QuotientType& t, std::uint64_t support);

// Junior points in the relative interior of each face of s_G (faces as coordinate bitmasks).
std::map<std::uint64_t, std::int64_t> face_interior_counts(const QuotientType& t);

}  // namespace crepant
