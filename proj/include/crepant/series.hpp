#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crepant/config.hpp"
#include "crepant/core.hpp"
#include "crepant/counting.hpp"
#include "crepant/grouptype.hpp"
#include "crepant/lattice.hpp"
#include "crepant/triangulate.hpp"

namespace crepant {

// One evaluation of the 2-parameter arithmetic test for a fixed presentation (1,...,1,a,b).
struct TwoParamTrace {
    std::int64_t a = 0, b = 0;
    std::int64_t t = 0, t_prime = 0;
    std::int64_t nu1 = 0, nu2 = 0;
    std::int64_t p_bar = 0, q = 0, p = 0;
    std::vector<std::int64_t> cf;  // partial quotients of q/p, all >= 2 when cf_ok
    bool cf_ok = false;
    std::string cf_note;
    std::int64_t gcd_abl = 0;
    bool branch1 = false;
    bool branch2 = false;
    std::vector<std::pair<std::string, bool>> conditions;  // second-branch conditions in order

    bool holds() const { return branch1 || branch2; }
};

struct SeriesMatch {
    std::string kind = "none";           // hypersurface | one_param | two_param | gp | none
    std::string verdict = "inapplicable";  // resolvable | not_resolvable | inapplicable
    std::vector<std::pair<std::string, std::int64_t>> params;
    std::vector<std::pair<std::string, std::string>> trace;
    std::vector<TwoParamTrace> two_param;  // every presentation examined
    std::optional<CohomologyDims> cohomology;

    bool matched() const { return kind != "none"; }
    bool resolvable() const { return verdict == "resolvable"; }
    std::int64_t param(const std::string& key) const;  // throws if absent
};

SeriesMatch hypersurface_check(const QuotientType& t);

// Lattice points of k*s_d = {k >= x_1 >= ... >= x_d >= 0} with the staircase (Kuhn) triangulation.
struct Staircase {
    PointConfig cfg;
    Triangulation tri;
};

Staircase staircase_triangulation(int d, int k);
// Strictly concave piecewise-linear support function whose domains of linearity are the staircase simplices.
Rational staircase_psi(const IntVec& x);
std::vector<Rational> staircase_heights(const Staircase& s);

SeriesMatch one_param_check(const QuotientType& t);

// Evaluates both arithmetic branches for 1/l(1,...,1,a,b); nu_shift selects further (nu1, nu2) solutions.
TwoParamTrace two_param_arith(int r, std::int64_t l, std::int64_t a, std::int64_t b, std::int64_t nu_shift = 0);
// Verdict: resolvable when the arithmetic conditions hold; when they fail, decided by the Hilbert-basis
// condition, which is equivalent to resolvability for these types. The trace records which one decided.
SeriesMatch two_param_check(const QuotientType& t);

// Regular continued fraction of q/p (p > 0).
std::vector<std::int64_t> continued_fraction(std::int64_t q, std::int64_t p);

struct GpData {
    int r = 0;
    std::int64_t k = 0;
    QuotientType type;
    IntMatrix w;       // w_ij = [k^(i+j-2)]_l
    IntMatrix w_breve;  // l(k-1) W^{-1}
    Int det_w;
    Int det_w_breve;
};

GpData gp_construct(int r, std::int64_t k);

struct GpTriangulation {
    PointConfig cfg;          // junior configuration of the GP type
    Triangulation tri;
    std::vector<IntVec> lambda;  // image of each configuration point under Phi
};

GpTriangulation gp_triangulation(int r, std::int64_t k);

// Recognizes 1/l(1,k,...,k^(r-1)) up to permutation and a unit multiplier.
SeriesMatch gp_check(const QuotientType& t);

}  // namespace crepant
