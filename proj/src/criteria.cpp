#include "crepant/criteria.hpp"

#include "crepant/counting.hpp"

namespace crepant {

Int cyclic_polytope_facets(std::int64_t d, std::int64_t k) {
    if (d < 1 || k <= d) throw ValidationError("cyclic_polytope_facets needs k >= d + 1 >= 2");
    auto ceil_half = [](std::int64_t x) { return (x + 1) / 2; };
    return binomial(k - ceil_half(d), d / 2) + binomial(k - 1 - ceil_half(d - 1), (d - 1) / 2);
}

Int ball_bound(std::int64_t d, std::int64_t b, std::int64_t b_prime) {
    if (!(b >= b_prime && b_prime >= d + 1)) throw ValidationError("ball_bound needs b >= b' >= d + 1");
    return cyclic_polytope_facets(d + 1, b) - (b_prime - d);
}

CriterionReport second_criterion(const QuotientType& t) {
    if (!t.is_gorenstein()) throw NotGorensteinError("second criterion needs a Gorenstein type");
    int r = t.dim();
    CriterionReport rep;
    rep.l = t.order();
    if (r < 4) {
        rep.variant = "vacuous";
        rep.pass = true;
        rep.note = "criterion is vacuous for r < 4";
        rep.point_count = ehrhart_eval(t, 1).get_si();
        return rep;
    }
    BCounts bc = b_counts(t);
    rep.b1k.assign(r + 1, 0);
    std::int64_t juniors = 0;
    for (int k = 2; k <= r; ++k) {
        rep.b1k[k] = bc.get(1, k);
        juniors += rep.b1k[k];
    }
    rep.b1k.erase(rep.b1k.begin(), rep.b1k.begin() + 2);
    rep.point_count = juniors + r;
    rep.boundary_count = rep.point_count - bc.get(1, r);
    if (juniors == 0) {
        // no junior points: the only triangulation is the simplex itself
        rep.variant = r == 4 ? "r4_sharp" : "general";
        rep.bound = 1;
        rep.conjectural_bound = 1;
        rep.note = "no junior points";
        rep.pass = rep.l <= 1;
        return rep;
    }
    Int f = cyclic_polytope_facets(r, rep.point_count);
    StructureReport sr = structure_report(t);
    if (r == 4) {
        rep.variant = "r4_sharp";
        Int enumerated = f - 2 * bc.get(1, 2) - bc.get(1, 3) - 1;
        rep.bound = enumerated;
        if (t.is_cyclic() && sr.is_msc) {
            const IntVec& a = t.factors()[0].weights;
            std::int64_t l = t.order();
            Int b = mp_count_r4(t).count;
            if (b != rep.point_count) throw ConsistencyError("closed-form point count disagrees with enumeration");
            Rational tet = Rational(Int(b * (b - 3))) / 2 + 7;
            for (int i = 0; i < 4; ++i) tet -= frac(gcd64(a[i], l), 2);
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) tet -= gcd64(gcd64(a[i], a[j]), l);
            if (tet != Rational(enumerated)) throw ConsistencyError("tetrahedral bound disagrees with the enumerated bound");
            rep.note = "tetrahedral gcd form";
        } else {
            rep.note = "enumerated B-counts";
        }
    } else {
        rep.variant = "general";
        Int s = 0;
        for (int k = 2; k <= r - 1; ++k) s += bc.get(1, k);
        rep.bound = f - s - 1;
    }
    Int conj = f - 1;
    for (int k = 2; k <= r - 1; ++k) conj -= Int(r - k) * bc.get(1, k);
    rep.conjectural_bound = conj;
    rep.pass = Int(rep.l) <= rep.bound;
    return rep;
}

}  // namespace crepant
