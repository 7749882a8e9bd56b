#include "crepant/hilbert.hpp"

#include <algorithm>

namespace crepant {

HilbertBasis hilbert_basis(const QuotientType& t) {
    int r = t.dim();
    std::int64_t e = t.exponent();
    std::vector<IntVec> cand;
    for (int i = 0; i < r; ++i) {
        IntVec v(r, 0);
        v[i] = e;
        cand.push_back(v);
    }
    for_each_element(t, [&](const GroupElement& g) {
        if (!g.is_identity()) cand.push_back(g.delta);
    });
    // sort by coordinate sum so that only smaller candidates need to be compared
    std::vector<std::int64_t> sums(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i)
        for (auto x : cand[i]) sums[i] += x;
    std::vector<std::size_t> order(cand.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sums[a] < sums[b]; });

    HilbertBasis hb;
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        const IntVec& n = cand[order[oi]];
        bool reducible = false;
        for (std::size_t oj = 0; oj < order.size() && !reducible; ++oj) {
            if (oj == oi || sums[order[oj]] >= sums[order[oi]]) continue;
            const IntVec& c = cand[order[oj]];
            bool below = true;
            for (int i = 0; i < r && below; ++i) below = c[i] <= n[i];
            reducible = below;  // n - c is a nonzero point of sigma_0 ∩ N_G
        }
        if (reducible) continue;
        HilbertElement h;
        h.numerators = n;
        h.exponent = e;
        h.is_vertex = order[oi] < static_cast<std::size_t>(r);
        h.age = frac(sums[order[oi]], e);
        h.age.canonicalize();
        h.is_junior = !h.is_vertex && h.age == 1;
        hb.elements.push_back(h);
    }
    std::stable_sort(hb.elements.begin(), hb.elements.end(), [](const HilbertElement& a, const HilbertElement& b) {
        if (a.is_vertex != b.is_vertex) return a.is_vertex;
        if (a.age != b.age) return a.age < b.age;
        if (a.is_vertex) return a.numerators > b.numerators;
        return a.numerators < b.numerators;
    });
    return hb;
}

FirstCriterion first_criterion(const QuotientType& t) {
    if (!t.is_gorenstein()) throw NotGorensteinError("first criterion needs a Gorenstein type");
    FirstCriterion fc;
    for (const auto& h : hilbert_basis(t).elements)
        if (h.age >= 2) fc.witnesses.push_back(h);
    fc.pass = fc.witnesses.empty();
    return fc;
}

}  // namespace crepant
