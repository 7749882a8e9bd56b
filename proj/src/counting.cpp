#include "crepant/counting.hpp"

#include <algorithm>

namespace crepant {

namespace {

std::vector<std::int64_t> age_counts(const QuotientType& t) {
    if (!t.is_gorenstein()) throw NotGorensteinError("Ehrhart data needs a Gorenstein type: " + t.str());
    std::vector<std::int64_t> c(t.dim(), 0);
    for_each_element(t, [&](const GroupElement& g) { ++c[g.age()]; });
    return c;
}

Int ehr_from_ages(const std::vector<std::int64_t>& ages, int r, std::int64_t nu) {
    Int s = 0;
    for (std::size_t a = 0; a < ages.size(); ++a)
        if (ages[a] && static_cast<std::int64_t>(a) <= nu)
            s += Int(static_cast<long>(ages[a])) * binomial(nu - static_cast<std::int64_t>(a) + r - 1, r - 1);
    return s;
}

// ((x)) sawtooth
Rational saw(const Rational& x) {
    if (x.get_den() == 1) return 0;
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - Rational(fl) - frac(1, 2);
}

}  // namespace

Int ehrhart_eval(const QuotientType& t, std::int64_t nu) {
    if (nu < 0) throw ValidationError("ehrhart_eval: nu must be non-negative");
    return ehr_from_ages(age_counts(t), t.dim(), nu);
}

Rational EhrhartData::value(const Rational& x) const {
    Rational s = 0, p = 1;
    for (const auto& a : coefficients) {
        s += a * p;
        p *= x;
    }
    return s;
}

std::vector<Int> hstar_from_coefficients(const std::vector<Rational>& a) {
    int d = static_cast<int>(a.size()) - 1;
    std::vector<Int> h(d + 1);
    for (int i = 0; i <= d; ++i) {
        Rational s = 0;
        for (int j = 0; j <= d; ++j) {
            Int inner = 0;
            for (int k = 0; k <= i; ++k) {
                Int pw;
                mpz_pow_ui(pw.get_mpz_t(), Int(i - k).get_mpz_t(), static_cast<unsigned long>(j));
                Int term = binomial(d + 1, k) * pw;
                if (k % 2) inner -= term;
                else inner += term;
            }
            s += a[j] * inner;
        }
        if (s.get_den() != 1) throw ConsistencyError("h* coordinate is not an integer");
        h[i] = s.get_num();
    }
    return h;
}

EhrhartData ehrhart_poly(const QuotientType& t) {
    auto ages = age_counts(t);
    int r = t.dim();
    EhrhartData e;
    for (int nu = 0; nu < r; ++nu) e.evaluations.push_back(ehr_from_ages(ages, r, nu));
    // Newton forward differences, then expand to the monomial basis
    std::vector<Rational> diff(e.evaluations.begin(), e.evaluations.end());
    std::vector<Rational> newton;
    for (int k = 0; k < r; ++k) {
        newton.push_back(diff[0]);
        for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
        diff.pop_back();
    }
    std::vector<Rational> coeff(r, 0);
    std::vector<Rational> basis{1};  // x(x-1)...(x-k+1)/k!
    for (int k = 0; k < r; ++k) {
        for (std::size_t i = 0; i < basis.size(); ++i) coeff[i] += newton[k] * basis[i];
        std::vector<Rational> next(basis.size() + 1, 0);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            next[i + 1] += basis[i] / (k + 1);
            next[i] -= basis[i] * k / (k + 1);
        }
        basis = next;
    }
    e.coefficients = coeff;
    e.hstar = hstar_from_coefficients(coeff);
    Int total = 0;
    for (const auto& h : e.hstar) total += h;
    if (total != static_cast<long>(t.order())) throw ConsistencyError("h* sum differs from the group order");
    return e;
}

CohomologyDims cohomology_dims(const QuotientType& t) {
    CohomologyDims c;
    c.dims = ehrhart_poly(t).hstar;
    c.euler = t.order();
    return c;
}

Rational dedekind_sum(std::int64_t p, std::int64_t q) {
    if (q < 1) throw ValidationError("dedekind_sum: q must be positive");
    if (gcd64(p, q) != 1) throw ValidationError("dedekind_sum: gcd(p, q) must be 1");
    Rational s = 0;
    for (std::int64_t j = 1; j < q; ++j) {
        Rational a(j, q), b(mod64(p, q) * j % q, q);
        a.canonicalize();
        b.canonicalize();
        s += saw(a) * saw(b);
    }
    return s;
}

MpCount mp_count_r4(const QuotientType& t, std::int64_t gamma_shift) {
    if (!t.is_cyclic()) throw ValidationError("mp_count_r4 needs a cyclic type");
    if (t.dim() != 4) throw ValidationError("mp_count_r4 needs r = 4");
    if (!t.is_gorenstein()) throw NotGorensteinError("mp_count_r4 needs a Gorenstein type");
    const IntVec& a = t.factors()[0].weights;
    std::int64_t l = t.order();
    for (auto w : a)
        if (w == 0) throw ValidationError("mp_count_r4 needs an msc type (zero weight found)");
    std::int64_t g[4];
    for (int i = 0; i < 4; ++i) g[i] = gcd64(a[i], l);
    MpCount m;
    m.a3 = frac(l, 6);
    m.a2 = frac(g[0] + g[1] + g[2] + g[3], 4);
    m.a1 = frac(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3], 12 * l);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            int ip = -1, jp = -1;
            for (int k = 0; k < 4; ++k)
                if (k != i && k != j) (ip < 0 ? ip : jp) = k;
            std::int64_t gij = gcd64(gcd64(a[ip], a[jp]), l);
            std::int64_t q = l * gij / (g[ip] * g[jp]);
            std::int64_t gamma, unused;
            egcd64(a[ip], l, gamma, unused);
            gamma += gamma_shift * (l / g[ip]);
            std::int64_t num = (-gamma) % q * ((a[jp] / g[jp]) % q) % q;
            std::int64_t p = mod64(num, q);
            m.a1 += (frac(1, 4) - dedekind_sum(p, q)) * gij;
        }
    Rational total = 1 + m.a1 + m.a2 + m.a3;
    if (total.get_den() != 1) throw ConsistencyError("closed-form point count is not an integer");
    m.count = total.get_num();
    return m;
}

std::int64_t BCounts::get(int i, int k) const {
    auto it = counts.find({i, k});
    return it == counts.end() ? 0 : it->second;
}

std::int64_t BCounts::get(int i, int k, std::uint64_t support) const {
    auto it = by_support.find({i, k, support});
    return it == by_support.end() ? 0 : it->second;
}

std::int64_t gcd_form_count(const QuotientType& t, std::uint64_t support) {
    if (!t.is_cyclic()) throw ValidationError("gcd formula needs a cyclic type");
    const IntVec& a = t.factors()[0].weights;
    std::int64_t l = t.order();
    int r = t.dim();
    std::uint64_t all = (std::uint64_t{1} << r) - 1;
    std::uint64_t comp = all & ~support;
    // inclusion-exclusion over the coordinates of the support forced to vanish
    std::int64_t total = 0;
    for (std::uint64_t s = support;; s = (s - 1) & support) {
        std::uint64_t fixed = comp | s;
        std::int64_t g = l;
        for (int i = 0; i < r; ++i)
            if (fixed >> i & 1) g = gcd64(g, a[i]);
        total += (__builtin_popcountll(s) % 2 ? -g : g);
        if (s == 0) break;
    }
    return total;
}

BCounts b_counts(const QuotientType& t) {
    if (!t.is_gorenstein()) throw NotGorensteinError("b_counts needs a Gorenstein type");
    BCounts b;
    std::int64_t total = 0;
    for_each_element(t, [&](const GroupElement& g) {
        if (g.is_identity()) return;
        int i = static_cast<int>(g.age());
        ++b.counts[{i, g.height}];
        ++b.by_support[{i, g.height, g.support()}];
        ++total;
    });
    if (total != t.order() - 1) throw ConsistencyError("B-set counts do not sum to l - 1");
    for (const auto& [key, n] : b.counts)
        if (key.second <= key.first) throw ConsistencyError("element with height not exceeding its age");
    StructureReport sr = structure_report(t);
    int r = t.dim();
    if (t.is_cyclic() && sr.is_msc && r >= 3) {
        std::map<std::uint64_t, std::int64_t> per_support;
        for (const auto& [key, n] : b.by_support) per_support[std::get<2>(key)] += n;
        for (std::uint64_t s = 1; s < (std::uint64_t{1} << r); ++s) {
            int k = __builtin_popcountll(s);
            if (k < 2 || k > r - 1) continue;
            std::int64_t formula = gcd_form_count(t, s);
            std::int64_t enumerated = per_support.count(s) ? per_support[s] : 0;
            if (formula != enumerated)
                throw ConsistencyError("gcd formula disagrees with enumeration on support mask " + std::to_string(s));
        }
        if (r == 4) {
            const IntVec& a = t.factors()[0].weights;
            std::int64_t l = t.order();
            for (std::uint64_t s = 1; s < 16; ++s) {
                int k = __builtin_popcountll(s);
                std::int64_t enumerated = b.get(1, k, s);
                if (k == 2) {
                    std::int64_t g = l;
                    for (int i = 0; i < 4; ++i)
                        if (!(s >> i & 1)) g = gcd64(g, a[i]);
                    if (g - 1 != enumerated) throw ConsistencyError("edge count formula disagrees with enumeration");
                } else if (k == 3) {
                    int v4 = __builtin_ctzll(~s & 15);
                    std::int64_t num = gcd64(a[v4], l);
                    for (int j = 0; j < 4; ++j)
                        if (j != v4) num -= gcd64(gcd64(a[v4], a[j]), l);
                    if (num % 2 != 0 || num / 2 + 1 != enumerated)
                        throw ConsistencyError("face count formula disagrees with enumeration");
                }
            }
        }
        b.gcd_checked = true;
    }
    return b;
}

std::map<std::uint64_t, std::int64_t> face_interior_counts(const QuotientType& t) {
    if (!t.is_gorenstein()) throw NotGorensteinError("face counts need a Gorenstein type");
    int r = t.dim();
    if (r > 20) throw BudgetError("face enumeration limited to r <= 20");
    std::map<std::uint64_t, std::int64_t> out;
    for (std::uint64_t s = 1; s + 1 < (std::uint64_t{1} << r); ++s) out[s] = 0;
    for_each_element(t, [&](const GroupElement& g) {
        if (!g.is_identity() && g.delta_sum == t.exponent() && out.count(g.support())) ++out[g.support()];
    });
    return out;
}

}  // namespace crepant
