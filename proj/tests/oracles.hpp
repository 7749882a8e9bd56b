#pragma once

// Brute-force reference computations. Nothing here calls into the library, so the tests can
// compare the library against code written from the definitions alone.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <doctest.h>

namespace oracle {

using Vec = std::vector<std::int64_t>;

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::int64_t md(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

struct Factor {
    std::int64_t q;
    Vec w;
};

struct Type {
    int r = 0;
    std::vector<Factor> factors;

    std::string text() const {
        std::ostringstream os;
        for (std::size_t f = 0; f < factors.size(); ++f) {
            if (f) os << "x";
            os << "1/" << factors[f].q << "(";
            for (int i = 0; i < r; ++i) os << (i ? "," : "") << factors[f].w[i];
            os << ")";
        }
        return os.str();
    }
};

inline Type cyclic(std::int64_t l, Vec w) { return Type{int(w.size()), {Factor{l, std::move(w)}}}; }

// All group elements as residue vectors over the common exponent E (lcm of the factor orders).
struct Group {
    std::int64_t E = 1;
    int r = 0;
    std::set<Vec> elems;

    std::int64_t order() const { return std::int64_t(elems.size()); }
    std::int64_t age_num(const Vec& d) const {
        std::int64_t s = 0;
        for (auto x : d) s += x;
        return s;
    }
    int height(const Vec& d) const {
        int h = 0;
        for (auto x : d) h += x != 0;
        return h;
    }
    Vec inverse(const Vec& d) const {
        Vec o(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) o[i] = md(-d[i], E);
        return o;
    }
};

inline Group group(const Type& t) {
    Group g;
    g.r = t.r;
    for (const auto& f : t.factors) g.E = g.E / gcd(g.E, f.q) * f.q;
    std::vector<Vec> gens;
    for (const auto& f : t.factors) {
        Vec v(t.r);
        for (int i = 0; i < t.r; ++i) v[i] = md(f.w[i], f.q) * (g.E / f.q);
        gens.push_back(v);
    }
    // closure under adding generators
    std::vector<Vec> frontier{Vec(t.r, 0)};
    g.elems.insert(Vec(t.r, 0));
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto& a : frontier)
            for (const auto& s : gens) {
                Vec b(t.r);
                for (int i = 0; i < t.r; ++i) b[i] = md(a[i] + s[i], g.E);
                if (g.elems.insert(b).second) next.push_back(b);
            }
        frontier.swap(next);
    }
    return g;
}

inline bool gorenstein(const Group& g) {
    for (const auto& d : g.elems)
        if (g.age_num(d) % g.E) return false;
    return true;
}

// histogram of ages 1..r-1
inline std::vector<std::int64_t> age_histogram(const Group& g) {
    std::vector<std::int64_t> h(g.r - 1, 0);
    for (const auto& d : g.elems) {
        std::int64_t a = g.age_num(d) / g.E;
        if (a >= 1 && a <= g.r - 1) h[a - 1]++;
    }
    return h;
}

// Number of points of N_G in nu * s_G (coordinates >= 0 summing to nu), or in its relative interior.
// Enumerates the integer translates m explicitly.
inline std::int64_t dilate_count(const Group& g, int nu, bool interior) {
    std::int64_t total = 0;
    for (const auto& d : g.elems) {
        std::int64_t s = g.age_num(d);
        if (s % g.E) continue;
        std::int64_t rest = nu - s / g.E;
        if (rest < 0) continue;
        std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t left) {
            if (i == g.r) {
                if (left == 0) ++total;
                return;
            }
            std::int64_t lo = (interior && d[i] == 0) ? 1 : 0;
            for (std::int64_t m = lo; m <= left; ++m) rec(i + 1, left - m);
        };
        rec(0, rest);
    }
    return total;
}

// Hilbert basis elements inside the half-open unit cube: nonzero residues d that are not a sum of
// two nonzero residues (any summand of a point with all coordinates < 1 lies in the cube as well).
inline std::set<Vec> hilbert_par(const Group& g) {
    std::set<Vec> out;
    for (const auto& n : g.elems) {
        if (g.height(n) == 0) continue;
        bool red = false;
        for (const auto& p : g.elems) {
            if (g.height(p) == 0 || p == n) continue;
            Vec q(g.r);
            bool ok = true;
            for (int i = 0; i < g.r && ok; ++i) {
                q[i] = n[i] - p[i];
                ok = q[i] >= 0;
            }
            if (ok && g.elems.count(q) && g.height(q) > 0) {
                red = true;
                break;
            }
        }
        if (!red) out.insert(n);
    }
    return out;
}

// Random Gorenstein cyclic type with all weights nonzero (msc when `msc`) and faithful action.
inline Type random_cyclic(std::mt19937_64& rng, int r, std::int64_t lmin, std::int64_t lmax, bool msc = true) {
    for (;;) {
        std::int64_t l = std::uniform_int_distribution<std::int64_t>(lmin, lmax)(rng);
        Vec w(r);
        std::int64_t s = 0, gg = l;
        for (int i = 0; i + 1 < r; ++i) {
            w[i] = std::uniform_int_distribution<std::int64_t>(msc ? 1 : 0, l - 1)(rng);
            s += w[i];
        }
        w[r - 1] = md(-s, l);
        bool ok = true;
        for (auto x : w) {
            gg = gcd(gg, x);
            if (msc && x == 0) ok = false;
        }
        if (ok && gg == 1) return cyclic(l, w);
    }
}

// ---------- exact regular triangulations from heights ----------

using I128 = __int128;

inline I128 det(std::vector<std::vector<I128>> m) {
    int n = int(m.size());
    I128 d = 1, prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    d = m[n - 1][n - 1];
    return sign * d;
}

using Simp = std::vector<int>;
using Tri = std::vector<Simp>;

// The cells of the regular subdivision induced by heights w, if it is a triangulation
// (generic heights); empty otherwise.
inline Tri regular_triangulation(const std::vector<Vec>& pts, const Vec& w, std::int64_t total_volume) {
    int n = int(pts.size()), d = int(pts[0].size());
    Tri cells;
    std::int64_t vol = 0;
    Simp s(d + 1);
    std::function<bool(int, int)> rec = [&](int start, int k) -> bool {
        if (k == d + 1) {
            std::vector<std::vector<I128>> m(d + 1, std::vector<I128>(d + 1));
            for (int i = 0; i <= d; ++i) {
                for (int j = 0; j < d; ++j) m[i][j] = pts[s[i]][j];
                m[i][d] = 1;
            }
            I128 D = det(m);
            if (D == 0) return true;
            for (int p = 0; p < n; ++p) {
                bool in = false;
                for (int v : s) in = in || v == p;
                if (in) continue;
                // height of the affine interpolation at p, times D: sum_i D_i w_i (Cramer)
                I128 acc = 0;
                for (int i = 0; i <= d; ++i) {
                    auto mi = m;
                    for (int j = 0; j < d; ++j) mi[i][j] = pts[p][j];
                    mi[i][d] = 1;
                    acc += det(mi) * w[s[i]];
                }
                I128 lhs = I128(w[p]) * D;
                // a tie drops the candidate; if the lower hull is not simplicial the volume check fails below
                bool above = D > 0 ? lhs > acc : lhs < acc;
                if (!above) return true;
            }
            cells.push_back(s);
            vol += std::int64_t(D > 0 ? D : -D);
            return true;
        }
        for (int i = start; i < n; ++i) {
            s[k] = i;
            if (!rec(i + 1, k + 1)) return false;
        }
        return true;
    };
    if (!rec(0, 0) || vol != total_volume) return {};
    return cells;
}

inline bool uses_all(const Tri& t, std::size_t n) {
    std::set<int> used;
    for (const auto& s : t) used.insert(s.begin(), s.end());
    return used.size() == n;
}

// Distinct coherent triangulations that use every point, found by random liftings.
inline std::set<Tri> random_lift_census(const std::vector<Vec>& pts, std::int64_t total_volume, int samples,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<Tri> found;
    for (int it = 0; it < samples; ++it) {
        Vec w(pts.size());
        // three lift families: near-convex, uniform, and coarse integer heights with a small tie-break
        int family = it % 3;
        bool uniform = family == 1;
        std::int64_t span = std::uniform_int_distribution<std::int64_t>(1, 6)(rng);
        std::int64_t scale = std::int64_t(1) << std::uniform_int_distribution<int>(0, 16)(rng);
        std::int64_t convex = std::uniform_int_distribution<std::int64_t>(0, 64)(rng);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            std::int64_t q = 0;
            for (auto x : pts[i]) q += x * x;
            if (family == 2)
                w[i] = std::uniform_int_distribution<std::int64_t>(0, span)(rng) * 4096 +
                       std::uniform_int_distribution<std::int64_t>(-1000, 1000)(rng);
            else
                w[i] = uniform ? std::uniform_int_distribution<std::int64_t>(-(1 << 20), 1 << 20)(rng)
                               : convex * q * 1024 + std::uniform_int_distribution<std::int64_t>(-scale, scale)(rng);
        }
        Tri t = regular_triangulation(pts, w, total_volume);
        if (!t.empty() && uses_all(t, pts.size())) found.insert(t);
    }
    return found;
}

// ---------- small property harness ----------

// Runs `check` on `cases` generated inputs and stops at the first failure. Returns the number of inputs checked.
template <class Gen, class Check>
std::size_t for_all(const char* name, std::size_t cases, std::uint64_t seed, Gen gen, Check check) {
    std::mt19937_64 rng(seed);
    for (std::size_t done = 0; done < cases; ++done) {
        auto input = gen(rng);
        std::string what;
        if (!check(input, what)) {
            FAIL_CHECK(name << ": counterexample " << what);
            return done;
        }
    }
    return cases;
}

}  // namespace oracle
