#include "crepant/series.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "crepant/hilbert.hpp"

namespace crepant {

std::int64_t SeriesMatch::param(const std::string& key) const {
    for (const auto& [k, v] : params)
        if (k == key) return v;
    throw Error("series match has no parameter " + key);
}

namespace {

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (std::int64_t{1} << 62) / std::max<std::int64_t>(b, 1)) throw ValidationError("integer overflow in power");
        r *= b;
    }
    return r;
}

std::string join(const std::vector<std::int64_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i == 1) s += ";";
        else if (i > 1) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

// congruence x == y mod m with m >= 1 (m = 1 always holds)
bool congruent(std::int64_t x, std::int64_t y, std::int64_t m) { return mod64(x - y, m) == 0; }

}  // namespace

SeriesMatch hypersurface_check(const QuotientType& t) {
    SeriesMatch m;
    int r = t.dim();
    std::int64_t k = t.exponent();
    if (!t.is_gorenstein() || k < 2 || r < 2) return m;
    Int expected = 1;
    for (int i = 0; i < r - 1; ++i) expected *= static_cast<long>(k);
    if (Int(static_cast<long>(t.order())) != expected) return m;
    // a Gorenstein group of exponent k and order k^(r-1) is all of SL ∩ mu_k^r
    m.kind = "hypersurface";
    m.verdict = "resolvable";
    m.params = {{"r", r}, {"k", k}};
    m.trace.push_back({"pattern", "G(" + std::to_string(r) + ";" + std::to_string(k) + ")"});
    m.cohomology = cohomology_dims(t);
    return m;
}

Staircase staircase_triangulation(int d, int k) {
    if (d < 1 || k < 1) throw ValidationError("staircase needs d >= 1 and k >= 1");
    std::vector<IntVec> pts;
    std::map<IntVec, int> where;
    IntVec x(d, 0);
    // enumerate k >= x_1 >= ... >= x_d >= 0
    std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t hi) {
        if (i == d) {
            where[x] = static_cast<int>(pts.size());
            pts.push_back(x);
            return;
        }
        for (std::int64_t v = 0; v <= hi; ++v) {
            x[i] = v;
            rec(i + 1, v);
        }
    };
    rec(0, k);
    std::vector<Simplex> simplices;
    std::vector<int> perm(d);
    IntVec a(d, 0);
    std::function<void(int)> base = [&](int i) {
        if (i == d) {
            std::iota(perm.begin(), perm.end(), 0);
            do {
                // barycenter times (d+1)
                IntVec bary(d, 0), v = a;
                Simplex s;
                bool ok = true;
                for (int step = 0; step <= d && ok; ++step) {
                    if (step > 0) v[perm[step - 1]] += 1;
                    auto it = where.find(v);
                    if (it == where.end()) ok = false;
                    else s.push_back(it->second);
                    for (int c = 0; c < d; ++c) bary[c] += v[c];
                }
                if (!ok) continue;
                bool inside = bary[0] <= static_cast<std::int64_t>(k) * (d + 1) && bary[d - 1] >= 0;
                for (int c = 0; c + 1 < d; ++c)
                    if (bary[c] < bary[c + 1]) inside = false;
                if (inside) simplices.push_back(s);
            } while (std::next_permutation(perm.begin(), perm.end()));
            return;
        }
        for (std::int64_t v = 0; v < k; ++v) {
            a[i] = v;
            base(i + 1);
        }
    };
    base(0);
    Staircase out;
    out.cfg = config_from_points(pts);
    out.tri = make_triangulation(out.cfg, simplices);
    return out;
}

Rational staircase_psi(const IntVec& x) {
    // -sum over 0 <= i < j <= d of g(x_j - x_i), x_0 = 0, g(y) = sum_{kappa=0}^{floor|y|} (|y| - kappa)
    auto g = [](std::int64_t y) {
        y = y < 0 ? -y : y;
        return Rational(Int(static_cast<long>(y)) * (y + 1) / 2);
    };
    IntVec ext(1, 0);
    ext.insert(ext.end(), x.begin(), x.end());
    Rational s = 0;
    for (std::size_t i = 0; i < ext.size(); ++i)
        for (std::size_t j = i + 1; j < ext.size(); ++j) s -= g(ext[j] - ext[i]);
    return s;
}

std::vector<Rational> staircase_heights(const Staircase& s) {
    std::vector<Rational> w;
    for (const auto& p : s.cfg.points) w.push_back(staircase_psi(p));
    return w;
}

SeriesMatch one_param_check(const QuotientType& t) {
    SeriesMatch m;
    int r = t.dim();
    if (!t.is_cyclic() || !t.is_gorenstein() || r < 3) return m;
    std::int64_t l = t.order();
    const IntVec& al = t.factors()[0].weights;
    std::map<std::int64_t, int> count;
    for (auto a : al) count[mod64(a, l)]++;
    for (const auto& [w, c] : count) {
        if (c < r - 1 || gcd64(w, l) != 1) continue;
        std::int64_t inv = inverse_mod(w, l);
        std::int64_t last = 0;
        int seen = 0;
        for (auto a : al) {
            if (mod64(a, l) == w && seen < r - 1) {
                ++seen;
                continue;
            }
            last = mod64(a * inv, l);
        }
        if (l < r || last != l - (r - 1)) continue;
        m.kind = "one_param";
        m.params = {{"r", r}, {"l", l}};
        std::int64_t res = mod64(l, r - 1);
        bool ok = res == 0 || res == 1;
        m.verdict = ok ? "resolvable" : "not_resolvable";
        m.params.push_back({"divisors", l / (r - 1)});
        m.params.push_back({"isolated", gcd64(l, r - 1) == 1 ? 1 : 0});
        m.trace.push_back({"normal_form", "1/" + std::to_string(l) + "(1^" + std::to_string(r - 1) + "," +
                                              std::to_string(l - (r - 1)) + ")"});
        m.trace.push_back({"l mod (r-1)", std::to_string(res)});
        return m;
    }
    return m;
}

std::vector<std::int64_t> continued_fraction(std::int64_t q, std::int64_t p) {
    if (p <= 0) throw ValidationError("continued fraction needs p > 0");
    std::vector<std::int64_t> cf;
    while (p != 0) {
        cf.push_back(q / p);
        std::int64_t r = q % p;
        q = p;
        p = r;
    }
    return cf;
}

TwoParamTrace two_param_arith(int r, std::int64_t l, std::int64_t a, std::int64_t b, std::int64_t nu_shift) {
    if (r < 3 || a < 1 || b < 1 || a + b != l - (r - 2)) throw ValidationError("not a 2-parameter presentation");
    TwoParamTrace tr;
    std::int64_t m = r - 2;
    tr.a = a;
    tr.b = b;
    std::int64_t big_a = a + m;
    tr.t = gcd64(b, l);
    tr.t_prime = gcd64(a, l);
    if (gcd64(big_a, l) != tr.t) throw ConsistencyError("gcd(b,l) differs from gcd(a+r-2,l)");
    std::int64_t period = l / tr.t;
    std::int64_t nu2 = period == 1 ? 0 : mod64(inverse_mod((big_a / tr.t) % period, period), period);
    while (static_cast<__int128>(nu2) * big_a < tr.t) nu2 += period;
    nu2 += nu_shift * period;
    __int128 num = static_cast<__int128>(nu2) * big_a - tr.t;
    if (num % l != 0) throw ConsistencyError("extended Euclid solution is wrong");
    tr.nu2 = nu2;
    tr.nu1 = static_cast<std::int64_t>(num / l);
    tr.gcd_abl = gcd64(gcd64(a, b), l);
    tr.branch1 = tr.gcd_abl == m;
    if (tr.gcd_abl != 1) {
        // t * t' need not divide l here; the second branch requires gcd(a,b,l) = 1
        tr.cf_note = "gcd(a,b,l) > 1: second branch not applicable";
        tr.conditions.push_back({"gcd(a,b,l) = 1", false});
        return tr;
    }
    __int128 pb = static_cast<__int128>(tr.nu2) * a - static_cast<__int128>(tr.nu1) * l;
    if (pb % tr.t_prime != 0) throw ConsistencyError("p-bar is not integral");
    tr.p_bar = static_cast<std::int64_t>(pb / tr.t_prime);
    if (l % (tr.t * tr.t_prime) != 0) throw ConsistencyError("q is not integral");
    tr.q = l / (tr.t * tr.t_prime);
    tr.p = mod64(tr.p_bar, tr.q);
    if (tr.p == 0) {
        tr.cf_ok = true;
        tr.cf_note = "p = 0: empty continued fraction";
    } else {
        tr.cf = continued_fraction(tr.q, tr.p);
        if (tr.cf.size() > 1 && tr.cf.back() == 1) {
            tr.cf.pop_back();
            tr.cf.back() += 1;
        }
        tr.cf_ok = std::all_of(tr.cf.begin(), tr.cf.end(), [](std::int64_t x) { return x >= 2; });
        if (!tr.cf_ok) tr.cf_note = "no expansion with all partial quotients >= 2: " + join(continued_fraction(tr.q, tr.p));
    }
    auto cond = [&](const std::string& name, bool v) { tr.conditions.push_back({name, v}); };
    cond("gcd(a,b,l) = 1", tr.gcd_abl == 1);
    cond("t = 1 mod (r-2)", congruent(tr.t, 1, m));
    cond("t' = 1 mod (r-2)", congruent(tr.t_prime, 1, m));
    cond("(p - p_bar)/q = 0 mod (r-2)", congruent((tr.p - tr.p_bar) / tr.q, 0, m));
    cond("continued fraction exists", tr.cf_ok);
    bool even_ok = true;
    std::int64_t kappa = static_cast<std::int64_t>(tr.cf.size());
    for (std::int64_t i = 2; i <= kappa - 1; i += 2)
        if (!congruent(tr.cf[i - 1], 0, m)) even_ok = false;
    cond("lambda_i = 0 mod (r-2) for even i < kappa", tr.cf_ok && even_ok);
    cond("lambda_kappa = 1 mod (r-2) if kappa even", tr.cf_ok && (kappa % 2 == 1 || kappa == 0 || congruent(tr.cf.back(), 1, m)));
    tr.branch2 = std::all_of(tr.conditions.begin(), tr.conditions.end(), [](const auto& c) { return c.second; });
    return tr;
}

SeriesMatch two_param_check(const QuotientType& t) {
    SeriesMatch m;
    int r = t.dim();
    if (!t.is_cyclic() || !t.is_gorenstein() || r < 3) return m;
    std::int64_t l = t.order();
    if (l < r) return m;
    const IntVec& al = t.factors()[0].weights;
    for (auto a : al)
        if (mod64(a, l) == 0) return m;  // not msc
    std::map<std::int64_t, int> count;
    for (auto a : al) count[mod64(a, l)]++;
    std::set<std::pair<std::int64_t, std::int64_t>> tried;
    for (const auto& [w, c] : count) {
        if (c < r - 2 || gcd64(w, l) != 1) continue;
        std::int64_t inv = inverse_mod(w, l);
        std::vector<std::int64_t> rest;
        int skipped = 0;
        for (auto a : al) {
            if (mod64(a, l) == w && skipped < r - 2) {
                ++skipped;
                continue;
            }
            rest.push_back(mod64(a * inv, l));
        }
        if (rest[0] + rest[1] != l - (r - 2)) continue;
        for (int swap = 0; swap < 2; ++swap) {
            std::int64_t a = rest[swap], b = rest[1 - swap];
            if (!tried.insert({a, b}).second) continue;
            TwoParamTrace tr = two_param_arith(r, l, a, b);
            TwoParamTrace alt = two_param_arith(r, l, a, b, 1);
            if (alt.holds() != tr.holds()) throw ConsistencyError("2-parameter verdict depends on the (nu1, nu2) choice");
            m.two_param.push_back(tr);
        }
    }
    if (m.two_param.empty()) return m;
    m.kind = "two_param";
    m.params = {{"r", r}, {"l", l}, {"a", m.two_param[0].a}, {"b", m.two_param[0].b}};
    bool any_hold = false;
    for (const auto& tr : m.two_param) any_hold = any_hold || tr.holds();
    // the arithmetic conditions are sufficient; for this family resolvability is decided by the Hilbert-basis condition
    bool hilbcon = first_criterion(t).pass;
    if (any_hold && !hilbcon) throw ConsistencyError("2-parameter conditions hold but the Hilbert basis has elements of age >= 2");
    m.verdict = hilbcon ? "resolvable" : "not_resolvable";
    m.trace.push_back({"arithmetic_conditions", any_hold ? "hold" : "fail"});
    m.trace.push_back({"decided_by", any_hold ? "arithmetic conditions" : "Hilbert basis (age <= 1)"});
    for (const auto& tr : m.two_param) {
        std::string key = "(a,b)=(" + std::to_string(tr.a) + "," + std::to_string(tr.b) + ")";
        std::string v = "t=" + std::to_string(tr.t) + " t'=" + std::to_string(tr.t_prime) + " nu=(" +
                        std::to_string(tr.nu1) + "," + std::to_string(tr.nu2) + ") p_bar=" + std::to_string(tr.p_bar) +
                        " q=" + std::to_string(tr.q) + " p=" + std::to_string(tr.p) + " cf=" + join(tr.cf) +
                        (tr.branch1 ? " branch1" : "") + (tr.branch2 ? " branch2" : "");
        if (!tr.cf_note.empty()) v += " (" + tr.cf_note + ")";
        m.trace.push_back({key, v});
    }
    return m;
}

GpData gp_construct(int r, std::int64_t k) {
    if (r < 3 || k < 2) throw ValidationError("GP series needs r >= 3 and k >= 2");
    std::int64_t kr = ipow(k, r);
    std::int64_t l = (kr - 1) / (k - 1);
    IntVec weights;
    for (int i = 0; i < r; ++i) weights.push_back(ipow(k, i));
    QuotientType type = QuotientType::cyclic(l, weights);
    IntMatrix w(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) w(i, j) = static_cast<long>(ipow(k, (i + j) % r));
    // closed form of l(k-1) W^{-1}
    IntMatrix wb(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            long v = 0;
            if ((i + j) % r == r - 1) v = static_cast<long>(k);
            if ((i + j) % r == 0) v -= 1;
            wb(i, j) = v;
        }
    IntMatrix prod = wb * w;
    Int scale = Int(static_cast<long>(l)) * (k - 1);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (prod(i, j) != (i == j ? scale : Int(0))) throw ConsistencyError("W-breve is not l(k-1) W^{-1}");
    GpData g{r, k, type, w, wb, abs(determinant(w)), abs(determinant(wb))};
    return g;
}

namespace {

// staircase simplices of the dilated simplex (k-1)·conv(e_i : i in idx), as lattice vectors in Z^r
std::vector<std::vector<IntVec>> face_staircase(int r, std::int64_t m, const std::vector<int>& idx) {
    std::vector<std::vector<IntVec>> out;
    int d = static_cast<int>(idx.size()) - 1;
    auto embed = [&](const IntVec& partial) {
        // partial sums y_1..y_d with m >= y_1 >= ... >= y_d >= 0 ; lambda over idx
        IntVec lam(r, 0);
        std::int64_t prev = m;
        for (int i = 0; i < d; ++i) {
            lam[idx[i]] = prev - partial[i];
            prev = partial[i];
        }
        lam[idx[d]] = prev;
        return lam;
    };
    if (d == 0) {
        out.push_back({embed({})});
        return out;
    }
    Staircase st = staircase_triangulation(d, static_cast<int>(m));
    for (const auto& s : st.tri.simplices) {
        std::vector<IntVec> verts;
        for (int v : s) verts.push_back(embed(st.cfg.points[v]));
        out.push_back(verts);
    }
    return out;
}

}  // namespace

GpTriangulation gp_triangulation(int r, std::int64_t k) {
    GpData g = gp_construct(r, k);
    GpTriangulation out;
    out.cfg = junior_config(g.type);
    std::map<IntVec, int> where;
    for (std::size_t i = 0; i < out.cfg.size(); ++i) {
        const IntVec& res = out.cfg.labels[i].residue;
        IntVec lam(r, 0);
        for (int a = 0; a < r; ++a) {
            Int s = 0;
            for (int b = 0; b < r; ++b) s += g.w_breve(a, b) * static_cast<long>(res[b]);
            if (s % static_cast<long>(out.cfg.exponent) != 0) throw ConsistencyError("Phi does not map N_G into Z^r");
            s /= static_cast<long>(out.cfg.exponent);
            lam[a] = s.get_si();
        }
        std::int64_t sum = 0;
        for (auto v : lam) sum += v;
        if (mod64(sum, k - 1) != 0 || sum != k - 1) throw ConsistencyError("Phi image leaves the level k-1");
        where[lam] = static_cast<int>(i);
        out.lambda.push_back(lam);
    }
    std::int64_t expected = binomial64(k + r - 2, r - 1) + r;
    if (static_cast<std::int64_t>(out.cfg.size()) != expected) throw ConsistencyError("GP junior point count mismatch");
    // w-breve_j = -e_j + k e_{j-1} (cyclically), paired with u_j = (k-1) e_j
    std::vector<IntVec> partner(r, IntVec(r, 0));
    for (int j = 0; j < r; ++j) {
        partner[j][j] = -1;
        partner[j][(j + r - 1) % r] = k;
    }
    std::vector<Simplex> simplices;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask) {
        std::vector<int> idx;
        for (int j = 0; j < r; ++j)
            if (mask >> j & 1) idx.push_back(j);
        for (const auto& face : face_staircase(r, k - 1, idx)) {
            Simplex s;
            for (const auto& v : face) s.push_back(where.at(v));
            for (int j = 0; j < r; ++j)
                if (!(mask >> j & 1)) s.push_back(where.at(partner[j]));
            simplices.push_back(s);
        }
    }
    out.tri = make_triangulation(out.cfg, simplices);
    return out;
}

SeriesMatch gp_check(const QuotientType& t) {
    SeriesMatch m;
    int r = t.dim();
    if (!t.is_cyclic() || r < 3) return m;
    std::int64_t l = t.order();
    const IntVec& al = t.factors()[0].weights;
    for (std::int64_t k = 2;; ++k) {
        __int128 acc = 0, pw = 1;
        for (int i = 0; i < r; ++i) {
            acc += pw;
            pw *= k;
            if (acc > l) break;
        }
        if (acc > l) break;
        if (acc != l) continue;
        std::vector<std::int64_t> target;
        for (int i = 0; i < r; ++i) target.push_back(mod64(ipow(k, i), l));
        std::sort(target.begin(), target.end());
        for (auto a : al) {
            if (gcd64(a, l) != 1) continue;
            std::int64_t inv = inverse_mod(a, l);
            std::vector<std::int64_t> norm;
            for (auto b : al) norm.push_back(mod64(b * inv, l));
            std::sort(norm.begin(), norm.end());
            if (norm == target) {
                m.kind = "gp";
                m.verdict = "resolvable";
                m.params = {{"r", r}, {"k", k}, {"l", l}};
                m.trace.push_back({"normal_form", "GP(" + std::to_string(r) + ";" + std::to_string(k) + ")"});
                return m;
            }
        }
    }
    return m;
}

}  // namespace crepant
