#include "crepant/triangulate.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "crepant/lp.hpp"
#include "geometry.hpp"

namespace crepant {

using geom::hdet;

namespace {

using Mask = std::uint64_t;

Mask to_mask(const Simplex& s) {
    Mask m = 0;
    for (int v : s) m |= Mask{1} << v;
    return m;
}

Simplex from_mask(Mask m) {
    Simplex s;
    while (m) {
        s.push_back(__builtin_ctzll(m));
        m &= m - 1;
    }
    return s;
}

std::vector<Mask> masks_of(const Triangulation& t) {
    std::vector<Mask> out;
    out.reserve(t.simplices.size());
    for (const auto& s : t.simplices) out.push_back(to_mask(s));
    return out;
}

void require_mask_size(const PointConfig& cfg) {
    if (cfg.size() > 64) throw BudgetError("flip engine supports at most 64 points");
}

std::int64_t simplex_det(const PointConfig& cfg, const Simplex& s) {
    return hdet(cfg, s.data(), static_cast<int>(s.size()));
}

// sign of det(facet, x) where facet has d points
int orient(const PointConfig& cfg, const Simplex& facet, int x) {
    Simplex tmp = facet;
    tmp.push_back(x);
    std::int64_t d = simplex_det(cfg, tmp);
    return (d > 0) - (d < 0);
}

// simplex of t containing p, with the carrier face (vertices with positive barycentric weight)
bool locate(const PointConfig& cfg, const Triangulation& t, int p, std::size_t& which, Simplex& carrier) {
    std::vector<std::int64_t> num;
    std::int64_t den;
    for (std::size_t i = 0; i < t.simplices.size(); ++i) {
        geom::barycentric(cfg, t.simplices[i], p, num, den);
        bool inside = true;
        for (auto x : num)
            if ((den > 0 && x < 0) || (den < 0 && x > 0)) inside = false;
        if (!inside) continue;
        which = i;
        carrier.clear();
        for (std::size_t v = 0; v < num.size(); ++v)
            if (num[v] != 0) carrier.push_back(t.simplices[i][v]);
        return true;
    }
    return false;
}

}  // namespace

std::vector<int> Triangulation::used_points() const {
    std::set<int> u;
    for (const auto& s : simplices) u.insert(s.begin(), s.end());
    return {u.begin(), u.end()};
}

std::int64_t signed_volume(const PointConfig& cfg, const Simplex& s) {
    return simplex_det(cfg, s);
}

Triangulation make_triangulation(const PointConfig& cfg, std::vector<Simplex> simplices) {
    for (auto& s : simplices) {
        std::sort(s.begin(), s.end());
        if (static_cast<int>(s.size()) != cfg.dim + 1) throw ValidationError("simplex has the wrong number of vertices");
        for (int v : s)
            if (v < 0 || v >= static_cast<int>(cfg.size())) throw ValidationError("simplex refers to a missing point");
    }
    std::sort(simplices.begin(), simplices.end());
    Triangulation t;
    t.simplices = std::move(simplices);
    for (const auto& s : t.simplices) {
        std::int64_t v = simplex_det(cfg, s);
        if (v == 0) throw ValidationError("degenerate simplex");
        t.volumes.push_back(v < 0 ? -v : v);
    }
    return t;
}

Triangulation placing_triangulation(const PointConfig& cfg, const std::vector<int>& order) {
    int d = cfg.dim;
    std::vector<int> base;
    for (int p : order) {
        base.push_back(p);
        if (geom::affine_rank(cfg, base) < static_cast<int>(base.size())) base.pop_back();
        if (static_cast<int>(base.size()) == d + 1) break;
    }
    if (static_cast<int>(base.size()) != d + 1) throw ValidationError("configuration is not full-dimensional");
    std::vector<Simplex> simplices;
    Simplex first = base;
    std::sort(first.begin(), first.end());
    simplices.push_back(first);
    std::map<Simplex, int> boundary;  // facet -> opposite vertex
    for (std::size_t i = 0; i < first.size(); ++i) {
        Simplex f = first;
        f.erase(f.begin() + i);
        boundary[f] = first[i];
    }
    std::set<int> placed(base.begin(), base.end());
    for (int p : order) {
        if (placed.count(p)) continue;
        placed.insert(p);
        std::vector<Simplex> visible;
        for (const auto& [f, opp] : boundary) {
            int sp = orient(cfg, f, p);
            if (sp != 0 && sp == -orient(cfg, f, opp)) visible.push_back(f);
        }
        if (visible.empty()) continue;
        std::map<Simplex, int> fresh;
        std::set<Simplex> shared;
        for (const auto& f : visible) {
            boundary.erase(f);
            Simplex s = f;
            s.push_back(p);
            std::sort(s.begin(), s.end());
            simplices.push_back(s);
            for (std::size_t i = 0; i < f.size(); ++i) {
                Simplex g = f;
                g.erase(g.begin() + i);
                g.push_back(p);
                std::sort(g.begin(), g.end());
                if (fresh.count(g)) shared.insert(g);
                else fresh[g] = f[i];
            }
        }
        for (const auto& [g, opp] : fresh)
            if (!shared.count(g)) boundary[g] = opp;
    }
    return make_triangulation(cfg, simplices);
}

Triangulation insert_points(const PointConfig& cfg, Triangulation t, const std::vector<int>& order) {
    for (int p : order) {
        auto used = t.used_points();
        if (std::binary_search(used.begin(), used.end(), p)) continue;
        std::size_t which;
        Simplex carrier;
        if (!locate(cfg, t, p, which, carrier)) throw ValidationError("point lies outside the triangulated region");
        std::vector<Simplex> next;
        for (const auto& s : t.simplices) {
            if (!std::includes(s.begin(), s.end(), carrier.begin(), carrier.end())) {
                next.push_back(s);
                continue;
            }
            for (int v : carrier) {
                Simplex n = s;
                *std::find(n.begin(), n.end(), v) = p;
                next.push_back(n);
            }
        }
        t = make_triangulation(cfg, next);
    }
    return t;
}

bool is_maximal(const PointConfig& cfg, const Triangulation& t) {
    return t.used_points().size() == cfg.size();
}

namespace {

bool pair_improper(const PointConfig& cfg, const Simplex& s, const Simplex& t) {
    int d = cfg.dim;
    Simplex common;
    std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(common));
    // cheap separation by a facet hyperplane of either simplex
    auto separated = [&](const Simplex& a, const Simplex& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            Simplex f = a;
            f.erase(f.begin() + i);
            int inner = orient(cfg, f, a[i]);
            bool all_out = true;
            bool common_in_facet = true;
            for (int q : b) {
                int o = orient(cfg, f, q);
                if (o == inner) all_out = false;
                if (o == 0 && !std::binary_search(f.begin(), f.end(), q)) common_in_facet = false;
            }
            // b lies weakly outside; the meet is inside the facet hyperplane
            if (all_out) {
                Simplex on;
                for (int q : b)
                    if (orient(cfg, f, q) == 0) on.push_back(q);
                std::sort(on.begin(), on.end());
                // proper if the points of b on the hyperplane are exactly shared vertices
                if (std::includes(common.begin(), common.end(), on.begin(), on.end()) && common_in_facet) return true;
            }
        }
        return false;
    };
    if (separated(s, t) || separated(t, s)) return false;
    // exact LP: maximize weight on s \ t over points of conv(s) ∩ conv(t)
    std::size_t ns = s.size(), nt = t.size();
    std::vector<std::vector<Rational>> a(d + 2, std::vector<Rational>(ns + nt));
    std::vector<Rational> b(d + 2, 0), c(ns + nt, 0);
    for (int k = 0; k < d; ++k) {
        for (std::size_t i = 0; i < ns; ++i) a[k][i] = static_cast<long>(cfg.points[s[i]][k]);
        for (std::size_t j = 0; j < nt; ++j) a[k][ns + j] = -static_cast<long>(cfg.points[t[j]][k]);
    }
    for (std::size_t i = 0; i < ns; ++i) a[d][i] = 1;
    for (std::size_t j = 0; j < nt; ++j) a[d + 1][ns + j] = 1;
    b[d] = 1;
    b[d + 1] = 1;
    for (std::size_t i = 0; i < ns; ++i)
        if (!std::binary_search(t.begin(), t.end(), s[i])) c[i] = 1;
    LpResult r = solve_lp(a, b, c);
    return r.status == LpResult::Status::Optimal && sgn(r.value) > 0;
}

}  // namespace

ValidityReport check_valid(const PointConfig& cfg, const Triangulation& t, std::size_t pairwise_limit) {
    ValidityReport rep;
    int d = cfg.dim;
    if (t.simplices.empty()) {
        rep.reason = "empty triangulation";
        return rep;
    }
    std::int64_t total = 0;
    for (const auto& s : t.simplices) {
        if (static_cast<int>(s.size()) != d + 1) {
            rep.reason = "simplex with wrong size";
            return rep;
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 0 || s[i] >= static_cast<int>(cfg.size()) || (i && s[i] == s[i - 1])) {
                rep.reason = "bad vertex index";
                return rep;
            }
        }
        std::int64_t v = simplex_det(cfg, s);
        if (v == 0) {
            rep.reason = "degenerate simplex";
            return rep;
        }
        total += v < 0 ? -v : v;
    }
    if (total != cfg.volume) {
        rep.reason = "volume sum " + std::to_string(total) + " differs from " + std::to_string(cfg.volume);
        return rep;
    }
    std::map<Simplex, std::vector<int>> ridges;  // ridge -> opposite vertices
    for (const auto& s : t.simplices)
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex f = s;
            f.erase(f.begin() + i);
            ridges[f].push_back(s[i]);
        }
    for (const auto& [f, opp] : ridges) {
        if (opp.size() > 2) {
            rep.reason = "ridge shared by more than two simplices";
            return rep;
        }
        if (opp.size() == 2) {
            if (orient(cfg, f, opp[0]) != -orient(cfg, f, opp[1])) {
                rep.reason = "adjacent simplices on the same side of a ridge";
                return rep;
            }
        } else {
            int side = orient(cfg, f, opp[0]);
            for (std::size_t q = 0; q < cfg.size(); ++q)
                if (orient(cfg, f, static_cast<int>(q)) == -side) {
                    rep.reason = "free ridge in the interior of the hull";
                    return rep;
                }
        }
    }
    if (t.simplices.size() <= pairwise_limit) {
        for (std::size_t i = 0; i < t.simplices.size(); ++i)
            for (std::size_t j = i + 1; j < t.simplices.size(); ++j)
                if (pair_improper(cfg, t.simplices[i], t.simplices[j])) {
                    rep.reason = "simplices intersect improperly";
                    return rep;
                }
    }
    rep.valid = true;
    return rep;
}

bool is_valid(const PointConfig& cfg, const Triangulation& t) {
    try {
        return check_valid(cfg, t).valid;
    } catch (const ValidationError&) {
        return false;
    }
}

BasicnessReport basicness(const PointConfig& cfg, const Triangulation& t) {
    BasicnessReport b;
    for (std::size_t i = 0; i < t.simplices.size(); ++i) {
        std::int64_t v = i < t.volumes.size() ? t.volumes[i] : std::llabs(simplex_det(cfg, t.simplices[i]));
        if (v != 1) b.nonunimodular.push_back(t.simplices[i]);
    }
    b.is_basic = b.nonunimodular.empty();
    return b;
}

FhVectors fh_vectors(const Triangulation& t, int dim) {
    std::set<Simplex> faces;
    for (const auto& s : t.simplices) {
        std::size_t n = s.size();
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            Simplex f;
            for (std::size_t i = 0; i < n; ++i)
                if (m >> i & 1) f.push_back(s[i]);
            faces.insert(f);
        }
    }
    FhVectors out;
    int top = dim + 1;
    out.f.assign(top + 1, 0);
    for (const auto& f : faces) out.f[f.size()] += 1;
    out.h.assign(top + 1, 0);
    // h(t) = sum_i f_{i-1} t^i (1 - t)^{d+1-i}
    for (int i = 0; i <= top; ++i)
        for (int j = 0; j <= top - i; ++j) {
            Int term = out.f[i] * binomial(top - i, j);
            if (j % 2) out.h[i + j] -= term;
            else out.h[i + j] += term;
        }
    return out;
}

std::optional<Circuit> circuit_of(const PointConfig& cfg, const std::vector<int>& pts) {
    int cols = static_cast<int>(pts.size());
    int rows = cfg.dim + 1;
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < cfg.dim; ++i) m[i][j] = static_cast<long>(cfg.points[pts[j]][i]);
        m[cfg.dim][j] = 1;
    }
    // reduced row echelon form
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && sgn(m[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            Rational f = m[i][c];
            for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivcol.push_back(c);
        ++r;
    }
    if (cols - r != 1) return std::nullopt;
    int free = -1;
    for (int c = 0; c < cols; ++c)
        if (std::find(pivcol.begin(), pivcol.end(), c) == pivcol.end()) free = c;
    std::vector<Rational> x(cols, 0);
    x[free] = 1;
    for (int i = 0; i < r; ++i) x[pivcol[i]] = -m[i][free];
    Circuit c;
    for (int j = 0; j < cols; ++j) {
        if (sgn(x[j]) > 0) c.positive.push_back(pts[j]);
        if (sgn(x[j]) < 0) c.negative.push_back(pts[j]);
    }
    std::sort(c.positive.begin(), c.positive.end());
    std::sort(c.negative.begin(), c.negative.end());
    if (!c.negative.empty() && (c.positive.empty() || c.negative[0] < c.positive[0])) std::swap(c.positive, c.negative);
    return c;
}

namespace {

struct SideCheck {
    bool ok = false;
    std::vector<Mask> links;
};

// cells Z \ {v}, v in side, must all be faces of t with one common link
SideCheck check_side(const std::vector<Mask>& simp, Mask z, Mask side) {
    SideCheck sc;
    bool first = true;
    for (Mask rest = side; rest; rest &= rest - 1) {
        Mask cell = z & ~(rest & -rest);
        std::vector<Mask> links;
        for (Mask s : simp)
            if ((s & cell) == cell) links.push_back(s & ~cell);
        if (links.empty()) return sc;
        std::sort(links.begin(), links.end());
        if (first) {
            sc.links = std::move(links);
            first = false;
        } else if (links != sc.links) {
            return sc;
        }
    }
    sc.ok = !first;
    return sc;
}

Flip build_flip(const PointConfig& cfg, const std::vector<Mask>& simp, Mask pos, Mask neg, bool pos_present,
                const std::vector<Mask>& links) {
    Flip f;
    f.circuit.positive = from_mask(pos);
    f.circuit.negative = from_mask(neg);
    f.positive_side_present = pos_present;
    Mask z = pos | neg;
    Mask old_side = pos_present ? pos : neg;
    Mask new_side = pos_present ? neg : pos;
    std::unordered_set<Mask> removed;
    for (Mask rest = old_side; rest; rest &= rest - 1)
        for (Mask l : links) removed.insert((z & ~(rest & -rest)) | l);
    std::vector<Simplex> next;
    for (Mask s : simp)
        if (!removed.count(s)) next.push_back(from_mask(s));
    for (Mask m : removed) f.removed.push_back(from_mask(m));
    for (Mask rest = new_side; rest; rest &= rest - 1)
        for (Mask l : links) {
            Mask s = (z & ~(rest & -rest)) | l;
            f.added.push_back(from_mask(s));
            next.push_back(from_mask(s));
        }
    std::sort(f.removed.begin(), f.removed.end());
    std::sort(f.added.begin(), f.added.end());
    f.result = make_triangulation(cfg, next);
    return f;
}

// affine dependence of exactly d+2 points given as a mask; coefficient signs per point
void dependence(const PointConfig& cfg, Mask u, Mask& pos, Mask& neg) {
    Simplex pts = from_mask(u);
    int n = static_cast<int>(pts.size());
    pos = neg = 0;
    std::vector<int> sub(n - 1);
    for (int j = 0; j < n; ++j) {
        int k = 0;
        for (int i = 0; i < n; ++i)
            if (i != j) sub[k++] = pts[i];
        std::int64_t c = hdet(cfg, sub.data(), n - 1);
        if (j % 2) c = -c;
        if (c > 0) pos |= Mask{1} << pts[j];
        if (c < 0) neg |= Mask{1} << pts[j];
    }
    Mask lowest = (pos | neg) & -(pos | neg);
    if (neg & lowest) std::swap(pos, neg);
}

}  // namespace

std::vector<Flip> find_flips(const PointConfig& cfg, const Triangulation& t, const FlipOptions& opts) {
    require_mask_size(cfg);
    int d = cfg.dim;
    std::vector<Mask> simp = masks_of(t);
    std::unordered_map<Mask, std::vector<std::size_t>> ridges;
    for (std::size_t i = 0; i < simp.size(); ++i)
        for (Mask rest = simp[i]; rest; rest &= rest - 1) ridges[simp[i] & ~(rest & -rest)].push_back(i);
    std::set<Mask> seen;
    std::vector<Flip> out;
    std::vector<std::pair<Mask, Mask>> candidates;
    for (const auto& [ridge, owners] : ridges) {
        if (owners.size() != 2) continue;
        Mask u = simp[owners[0]] | simp[owners[1]];
        Mask pos, neg;
        dependence(cfg, u, pos, neg);
        if (seen.insert(pos | neg).second) candidates.push_back({pos, neg});
    }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& [pos, neg] : candidates) {
        int np = __builtin_popcountll(pos), nn = __builtin_popcountll(neg);
        if (opts.full_dimensional_only && np + nn != d + 2) continue;
        for (int side = 0; side < 2; ++side) {
            Mask present = side == 0 ? pos : neg;
            Mask other = side == 0 ? neg : pos;
            if (opts.vertex_preserving && (__builtin_popcountll(present) < 2 || __builtin_popcountll(other) < 2)) continue;
            SideCheck sc = check_side(simp, pos | neg, present);
            if (!sc.ok) continue;
            out.push_back(build_flip(cfg, simp, pos, neg, side == 0, sc.links));
            break;
        }
        (void)nn;
    }
    if (!opts.vertex_preserving && !opts.full_dimensional_only) {
        auto used = t.used_points();
        for (int p = 0; p < static_cast<int>(cfg.size()); ++p) {
            if (std::binary_search(used.begin(), used.end(), p)) continue;
            std::size_t which;
            Simplex carrier;
            if (!locate(cfg, t, p, which, carrier)) continue;
            Mask fm = to_mask(carrier), pm = Mask{1} << p;
            Mask pos = fm, neg = pm;
            bool pos_present = false;
            Mask lowest = (pos | neg) & -(pos | neg);
            if (neg & lowest) {
                std::swap(pos, neg);
                pos_present = true;
            }
            SideCheck sc = check_side(simp, fm | pm, pm);
            if (sc.ok) out.push_back(build_flip(cfg, simp, pos, neg, pos_present, sc.links));
        }
    }
    return out;
}

Triangulation apply_flip(const PointConfig& cfg, const Triangulation& t, const Circuit& c) {
    require_mask_size(cfg);
    std::vector<Mask> simp = masks_of(t);
    Mask pos = to_mask(c.positive), neg = to_mask(c.negative);
    SideCheck sp = check_side(simp, pos | neg, pos);
    if (sp.ok) return build_flip(cfg, simp, pos, neg, true, sp.links).result;
    SideCheck sn = check_side(simp, pos | neg, neg);
    if (sn.ok) return build_flip(cfg, simp, pos, neg, false, sn.links).result;
    throw ValidationError("circuit is not supported on the triangulation");
}

namespace {

// integer rows of the local folding constraints  C w >= 1
std::vector<std::vector<std::int64_t>> folding_constraints(const PointConfig& cfg, const Triangulation& t) {
    std::size_t n = cfg.size();
    std::vector<std::vector<std::int64_t>> rows;
    auto add = [&](const Simplex& s, int p) {
        std::vector<std::int64_t> num;
        std::int64_t den;
        geom::barycentric(cfg, s, p, num, den);
        std::vector<std::int64_t> row(n, 0);
        std::int64_t sg = den > 0 ? 1 : -1;
        for (std::size_t v = 0; v < s.size(); ++v) row[s[v]] += sg * num[v];
        row[p] -= sg * den;
        rows.push_back(std::move(row));
    };
    std::map<Simplex, std::vector<std::size_t>> ridges;
    for (std::size_t i = 0; i < t.simplices.size(); ++i)
        for (std::size_t k = 0; k < t.simplices[i].size(); ++k) {
            Simplex f = t.simplices[i];
            f.erase(f.begin() + k);
            ridges[f].push_back(i);
        }
    for (const auto& [f, owners] : ridges) {
        if (owners.size() != 2) continue;
        const Simplex& s1 = t.simplices[owners[0]];
        const Simplex& s2 = t.simplices[owners[1]];
        int b = -1;
        for (int v : s2)
            if (!std::binary_search(f.begin(), f.end(), v)) b = v;
        add(s1, b);
    }
    auto used = t.used_points();
    for (int p = 0; p < static_cast<int>(n); ++p) {
        if (std::binary_search(used.begin(), used.end(), p)) continue;
        std::size_t which;
        Simplex carrier;
        if (!locate(cfg, t, p, which, carrier)) throw ValidationError("configuration point outside the triangulated region");
        add(t.simplices[which], p);
    }
    return rows;
}

}  // namespace

CoherenceResult is_coherent(const PointConfig& cfg, const Triangulation& t, std::size_t max_constraints) {
    std::size_t n = cfg.size();
    CoherenceResult res;
    auto rows = folding_constraints(cfg, t);
    res.constraints = rows.size();
    if (rows.size() > max_constraints) throw BudgetError("coherence LP exceeds the constraint budget");
    if (rows.empty()) {
        res.coherent = true;
        res.heights.assign(n, 0);
        return res;
    }
    // Farkas system: y >= 0, C^T y = 0, sum y = 1 is feasible iff no heights exist
    std::size_t m = rows.size();
    std::vector<std::vector<Rational>> a(n + 1, std::vector<Rational>(m));
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t p = 0; p < n; ++p)
            if (rows[k][p]) a[p][k] = static_cast<long>(rows[k][p]);
        a[n][k] = 1;
    }
    std::vector<Rational> b(n + 1, 0), c(m, 0);
    b[n] = 1;
    LpResult lp = solve_lp(a, b, c);
    if (lp.status == LpResult::Status::Infeasible) {
        res.coherent = true;
        res.heights.resize(n);
        for (std::size_t p = 0; p < n; ++p) res.heights[p] = -lp.y[p] / lp.y[n];
        if (!verify_heights(cfg, t, res.heights)) throw ConsistencyError("coherence certificate failed the global check");
    } else {
        res.coherent = false;
        res.farkas = lp.x;
    }
    return res;
}

bool verify_heights(const PointConfig& cfg, const Triangulation& t, const std::vector<Rational>& w) {
    if (w.size() != cfg.size()) return false;
    std::vector<std::int64_t> num;
    std::int64_t den;
    for (const auto& s : t.simplices)
        for (int p = 0; p < static_cast<int>(cfg.size()); ++p) {
            if (std::binary_search(s.begin(), s.end(), p)) continue;
            geom::barycentric(cfg, s, p, num, den);
            Rational lift = 0;
            for (std::size_t v = 0; v < s.size(); ++v) lift += frac(num[v], den) * w[s[v]];
            if (!(lift > w[p])) return false;
        }
    return true;
}

std::vector<std::int64_t> gkz_vector(const PointConfig& cfg, const Triangulation& t) {
    std::vector<std::int64_t> g(cfg.size(), 0);
    for (std::size_t i = 0; i < t.simplices.size(); ++i)
        for (int v : t.simplices[i]) g[v] += t.volumes[i];
    return g;
}

std::int64_t star_euler(const PointConfig& cfg, const Triangulation& t, int p) {
    if (p < 0 || p >= static_cast<int>(cfg.size())) throw ValidationError("star_euler: no such point");
    if (cfg.labels[p].is_vertex) throw ValidationError("star_euler: point is a vertex of the configuration");
    std::int64_t c = 0;
    for (const auto& s : t.simplices)
        if (std::binary_search(s.begin(), s.end(), p)) ++c;
    if (c == 0) throw ValidationError("star_euler: point is not used by the triangulation");
    return c;
}

int env_threads() {
    const char* v = std::getenv("CREPANT_LAB_THREADS");
    if (!v) return 1;
    int n = std::atoi(v);
    return n < 1 ? 1 : std::min(n, 64);
}

std::vector<Triangulation> seed_triangulations(const PointConfig& cfg, const ExploreOptions& opts) {
    std::vector<int> verts, rest;
    for (std::size_t i = 0; i < cfg.size(); ++i) (cfg.labels[i].is_vertex ? verts : rest).push_back(static_cast<int>(i));
    std::mt19937_64 rng(opts.seed);
    std::vector<Triangulation> seeds;
    int count = std::max(1, opts.seed_orders);
    for (int k = 0; k < count; ++k) {
        std::vector<int> r = rest;
        if (k > 0) std::shuffle(r.begin(), r.end(), rng);
        std::vector<int> order = verts;
        order.insert(order.end(), r.begin(), r.end());
        Triangulation t = placing_triangulation(cfg, order);
        if (opts.maximal_only) t = insert_points(cfg, t, order);
        if (std::find(seeds.begin(), seeds.end(), t) == seeds.end()) seeds.push_back(t);
    }
    return seeds;
}

namespace {

struct Expansion {
    ExploredNode node;
    std::vector<Flip> flips;
    bool expanded = false;
};

Expansion expand(const PointConfig& cfg, const Triangulation& t, const ExploreOptions& opts) {
    Expansion e;
    e.node.tri = t;
    CoherenceResult cr = is_coherent(cfg, t);
    e.node.coherent = cr.coherent;
    e.node.heights = cr.heights;
    e.node.basic = basicness(cfg, t).is_basic;
    e.node.maximal = is_maximal(cfg, t);
    e.node.gkz = gkz_vector(cfg, t);
    if (opts.expand_coherent_only && !e.node.coherent) return e;
    FlipOptions fo = opts.flips;
    if (opts.maximal_only) fo.vertex_preserving = true;
    e.flips = find_flips(cfg, t, fo);
    e.expanded = true;
    return e;
}

}  // namespace

ExploreResult explore(const PointConfig& cfg, const ExploreOptions& opts) {
    require_mask_size(cfg);
    ExploreResult res;
    std::map<Triangulation, std::size_t> index;
    std::vector<ExploredNode> nodes;
    std::set<std::pair<std::size_t, std::size_t>> edge_set;
    std::map<std::pair<std::size_t, std::size_t>, Circuit> edge_circ;
    std::vector<Triangulation> frontier;
    for (auto& s : seed_triangulations(cfg, opts)) {
        if (index.count(s)) continue;
        index[s] = nodes.size();
        nodes.push_back({});
        nodes.back().tri = s;
        frontier.push_back(s);
    }
    res.seeds = frontier.size();
    int threads = std::max(1, opts.threads);
    std::set<std::size_t> dropped;
    auto passes = [&](const ExploredNode& n) {
        return (!opts.maximal_only || n.maximal) && (!opts.filter_coherent || n.coherent) && (!opts.filter_basic || n.basic);
    };
    while (!frontier.empty()) {
        std::vector<Expansion> exps(frontier.size());
        if (threads == 1 || frontier.size() == 1) {
            for (std::size_t i = 0; i < frontier.size(); ++i) exps[i] = expand(cfg, frontier[i], opts);
        } else {
            std::vector<std::future<void>> jobs;
            std::size_t chunk = (frontier.size() + threads - 1) / threads;
            for (int w = 0; w < threads; ++w) {
                std::size_t lo = w * chunk, hi = std::min(frontier.size(), lo + chunk);
                if (lo >= hi) break;
                jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
                    for (std::size_t i = lo; i < hi; ++i) exps[i] = expand(cfg, frontier[i], opts);
                }));
            }
            for (auto& j : jobs) j.get();
        }
        std::vector<Triangulation> next;
        bool hit = false;
        for (auto& e : exps) {
            std::size_t from = index.at(e.node.tri);
            nodes[from] = e.node;
            hit = hit || passes(e.node);
            for (auto& f : e.flips) {
                auto it = index.find(f.result);
                std::size_t to;
                if (it == index.end()) {
                    if (nodes.size() >= opts.node_budget) {
                        res.complete = false;
                        continue;
                    }
                    to = nodes.size();
                    index[f.result] = to;
                    nodes.push_back({});
                    nodes.back().tri = f.result;
                    next.push_back(f.result);
                } else {
                    to = it->second;
                }
                auto key = std::minmax(from, to);
                if (edge_set.insert(key).second) edge_circ[key] = f.circuit;
            }
        }
        frontier = std::move(next);
        if (hit && opts.stop_at_first && !frontier.empty()) {
            // the whole level has been expanded, so the stopping point does not depend on the thread count
            res.stopped_early = true;
            res.complete = false;
            for (const auto& t : frontier) dropped.insert(index.at(t));  // reached but never evaluated
            frontier.clear();
        }
    }
    // canonical order
    std::vector<std::size_t> perm;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (!dropped.count(i)) perm.push_back(i);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return nodes[a].tri < nodes[b].tri; });
    std::vector<std::size_t> where(nodes.size());
    for (std::size_t i = 0; i < perm.size(); ++i) where[perm[i]] = i;
    for (std::size_t i : perm) res.nodes.push_back(std::move(nodes[i]));
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, Circuit>> edges;
    for (const auto& [key, c] : edge_circ)
        if (!dropped.count(key.first) && !dropped.count(key.second))
            edges.push_back({std::minmax(where[key.first], where[key.second]), c});
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, c] : edges) {
        res.edges.push_back(k);
        res.edge_circuits.push_back(c);
    }
    for (std::size_t i = 0; i < res.nodes.size(); ++i) {
        if (passes(res.nodes[i])) res.selected.push_back(i);
    }
    res.caveat = opts.expand_coherent_only
                     ? "coherent census is complete when the search finished; non-coherent triangulations were not expanded"
                     : "coherent triangulations are all reached from a coherent seed; non-coherent ones may lie in other flip components";
    if (res.stopped_early) res.caveat += "; stopped after the first level containing a match";
    else if (!res.complete) res.caveat += "; node budget exhausted, result is partial";
    return res;
}

std::vector<Circuit> flop_path(const PointConfig& cfg, const Triangulation& a, const Triangulation& b,
                               std::size_t node_budget, bool coherent_only) {
    if (a == b) return {};
    require_mask_size(cfg);
    std::map<Triangulation, std::pair<const Triangulation*, Circuit>> parent;
    std::queue<const Triangulation*> q;
    auto ins = parent.emplace(a, std::make_pair(nullptr, Circuit{}));
    q.push(&ins.first->first);
    FlipOptions fo;
    while (!q.empty()) {
        const Triangulation* cur = q.front();
        q.pop();
        for (auto& f : find_flips(cfg, *cur, fo)) {
            if (parent.count(f.result)) continue;
            if (coherent_only && !(f.result == b) && !is_coherent(cfg, f.result).coherent) continue;
            auto it = parent.emplace(f.result, std::make_pair(cur, f.circuit)).first;
            if (f.result == b) {
                std::vector<Circuit> path;
                const Triangulation* node = &it->first;
                while (!(*node == a)) {
                    auto& pr = parent.at(*node);
                    path.push_back(pr.second);
                    node = pr.first;
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (parent.size() > node_budget) throw BudgetError("flop_path: node budget exhausted");
            q.push(&it->first);
        }
    }
    throw Error("flop_path: triangulations are not connected by flips");
}

std::string flip_graph_dot(const ExploreResult& res) {
    std::ostringstream os;
    os << "graph flips {\n";
    for (std::size_t i = 0; i < res.nodes.size(); ++i) {
        const auto& n = res.nodes[i];
        os << "  n" << i << " [label=\"" << i << " (" << n.tri.size() << ")\"";
        if (n.basic) os << ", shape=box";
        if (!n.coherent) os << ", style=dashed";
        os << "];\n";
    }
    for (const auto& [a, b] : res.edges) os << "  n" << a << " -- n" << b << ";\n";
    os << "}\n";
    return os.str();
}

PointConfig config_from_points(std::vector<IntVec> points) {
    PointConfig cfg;
    if (points.empty()) throw ValidationError("empty point configuration");
    cfg.dim = static_cast<int>(points[0].size());
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != cfg.dim) throw ValidationError("points of different dimension");
    cfg.points = std::move(points);
    cfg.labels.resize(cfg.points.size());
    std::vector<int> order(cfg.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    Triangulation t = placing_triangulation(cfg, order);
    for (auto v : t.volumes) cfg.volume += v;
    // a point is a hull vertex iff it is not a convex combination of the others
    for (std::size_t p = 0; p < cfg.size(); ++p) {
        std::size_t n = cfg.size() - 1;
        std::vector<std::vector<Rational>> a(cfg.dim + 1, std::vector<Rational>(n));
        std::vector<Rational> b(cfg.dim + 1), c(n, 0);
        std::size_t col = 0;
        for (std::size_t q = 0; q < cfg.size(); ++q) {
            if (q == p) continue;
            for (int k = 0; k < cfg.dim; ++k) a[k][col] = static_cast<long>(cfg.points[q][k]);
            a[cfg.dim][col] = 1;
            ++col;
        }
        for (int k = 0; k < cfg.dim; ++k) b[k] = static_cast<long>(cfg.points[p][k]);
        b[cfg.dim] = 1;
        cfg.labels[p].is_vertex = solve_lp(a, b, c).status == LpResult::Status::Infeasible;
    }
    return cfg;
}

}  // namespace crepant
