#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "crepant/counting.hpp"
#include "crepant/grouptype.hpp"
#include "crepant/triangulate.hpp"
#include "oracles.hpp"

using namespace crepant;

namespace {

constexpr std::size_t kCases = 1000;

// random faithful cyclic type, Gorenstein or not
oracle::Type any_cyclic(std::mt19937_64& rng, int r, std::int64_t lmax) {
    for (;;) {
        std::int64_t l = std::uniform_int_distribution<std::int64_t>(2, lmax)(rng);
        oracle::Vec w(r);
        std::int64_t g = l;
        for (auto& x : w) {
            x = std::uniform_int_distribution<std::int64_t>(0, l - 1)(rng);
            g = oracle::gcd(g, x);
        }
        if (g == 1) return oracle::cyclic(l, w);
    }
}

std::string tri_text(const Triangulation& t) {
    std::ostringstream os;
    for (const auto& s : t.simplices) {
        os << "[";
        for (int v : s) os << v << " ";
        os << "]";
    }
    return os.str();
}

struct FlipCase {
    PointConfig cfg;
    Triangulation tri;
    std::string name;
};

FlipCase flip_case(std::mt19937_64& rng) {
    for (;;) {
        int r = std::uniform_int_distribution<int>(3, 4)(rng);
        auto ot = oracle::random_cyclic(rng, r, 3, r == 3 ? 30 : 16, true);
        auto cfg = junior_config(QuotientType::parse(ot.text()));
        if (cfg.size() <= std::size_t(r)) continue;
        std::vector<int> order(cfg.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
        std::shuffle(order.begin() + r, order.end(), rng);  // vertices first
        auto t = insert_points(cfg, placing_triangulation(cfg, {order.begin(), order.begin() + r}),
                               {order.begin() + r, order.end()});
        // a short random walk so that the starting points are not all placing triangulations
        int steps = std::uniform_int_distribution<int>(0, 4)(rng);
        for (int s = 0; s < steps; ++s) {
            auto fl = find_flips(cfg, t);
            if (fl.empty()) break;
            t = fl[std::uniform_int_distribution<std::size_t>(0, fl.size() - 1)(rng)].result;
        }
        return {cfg, t, ot.text()};
    }
}

}  // namespace

TEST_CASE("property: flips are involutions") {
    auto n = oracle::for_all("flip involution", kCases, 101, flip_case, [](const FlipCase& c, std::string& what) {
        for (const auto& f : find_flips(c.cfg, c.tri)) {
            Triangulation back = apply_flip(c.cfg, f.result, f.circuit);
            if (!(back == c.tri)) {
                what = c.name + " " + tri_text(c.tri);
                return false;
            }
            bool listed = false;
            for (const auto& g : find_flips(c.cfg, f.result)) listed = listed || (g.circuit == f.circuit && g.result == c.tri);
            if (!listed) {
                what = c.name + " reverse flip missing";
                return false;
            }
        }
        return true;
    });
    CHECK(n >= kCases);
}

TEST_CASE("property: flips conserve volume") {
    auto n = oracle::for_all("volume conservation", kCases, 202, flip_case, [](const FlipCase& c, std::string& what) {
        auto total = [&](const std::vector<Simplex>& ss) {
            std::int64_t v = 0;
            for (const auto& s : ss) v += std::abs(signed_volume(c.cfg, s));
            return v;
        };
        for (const auto& f : find_flips(c.cfg, c.tri)) {
            std::int64_t after = 0;
            for (auto v : f.result.volumes) after += v;
            if (after != c.cfg.volume || total(f.removed) != total(f.added) || !is_valid(c.cfg, f.result)) {
                what = c.name + " " + tri_text(c.tri);
                return false;
            }
        }
        return true;
    });
    CHECK(n >= kCases);
}

TEST_CASE("property: height = age + age of the inverse") {
    auto gen = [](std::mt19937_64& rng) { return any_cyclic(rng, std::uniform_int_distribution<int>(2, 6)(rng), 40); };
    auto n = oracle::for_all("ht = age + age(inv)", kCases, 303, gen, [](const oracle::Type& ot, std::string& what) {
        auto t = QuotientType::parse(ot.text());
        for (const auto& g : enumerate_elements(t)) {
            if (g.is_identity()) continue;
            if (Rational(g.height) != g.rational_age() + inverse(t, g).rational_age()) {
                what = ot.text();
                return false;
            }
        }
        return true;
    });
    CHECK(n >= kCases);
}

TEST_CASE("property: inversion pairs age i with age k - i at fixed height and support") {
    auto gen = [](std::mt19937_64& rng) {
        int r = std::uniform_int_distribution<int>(3, 6)(rng);
        return oracle::random_cyclic(rng, r, 3, 120, rng() % 2 == 0);
    };
    auto n = oracle::for_all("ping-pong", kCases, 404, gen, [](const oracle::Type& ot, std::string& what) {
        auto t = QuotientType::parse(ot.text());
        auto b = b_counts(t);
        // explicit bijection: inverse is an involution mapping the (i, k, support) class onto (k - i, k, support)
        std::map<IntVec, IntVec> inv;
        for (const auto& g : enumerate_elements(t)) {
            if (g.is_identity()) continue;
            auto h = inverse(t, g);
            if (h.height != g.height || h.support() != g.support() || h.age() != g.height - g.age()) {
                what = ot.text() + " element";
                return false;
            }
            inv[g.delta] = h.delta;
        }
        for (const auto& [d, e] : inv)
            if (inv.at(e) != d) {
                what = ot.text() + " not an involution";
                return false;
            }
        for (const auto& [key, count] : b.by_support) {
            auto [i, k, nu] = key;
            if (b.get(k - i, k, nu) != count) {
                what = ot.text() + " counts";
                return false;
            }
            // odd order, k = 2i: the class is closed under inversion without fixed points
            if (t.order() % 2 == 1 && k == 2 * i && count % 2 != 0) {
                what = ot.text() + " odd class";
                return false;
            }
        }
        return true;
    });
    CHECK(n >= kCases);
}

TEST_CASE("property: Ehrhart reciprocity for nu <= 3") {
    auto gen = [](std::mt19937_64& rng) {
        int r = std::uniform_int_distribution<int>(2, 5)(rng);
        return oracle::random_cyclic(rng, r, 2, 60, rng() % 3 != 0);
    };
    auto n = oracle::for_all("Ehrhart reciprocity", kCases, 505, gen, [](const oracle::Type& ot, std::string& what) {
        auto t = QuotientType::parse(ot.text());
        auto og = oracle::group(ot);
        auto e = ehrhart_poly(t);
        int sign = (ot.r - 1) % 2 == 0 ? 1 : -1;
        for (int nu = 1; nu <= 3; ++nu) {
            if (e.value(Rational(-nu)) != Rational(sign * oracle::dilate_count(og, nu, true)) ||
                e.value(Rational(nu)) != Rational(oracle::dilate_count(og, nu, false))) {
                what = ot.text() + " nu=" + std::to_string(nu);
                return false;
            }
        }
        return true;
    });
    CHECK(n >= kCases);
}
