#include "crepant/grouptype.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "crepant/lattice.hpp"

namespace crepant {

namespace {

class Scanner {
public:
    explicit Scanner(const std::string& s) : s_(s) {}
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip();
        return pos_ >= s_.size();
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::int64_t integer() {
        skip();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
        std::size_t start = pos_;
        std::int64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, s_[pos_] - '0', &v))
                fail("integer out of range");
            ++pos_;
        }
        if (pos_ == start) fail("expected an integer");
        return neg ? -v : v;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("type syntax error at position " + std::to_string(pos_) + ": " + what + " in \"" + s_ + "\"");
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

QuotientType::QuotientType(int r, std::vector<CyclicFactor> factors, std::int64_t element_budget)
    : r_(r), factors_(std::move(factors)), budget_(element_budget) {
    if (r_ < 2) throw ValidationError("dimension r must be at least 2");
    if (r_ > 62) throw ValidationError("dimension r above 62 is not supported");
    if (factors_.empty()) throw ValidationError("type needs at least one cyclic factor");
    for (auto& f : factors_) {
        if (f.order < 2) throw ValidationError("factor order must be at least 2, got " + std::to_string(f.order));
        if (static_cast<int>(f.weights.size()) != r_) throw ValidationError("factors have mismatched dimension");
        std::int64_t g = f.order;
        for (auto& w : f.weights) {
            w = mod64(w, f.order);
            g = gcd64(g, w);
        }
        if (g != 1) throw ValidationError("factor 1/" + std::to_string(f.order) + "(...) is not faithful (gcd " + std::to_string(g) + ")");
        exp_ = lcm64(exp_, f.order);
    }
    for (std::size_t a = 0; a < factors_.size(); ++a)
        for (std::size_t b = a + 1; b < factors_.size(); ++b)
            if (factors_[a].order == factors_[b].order && factors_[a].weights == factors_[b].weights)
                throw ValidationError("duplicate cyclic factor");

    std::size_t kappa = factors_.size();
    IntMatrix a(r_, kappa + r_);
    for (std::size_t mu = 0; mu < kappa; ++mu) {
        IntVec g = generator(mu);
        for (int i = 0; i < r_; ++i) a(i, mu) = static_cast<long>(g[i]);
    }
    for (int i = 0; i < r_; ++i) a(i, kappa + i) = static_cast<long>(exp_);
    HnfResult res = hnf(a);
    Int diag = 1;
    for (int i = 0; i < r_; ++i) diag *= res.h(i, i);
    Int full = 1;
    for (int i = 0; i < r_; ++i) full *= static_cast<long>(exp_);
    Int l = full / diag;
    if (!l.fits_slong_p()) throw BudgetError("group order exceeds 64-bit range");
    order_ = l.get_si();
    hcols_.assign(r_, IntVec(r_));
    hidx_.assign(r_, IntVec(kappa));
    for (int j = 0; j < r_; ++j) {
        for (int i = 0; i < r_; ++i) hcols_[j][i] = res.h(i, j).get_si();
        for (std::size_t mu = 0; mu < kappa; ++mu) {
            Int v = res.u(mu, j) % static_cast<long>(factors_[mu].order);
            hidx_[j][mu] = mod64(v.get_si(), factors_[mu].order);
        }
    }
    std::int64_t cap = std::min<std::int64_t>(r_ - 1, order_ / 2);
    if (static_cast<std::int64_t>(kappa) > cap)
        throw ValidationError("too many cyclic factors: kappa = " + std::to_string(kappa) + " exceeds min(r-1, floor(l/2)) = " + std::to_string(cap));
}

QuotientType QuotientType::parse(const std::string& text, std::int64_t element_budget) {
    Scanner sc(text);
    std::vector<CyclicFactor> factors;
    int r = -1;
    do {
        std::int64_t one = sc.integer();
        if (one != 1) sc.fail("factor must start with 1/");
        sc.expect('/');
        CyclicFactor f;
        f.order = sc.integer();
        sc.expect('(');
        f.weights.push_back(sc.integer());
        while (sc.accept(',')) f.weights.push_back(sc.integer());
        sc.expect(')');
        if (r < 0) r = static_cast<int>(f.weights.size());
        else if (r != static_cast<int>(f.weights.size())) throw ParseError("mismatched r across factors in \"" + text + "\"");
        if (f.order < 2) throw ValidationError("factor order must be at least 2, got " + std::to_string(f.order));
        factors.push_back(std::move(f));
    } while (sc.accept('x') || sc.accept('X'));
    if (!sc.done()) sc.fail("trailing characters");
    return QuotientType(r, std::move(factors), element_budget);
}

QuotientType QuotientType::cyclic(std::int64_t l, IntVec weights, std::int64_t element_budget) {
    int r = static_cast<int>(weights.size());
    return QuotientType(r, {CyclicFactor{l, std::move(weights)}}, element_budget);
}

IntVec QuotientType::generator(std::size_t mu) const {
    const CyclicFactor& f = factors_.at(mu);
    std::int64_t xi = exp_ / f.order;
    IntVec g(r_);
    for (int i = 0; i < r_; ++i) g[i] = xi * f.weights[i];
    return g;
}

bool QuotientType::is_gorenstein() const {
    for (const auto& f : factors_) {
        std::int64_t s = 0;
        for (auto w : f.weights) s += w;
        if (s % f.order != 0) return false;
    }
    return true;
}

std::string QuotientType::str() const {
    std::ostringstream os;
    for (std::size_t mu = 0; mu < factors_.size(); ++mu) {
        if (mu) os << 'x';
        os << "1/" << factors_[mu].order << '(';
        for (int i = 0; i < r_; ++i) os << (i ? "," : "") << factors_[mu].weights[i];
        os << ')';
    }
    return os.str();
}

bool QuotientType::operator==(const QuotientType& o) const {
    if (r_ != o.r_ || factors_.size() != o.factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].order != o.factors_[i].order || factors_[i].weights != o.factors_[i].weights) return false;
    return true;
}

bool is_gorenstein(const QuotientType& t) {
    return t.is_gorenstein();
}

std::int64_t GroupElement::age() const {
    if (!has_integral_age()) throw ValidationError("age is not an integer for a non-Gorenstein element");
    return delta_sum / exponent;
}

std::vector<Rational> GroupElement::point() const {
    std::vector<Rational> p;
    for (auto d : delta) {
        Rational q(d, exponent);
        q.canonicalize();
        p.push_back(q);
    }
    return p;
}

std::uint64_t GroupElement::support() const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < delta.size(); ++i)
        if (delta[i] != 0) m |= std::uint64_t{1} << i;
    return m;
}

GroupElement element_from_delta(const QuotientType& t, const IntVec& delta, const IntVec& index) {
    GroupElement g;
    g.index = index;
    g.delta = delta;
    g.exponent = t.exponent();
    for (auto d : delta) {
        g.delta_sum += d;
        if (d != 0) ++g.height;
    }
    return g;
}

void for_each_element(const QuotientType& t, const std::function<void(const GroupElement&)>& fn) {
    if (t.order() > t.element_budget())
        throw BudgetError("group order " + std::to_string(t.order()) + " exceeds the enumeration budget " + std::to_string(t.element_budget()));
    int r = t.dim();
    std::int64_t e = t.exponent();
    GroupElement g;
    g.exponent = e;
    g.delta.assign(r, 0);
    if (t.is_cyclic()) {
        const IntVec& w = t.factors()[0].weights;
        g.index.assign(1, 0);
        for (std::int64_t j = 0; j < t.order(); ++j) {
            g.index[0] = j;
            g.delta_sum = 0;
            g.height = 0;
            for (int i = 0; i < r; ++i) {
                std::int64_t d = (j * w[i]) % e;
                g.delta[i] = d;
                g.delta_sum += d;
                if (d) ++g.height;
            }
            fn(g);
        }
        return;
    }
    // coset coordinates c_i in [0, exp/h_ii) along the HNF basis columns
    const auto& hc = t.basis_columns();
    const auto& hi = t.basis_indices();
    std::size_t kappa = t.factors().size();
    IntVec bound(r), c(r, 0);
    for (int i = 0; i < r; ++i) bound[i] = e / hc[i][i];
    g.index.assign(kappa, 0);
    while (true) {
        g.delta_sum = 0;
        g.height = 0;
        for (int i = 0; i < r; ++i) {
            std::int64_t s = 0;
            for (int j = 0; j <= i; ++j) s += c[j] * hc[j][i];
            g.delta[i] = mod64(s, e);
            g.delta_sum += g.delta[i];
            if (g.delta[i]) ++g.height;
        }
        for (std::size_t mu = 0; mu < kappa; ++mu) {
            std::int64_t s = 0;
            for (int j = 0; j < r; ++j) s = mod64(s + c[j] * hi[j][mu], t.factors()[mu].order);
            g.index[mu] = s;
        }
        fn(g);
        int pos = r - 1;
        while (pos >= 0 && ++c[pos] == bound[pos]) c[pos--] = 0;
        if (pos < 0) break;
    }
}

std::vector<GroupElement> enumerate_elements(const QuotientType& t) {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(std::min<std::int64_t>(t.order(), t.element_budget())));
    for_each_element(t, [&](const GroupElement& g) { out.push_back(g); });
    return out;
}

GroupElement inverse(const QuotientType& t, const GroupElement& g) {
    IntVec d(g.delta.size()), idx(g.index.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = mod64(-g.delta[i], t.exponent());
    for (std::size_t mu = 0; mu < idx.size(); ++mu) idx[mu] = mod64(-g.index[mu], t.factors()[mu].order);
    return element_from_delta(t, d, idx);
}

StructureReport structure_report(const QuotientType& t) {
    StructureReport rep;
    rep.is_gorenstein = t.is_gorenstein();
    int r = t.dim();
    bool isolated = true;
    std::uint64_t moving = 0;
    if (rep.is_gorenstein) rep.age_histogram.assign(r - 1, 0);
    for_each_element(t, [&](const GroupElement& g) {
        if (g.is_identity()) return;
        moving |= g.support();
        if (g.height != r) isolated = false;
        if (rep.is_gorenstein) {
            std::int64_t a = g.age();
            if (a < 1 || a > r - 1) throw ConsistencyError("age out of range for a small Gorenstein element");
            ++rep.age_histogram[a - 1];
        }
    });
    rep.moving_coordinates = moving;
    rep.splitting_codim = __builtin_popcountll(moving);
    rep.is_msc = rep.splitting_codim == r;
    rep.is_isolated = isolated;
    return rep;
}

PointConfig junior_config(const QuotientType& t) {
    if (!t.is_gorenstein()) throw NotGorensteinError("junior configuration needs a Gorenstein type: " + t.str());
    int r = t.dim();
    PointConfig cfg;
    cfg.dim = r - 1;
    cfg.exponent = t.exponent();
    cfg.volume = t.order();
    for (int i = 0; i < r; ++i) {
        PointLabel lab;
        lab.is_vertex = true;
        lab.face = std::uint64_t{1} << i;
        lab.residue.assign(r, 0);
        lab.residue[i] = t.exponent();
        cfg.labels.push_back(lab);
    }
    for_each_element(t, [&](const GroupElement& g) {
        if (g.is_identity() || g.delta_sum != t.exponent()) return;
        PointLabel lab;
        lab.face = g.support();
        lab.residue = g.delta;
        cfg.labels.push_back(lab);
    });
    cfg.points = standardize_junior(cfg, t).points;
    return cfg;
}

QuotientType msc_core(const QuotientType& t) {
    StructureReport rep = structure_report(t);
    if (rep.is_msc) return t;
    if (rep.splitting_codim < 2) throw ValidationError("msc core has dimension below 2");
    std::vector<CyclicFactor> fs;
    for (const auto& f : t.factors()) {
        CyclicFactor g;
        g.order = f.order;
        for (int i = 0; i < t.dim(); ++i)
            if (rep.moving_coordinates >> i & 1) g.weights.push_back(f.weights[i]);
        fs.push_back(g);
    }
    return QuotientType(rep.splitting_codim, std::move(fs), t.element_budget());
}

std::vector<int> PointConfig::vertex_indices() const {
    std::vector<int> v;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i].is_vertex) v.push_back(static_cast<int>(i));
    return v;
}

}  // namespace crepant
