#include "crepant/lp.hpp"

namespace crepant {

namespace {

class Tableau {
public:
    Tableau(std::size_t m, std::size_t cols) : m_(m), cols_(cols), t_(m, std::vector<Rational>(cols + 1)), z_(cols + 1), basis_(m) {}

    std::vector<Rational>& row(std::size_t i) { return t_[i]; }
    std::vector<Rational>& z() { return z_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t pr, std::size_t pc) {
        auto& prow = t_[pr];
        Rational inv = 1 / prow[pc];
        for (auto& v : prow)
            if (sgn(v) != 0) v *= inv;
        for (std::size_t i = 0; i <= m_; ++i) {
            auto& row = i < m_ ? t_[i] : z_;
            if (i == pr || sgn(row[pc]) == 0) continue;
            Rational f = row[pc];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (sgn(prow[j]) != 0) row[j] -= f * prow[j];
        }
        basis_[pr] = pc;
    }

    // Bland's rule over allowed columns; returns false when unbounded
    enum class Step { Optimal, Pivoted, Unbounded };
    Step step(const std::vector<bool>& allowed) {
        std::size_t pc = cols_;
        for (std::size_t j = 0; j < cols_; ++j)
            if (allowed[j] && sgn(z_[j]) < 0) {
                pc = j;
                break;
            }
        if (pc == cols_) return Step::Optimal;
        std::size_t pr = m_;
        Rational best;
        for (std::size_t i = 0; i < m_; ++i) {
            if (sgn(t_[i][pc]) <= 0) continue;
            Rational ratio = t_[i][cols_] / t_[i][pc];
            if (pr == m_ || ratio < best || (ratio == best && basis_[i] < basis_[pr])) {
                pr = i;
                best = ratio;
            }
        }
        if (pr == m_) return Step::Unbounded;
        pivot(pr, pc);
        return Step::Pivoted;
    }

private:
    std::size_t m_, cols_;
    std::vector<std::vector<Rational>> t_;
    std::vector<Rational> z_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c, std::size_t max_pivots) {
    std::size_t m = a.size();
    std::size_t n = c.size();
    if (b.size() != m) throw ValidationError("solve_lp: dimension mismatch");
    std::size_t cols = n + m;
    Tableau tab(m, cols);
    std::vector<int> sign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i].size() != n) throw ValidationError("solve_lp: ragged constraint matrix");
        sign[i] = sgn(b[i]) < 0 ? -1 : 1;
        auto& row = tab.row(i);
        for (std::size_t j = 0; j < n; ++j) row[j] = sign[i] * a[i][j];
        row[n + i] = 1;
        row[cols] = sign[i] * b[i];
        tab.basis()[i] = n + i;
    }
    // phase 1: maximize -sum(artificials)
    auto& z = tab.z();
    for (std::size_t j = 0; j <= cols; ++j) z[j] = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = tab.row(i);
        for (std::size_t j = 0; j < n; ++j) z[j] -= row[j];
        z[cols] -= row[cols];
    }
    LpResult res;
    std::vector<bool> allowed(cols, true);
    while (true) {
        auto s = tab.step(allowed);
        if (s == Tableau::Step::Optimal) break;
        if (s == Tableau::Step::Unbounded) throw ConsistencyError("solve_lp: phase 1 cannot be unbounded");
        if (++res.pivots > max_pivots) throw BudgetError("solve_lp: pivot budget exhausted");
    }
    if (sgn(z[cols]) < 0) {
        res.status = LpResult::Status::Infeasible;
        res.y.resize(m);
        // phase-1 multipliers pi_i = z_art - 1; the ray is -pi in the sign-adjusted rows
        for (std::size_t i = 0; i < m; ++i) res.y[i] = sign[i] * (1 - z[n + i]);
        res.value = z[cols];
        return res;
    }
    // drive zero-level artificials out of the basis where possible
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis()[i] < n) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(tab.row(i)[j]) != 0) {
                tab.pivot(i, j);
                break;
            }
    }
    for (std::size_t j = n; j < cols; ++j) allowed[j] = false;
    // phase 2 reduced costs for maximize c^T x, artificial costs zero
    for (std::size_t j = 0; j <= cols; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t bj = tab.basis()[i];
            if (bj < n && sgn(c[bj]) != 0) s += c[bj] * tab.row(i)[j];
        }
        z[j] = s - (j < n ? c[j] : Rational(0));
    }
    while (true) {
        auto s = tab.step(allowed);
        if (s == Tableau::Step::Optimal) break;
        if (s == Tableau::Step::Unbounded) {
            res.status = LpResult::Status::Unbounded;
            return res;
        }
        if (++res.pivots > max_pivots) throw BudgetError("solve_lp: pivot budget exhausted");
    }
    res.status = LpResult::Status::Optimal;
    res.x.assign(n, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis()[i] < n) res.x[tab.basis()[i]] = tab.row(i)[cols];
    res.value = z[cols];
    res.y.resize(m);
    for (std::size_t i = 0; i < m; ++i) res.y[i] = sign[i] * z[n + i];
    return res;
}

}  // namespace crepant
