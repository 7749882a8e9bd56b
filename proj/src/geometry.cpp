#include "geometry.hpp"

#include "crepant/lattice.hpp"

namespace crepant::geom {

namespace {

bool bareiss128(std::vector<__int128> a, int n, __int128& out) {
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (a[k * n + k] == 0) {
            int p = k + 1;
            while (p < n && a[p * n + k] == 0) ++p;
            if (p == n) {
                out = 0;
                return true;
            }
            for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                __int128 x, y;
                if (__builtin_mul_overflow(a[i * n + j], a[k * n + k], &x)) return false;
                if (__builtin_mul_overflow(a[i * n + k], a[k * n + j], &y)) return false;
                if (__builtin_sub_overflow(x, y, &x)) return false;
                a[i * n + j] = x / prev;
            }
            a[i * n + k] = 0;
        }
        prev = a[k * n + k];
    }
    out = sign * a[(n - 1) * n + (n - 1)];
    return true;
}

}  // namespace

Int det(const std::vector<std::int64_t>& m, int n) {
    if (n == 0) return 1;
    std::vector<__int128> a(m.begin(), m.end());
    __int128 r;
    if (bareiss128(a, n, r)) {
        if (r >= INT64_MIN && r <= INT64_MAX) return Int(static_cast<long>(r));
    }
    IntMatrix big(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) big(i, j) = static_cast<long>(m[i * n + j]);
    return determinant(big);
}

std::int64_t det64(const std::vector<std::int64_t>& m, int n) {
    Int d = det(m, n);
    if (!d.fits_slong_p()) throw BudgetError("determinant exceeds 64-bit range");
    return d.get_si();
}

std::int64_t hdet(const PointConfig& cfg, const int* idx, int count) {
    int n = cfg.dim + 1;
    if (count != n) throw ValidationError("hdet: wrong number of points");
    std::vector<std::int64_t> m(n * n);
    for (int i = 0; i < n; ++i) {
        const IntVec& p = cfg.points[idx[i]];
        for (int j = 0; j < cfg.dim; ++j) m[i * n + j] = p[j];
        m[i * n + cfg.dim] = 1;
    }
    return det64(m, n);
}

int affine_rank(const PointConfig& cfg, const std::vector<int>& idx) {
    int cols = cfg.dim + 1;
    std::vector<std::vector<Rational>> rows;
    for (int i : idx) {
        std::vector<Rational> r(cols);
        for (int j = 0; j < cfg.dim; ++j) r[j] = static_cast<long>(cfg.points[i][j]);
        r[cfg.dim] = 1;
        rows.push_back(r);
    }
    int rank = 0;
    for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        int p = rank;
        while (p < static_cast<int>(rows.size()) && sgn(rows[p][c]) == 0) ++p;
        if (p == static_cast<int>(rows.size())) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            if (sgn(rows[i][c]) == 0) continue;
            Rational f = rows[i][c] / rows[rank][c];
            for (int j = c; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

void barycentric(const PointConfig& cfg, const std::vector<int>& s, int p, std::vector<std::int64_t>& num, std::int64_t& den) {
    den = hdet(cfg, s.data(), static_cast<int>(s.size()));
    num.resize(s.size());
    std::vector<int> tmp = s;
    for (std::size_t v = 0; v < s.size(); ++v) {
        tmp[v] = p;
        num[v] = hdet(cfg, tmp.data(), static_cast<int>(tmp.size()));
        tmp[v] = s[v];
    }
}

}  // namespace crepant::geom
