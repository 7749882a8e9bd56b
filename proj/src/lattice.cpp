#include "crepant/lattice.hpp"

#include <utility>

#include "crepant/grouptype.hpp"

namespace crepant {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw ValidationError("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_rows64(const std::vector<IntVec>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw ValidationError("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rows[i][j]);
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw ValidationError("matrix dimension mismatch");
    IntMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
        }
    return out;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::vector<Int> IntMatrix::column(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("determinant of a non-square matrix");
    std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = v;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

namespace {

void col_axpy(IntMatrix& m, std::size_t dst, const Int& f, std::size_t src) {
    // col dst -= f * col src
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= f * m(i, src);
}

void col_swap(IntMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void col_negate(IntMatrix& m, std::size_t a) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) = -m(i, a);
}

}  // namespace

HnfResult hnf(const IntMatrix& a) {
    std::size_t m = a.rows(), n = a.cols();
    if (m > n) throw ValidationError("hnf: matrix has more rows than columns, not of full row rank");
    IntMatrix h = a;
    IntMatrix u = IntMatrix::identity(n);
    for (std::size_t i = 0; i < m; ++i) {
        // Euclid on row i across columns i..n-1
        for (std::size_t j = i + 1; j < n; ++j) {
            while (h(i, j) != 0) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h(i, i).get_mpz_t(), h(i, j).get_mpz_t());
                col_axpy(h, i, q, j);
                col_axpy(u, i, q, j);
                col_swap(h, i, j);
                col_swap(u, i, j);
            }
        }
        if (h(i, i) == 0) throw ValidationError("hnf: input is rank deficient");
        if (h(i, i) < 0) {
            col_negate(h, i);
            col_negate(u, i);
        }
        for (std::size_t j = 0; j < i; ++j) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, i).get_mpz_t());
            if (q != 0) {
                col_axpy(h, j, q, i);
                col_axpy(u, j, q, i);
            }
        }
    }
    return {h, u};
}

Rational LatticeBasis::det() const {
    IntMatrix sq(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) sq(i, j) = basis(i, j);
    Int d = abs(determinant(sq));
    Int den = 1;
    for (int i = 0; i < rank; ++i) den *= denominator;
    Rational q(d, den);
    q.canonicalize();
    return q;
}

namespace {

// HNF basis (r x r) of exp*N_G, as integers.
IntMatrix residue_lattice(const QuotientType& t) {
    int r = t.dim();
    std::size_t kappa = t.factors().size();
    IntMatrix a(r, kappa + r);
    for (std::size_t mu = 0; mu < kappa; ++mu) {
        IntVec g = t.generator(mu);
        for (int i = 0; i < r; ++i) a(i, mu) = static_cast<long>(g[i]);
    }
    for (int i = 0; i < r; ++i) a(i, kappa + i) = static_cast<long>(t.exponent());
    HnfResult res = hnf(a);
    IntMatrix b(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) b(i, j) = res.h(i, j);
    return b;
}

// Solves lower-triangular h*y = v; returns false if y is not integral.
bool solve_lower_integral(const IntMatrix& h, const std::vector<Int>& v, std::vector<Int>& y) {
    std::size_t n = h.rows();
    y.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        Int s = v[i];
        for (std::size_t j = 0; j < i; ++j) s -= h(i, j) * y[j];
        if (!mpz_divisible_p(s.get_mpz_t(), h(i, i).get_mpz_t())) return false;
        mpz_divexact(y[i].get_mpz_t(), s.get_mpz_t(), h(i, i).get_mpz_t());
    }
    return true;
}

}  // namespace

LatticeBasis group_lattice(const QuotientType& t) {
    LatticeBasis lb;
    lb.rank = t.dim();
    lb.basis = residue_lattice(t);
    lb.denominator = static_cast<long>(t.exponent());
    return lb;
}

bool lattice_member(const std::vector<Rational>& n, const QuotientType& t) {
    if (static_cast<int>(n.size()) != t.dim()) throw ValidationError("lattice_member: dimension mismatch");
    std::vector<Int> v(n.size());
    Int e = static_cast<long>(t.exponent());
    for (std::size_t i = 0; i < n.size(); ++i) {
        Rational s = n[i] * e;
        if (s.get_den() != 1) return false;
        v[i] = s.get_num();
    }
    std::vector<Int> y;
    return solve_lower_integral(residue_lattice(t), v, y);
}

Standardization standardize_junior(const PointConfig& cfg, const QuotientType& t) {
    int r = t.dim();
    if (r < 2) throw ValidationError("standardize_junior: dimension below 2");
    IntMatrix b = residue_lattice(t);
    // kernel of the coordinate-sum functional restricted to the residue lattice
    IntMatrix row(1, r);
    for (int j = 0; j < r; ++j) {
        Int s = 0;
        for (int i = 0; i < r; ++i) s += b(i, j);
        row(0, j) = s;
    }
    HnfResult hr = hnf(row);
    IntMatrix ku(r, r - 1);
    for (int i = 0; i < r; ++i)
        for (int j = 1; j < r; ++j) ku(i, j - 1) = hr.u(i, j);
    IntMatrix k = b * ku;
    // drop the first coordinate (injective on the sum-zero hyperplane) and bring to HNF
    IntMatrix p(r - 1, r - 1);
    for (int i = 1; i < r; ++i)
        for (int j = 0; j < r - 1; ++j) p(i - 1, j) = k(i, j);
    HnfResult hp = hnf(p);
    Standardization out;
    out.basis = k * hp.u;
    const IntMatrix& h = hp.h;
    Int e = static_cast<long>(t.exponent());
    for (std::size_t idx = 0; idx < cfg.labels.size(); ++idx) {
        const IntVec& res = cfg.labels[idx].residue;
        if (static_cast<int>(res.size()) != r) throw ValidationError("standardize_junior: point lacks residue data");
        std::vector<Int> v(r - 1);
        Int total = 0;
        for (int i = 0; i < r; ++i) total += static_cast<long>(res[i]);
        if (total != e) throw ValidationError("standardize_junior: point is not on the junior hyperplane");
        for (int i = 1; i < r; ++i) v[i - 1] = static_cast<long>(res[i]);
        std::vector<Int> y;
        if (!solve_lower_integral(h, v, y)) throw ConsistencyError("standardize_junior: point is not in N_G");
        IntVec pt(r - 1);
        for (int i = 0; i < r - 1; ++i) {
            if (!y[i].fits_slong_p()) throw BudgetError("standardized coordinate exceeds 64-bit range");
            pt[i] = y[i].get_si();
        }
        out.points.push_back(std::move(pt));
    }
    out.vol_unit = frac(1, t.order());
    return out;
}

}  // namespace crepant
