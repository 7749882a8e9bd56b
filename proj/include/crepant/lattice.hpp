#pragma once

#include <cstddef>
#include <vector>

#include "crepant/config.hpp"
#include "crepant/core.hpp"

namespace crepant {

class QuotientType;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    static IntMatrix from_rows64(const std::vector<IntVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix operator*(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const;
    IntMatrix transpose() const;
    std::vector<Int> column(std::size_t j) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

Int determinant(const IntMatrix& a);  // square matrices, fraction-free elimination

struct HnfResult {
    IntMatrix h;  // a*u, lower triangular in its first rows() columns, zero afterwards
    IntMatrix u;  // unimodular
};

// Column-style Hermite normal form. Diagonal entries are positive and every entry left of
// the diagonal in row i lies in [0, h(i,i)).
HnfResult hnf(const IntMatrix& a);

struct LatticeBasis {
    int rank = 0;
    IntMatrix basis;  // columns, over a common denominator
    Int denominator = 1;
    Rational det() const;
};

// N_G as a rank-r lattice: Z^r plus the generator vectors delta/exp_G.
LatticeBasis group_lattice(const QuotientType& t);

bool lattice_member(const std::vector<Rational>& n, const QuotientType& t);

struct Standardization {
    std::vector<IntVec> points;
    Rational vol_unit;   // share of the junior simplex taken by one unimodular simplex (= 1/l)
    IntMatrix basis;     // columns: lattice basis of aff(s_G) ∩ N_G translated by -e_1, scaled by exp_G
};

// Affine bijection aff(s_G) ∩ N_G -> Z^(r-1) applied to the points of a junior configuration.
Standardization standardize_junior(const PointConfig& cfg, const QuotientType& t);

}  // namespace crepant
