#pragma once

// Exact small-dimensional determinants over the homogenized point matrix.

#include <cstdint>
#include <vector>

#include "crepant/config.hpp"
#include "crepant/core.hpp"

namespace crepant::geom {

// determinant of an n x n row-major integer matrix; falls back to GMP on 128-bit overflow
Int det(const std::vector<std::int64_t>& m, int n);
std::int64_t det64(const std::vector<std::int64_t>& m, int n);

// signed det of rows (p, 1) for the listed points, in order
std::int64_t hdet(const PointConfig& cfg, const int* idx, int count);

// affine rank of a point subset
int affine_rank(const PointConfig& cfg, const std::vector<int>& idx);

// barycentric numerators of point p w.r.t. simplex s (size d+1): num[v]/den, den = hdet(s)
void barycentric(const PointConfig& cfg, const std::vector<int>& s, int p, std::vector<std::int64_t>& num, std::int64_t& den);

}  // namespace crepant::geom
