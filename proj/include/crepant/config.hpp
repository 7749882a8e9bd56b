#pragma once

#include <cstdint>
#include <vector>

#include "crepant/core.hpp"

namespace crepant {

struct PointLabel {
    bool is_vertex = false;
    // smallest face of the junior simplex containing the point, as a coordinate bitmask;
    // zero for configurations not coming from a quotient type
    std::uint64_t face = 0;
    // residue numerators over the group exponent (the ambient point times exp_G)
    IntVec residue;
};

// Lattice point configuration in Z^dim. For junior configurations the first r points are
// the vertices e_1..e_r, followed by the junior points.
struct PointConfig {
    int dim = 0;
    std::vector<IntVec> points;
    std::vector<PointLabel> labels;
    std::int64_t exponent = 0;  // 0 when not built from a quotient type
    std::int64_t volume = 0;    // normalized volume of the convex hull

    std::size_t size() const { return points.size(); }
    std::vector<int> vertex_indices() const;
};

// Builds a configuration from raw points; vertices of the hull are labeled and the
// normalized volume of the hull is computed.
PointConfig config_from_points(std::vector<IntVec> points);

}  // namespace crepant
