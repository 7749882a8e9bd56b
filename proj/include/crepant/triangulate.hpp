#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crepant/config.hpp"
#include "crepant/core.hpp"

namespace crepant {

using Simplex = std::vector<int>;  // sorted point indices

struct Triangulation {
    std::vector<Simplex> simplices;  // canonical: each sorted, list sorted
    std::vector<std::int64_t> volumes;  // normalized volumes, aligned with simplices

    std::size_t size() const { return simplices.size(); }
    std::vector<int> used_points() const;
    bool operator==(const Triangulation& o) const { return simplices == o.simplices; }
    bool operator<(const Triangulation& o) const { return simplices < o.simplices; }
};

// Sorts and attaches volumes; throws on degenerate simplices.
Triangulation make_triangulation(const PointConfig& cfg, std::vector<Simplex> simplices);

// Signed determinant of the homogenized point matrix (rows in the given order).
std::int64_t signed_volume(const PointConfig& cfg, const Simplex& s);

Triangulation placing_triangulation(const PointConfig& cfg, const std::vector<int>& order);
// Inserts the unused points one by one (in the given order) by stellar subdivision of their carrier faces.
Triangulation insert_points(const PointConfig& cfg, Triangulation t, const std::vector<int>& order);
bool is_maximal(const PointConfig& cfg, const Triangulation& t);

struct ValidityReport {
    bool valid = false;
    std::string reason;
};

ValidityReport check_valid(const PointConfig& cfg, const Triangulation& t, std::size_t pairwise_limit = 60);
bool is_valid(const PointConfig& cfg, const Triangulation& t);

struct BasicnessReport {
    bool is_basic = false;
    std::vector<Simplex> nonunimodular;
};

BasicnessReport basicness(const PointConfig& cfg, const Triangulation& t);

struct FhVectors {
    std::vector<Int> f;  // f_{-1}, f_0, ..., f_d
    std::vector<Int> h;  // h_0, ..., h_{d+1}
};

FhVectors fh_vectors(const Triangulation& t, int dim);

struct Circuit {
    std::vector<int> positive;
    std::vector<int> negative;
    bool operator==(const Circuit& o) const { return positive == o.positive && negative == o.negative; }
};

struct FlipOptions {
    bool vertex_preserving = true;       // both sides of the circuit have at least two points
    bool full_dimensional_only = false;  // only circuits with d + 2 points
};

struct Flip {
    Circuit circuit;
    bool positive_side_present = true;  // T contains the cells Z \ {v}, v in the positive part
    std::vector<Simplex> removed;
    std::vector<Simplex> added;
    Triangulation result;
};

std::vector<Flip> find_flips(const PointConfig& cfg, const Triangulation& t, const FlipOptions& opts = {});
Triangulation apply_flip(const PointConfig& cfg, const Triangulation& t, const Circuit& c);
// unique affine dependence of a point set (empty result if independent or not a single circuit)
std::optional<Circuit> circuit_of(const PointConfig& cfg, const std::vector<int>& pts);

struct CoherenceResult {
    bool coherent = false;
    std::vector<Rational> heights;   // certificate when coherent
    std::vector<Rational> farkas;    // multipliers on the local folding constraints when not
    std::size_t constraints = 0;
};

CoherenceResult is_coherent(const PointConfig& cfg, const Triangulation& t, std::size_t max_constraints = 200000);
// Independent global check: every lifted point outside a simplex lies strictly below its lifted span.
bool verify_heights(const PointConfig& cfg, const Triangulation& t, const std::vector<Rational>& heights);

std::vector<std::int64_t> gkz_vector(const PointConfig& cfg, const Triangulation& t);

std::int64_t star_euler(const PointConfig& cfg, const Triangulation& t, int p);

struct ExploreOptions {
    bool maximal_only = true;       // vertex-preserving flips from maximal seeds
    bool filter_coherent = false;
    bool filter_basic = false;
    bool expand_coherent_only = false;  // do not expand non-coherent nodes
    bool stop_at_first = false;         // finish the current level once some node passes the filters, then stop
    FlipOptions flips{};
    std::size_t node_budget = 200000;
    int seed_orders = 1;
    int threads = 1;
    std::uint64_t seed = 20240101;
};

struct ExploredNode {
    Triangulation tri;
    bool coherent = false;
    bool basic = false;
    bool maximal = false;
    std::vector<std::int64_t> gkz;
    std::vector<Rational> heights;
};

struct ExploreResult {
    std::vector<ExploredNode> nodes;     // every visited triangulation, canonical order
    std::vector<std::size_t> selected;   // indices passing the filters
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // flip graph among visited nodes
    std::vector<Circuit> edge_circuits;
    bool complete = true;
    bool stopped_early = false;
    std::size_t seeds = 0;
    std::string caveat;
};

ExploreResult explore(const PointConfig& cfg, const ExploreOptions& opts = {});
std::vector<Triangulation> seed_triangulations(const PointConfig& cfg, const ExploreOptions& opts);

// Shortest flip sequence between two triangulations through coherent maximal triangulations.
std::vector<Circuit> flop_path(const PointConfig& cfg, const Triangulation& a, const Triangulation& b,
                               std::size_t node_budget = 200000, bool coherent_only = true);

std::string flip_graph_dot(const ExploreResult& res);

int env_threads();

}  // namespace crepant
