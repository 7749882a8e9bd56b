#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "crepant/core.hpp"
#include "crepant/counting.hpp"
#include "crepant/criteria.hpp"
#include "crepant/grouptype.hpp"
#include "crepant/hilbert.hpp"
#include "crepant/series.hpp"
#include "crepant/triangulate.hpp"

namespace crepant {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "crepant-lab/1";

struct PipelineBudgets {
    std::size_t node_budget = 200000;
    std::int64_t element_budget = kDefaultElementBudget;
    int seed_orders = 1;
    int threads = 1;
    bool audit = false;          // run Steps 3-4 even after an earlier decisive step
    bool small_witness = false;  // r <= 3: still search a basic witness in Step 5

    bool operator==(const PipelineBudgets&) const = default;
};

struct StepRecord {
    int id = 0;
    std::string name;
    std::string outcome;  // resolvable | not_resolvable | inconclusive | skipped
    Json payload = Json::object();

    bool operator==(const StepRecord&) const = default;
};

struct DecisionReport {
    std::string schema = kSchema;
    std::string input;
    std::string core;  // msc core actually decided
    bool reduced = false;
    std::vector<StepRecord> steps;
    std::string verdict;  // RESOLVABLE | NOT_RESOLVABLE | UNDECIDED
    int decisive_step = 0;  // 0: decided before Step 1 (dimension <= 3)
    PipelineBudgets budgets;
    Json witness;  // null, or {points, residues, simplices}
    std::vector<std::string> notes;

    bool operator==(const DecisionReport&) const = default;
};

// Throws NotGorensteinError for non-Gorenstein input.
DecisionReport run_pipeline(const QuotientType& t, const PipelineBudgets& budgets = {});

Json to_json(const DecisionReport& rep);
DecisionReport report_from_json(const Json& j);
std::string format_text(const DecisionReport& rep);

// JSON views of the individual modules, shared by the command-line tool and the tests.
Json rational_json(const Rational& q);
Json int_json(const Int& z);
Json to_json(const StructureReport& s);
Json to_json(const GroupElement& g);
Json to_json(const EhrhartData& e);
Json to_json(const CohomologyDims& c);
Json to_json(const BCounts& b);
Json to_json(const MpCount& m);
Json to_json(const HilbertBasis& h);
Json to_json(const FirstCriterion& f);
Json to_json(const CriterionReport& c);
Json to_json(const SeriesMatch& s);
Json to_json(const PointConfig& cfg);
Json to_json(const Triangulation& t);
Json to_json(const Circuit& c);
Json to_json(const ExploreResult& r, bool include_all_nodes);

}  // namespace crepant
