#include "crepant/pipeline.hpp"

#include <sstream>

namespace crepant {

Json rational_json(const Rational& q) {
    if (q.get_den() == 1) {
        if (q.get_num().fits_slong_p()) return q.get_num().get_si();
        return q.get_num().get_str();
    }
    return to_string(q);
}

Json int_json(const Int& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

namespace {

Json int_list(const std::vector<Int>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(int_json(x));
    return a;
}

Json rational_list(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rational_json(x));
    return a;
}

}  // namespace

Json to_json(const StructureReport& s) {
    return Json{{"gorenstein", s.is_gorenstein},
                {"splitting_codim", s.splitting_codim},
                {"msc", s.is_msc},
                {"isolated", s.is_isolated},
                {"age_histogram", s.age_histogram},
                {"moving_coordinates", s.moving_coordinates}};
}

Json to_json(const GroupElement& g) {
    Json j{{"index", g.index}, {"delta", g.delta}, {"exponent", g.exponent}, {"height", g.height}};
    j["age"] = rational_json(g.rational_age());
    return j;
}

Json to_json(const EhrhartData& e) {
    return Json{{"coefficients", rational_list(e.coefficients)},
                {"evaluations", int_list(e.evaluations)},
                {"hstar", int_list(e.hstar)}};
}

Json to_json(const CohomologyDims& c) { return Json{{"dims", int_list(c.dims)}, {"euler", c.euler}}; }

Json to_json(const BCounts& b) {
    Json counts = Json::array();
    for (const auto& [key, n] : b.counts) counts.push_back({{"age", key.first}, {"height", key.second}, {"count", n}});
    return Json{{"counts", counts}, {"gcd_form_checked", b.gcd_checked}};
}

Json to_json(const MpCount& m) {
    return Json{{"count", int_json(m.count)},
                {"a1", rational_json(m.a1)},
                {"a2", rational_json(m.a2)},
                {"a3", rational_json(m.a3)}};
}

Json to_json(const HilbertBasis& h) {
    Json a = Json::array();
    for (const auto& e : h.elements)
        a.push_back({{"numerators", e.numerators},
                     {"denominator", e.exponent},
                     {"vertex", e.is_vertex},
                     {"junior", e.is_junior},
                     {"age", rational_json(e.age)}});
    return Json{{"elements", a}, {"size", h.elements.size()}};
}

Json to_json(const FirstCriterion& f) {
    Json w = Json::array();
    for (const auto& e : f.witnesses) w.push_back({{"numerators", e.numerators}, {"denominator", e.exponent}, {"age", rational_json(e.age)}});
    return Json{{"pass", f.pass}, {"witnesses", w}};
}

Json to_json(const CriterionReport& c) {
    return Json{{"l", c.l},
                {"b", c.point_count},
                {"b_boundary", c.boundary_count},
                {"bound", int_json(c.bound)},
                {"pass", c.pass},
                {"variant", c.variant},
                {"conjectural_bound", int_json(c.conjectural_bound)},
                {"b1k", c.b1k},
                {"note", c.note}};
}

Json to_json(const SeriesMatch& s) {
    Json params = Json::object();
    for (const auto& [k, v] : s.params) params[k] = v;
    Json trace = Json::array();
    for (const auto& [k, v] : s.trace) trace.push_back({k, v});
    Json j{{"kind", s.kind}, {"verdict", s.verdict}, {"params", params}, {"trace", trace}};
    if (!s.two_param.empty()) {
        Json tp = Json::array();
        for (const auto& t : s.two_param) {
            Json conds = Json::array();
            for (const auto& [name, ok] : t.conditions) conds.push_back({{"condition", name}, {"holds", ok}});
            tp.push_back({{"a", t.a},
                          {"b", t.b},
                          {"t", t.t},
                          {"t_prime", t.t_prime},
                          {"nu1", t.nu1},
                          {"nu2", t.nu2},
                          {"p_bar", t.p_bar},
                          {"q", t.q},
                          {"p", t.p},
                          {"cf", t.cf},
                          {"cf_ok", t.cf_ok},
                          {"cf_note", t.cf_note},
                          {"gcd_abl", t.gcd_abl},
                          {"branch1", t.branch1},
                          {"branch2", t.branch2},
                          {"conditions", conds}});
        }
        j["two_param"] = tp;
    }
    if (s.cohomology) j["cohomology"] = to_json(*s.cohomology);
    return j;
}

Json to_json(const PointConfig& cfg) {
    Json pts = Json::array();
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        Json p{{"index", i}, {"coords", cfg.points[i]}, {"vertex", cfg.labels[i].is_vertex}};
        if (!cfg.labels[i].residue.empty()) {
            p["residue"] = cfg.labels[i].residue;
            p["face"] = cfg.labels[i].face;
        }
        pts.push_back(p);
    }
    return Json{{"dim", cfg.dim}, {"exponent", cfg.exponent}, {"volume", cfg.volume}, {"points", pts}};
}

Json to_json(const Triangulation& t) { return Json{{"simplices", t.simplices}, {"volumes", t.volumes}}; }

Json to_json(const Circuit& c) { return Json{{"positive", c.positive}, {"negative", c.negative}}; }

Json to_json(const ExploreResult& r, bool include_all_nodes) {
    Json nodes = Json::array();
    auto node_json = [&](std::size_t i) {
        const auto& n = r.nodes[i];
        return Json{{"index", i},
                    {"simplex_count", n.tri.size()},
                    {"coherent", n.coherent},
                    {"basic", n.basic},
                    {"maximal", n.maximal},
                    {"gkz", n.gkz},
                    {"simplices", n.tri.simplices}};
    };
    if (include_all_nodes)
        for (std::size_t i = 0; i < r.nodes.size(); ++i) nodes.push_back(node_json(i));
    else
        for (auto i : r.selected) nodes.push_back(node_json(i));
    std::map<std::size_t, std::size_t> sizes;
    std::size_t basic = 0;
    for (auto i : r.selected) {
        sizes[r.nodes[i].tri.size()]++;
        if (r.nodes[i].basic) ++basic;
    }
    Json hist = Json::object();
    for (auto [k, v] : sizes) hist[std::to_string(k)] = v;
    return Json{{"visited", r.nodes.size()},
                {"selected", r.selected.size()},
                {"basic", basic},
                {"simplex_count_histogram", hist},
                {"complete", r.complete},
                {"stopped_early", r.stopped_early},
                {"seeds", r.seeds},
                {"edges", r.edges.size()},
                {"caveat", r.caveat},
                {"triangulations", nodes}};
}

namespace {

StepRecord skipped(int id, const std::string& name) { return StepRecord{id, name, "skipped", Json::object()}; }

const char* kStepNames[] = {"", "hypersurface", "series", "second_criterion", "first_criterion", "triangulations"};

void fill_skipped(DecisionReport& rep) {
    for (int id = 1; id <= 5; ++id) {
        bool present = false;
        for (const auto& s : rep.steps) present = present || s.id == id;
        if (!present) rep.steps.push_back(skipped(id, kStepNames[id]));
    }
    std::sort(rep.steps.begin(), rep.steps.end(), [](const StepRecord& a, const StepRecord& b) { return a.id < b.id; });
}

StepRecord step3(const QuotientType& t) {
    CriterionReport c = second_criterion(t);
    return StepRecord{3, kStepNames[3], c.pass ? "inconclusive" : "not_resolvable", to_json(c)};
}

StepRecord step4(const QuotientType& t) {
    FirstCriterion f = first_criterion(t);
    return StepRecord{4, kStepNames[4], f.pass ? "inconclusive" : "not_resolvable", to_json(f)};
}

Json witness_json(const PointConfig& cfg, const Triangulation& tri) {
    Json pts = Json::array(), res = Json::array();
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        pts.push_back(cfg.points[i]);
        res.push_back(cfg.labels[i].residue);
    }
    return Json{{"points", pts}, {"residues", res}, {"exponent", cfg.exponent}, {"simplices", tri.simplices}};
}

StepRecord step5(const QuotientType& t, const PipelineBudgets& b, Json& witness, bool& complete, bool& found) {
    PointConfig cfg = junior_config(t);
    ExploreOptions opts;
    opts.maximal_only = true;
    opts.filter_coherent = true;
    opts.node_budget = b.node_budget;
    opts.seed_orders = b.seed_orders;
    opts.threads = b.threads;
    ExploreResult r = explore(cfg, opts);
    complete = r.complete;
    found = false;
    std::size_t basic = 0;
    for (auto i : r.selected) {
        if (!r.nodes[i].basic) continue;
        if (!found) witness = witness_json(cfg, r.nodes[i].tri);
        found = true;
        ++basic;
    }
    std::size_t noncoherent = r.nodes.size() - r.selected.size();
    Json payload{{"points", cfg.size()},
                 {"coherent_maximal", r.selected.size()},
                 {"coherent_basic", basic},
                 {"noncoherent_visited", noncoherent},
                 {"complete", r.complete},
                 {"seeds", r.seeds},
                 {"caveat", r.caveat}};
    std::string outcome = found ? "resolvable" : (r.complete ? "not_resolvable" : "inconclusive");
    return StepRecord{5, kStepNames[5], outcome, payload};
}

}  // namespace

DecisionReport run_pipeline(const QuotientType& input, const PipelineBudgets& budgets) {
    if (!input.is_gorenstein()) throw NotGorensteinError("type " + input.str() + " is not Gorenstein");
    DecisionReport rep;
    rep.budgets = budgets;
    rep.input = input.str();
    QuotientType t = msc_core(input);
    rep.core = t.str();
    rep.reduced = !(t == input);
    if (rep.reduced)
        rep.notes.push_back("coordinates fixed by the whole group were dropped; the question is decided for the msc core " +
                            rep.core);

    auto decide = [&](int step, const std::string& outcome) {
        rep.decisive_step = step;
        rep.verdict = outcome == "resolvable" ? "RESOLVABLE" : "NOT_RESOLVABLE";
    };

    if (t.dim() <= 3) {
        rep.verdict = "RESOLVABLE";
        rep.decisive_step = 0;
        rep.notes.push_back("dimension <= 3: crepant resolutions always exist");
        if (budgets.small_witness) {
            bool complete = false, found = false;
            rep.steps.push_back(step5(t, budgets, rep.witness, complete, found));
            if (!found) throw ConsistencyError("no basic triangulation found in dimension <= 3");
        }
        fill_skipped(rep);
        return rep;
    }

    // Step 1
    SeriesMatch hyper = hypersurface_check(t);
    rep.steps.push_back(StepRecord{1, kStepNames[1], hyper.matched() ? "resolvable" : "inconclusive", to_json(hyper)});
    if (hyper.matched()) decide(1, "resolvable");

    // Step 2
    if (rep.verdict.empty()) {
        Json payload = Json::object();
        std::string outcome = "inconclusive";
        for (const SeriesMatch& m : {one_param_check(t), two_param_check(t), gp_check(t)}) {
            if (!m.matched()) continue;
            payload[m.kind] = to_json(m);
            // the printed 2-parameter conditions miss resolvable types; their failure is left to Steps 3-5
            if (m.kind == "two_param" && !m.two_param.empty()) {
                bool literal = false;
                for (const auto& tp : m.two_param) literal = literal || tp.holds();
                if (!literal) continue;
            }
            if (outcome == "inconclusive" && (m.verdict == "resolvable" || m.verdict == "not_resolvable")) outcome = m.verdict;
            else if (outcome != "inconclusive" && m.verdict != outcome && m.verdict != "inapplicable")
                throw ConsistencyError("series recognizers disagree on " + t.str());
        }
        rep.steps.push_back(StepRecord{2, kStepNames[2], outcome, payload});
        if (outcome != "inconclusive") decide(2, outcome);
    }

    bool resolvable_early = rep.verdict == "RESOLVABLE";
    // Steps 3 and 4, also as an audit after a positive early verdict
    if (rep.verdict.empty() || budgets.audit) {
        StepRecord s3 = step3(t);
        StepRecord s4 = step4(t);
        if (resolvable_early && (s3.outcome == "not_resolvable" || s4.outcome == "not_resolvable"))
            throw ConsistencyError("a necessary criterion fails for a type declared resolvable");
        if (!rep.verdict.empty()) {
            s3.payload["audit"] = true;
            s4.payload["audit"] = true;
        }
        rep.steps.push_back(s3);
        if (rep.verdict.empty() && s3.outcome == "not_resolvable") decide(3, s3.outcome);
        if (rep.verdict.empty() || budgets.audit) {
            if (!rep.verdict.empty() && rep.decisive_step == 3) s4.payload["audit"] = true;
            rep.steps.push_back(s4);
            if (rep.verdict.empty() && s4.outcome == "not_resolvable") decide(4, s4.outcome);
        }
    }

    // Step 5
    if (rep.verdict.empty()) {
        bool complete = false, found = false;
        StepRecord s5 = step5(t, budgets, rep.witness, complete, found);
        rep.steps.push_back(s5);
        if (found) {
            decide(5, "resolvable");
        } else if (complete) {
            decide(5, "not_resolvable");
            rep.notes.push_back("the coherent census is complete and contains no basic triangulation; non-coherent maximal "
                                "triangulations were searched only within the reached flip component");
        } else {
            rep.verdict = "UNDECIDED";
            rep.decisive_step = 5;
            rep.notes.push_back("node budget exhausted before the coherent census completed");
        }
    }
    fill_skipped(rep);
    return rep;
}

Json to_json(const DecisionReport& rep) {
    Json steps = Json::array();
    for (const auto& s : rep.steps) steps.push_back({{"id", s.id}, {"name", s.name}, {"outcome", s.outcome}, {"payload", s.payload}});
    const auto& b = rep.budgets;
    return Json{{"schema", rep.schema},
                {"input", rep.input},
                {"core", rep.core},
                {"reduced", rep.reduced},
                {"steps", steps},
                {"verdict", rep.verdict},
                {"decisive_step", rep.decisive_step},
                {"budgets",
                 {{"nodes", b.node_budget},
                  {"elements", b.element_budget},
                  {"seed_orders", b.seed_orders},
                  {"threads", b.threads},
                  {"audit", b.audit},
                  {"small_witness", b.small_witness}}},
                {"witness", rep.witness},
                {"notes", rep.notes}};
}

DecisionReport report_from_json(const Json& j) {
    try {
        DecisionReport rep;
        rep.schema = j.at("schema").get<std::string>();
        if (rep.schema != kSchema) throw ParseError("unknown report schema " + rep.schema);
        rep.input = j.at("input").get<std::string>();
        rep.core = j.at("core").get<std::string>();
        rep.reduced = j.at("reduced").get<bool>();
        for (const auto& s : j.at("steps"))
            rep.steps.push_back(StepRecord{s.at("id").get<int>(), s.at("name").get<std::string>(),
                                           s.at("outcome").get<std::string>(), s.at("payload")});
        rep.verdict = j.at("verdict").get<std::string>();
        rep.decisive_step = j.at("decisive_step").get<int>();
        const auto& b = j.at("budgets");
        rep.budgets.node_budget = b.at("nodes").get<std::size_t>();
        rep.budgets.element_budget = b.at("elements").get<std::int64_t>();
        rep.budgets.seed_orders = b.at("seed_orders").get<int>();
        rep.budgets.threads = b.at("threads").get<int>();
        rep.budgets.audit = b.at("audit").get<bool>();
        rep.budgets.small_witness = b.at("small_witness").get<bool>();
        rep.witness = j.at("witness");
        rep.notes = j.at("notes").get<std::vector<std::string>>();
        return rep;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

std::string format_text(const DecisionReport& rep) {
    std::ostringstream os;
    os << "input: " << rep.input << "\n";
    if (rep.reduced) os << "msc core: " << rep.core << "\n";
    for (const auto& s : rep.steps) os << "step " << s.id << " (" << s.name << "): " << s.outcome << "\n";
    for (const auto& n : rep.notes) os << "note: " << n << "\n";
    if (!rep.witness.is_null()) os << "witness: " << rep.witness.at("simplices").size() << " unimodular simplices\n";
    os << "verdict: " << rep.verdict << " (step " << rep.decisive_step << ")\n";
    return os.str();
}

}  // namespace crepant
