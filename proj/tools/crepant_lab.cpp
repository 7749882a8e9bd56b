#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crepant/pipeline.hpp"

using namespace crepant;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitNotGorenstein = 65;
constexpr int kExitInternal = 70;
constexpr int kExitBudget = 70;

struct Globals {
    bool json = false;
    std::size_t budget_nodes = 200000;
    std::int64_t budget_elems = kDefaultElementBudget;
    int seed_orders = 1;
};

QuotientType load(const std::string& text, const Globals& g, bool need_gorenstein) {
    QuotientType t = QuotientType::parse(text, g.budget_elems);
    if (need_gorenstein && !t.is_gorenstein()) throw NotGorensteinError("type " + t.str() + " is not Gorenstein");
    return t;
}

void emit(const Globals& g, const Json& j, const std::string& text) {
    if (g.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string vec_str(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

template <class T>
std::string list_str(const std::vector<T>& v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "]";
    return os.str();
}

int cmd_analyze(const Globals& g, const std::string& type) {
    QuotientType t = load(type, g, false);
    StructureReport s = structure_report(t);
    Json j{{"type", t.str()}, {"dim", t.dim()}, {"order", t.order()}, {"exponent", t.exponent()}, {"structure", to_json(s)}};
    std::ostringstream os;
    os << "type: " << t.str() << "\norder " << t.order() << ", exponent " << t.exponent() << ", r = " << t.dim() << "\n";
    os << "gorenstein: " << (s.is_gorenstein ? "yes" : "no") << "\nmsc: " << (s.is_msc ? "yes" : "no")
       << " (splitting codimension " << s.splitting_codim << ")\nisolated: " << (s.is_isolated ? "yes" : "no") << "\n";
    if (!s.is_msc) {
        QuotientType core = msc_core(t);
        j["msc_core"] = core.str();
        os << "msc core: " << core.str() << "\n";
    }
    if (s.is_gorenstein) {
        Json elems = Json::array();
        os << "elements (residues / " << t.exponent() << "):\n";
        for (const auto& e : enumerate_elements(t)) {
            if (e.is_identity()) continue;
            elems.push_back(to_json(e));
            os << "  " << vec_str(e.delta) << "  age " << to_string(e.rational_age()) << "  height " << e.height << "\n";
        }
        j["elements"] = elems;
        os << "age histogram (1..r-1): " << list_str(s.age_histogram) << "\n";
    }
    emit(g, j, os.str());
    return 0;
}

int cmd_count(const Globals& g, const std::string& type) {
    QuotientType t = load(type, g, true);
    EhrhartData e = ehrhart_poly(t);
    BCounts b = b_counts(t);
    CohomologyDims c = cohomology_dims(t);
    Json j{{"type", t.str()}, {"ehrhart", to_json(e)}, {"b_counts", to_json(b)}, {"cohomology", to_json(c)}};
    std::ostringstream os;
    os << "type: " << t.str() << "\nEhrhart coefficients a_0..a_{r-1}:";
    for (const auto& a : e.coefficients) os << " " << to_string(a);
    os << "\nh*: " << list_str(e.hstar) << "\n#(s_G ∩ N_G) = " << e.evaluations.at(1) << "\n";
    os << "B(age, height) counts:\n";
    for (const auto& [key, n] : b.counts) os << "  age " << key.first << ", height " << key.second << ": " << n << "\n";
    os << "cohomology dims: " << list_str(c.dims) << " (euler " << c.euler << ")\n";
    StructureReport s = structure_report(t);
    if (t.dim() == 4 && t.is_cyclic() && s.is_msc) {
        MpCount m = mp_count_r4(t);
        j["mordell_pommersheim"] = to_json(m);
        os << "closed-form count: " << m.count << "\n";
    }
    emit(g, j, os.str());
    return 0;
}

std::string element_str(const HilbertElement& e) {
    return vec_str(e.numerators) + "/" + std::to_string(e.exponent) + "  age " + to_string(e.age);
}

int cmd_hilbert(const Globals& g, const std::string& type) {
    QuotientType t = load(type, g, true);
    HilbertBasis h = hilbert_basis(t);
    FirstCriterion f = first_criterion(t);
    Json j{{"type", t.str()}, {"hilbert_basis", to_json(h)}, {"first_criterion", to_json(f)}};
    std::ostringstream os;
    os << "Hilbert basis of " << t.str() << " (" << h.elements.size() << " elements):\n";
    for (const auto& e : h.elements) os << "  " << element_str(e) << "\n";
    os << "all elements junior: " << (f.pass ? "yes" : "no") << "\n";
    emit(g, j, os.str());
    return 0;
}

int cmd_criteria(const Globals& g, const std::string& type) {
    QuotientType t = msc_core(load(type, g, true));
    CriterionReport c = second_criterion(t);
    FirstCriterion f = first_criterion(t);
    Json j{{"type", t.str()}, {"second_criterion", to_json(c)}, {"first_criterion", to_json(f)}};
    std::ostringstream os;
    os << "type: " << t.str() << "\nsecond criterion (" << c.variant << "): b = " << c.point_count
       << ", b' = " << c.boundary_count << ", bound = " << c.bound << ", l = " << c.l << " -> "
       << (c.pass ? "pass" : "FAIL") << "\n";
    if (!c.note.empty()) os << "  " << c.note << "\n";
    os << "first criterion: " << (f.pass ? "pass" : "FAIL") << "\n";
    for (const auto& w : f.witnesses) os << "  non-junior basis element " << element_str(w) << "\n";
    emit(g, j, os.str());
    return 0;
}

int cmd_triangulate(const Globals& g, const std::string& type, const std::vector<std::string>& filters,
                    const std::string& dot_path, bool all_nodes) {
    QuotientType t = msc_core(load(type, g, true));
    PointConfig cfg = junior_config(t);
    ExploreOptions opts;
    opts.maximal_only = false;
    for (const auto& f : filters) {
        if (f == "maximal") opts.maximal_only = true;
        if (f == "coherent") opts.filter_coherent = true;
        if (f == "basic") opts.filter_basic = true;
    }
    opts.flips.vertex_preserving = opts.maximal_only;
    opts.node_budget = g.budget_nodes;
    opts.seed_orders = g.seed_orders;
    opts.threads = env_threads();
    ExploreResult r = explore(cfg, opts);
    if (!dot_path.empty()) {
        std::ofstream out(dot_path);
        if (!out) throw ValidationError("cannot write " + dot_path);
        out << flip_graph_dot(r);
    }
    Json j{{"type", t.str()}, {"filters", filters}, {"config", to_json(cfg)}, {"explore", to_json(r, all_nodes)}};
    std::ostringstream os;
    os << "type: " << t.str() << "\npoints (" << cfg.size() << "):\n";
    for (std::size_t i = 0; i < cfg.size(); ++i)
        os << "  " << i << ": " << vec_str(cfg.points[i]) << "  residue " << vec_str(cfg.labels[i].residue) << "\n";
    std::map<std::size_t, std::size_t> hist;
    std::size_t basic = 0;
    for (auto i : r.selected) {
        hist[r.nodes[i].tri.size()]++;
        basic += r.nodes[i].basic;
    }
    os << "visited " << r.nodes.size() << " triangulations, " << r.selected.size() << " pass the filters ("
       << basic << " basic)\nsimplex counts:";
    for (auto [k, n] : hist) os << " " << k << "x" << n;
    os << "\n";
    for (auto i : r.selected) {
        const auto& n = r.nodes[i];
        if (!n.basic) continue;
        os << "basic triangulation #" << i << ":";
        for (const auto& s : n.tri.simplices) os << " " << list_str(s);
        os << "\n";
    }
    if (!r.caveat.empty()) os << "note: " << r.caveat << "\n";
    if (!r.complete) os << "exploration INCOMPLETE (node budget " << g.budget_nodes << ")\n";
    emit(g, j, os.str());
    return 0;
}

std::string match_text(const SeriesMatch& m) {
    std::ostringstream os;
    os << "series: " << m.kind << "\nverdict: " << m.verdict << "\n";
    for (const auto& [k, v] : m.params) os << "  " << k << " = " << v << "\n";
    for (const auto& [k, v] : m.trace) os << "  " << k << ": " << v << "\n";
    for (const auto& tp : m.two_param) {
        os << "  presentation (a,b) = (" << tp.a << "," << tp.b << "): t = " << tp.t << ", t' = " << tp.t_prime
           << ", nu = (" << tp.nu1 << "," << tp.nu2 << "), p_bar = " << tp.p_bar << ", q = " << tp.q
           << ", p = " << tp.p << ", cf " << list_str(tp.cf) << (tp.cf_ok ? "" : " (" + tp.cf_note + ")")
           << ", branches " << tp.branch1 << "/" << tp.branch2 << "\n";
    }
    return os.str();
}

int cmd_series(const Globals& g, const std::string& verb, const std::vector<std::string>& args) {
    if (verb == "gp") {
        if (args.size() != 2) throw ValidationError("series gp expects R K");
        int r = std::stoi(args[0]);
        std::int64_t k = std::stoll(args[1]);
        GpData d = gp_construct(r, k);
        GpTriangulation gt = gp_triangulation(r, k);
        CoherenceResult c = is_coherent(gt.cfg, gt.tri);
        BasicnessReport b = basicness(gt.cfg, gt.tri);
        Json j{{"type", d.type.str()},
               {"det_w", int_json(d.det_w)},
               {"det_w_breve", int_json(d.det_w_breve)},
               {"config", to_json(gt.cfg)},
               {"triangulation", to_json(gt.tri)},
               {"lambda", gt.lambda},
               {"basic", b.is_basic},
               {"coherent", c.coherent}};
        if (c.coherent) j["heights"] = [&] {
            Json h = Json::array();
            for (const auto& x : c.heights) h.push_back(rational_json(x));
            return h;
        }();
        std::ostringstream os;
        os << "type: " << d.type.str() << "\n|det W| = " << abs(d.det_w) << ", |det W_breve| = " << abs(d.det_w_breve)
           << "\nsimplices: " << gt.tri.size() << ", basic: " << (b.is_basic ? "yes" : "no")
           << ", coherent: " << (c.coherent ? "yes" : "no") << "\n";
        emit(g, j, os.str());
        return 0;
    }
    if (args.size() != 1) throw ValidationError("series " + verb + " expects a single TYPE");
    QuotientType t = msc_core(load(args[0], g, true));
    SeriesMatch m;
    if (verb == "hyper")
        m = hypersurface_check(t);
    else if (verb == "oneparam")
        m = one_param_check(t);
    else if (verb == "twoparam")
        m = two_param_check(t);
    else
        throw ValidationError("unknown series verb " + verb);
    Json j = to_json(m);
    j["type"] = t.str();
    emit(g, j, "type: " + t.str() + "\n" + match_text(m));
    return 0;
}

int cmd_pipeline(const Globals& g, const std::string& type, bool audit, bool witness) {
    QuotientType t = load(type, g, true);
    PipelineBudgets b;
    b.node_budget = g.budget_nodes;
    b.element_budget = g.budget_elems;
    b.seed_orders = g.seed_orders;
    b.threads = env_threads();
    b.audit = audit;
    b.small_witness = witness;
    DecisionReport rep = run_pipeline(t, b);
    emit(g, to_json(rep), format_text(rep));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crepant resolution laboratory for Gorenstein abelian quotient singularities"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.json, "emit JSON instead of text");
    app.add_option("--budget-nodes", g.budget_nodes, "maximum triangulations visited by the flip search")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget-elems", g.budget_elems, "maximum group elements enumerated")->check(CLI::PositiveNumber);
    app.add_option("--seed-orders", g.seed_orders, "number of placing orders used as exploration seeds")
        ->check(CLI::PositiveNumber);

    std::string type;
    auto* analyze = app.add_subcommand("analyze", "group structure and element table");
    analyze->add_option("type", type, "type such as 1/12(1,2,3,6)")->required();
    auto* count = app.add_subcommand("count", "Ehrhart data, B counts, cohomology dimensions");
    count->add_option("type", type)->required();
    auto* hilbert = app.add_subcommand("hilbert", "Hilbert basis of the cone");
    hilbert->add_option("type", type)->required();
    auto* criteria = app.add_subcommand("criteria", "the two necessary existence criteria");
    criteria->add_option("type", type)->required();

    auto* tri = app.add_subcommand("triangulate", "flip-graph exploration of the junior configuration");
    tri->add_option("type", type)->required();
    std::vector<std::string> filters;
    std::string dot_path;
    bool all_nodes = false;
    tri->add_option("--filter", filters, "maximal, coherent, basic (repeatable)")
        ->check(CLI::IsMember({"maximal", "coherent", "basic"}))
        ->default_str("maximal coherent");
    tri->add_option("--dot", dot_path, "write the flip graph in DOT format");
    tri->add_flag("--all-nodes", all_nodes, "list every visited triangulation in JSON");

    auto* series = app.add_subcommand("series", "special series: gp R K | hyper TYPE | oneparam TYPE | twoparam TYPE");
    std::string verb;
    std::vector<std::string> series_args;
    series->add_option("verb", verb)->required()->check(CLI::IsMember({"gp", "hyper", "oneparam", "twoparam"}));
    series->add_option("args", series_args)->required();

    auto* pipe = app.add_subcommand("pipeline", "run the five-step decision procedure");
    pipe->add_option("type", type)->required();
    bool audit = false, witness = false;
    pipe->add_flag("--audit", audit, "also run Steps 3-4 after an earlier decision");
    pipe->add_flag("--witness", witness, "in dimension <= 3, still search a basic witness");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*analyze) return cmd_analyze(g, type);
        if (*count) return cmd_count(g, type);
        if (*hilbert) return cmd_hilbert(g, type);
        if (*criteria) return cmd_criteria(g, type);
        if (*tri) {
            if (filters.empty()) filters = {"maximal", "coherent"};
            return cmd_triangulate(g, type, filters, dot_path, all_nodes);
        }
        if (*series) return cmd_series(g, verb, series_args);
        if (*pipe) return cmd_pipeline(g, type, audit, witness);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NotGorensteinError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotGorenstein;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad number: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: number out of range: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
