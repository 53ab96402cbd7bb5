#include "tardis/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "tardis/core.hpp"
#include "tardis/error.hpp"
#include "tardis/exact.hpp"
#include "tardis/maxmin.hpp"
#include "tardis/reach.hpp"
#include "tardis/reductions.hpp"
#include "tardis/tree.hpp"
#include "tardis/treewidth.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tardis::cli {

namespace {

using Json = nlohmann::ordered_json;

// Instances above this size skip the decomposition attempt in auto mode.
constexpr std::size_t kAutoTreewidthMaxVertices = 400;

// Unreadable input files count as parse failures.
struct OpenError : Error {
    using Error::Error;
};

struct Options {
    std::string input;
    std::string semantics = "nonstrict";
    std::string variant = "nonstrict";
    std::string algo = "auto";
    std::string td_file;
    std::string set;
    std::string out_path;
    std::string witness_out;
    std::string graph_file;
    std::string instance_file;
    std::string cnf_file;
    std::size_t k = 0;
    Time tau = 0;
    std::size_t source = 0;
    Time depart_after = 0;
    std::uint64_t seed = 0;
    double budget = kDefaultEnumerationBudget;
    int threads = 0;
    bool timing = false;
    bool happy = false;
    std::size_t n = 0;
    double p = 0.3;
    std::size_t universe = 4;
    std::size_t num_sets = 4;
    double density = 0.4;
    std::size_t vars = 3;
};

std::string read_input(const std::string& path, std::istream& in) {
    if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream f(path);
    if (!f) throw OpenError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw OpenError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// First "p" line decides between PACE .gr and .tg.
bool looks_like_gr(const std::string& text) {
    std::istringstream s(text);
    std::string line;
    while (std::getline(s, line)) {
        std::istringstream ls(line);
        std::string a, b;
        if (!(ls >> a)) continue;
        if (a == "p") return (ls >> b) && b == "tw";
    }
    return false;
}

StaticGraph read_static(const std::string& text) {
    std::istringstream s(text);
    if (looks_like_gr(text)) return parse_gr(s);
    return parse_temporal_graph(s).footprint();
}

Json summary(const TemporalGraph& g) {
    return Json{{"vertices", g.num_vertices()},
                {"edges", g.edges().size()},
                {"time_edges", g.num_time_edges()},
                {"lifetime", g.lifetime()}};
}

Json summary(const StaticGraph& h) { return Json{{"vertices", h.num_vertices()}, {"edges", h.num_edges()}}; }

Json one_based(const VertexSet& s) {
    Json a = Json::array();
    for (Vertex v : s) a.push_back(v + 1);
    return a;
}

VertexSet parse_set(const std::string& text, std::size_t n) {
    VertexSet out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(tok, &pos);
        } catch (const std::exception&) {
            throw PreconditionError("bad vertex '" + tok + "' in --set");
        }
        if (pos != tok.size() || v < 1 || static_cast<std::size_t>(v) > n)
            throw PreconditionError("vertex '" + tok + "' in --set is out of range");
        out.push_back(static_cast<Vertex>(v - 1));
    }
    return normalize_set(out, n);
}

TardisResult solve_auto(const TemporalGraph& g, Semantics sem, const std::optional<NiceTreeDecomposition>& nice) {
    if (auto r = min_tardis_special(g, sem)) return *r;
    const auto h = g.footprint();
    if (h.is_forest()) return min_tardis_tree(g, sem);
    if (nice || g.num_vertices() <= kAutoTreewidthMaxVertices) {
        auto ntd = nice ? *nice : make_nice(h, compute_tree_decomposition(h));
        if (dp_state_estimate(g.lifetime(), ntd.width()) <= dp_state_budget()) {
            try {
                return min_tardis_treewidth(g, sem, ntd);
            } catch (const BudgetExceeded&) {
            }
        }
    }
    return min_tardis_setcover(g, sem);
}

Json cmd_solve(const Options& o, std::istream& in, Json& doc) {
    auto g = parse_temporal_graph(read_input(o.input, in));
    doc["instance_summary"] = summary(g);
    const Semantics sem = parse_semantics(o.semantics);
    std::optional<NiceTreeDecomposition> nice;
    if (!o.td_file.empty()) {
        std::istringstream s(read_file(o.td_file));
        nice = make_nice(g.footprint(), parse_td(s));
    }
    TardisResult r;
    if (o.algo == "auto") {
        r = solve_auto(g, sem, nice);
    } else if (o.algo == "bruteforce") {
        r = min_tardis_bruteforce(g, sem);
    } else if (o.algo == "setcover") {
        r = min_tardis_setcover(g, sem);
    } else if (o.algo == "lee") {
        r = min_tardis_setcover(g, sem, {std::nullopt, SetCoverStrategy::LeeEnumeration});
    } else if (o.algo == "tree") {
        r = min_tardis_tree(g, sem);
    } else if (o.algo == "treewidth") {
        r = min_tardis_treewidth(g, sem, nice);
    } else if (o.algo == "special") {
        auto s = min_tardis_special(g, sem);
        if (!s) throw PreconditionError("no special case applies to this instance");
        r = *s;
    }
    doc["algorithm"] = r.algorithm;
    return Json{{"size", r.size}, {"witness", one_based(r.witness)}, {"semantics", to_string(sem)}};
}

Json cmd_maxmin(const Options& o, std::istream& in, Json& doc) {
    auto h = read_static(read_input(o.input, in));
    doc["instance_summary"] = summary(h);
    const Variant variant = parse_variant(o.variant);
    auto r = maxmin_value(h, o.tau, variant, parse_maxmin_algo(o.algo), o.budget);
    doc["algorithm"] = r.algorithm;
    Json witness = Json::array();
    auto edges = h.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        witness.push_back(Json::array({edges[i].first + 1, edges[i].second + 1, r.witness_assignment[i]}));
    if (!o.witness_out.empty()) {
        std::ofstream f(o.witness_out);
        if (!f) throw Error("cannot write '" + o.witness_out + "'");
        f << serialize(TemporalGraph::from_assignment(h, r.witness_assignment));
    }
    return Json{{"value", r.value}, {"variant", to_string(variant)}, {"tau", o.tau}, {"witness", witness}};
}

Json cmd_verify(const Options& o, std::istream& in, Json& doc, bool& answer) {
    auto g = parse_temporal_graph(read_input(o.input, in));
    doc["instance_summary"] = summary(g);
    const Semantics sem = parse_semantics(o.semantics);
    auto s = parse_set(o.set, g.num_vertices());
    const bool ok = is_tardis(g, s, sem);
    answer = ok;
    doc["algorithm"] = "reachability";
    Json r{{"set", one_based(s)}, {"size", s.size()}, {"is_tardis", ok}};
    if (!ok) {
        auto c = closure(g, sem);
        Bitset covered(g.num_vertices());
        for (Vertex v : s) covered |= c.row(v);
        VertexSet missed;
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            if (!covered.test(v)) missed.push_back(v);
        r["unreached"] = one_based(missed);
    }
    return r;
}

Json cmd_reach(const Options& o, std::istream& in, Json& doc, bool has_source, bool has_depart) {
    auto g = parse_temporal_graph(read_input(o.input, in));
    doc["instance_summary"] = summary(g);
    const Semantics sem = parse_semantics(o.semantics);
    doc["algorithm"] = "foremost-sweep";
    if (!has_source) {
        if (has_depart) throw PreconditionError("--depart-after needs --source");
        auto c = closure(g, sem);
        Json rows = Json::array();
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            VertexSet r;
            for (auto x = c.row(v).find_first(); x != Bitset::npos; x = c.row(v).find_next(x))
                r.push_back(static_cast<Vertex>(x));
            rows.push_back(one_based(r));
        }
        return Json{{"reach_sets", rows}};
    }
    if (o.source < 1 || o.source > g.num_vertices()) throw PreconditionError("--source is out of range");
    const Vertex s = static_cast<Vertex>(o.source - 1);
    auto tab = foremost_arrivals(g, s, has_depart ? std::optional<Time>(o.depart_after) : std::nullopt, sem);
    Json arrival = Json::array();
    VertexSet reached;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (tab.reachable(v)) {
            arrival.push_back(tab.arrival[v]);
            reached.push_back(v);
        } else {
            arrival.push_back(nullptr);
        }
    }
    return Json{{"source", o.source}, {"arrival", arrival}, {"reach_set", one_based(reached)}};
}

Json cmd_classify(const Options& o, std::istream& in, Json& doc) {
    auto g = parse_temporal_graph(read_input(o.input, in));
    doc["instance_summary"] = summary(g);
    doc["algorithm"] = "classify";
    auto c = classify(g);
    const auto h = g.footprint();
    return Json{{"simple", c.simple},
                {"proper", c.proper},
                {"happy", c.happy},
                {"max_degree", c.max_degree},
                {"components", c.component_count},
                {"forest", h.is_forest()},
                {"weak_lee_edges", locally_earliest_edges(g, true).time_edges.size()},
                {"strict_lee_edges", locally_earliest_edges(g, false).time_edges.size()}};
}

// ---- generators ---------------------------------------------------------

// Non-integer parameters are written as strings.
std::string decimal(double x) {
    std::ostringstream s;
    s << x;
    return s.str();
}

TemporalGraph random_tg(std::size_t n, double p, Time tau, std::mt19937_64& rng) {
    // Nonempty subsets of [tau] with at most two elements, drawn uniformly.
    std::vector<std::vector<Time>> choices;
    for (Time a = 1; a <= tau; ++a) {
        choices.push_back({a});
        for (Time b = a + 1; b <= tau; ++b) choices.push_back({a, b});
    }
    std::bernoulli_distribution coin(p);
    std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
    std::vector<TimeEdge> te;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng))
                for (Time t : choices[pick(rng)]) te.push_back({u, v, t});
    return TemporalGraph(n, std::move(te));
}

StaticGraph random_static(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    StaticGraph h(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) h.add_edge(u, v);
    return h;
}

Json emit(const Options& o, const std::string& kind, const TemporalGraph& g, std::optional<std::size_t> k,
          const std::vector<std::string>& names, Json source, Json expected, Json& doc) {
    doc["instance_summary"] = summary(g);
    doc["algorithm"] = "gen-" + kind;
    Json side{{"generator", kind}, {"seed", o.seed}, {"source", std::move(source)}};
    if (k) side["k"] = *k;
    side["expected_answer"] = std::move(expected);
    Json jn = Json::array();
    for (const auto& s : names) jn.push_back(s);
    side["names"] = jn;

    Json r{{"generator", kind}};
    if (k) r["k"] = *k;
    r["expected_answer"] = side["expected_answer"];
    const std::string text = serialize(g);
    if (o.out_path.empty()) {
        r["tg"] = text;
        r["sidecar"] = side;
    } else {
        std::ofstream f(o.out_path);
        if (!f) throw Error("cannot write '" + o.out_path + "'");
        f << text;
        const std::string sp = o.out_path + ".json";
        std::ofstream fs(sp);
        if (!fs) throw Error("cannot write '" + sp + "'");
        fs << side.dump(2) << '\n';
        r["path"] = o.out_path;
        r["sidecar_path"] = sp;
    }
    return r;
}

Json cmd_gen(const std::string& kind, const Options& o, Json& doc) {
    std::mt19937_64 rng(o.seed);
    if (kind == "random") {
        if (o.tau == 0) throw PreconditionError("--tau must be at least 1");
        auto g = random_tg(o.n, o.p, o.tau, rng);
        Json src{{"n", o.n}, {"p", decimal(o.p)}, {"tau", o.tau}};
        return emit(o, kind, g, std::nullopt, {}, src, nullptr, doc);
    }
    if (kind == "ds") {
        if (o.tau == 0) throw PreconditionError("--tau must be at least 1");
        StaticGraph h = o.graph_file.empty() ? random_static(o.n, o.p, rng) : read_static(read_file(o.graph_file));
        auto red = ds_to_strict_tardis(h, o.k, o.tau);
        Json edges = Json::array();
        for (auto [u, v] : h.edges()) edges.push_back(Json::array({u + 1, v + 1}));
        Json src{{"vertices", h.num_vertices()}, {"edges", edges}, {"tau", o.tau}};
        Json expected = nullptr;
        if (h.num_vertices() <= 64) {
            const std::size_t gamma = min_dominating_set(h).size();
            src["domination_number"] = gamma;
            expected = gamma <= o.k ? "yes" : "no";
        }
        return emit(o, kind, red.graph, red.k, red.names, src, expected, doc);
    }
    if (kind == "setcover") {
        SetCoverInstance inst;
        if (!o.instance_file.empty()) {
            auto j = Json::parse(read_file(o.instance_file));
            inst.universe = j.at("universe").get<std::size_t>();
            for (const auto& s : j.at("sets")) {
                std::vector<std::size_t> set;
                for (const auto& x : s) {
                    auto e = x.get<std::size_t>();
                    if (e < 1) throw PreconditionError("set cover elements are 1-based");
                    set.push_back(e - 1);
                }
                inst.sets.push_back(set);
            }
            inst.k = j.value("k", o.k);
        } else {
            inst.universe = o.universe;
            inst.sets.assign(o.num_sets, {});
            std::bernoulli_distribution coin(o.density);
            for (auto& s : inst.sets)
                for (std::size_t x = 0; x < inst.universe; ++x)
                    if (coin(rng)) s.push_back(x);
            if (!inst.sets.empty())
                for (std::size_t x = 0; x < inst.universe; ++x) {
                    bool in = false;
                    for (const auto& s : inst.sets) in = in || std::find(s.begin(), s.end(), x) != s.end();
                    if (!in) {
                        auto& s = inst.sets[rng() % inst.sets.size()];
                        s.insert(std::upper_bound(s.begin(), s.end(), x), x);
                    }
                }
            inst.k = o.k;
        }
        auto red = o.happy ? setcover_to_happy(inst) : setcover_to_nonstrict(inst);
        Json sets = Json::array();
        for (const auto& s : inst.sets) {
            Json a = Json::array();
            for (auto x : s) a.push_back(x + 1);
            sets.push_back(a);
        }
        Json src{{"universe", inst.universe}, {"sets", sets}, {"happy", o.happy}};
        Json expected = nullptr;
        if (inst.sets.size() <= 20 && inst.universe <= 64) {
            auto best = set_cover_bruteforce(inst);
            src["minimum_cover"] = *best;
            expected = *best <= inst.k ? "yes" : "no";
        }
        return emit(o, kind, red.graph, red.k, red.names, src, expected, doc);
    }
    // sat3
    CnfFormula3B f;
    if (!o.cnf_file.empty()) {
        std::istringstream s(read_file(o.cnf_file));
        f = parse_dimacs(s);
    } else {
        f = random_3bounded_formula(o.vars, o.seed);
    }
    auto red = sat_to_happy_tardis(f);
    Json clauses = Json::array();
    for (const auto& c : f.clauses) clauses.push_back(c);
    Json src{{"variables", f.num_vars}, {"clauses", clauses}};
    Json expected = nullptr;
    if (f.num_vars <= 24) {
        const bool sat = satisfying_assignment(f).has_value();
        src["satisfiable"] = sat;
        expected = sat ? "yes" : "no";
    }
    return emit(o, kind, red.graph, red.k, red.names, src, expected, doc);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Temporal reachability dominating sets"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    auto common = [&](CLI::App* c) {
        c->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
        c->add_flag("--timing", o.timing, "Report wall-clock time in elapsed_ms");
    };
    const std::vector<std::string> semantics_names{"strict", "nonstrict", "non-strict"};

    auto* solve = app.add_subcommand("solve", "Minimum TaRDiS of a .tg instance");
    solve->add_option("input", o.input, "Input .tg file (default stdin)");
    solve->add_option("--semantics", o.semantics)->check(CLI::IsMember(semantics_names));
    solve->add_option("--algo", o.algo)
        ->check(CLI::IsMember({"auto", "bruteforce", "setcover", "lee", "tree", "treewidth", "special"}));
    auto* solve_k = solve->add_option("--k", o.k, "Answer yes when the minimum is at most k");
    solve->add_option("--td-file", o.td_file, "PACE .td decomposition of the footprint");
    common(solve);

    auto* mm = app.add_subcommand("maxmin", "MaxMinTaRDiS value of a static graph (.gr or .tg footprint)");
    mm->add_option("input", o.input, "Input file (default stdin)");
    mm->add_option("--variant", o.variant)->check(CLI::IsMember({"strict", "nonstrict", "non-strict", "happy"}));
    mm->add_option("--tau", o.tau, "Lifetime")->required()->check(CLI::PositiveNumber);
    mm->add_option("--algo", o.algo)->check(CLI::IsMember({"auto", "enum", "shortcut"}));
    auto* mm_k = mm->add_option("--k", o.k, "Answer yes when the value is at least k");
    mm->add_option("--budget", o.budget, "Enumeration budget (assignments)")->check(CLI::PositiveNumber);
    mm->add_option("--witness-out", o.witness_out, "Write the witness assignment as .tg");
    common(mm);

    auto* verify = app.add_subcommand("verify", "Check whether a vertex set is a TaRDiS");
    verify->add_option("input", o.input, "Input .tg file (default stdin)");
    verify->add_option("--semantics", o.semantics)->check(CLI::IsMember(semantics_names));
    verify->add_option("--set", o.set, "Comma-separated 1-based vertices")->required();
    auto* verify_k = verify->add_option("--k", o.k, "Also require |set| <= k");
    common(verify);

    auto* reach = app.add_subcommand("reach", "Reachability sets or foremost arrivals");
    reach->add_option("input", o.input, "Input .tg file (default stdin)");
    reach->add_option("--semantics", o.semantics)->check(CLI::IsMember(semantics_names));
    auto* reach_src = reach->add_option("--source", o.source, "1-based source vertex");
    auto* reach_dep = reach->add_option("--depart-after", o.depart_after, "Only paths leaving after this time");
    common(reach);

    auto* cls = app.add_subcommand("classify", "Structural classification of a .tg instance");
    cls->add_option("input", o.input, "Input .tg file (default stdin)");
    common(cls);

    auto* gen = app.add_subcommand("gen", "Instance generators");
    gen->require_subcommand(1);
    auto gen_common = [&](CLI::App* c) {
        c->add_option("--seed", o.seed, "Random seed");
        c->add_option("--out", o.out_path, "Write .tg here and the sidecar to <out>.json");
        common(c);
    };
    auto* g_random = gen->add_subcommand("random", "G(n,p) footprint with 1-2 random times per edge");
    g_random->add_option("--n", o.n)->required();
    g_random->add_option("--p", o.p)->check(CLI::Range(0.0, 1.0));
    g_random->add_option("--tau", o.tau)->required()->check(CLI::PositiveNumber);
    gen_common(g_random);
    auto* g_ds = gen->add_subcommand("ds", "Dominating Set to strict TaRDiS");
    g_ds->add_option("--graph", o.graph_file, "Source graph (.gr or .tg); random G(n,p) otherwise");
    g_ds->add_option("--n", o.n);
    g_ds->add_option("--p", o.p)->check(CLI::Range(0.0, 1.0));
    g_ds->add_option("--k", o.k)->required();
    g_ds->add_option("--tau", o.tau)->required()->check(CLI::PositiveNumber);
    gen_common(g_ds);
    auto* g_sc = gen->add_subcommand("setcover", "Set Cover to nonstrict (or happy) TaRDiS");
    g_sc->add_option("--instance", o.instance_file, "JSON {universe, sets (1-based), k}");
    g_sc->add_option("--universe", o.universe);
    g_sc->add_option("--sets", o.num_sets);
    g_sc->add_option("--density", o.density)->check(CLI::Range(0.0, 1.0));
    g_sc->add_option("--k", o.k);
    g_sc->add_flag("--happy", o.happy, "Use the happy construction");
    gen_common(g_sc);
    auto* g_sat = gen->add_subcommand("sat3", "3-bounded 3-SAT to happy TaRDiS");
    g_sat->add_option("--cnf", o.cnf_file, "DIMACS formula; random otherwise");
    g_sat->add_option("--vars", o.vars)->check(CLI::Range(3, 1000000));
    gen_common(g_sat);

    std::string command = "unknown";
    Json doc;
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        err << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        Json j{{"command", nullptr},     {"instance_summary", Json::object()}, {"result", nullptr},
               {"algorithm", nullptr},   {"elapsed_ms", 0},
               {"error", {{"code", static_cast<int>(kUsage)}, {"message", e.what()}}}};
        out << j.dump() << '\n';
        return kUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    command = sub->get_name();
    doc["command"] = command;
    doc["instance_summary"] = Json::object();
    doc["result"] = nullptr;
    doc["algorithm"] = nullptr;
    doc["elapsed_ms"] = 0;

#ifdef _OPENMP
    if (o.threads > 0) omp_set_num_threads(o.threads);
#endif

    const auto t0 = std::chrono::steady_clock::now();
    int code = kOk;
    try {
        std::optional<bool> answer;
        Json result;
        if (sub == solve) {
            result = cmd_solve(o, in, doc);
            if (solve_k->count()) answer = result["size"].get<std::size_t>() <= o.k;
        } else if (sub == mm) {
            result = cmd_maxmin(o, in, doc);
            if (mm_k->count()) answer = result["value"].get<std::size_t>() >= o.k;
        } else if (sub == verify) {
            bool ok = false;
            result = cmd_verify(o, in, doc, ok);
            answer = ok && (!verify_k->count() || result["size"].get<std::size_t>() <= o.k);
        } else if (sub == reach) {
            result = cmd_reach(o, in, doc, reach_src->count() > 0, reach_dep->count() > 0);
        } else if (sub == cls) {
            result = cmd_classify(o, in, doc);
        } else {
            const std::string kind = gen->get_subcommands().front()->get_name();
            doc["command"] = "gen";
            result = cmd_gen(kind, o, doc);
        }
        doc["result"] = result;
        if (answer) doc["answer"] = *answer ? "yes" : "no";
    } catch (const ParseError& e) {
        code = kParse;
        err << "parse error: " << e.what() << '\n';
        doc["error"] = {{"code", code}, {"message", e.what()}};
    } catch (const OpenError& e) {
        code = kParse;
        err << "parse error: " << e.what() << '\n';
        doc["error"] = {{"code", code}, {"message", e.what()}};
    } catch (const InfeasibleError& e) {
        code = kInfeasible;
        err << "infeasible: " << e.what() << '\n';
        doc["error"] = {{"code", code}, {"message", e.what()}};
    } catch (const BudgetExceeded& e) {
        code = kBudget;
        err << "budget exceeded: " << e.what() << '\n';
        doc["error"] = {{"code", code}, {"message", e.what()}};
    } catch (const std::exception& e) {
        code = kUsage;
        err << "error: " << e.what() << '\n';
        doc["error"] = {{"code", code}, {"message", e.what()}};
    }
    if (o.timing)
        doc["elapsed_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    out << doc.dump() << '\n';
    return code;
}

}  // namespace tardis::cli
