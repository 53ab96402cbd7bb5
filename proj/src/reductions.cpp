#include "tardis/reductions.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <istream>
#include <map>
#include <random>
#include <sstream>

#include "tardis/error.hpp"

namespace tardis {

void validate(const SetCoverInstance& inst) {
    if (inst.sets.empty()) throw PreconditionError("invalid instance: empty set family");
    std::vector<char> covered(inst.universe, 0);
    for (std::size_t j = 0; j < inst.sets.size(); ++j)
        for (std::size_t x : inst.sets[j]) {
            if (x >= inst.universe)
                throw PreconditionError("invalid instance: set " + std::to_string(j + 1) + " contains element " +
                                        std::to_string(x + 1) + " outside the universe");
            covered[x] = 1;
        }
    for (std::size_t x = 0; x < inst.universe; ++x)
        if (!covered[x]) throw PreconditionError("invalid instance: element " + std::to_string(x + 1) + " is in no set");
}

std::optional<std::size_t> set_cover_bruteforce(const SetCoverInstance& inst) {
    const std::size_t m = inst.sets.size();
    if (m > 20 || inst.universe > 64) throw BudgetExceeded("exhaustive set cover is limited to 20 sets over 64 elements");
    std::vector<std::uint64_t> bits(m, 0);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t x : inst.sets[j]) bits[j] |= std::uint64_t{1} << x;
    const std::uint64_t all = inst.universe >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << inst.universe) - 1;
    std::optional<std::size_t> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::uint64_t u = 0;
        for (std::size_t j = 0; j < m; ++j)
            if (mask >> j & 1) u |= bits[j];
        if (u == all) {
            std::size_t c = static_cast<std::size_t>(std::popcount(mask));
            if (!best || c < *best) best = c;
        }
    }
    return best;
}

std::vector<std::string> violations(const CnfFormula3B& f) {
    std::vector<std::string> out;
    std::vector<int> occ(f.num_vars, 0), pos(f.num_vars, 0), neg(f.num_vars, 0);
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        const auto& cl = f.clauses[c];
        const std::string name = "clause " + std::to_string(c + 1);
        if (cl.size() < 2 || cl.size() > 3) out.push_back(name + " has " + std::to_string(cl.size()) + " literals");
        std::vector<std::size_t> vars;
        for (int lit : cl) {
            std::size_t v = static_cast<std::size_t>(lit < 0 ? -static_cast<long>(lit) : lit);
            if (lit == 0 || v > f.num_vars) {
                out.push_back(name + " has literal " + std::to_string(lit) + " outside the variables");
                continue;
            }
            vars.push_back(v - 1);
            ++occ[v - 1];
            ++(lit > 0 ? pos : neg)[v - 1];
        }
        std::sort(vars.begin(), vars.end());
        if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) out.push_back(name + " repeats a variable");
    }
    for (std::size_t v = 0; v < f.num_vars; ++v) {
        const std::string name = "variable " + std::to_string(v + 1);
        if (occ[v] != 3) out.push_back(name + " occurs " + std::to_string(occ[v]) + " times");
        if (pos[v] > 2) out.push_back(name + " occurs positively " + std::to_string(pos[v]) + " times");
        if (neg[v] > 2) out.push_back(name + " occurs negatively " + std::to_string(neg[v]) + " times");
    }
    return out;
}

void validate(const CnfFormula3B& f) {
    auto v = violations(f);
    if (v.empty()) return;
    std::string msg = "invalid formula:";
    for (const auto& s : v) msg += " " + s + ";";
    msg.pop_back();
    throw PreconditionError(msg);
}

CnfFormula3B parse_dimacs(std::istream& in) {
    CnfFormula3B f;
    bool header = false;
    std::size_t expected = 0;
    std::vector<int> cur;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok[0] == 'c' || tok == "%") continue;
        if (tok == "p") {
            std::string fmt;
            if (header || !(ls >> fmt >> f.num_vars >> expected) || fmt != "cnf")
                throw ParseError(lineno, "bad problem line");
            header = true;
            continue;
        }
        if (!header) throw ParseError(lineno, "clause before the problem line");
        ls.clear();
        ls.str(line);
        long lit;
        while (ls >> lit) {
            if (lit == 0) {
                f.clauses.push_back(cur);
                cur.clear();
            } else {
                if (static_cast<std::size_t>(std::labs(lit)) > f.num_vars)
                    throw ParseError(lineno, "literal " + std::to_string(lit) + " out of range");
                cur.push_back(static_cast<int>(lit));
            }
        }
        if (!ls.eof()) throw ParseError(lineno, "bad token");
    }
    if (!header) throw ParseError(lineno, "missing problem line");
    if (!cur.empty()) f.clauses.push_back(cur);
    if (f.clauses.size() != expected)
        throw ParseError(lineno, "expected " + std::to_string(expected) + " clauses, found " +
                                     std::to_string(f.clauses.size()));
    return f;
}

std::string write_dimacs(const CnfFormula3B& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) {
        for (int lit : c) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

std::optional<std::vector<bool>> satisfying_assignment(const CnfFormula3B& f) {
    const std::size_t n = f.num_vars;
    if (n > 30) throw BudgetExceeded("exhaustive satisfiability is limited to 30 variables");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        bool ok = std::all_of(f.clauses.begin(), f.clauses.end(), [&](const std::vector<int>& c) {
            return std::any_of(c.begin(), c.end(), [&](int lit) {
                bool val = mask >> (std::abs(lit) - 1) & 1;
                return lit > 0 ? val : !val;
            });
        });
        if (ok) {
            std::vector<bool> a(n);
            for (std::size_t i = 0; i < n; ++i) a[i] = mask >> i & 1;
            return a;
        }
    }
    return std::nullopt;
}

CnfFormula3B random_3bounded_formula(std::size_t n, std::uint64_t seed) {
    if (n < 3) throw PreconditionError("random 3-bounded formulas need at least 3 variables");
    std::mt19937_64 rng(seed);
    std::vector<int> occ;
    for (std::size_t v = 1; v <= n; ++v) {
        int sign = rng() % 2 ? 1 : -1;
        int lit = static_cast<int>(v);
        occ.push_back(sign * lit);
        occ.push_back(sign * lit);
        occ.push_back(-sign * lit);
    }
    for (;;) {
        std::shuffle(occ.begin(), occ.end(), rng);
        CnfFormula3B f{n, {}};
        for (std::size_t c = 0; c < n; ++c) f.clauses.push_back({occ[3 * c], occ[3 * c + 1], occ[3 * c + 2]});
        if (violations(f).empty()) return f;
    }
}

namespace {

struct Builder {
    std::vector<TimeEdge> edges;
    std::vector<std::string> names;

    Vertex add(std::string name) {
        names.push_back(std::move(name));
        return static_cast<Vertex>(names.size() - 1);
    }
    void edge(Vertex u, Vertex v, Time t) { edges.push_back({u, v, t}); }
    TemporalGraph build() { return TemporalGraph(names.size(), std::move(edges)); }
};

std::string idx(std::size_t i) { return std::to_string(i + 1); }

struct SetCoverLayout {
    std::vector<Vertex> x, s;
    std::vector<std::vector<Vertex>> a_by_set;      // a-vertices of set j, by element
    std::vector<std::vector<Vertex>> a_by_element;  // a-vertices of element i, by set
};

SetCoverLayout layout(const SetCoverInstance& inst, Builder& b) {
    validate(inst);
    SetCoverLayout l;
    for (std::size_t i = 0; i < inst.universe; ++i) l.x.push_back(b.add("x" + idx(i)));
    for (std::size_t j = 0; j < inst.sets.size(); ++j) l.s.push_back(b.add("s" + idx(j)));
    l.a_by_set.resize(inst.sets.size());
    l.a_by_element.resize(inst.universe);
    for (std::size_t j = 0; j < inst.sets.size(); ++j) {
        auto elems = inst.sets[j];
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        for (std::size_t i : elems) {
            Vertex a = b.add("a" + idx(i) + "_" + idx(j));
            l.a_by_set[j].push_back(a);
            l.a_by_element[i].push_back(a);
        }
    }
    return l;
}

void clique(Builder& b, std::vector<Vertex> vs, Time& t) {
    std::sort(vs.begin(), vs.end());
    for (std::size_t p = 0; p < vs.size(); ++p)
        for (std::size_t q = p + 1; q < vs.size(); ++q) b.edge(vs[p], vs[q], t++);
}

}  // namespace

ReducedInstance ds_to_strict_tardis(const StaticGraph& g, std::size_t k, Time tau) {
    if (tau == 0) throw PreconditionError("tau must be at least 1");
    Builder b;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) b.add("v" + idx(v));
    for (auto [u, v] : g.edges()) b.edge(u, v, 1);
    if (g.num_vertices() > 0) {
        Vertex prev = 0;
        for (Time t = 2; t <= tau; ++t) {
            Vertex p = b.add("p" + idx(t - 2));
            b.edge(prev, p, t);
            prev = p;
        }
    }
    return {b.build(), k, std::move(b.names)};
}

ReducedInstance setcover_to_nonstrict(const SetCoverInstance& inst) {
    Builder b;
    auto l = layout(inst, b);
    for (std::size_t j = 0; j < l.s.size(); ++j) {
        Vertex prev = l.s[j];
        for (Vertex a : l.a_by_set[j]) {
            b.edge(prev, a, 1);
            prev = a;
        }
    }
    for (std::size_t i = 0; i < l.x.size(); ++i) {
        Vertex prev = l.x[i];
        for (Vertex a : l.a_by_element[i]) {
            b.edge(prev, a, 2);
            prev = a;
        }
    }
    for (std::size_t j = 0; j + 1 < l.s.size(); ++j) b.edge(l.s[j], l.s[j + 1], 2);
    return {b.build(), inst.k, std::move(b.names)};
}

ReducedInstance setcover_to_happy(const SetCoverInstance& inst) {
    Builder b;
    auto l = layout(inst, b);
    Time t = 1;
    for (std::size_t j = 0; j < l.s.size(); ++j) {
        auto vs = l.a_by_set[j];
        vs.push_back(l.s[j]);
        clique(b, vs, t);
    }
    clique(b, l.s, t);
    for (std::size_t i = 0; i < l.x.size(); ++i) {
        auto vs = l.a_by_element[i];
        vs.push_back(l.x[i]);
        clique(b, vs, t);
    }
    return {b.build(), inst.k, std::move(b.names)};
}

ReducedInstance sat_to_happy_tardis(const CnfFormula3B& f) {
    validate(f);
    const std::size_t n = f.num_vars, m = f.clauses.size();
    Builder b;

    enum { T1, T2, F1, F2, V1, V2, A, B };
    std::vector<std::array<Vertex, 8>> var(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string x = "_x" + idx(i);
        var[i] = {b.add("T1" + x), b.add("T2" + x), b.add("F1" + x), b.add("F2" + x),
                  b.add("v1" + x), b.add("v2" + x), b.add("a" + x), b.add("b" + x)};
        auto& g = var[i];
        b.edge(g[T1], g[T2], 1);
        b.edge(g[F1], g[F2], 1);
        b.edge(g[V1], g[V2], 1);
        b.edge(g[A], g[V1], 2);
        b.edge(g[B], g[V2], 2);
        b.edge(g[A], g[T1], 3);
        b.edge(g[B], g[F1], 3);
        b.edge(g[T2], g[F2], 3);
    }

    std::vector<std::array<Vertex, 6>> q(m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t r = 0; r < 6; ++r) q[j][r] = b.add("q" + idx(r) + "_c" + idx(j));
        b.edge(q[j][0], q[j][1], 3);
        b.edge(q[j][2], q[j][3], 3);
        b.edge(q[j][4], q[j][5], 3);
        b.edge(q[j][1], q[j][2], 1);
        b.edge(q[j][3], q[j][4], 1);
        b.edge(q[j][5], q[j][0], 1);
    }

    // Occurrences in clause order; 2-clauses get the always-false literal last.
    std::map<int, std::size_t> seen;
    for (std::size_t j = 0; j < m; ++j) {
        auto lits = f.clauses[j];
        if (lits.size() == 2) lits.push_back(0);
        for (std::size_t r = 0; r < 3; ++r) {
            const int lit = lits[r];
            const std::size_t a = ++seen[lit];
            const std::string tag =
                lit == 0 ? "bot" : (lit > 0 ? "x" : "~x") + std::to_string(std::abs(lit));
            Vertex l = b.add("l_" + tag + "^" + std::to_string(a));
            Vertex lbar = b.add("lbar_" + tag + "^" + std::to_string(a));
            b.edge(l, lbar, 3);
            b.edge(q[j][2 * r], l, 2);
            if (lit != 0) {
                const auto& g = var[static_cast<std::size_t>(std::abs(lit)) - 1];
                b.edge(lbar, lit > 0 ? g[a == 1 ? T1 : T2] : g[a == 1 ? F1 : F2], 2);
            }
        }
    }

    if (b.names.size() != 8 * n + 12 * m) throw Error("SAT reduction produced an unexpected vertex count");
    return {b.build(), 2 * m + 2 * n, std::move(b.names)};
}

}  // namespace tardis
