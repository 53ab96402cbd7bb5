#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "tardis/reach.hpp"
#include "tardis/treewidth.hpp"

namespace tardis {

long TreeDecomposition::width() const {
    long w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<long>(b.size()) - 1);
    return w;
}

long NiceTreeDecomposition::width() const {
    long w = -1;
    for (const auto& nd : nodes) w = std::max(w, static_cast<long>(nd.bag.size()) - 1);
    return w;
}

namespace {

bool bag_tree_ok(std::size_t nb, const std::vector<std::pair<std::size_t, std::size_t>>& edges, std::string& why) {
    if (nb == 0) {
        if (!edges.empty()) {
            why = "bag-tree edges without bags";
            return false;
        }
        return true;
    }
    if (edges.size() != nb - 1) {
        why = "bag tree has " + std::to_string(edges.size()) + " edges for " + std::to_string(nb) + " bags";
        return false;
    }
    std::vector<std::size_t> par(nb);
    std::iota(par.begin(), par.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return par[x] == x ? x : par[x] = find(par[x]);
    };
    for (auto [a, b] : edges) {
        if (a >= nb || b >= nb) {
            why = "bag-tree edge references a missing bag";
            return false;
        }
        auto ra = find(a), rb = find(b);
        if (ra == rb) {
            why = "bag tree contains a cycle";
            return false;
        }
        par[ra] = rb;
    }
    return true;
}

}  // namespace

std::optional<std::string> validate_tree_decomposition(const StaticGraph& h, const TreeDecomposition& td) {
    const std::size_t n = h.num_vertices(), nb = td.bags.size();
    std::string why;
    if (!bag_tree_ok(nb, td.edges, why)) return why;
    std::vector<std::vector<std::size_t>> where(n);
    for (std::size_t i = 0; i < nb; ++i)
        for (Vertex v : td.bags[i]) {
            if (v >= n) return "bag " + std::to_string(i + 1) + " contains unknown vertex " + std::to_string(v + 1);
            where[v].push_back(i);
        }
    for (Vertex v = 0; v < n; ++v)
        if (where[v].empty()) return "vertex " + std::to_string(v + 1) + " is in no bag";
    for (auto [u, v] : h.edges()) {
        bool ok = false;
        for (std::size_t i : where[u])
            if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) ok = true;
        if (!ok) return "edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) + " is in no bag";
    }
    // Bags holding v must induce a connected subtree: #bags - #internal edges == 1.
    for (Vertex v = 0; v < n; ++v) {
        std::size_t inner = 0;
        for (auto [a, b] : td.edges) {
            bool ia = std::binary_search(td.bags[a].begin(), td.bags[a].end(), v);
            bool ib = std::binary_search(td.bags[b].begin(), td.bags[b].end(), v);
            if (ia && ib) ++inner;
        }
        if (where[v].size() != inner + 1) return "bags containing vertex " + std::to_string(v + 1) + " are not connected";
    }
    return std::nullopt;
}

// ---- elimination orders --------------------------------------------------

namespace {

TreeDecomposition from_order(const StaticGraph& h, const std::vector<Vertex>& order) {
    const std::size_t n = h.num_vertices();
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<std::set<Vertex>> adj(n);
    for (auto [u, v] : h.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }

    TreeDecomposition td;
    td.bags.resize(n);
    std::vector<std::size_t> parent(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v = order[i];
        VertexSet later;
        for (Vertex w : adj[v])
            if (pos[w] > i) later.push_back(w);
        for (Vertex a : later)
            for (Vertex b : later)
                if (a != b) adj[a].insert(b);
        VertexSet bag = later;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags[i] = bag;
        if (!later.empty()) {
            std::size_t next = n;
            for (Vertex w : later) next = std::min(next, pos[w]);
            parent[i] = next;
        }
    }
    std::size_t prev_root = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (parent[i] != n) {
            td.edges.emplace_back(i, parent[i]);
        } else {
            if (prev_root != n) td.edges.emplace_back(prev_root, i);
            prev_root = i;
        }
    }
    return td;
}

std::vector<Vertex> min_fill_order(const StaticGraph& h) {
    const std::size_t n = h.num_vertices();
    std::vector<std::unordered_set<Vertex>> adj(n);
    for (auto [u, v] : h.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<char> gone(n, 0);
    std::vector<Vertex> order;
    for (std::size_t step = 0; step < n; ++step) {
        Vertex best = 0;
        std::size_t best_fill = SIZE_MAX, best_deg = SIZE_MAX;
        for (Vertex v = 0; v < n; ++v) {
            if (gone[v]) continue;
            std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
            std::size_t fill = 0;
            for (std::size_t i = 0; i < nb.size() && fill <= best_fill; ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j)
                    if (!adj[nb[i]].count(nb[j])) ++fill;
            if (fill < best_fill || (fill == best_fill && nb.size() < best_deg)) {
                best = v;
                best_fill = fill;
                best_deg = nb.size();
            }
        }
        std::vector<Vertex> nb(adj[best].begin(), adj[best].end());
        for (Vertex a : nb)
            for (Vertex b : nb)
                if (a != b) adj[a].insert(b);
        for (Vertex a : nb) adj[a].erase(best);
        adj[best].clear();
        gone[best] = 1;
        order.push_back(best);
    }
    return order;
}

// Exact treewidth by dynamic programming over eliminated sets.
std::vector<Vertex> exact_order(const StaticGraph& h) {
    const std::size_t n = h.num_vertices();
    const std::size_t full = std::size_t{1} << n;
    std::vector<std::uint32_t> nbmask(n, 0);
    for (auto [u, v] : h.edges()) {
        nbmask[u] |= 1u << v;
        nbmask[v] |= 1u << u;
    }
    // |Q(S, v)|: vertices outside S+v reachable from v through S.
    auto q = [&](std::uint32_t s, Vertex v) {
        std::uint32_t seen = 1u << v, frontier = 1u << v, out = 0;
        while (frontier) {
            Vertex x = static_cast<Vertex>(__builtin_ctz(frontier));
            frontier &= frontier - 1;
            std::uint32_t nb = nbmask[x] & ~seen;
            seen |= nb;
            out |= nb & ~s;
            frontier |= nb & s;
        }
        return static_cast<std::size_t>(__builtin_popcount(out));
    };
    std::vector<std::uint8_t> tw(full, 255), choice(full, 0);
    tw[0] = 0;
    for (std::uint32_t s = 1; s < full; ++s) {
        for (Vertex v = 0; v < n; ++v) {
            if (!(s >> v & 1)) continue;
            std::uint32_t rest = s & ~(1u << v);
            std::size_t w = std::max<std::size_t>(tw[rest], q(rest, v));
            if (w < tw[s]) {
                tw[s] = static_cast<std::uint8_t>(w);
                choice[s] = static_cast<std::uint8_t>(v);
            }
        }
    }
    std::vector<Vertex> order;
    for (std::uint32_t s = static_cast<std::uint32_t>(full - 1); s; s &= ~(1u << choice[s])) order.push_back(choice[s]);
    std::reverse(order.begin(), order.end());
    return order;
}

// Depth-first search for an elimination order of width <= k with memoized
// dead ends. Gives up (nullopt) after `budget` expansions.
std::optional<std::vector<Vertex>> bounded_order(const StaticGraph& h, std::size_t k, std::size_t budget) {
    const std::size_t n = h.num_vertices();
    std::vector<std::vector<char>> adj0(n, std::vector<char>(n, 0));
    for (auto [u, v] : h.edges()) adj0[u][v] = adj0[v][u] = 1;
    std::unordered_set<std::string> dead;
    std::vector<Vertex> order;
    std::string gone(n, '0');

    std::function<bool(std::vector<std::vector<char>>&)> dfs = [&](std::vector<std::vector<char>>& adj) -> bool {
        if (order.size() == n) return true;
        if (budget == 0 || dead.count(gone)) return false;
        --budget;
        auto nbrs = [&](Vertex v) {
            VertexSet nb;
            for (Vertex w = 0; w < n; ++w)
                if (gone[w] == '0' && adj[v][w]) nb.push_back(w);
            return nb;
        };
        auto simplicial = [&](const VertexSet& nb) {
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j)
                    if (!adj[nb[i]][nb[j]]) return false;
            return true;
        };
        std::vector<Vertex> cands;
        for (Vertex v = 0; v < n; ++v) {
            if (gone[v] != '0') continue;
            auto nb = nbrs(v);
            if (nb.size() > k) continue;
            if (simplicial(nb)) {
                cands.assign(1, v);
                break;
            }
            cands.push_back(v);
        }
        for (Vertex v : cands) {
            auto nb = nbrs(v);
            auto saved = adj;
            for (Vertex a : nb)
                for (Vertex b : nb)
                    if (a != b) adj[a][b] = 1;
            gone[v] = '1';
            order.push_back(v);
            if (dfs(adj)) return true;
            order.pop_back();
            gone[v] = '0';
            adj = std::move(saved);
        }
        dead.insert(gone);
        return false;
    };
    if (dfs(adj0)) return order;
    return std::nullopt;
}

// Contracts bag-tree edges whose one side is a subset of the other.
TreeDecomposition compress(TreeDecomposition td) {
    const std::size_t nb = td.bags.size();
    std::vector<std::set<std::size_t>> adj(nb);
    for (auto [a, b] : td.edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    std::vector<char> alive(nb, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < nb; ++a) {
            if (!alive[a]) continue;
            for (std::size_t b : adj[a]) {
                if (!std::includes(td.bags[b].begin(), td.bags[b].end(), td.bags[a].begin(), td.bags[a].end()))
                    continue;
                for (std::size_t c : adj[a]) {
                    adj[c].erase(a);
                    if (c != b) {
                        adj[c].insert(b);
                        adj[b].insert(c);
                    }
                }
                adj[a].clear();
                alive[a] = 0;
                changed = true;
                break;
            }
        }
    }
    std::vector<std::size_t> id(nb, nb);
    TreeDecomposition out;
    for (std::size_t a = 0; a < nb; ++a)
        if (alive[a]) {
            id[a] = out.bags.size();
            out.bags.push_back(td.bags[a]);
        }
    for (std::size_t a = 0; a < nb; ++a)
        for (std::size_t b : adj[a])
            if (alive[a] && a < b) out.edges.emplace_back(id[a], id[b]);
    return out;
}

}  // namespace

TreeDecomposition compute_tree_decomposition(const StaticGraph& h, std::optional<std::size_t> width_hint) {
    const std::size_t n = h.num_vertices();
    if (n == 0) return {};
    if (n <= 12) return compress(from_order(h, exact_order(h)));
    auto td = from_order(h, min_fill_order(h));
    if (width_hint && *width_hint <= 3 && td.width() > static_cast<long>(*width_hint)) {
        for (std::size_t k = 1; k <= *width_hint && static_cast<long>(k) < td.width(); ++k)
            if (auto order = bounded_order(h, k, 200000)) return compress(from_order(h, *order));
    }
    return compress(std::move(td));
}

// ---- nice decompositions ---------------------------------------------------

NiceTreeDecomposition make_nice(const StaticGraph& h, const TreeDecomposition& td) {
    if (auto err = validate_tree_decomposition(h, td)) throw PreconditionError("invalid tree decomposition: " + *err);
    NiceTreeDecomposition out;
    auto add = [&](NiceNode nd) {
        out.nodes.push_back(std::move(nd));
        return out.nodes.size() - 1;
    };
    if (td.bags.empty()) {
        out.root = add({NodeKind::Leaf, 0, {}, {}});
        return out;
    }
    std::vector<std::vector<std::size_t>> tadj(td.bags.size());
    for (auto [a, b] : td.edges) {
        tadj[a].push_back(b);
        tadj[b].push_back(a);
    }
    for (auto& l : tadj) std::sort(l.begin(), l.end());

    // Walks node `from` (bag A) to bag B: forget A\B, then introduce B\A.
    auto morph = [&](std::size_t from, const VertexSet& target) {
        VertexSet cur = out.nodes[from].bag;
        for (Vertex v : VertexSet(cur)) {
            if (std::binary_search(target.begin(), target.end(), v)) continue;
            cur.erase(std::find(cur.begin(), cur.end(), v));
            from = add({NodeKind::Forget, v, cur, {from}});
        }
        for (Vertex v : target) {
            if (std::binary_search(cur.begin(), cur.end(), v)) continue;
            cur.insert(std::lower_bound(cur.begin(), cur.end(), v), v);
            from = add({NodeKind::Introduce, v, cur, {from}});
        }
        return from;
    };

    // Post-order over the bag tree rooted at bag 0, iterative.
    const std::size_t nb = td.bags.size();
    std::vector<std::size_t> parent(nb, nb), order;
    std::vector<std::size_t> stack{0};
    std::vector<char> seen(nb, 0);
    seen[0] = 1;
    while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (std::size_t y : tadj[x])
            if (!seen[y]) {
                seen[y] = 1;
                parent[y] = x;
                stack.push_back(y);
            }
    }
    std::vector<std::size_t> built(nb);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::size_t x = *it;
        const VertexSet& bag = td.bags[x];
        std::vector<std::size_t> subs;
        for (std::size_t y : tadj[x])
            if (parent[y] == x) subs.push_back(morph(built[y], bag));
        if (subs.empty()) subs.push_back(morph(add({NodeKind::Leaf, 0, {}, {}}), bag));
        while (subs.size() > 1) {
            std::vector<std::size_t> next;
            for (std::size_t i = 0; i + 1 < subs.size(); i += 2)
                next.push_back(add({NodeKind::Join, 0, bag, {subs[i], subs[i + 1]}}));
            if (subs.size() % 2) next.push_back(subs.back());
            subs = std::move(next);
        }
        built[x] = subs[0];
    }
    out.root = morph(built[0], {});
    return out;
}

std::optional<std::string> validate_nice(const StaticGraph& h, const NiceTreeDecomposition& ntd) {
    if (ntd.nodes.empty()) return "no nodes";
    if (!ntd.nodes[ntd.root].bag.empty()) return "root bag is not empty";
    TreeDecomposition td;
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
        const auto& nd = ntd.nodes[i];
        const std::string at = "node " + std::to_string(i) + ": ";
        td.bags.push_back(nd.bag);
        for (std::size_t c : nd.children) {
            if (c >= ntd.nodes.size()) return at + "child index out of range";
            td.edges.emplace_back(c, i);
        }
        if (!std::is_sorted(nd.bag.begin(), nd.bag.end())) return at + "bag not sorted";
        switch (nd.kind) {
            case NodeKind::Leaf:
                if (!nd.children.empty() || !nd.bag.empty()) return at + "leaf must be empty and childless";
                break;
            case NodeKind::Introduce:
            case NodeKind::Forget: {
                if (nd.children.size() != 1) return at + "introduce/forget needs one child";
                VertexSet big = ntd.nodes[nd.children[0]].bag, small = nd.bag;
                if (nd.kind == NodeKind::Introduce) std::swap(big, small);
                VertexSet expect = small;
                expect.insert(std::lower_bound(expect.begin(), expect.end(), nd.vertex), nd.vertex);
                if (std::binary_search(small.begin(), small.end(), nd.vertex) || expect != big)
                    return at + "bag differs from child by more than the named vertex";
                break;
            }
            case NodeKind::Join:
                if (nd.children.size() != 2) return at + "join needs two children";
                for (std::size_t c : nd.children)
                    if (ntd.nodes[c].bag != nd.bag) return at + "join child bag differs";
                break;
        }
    }
    // Vertices that never occur in any bag are allowed only if absent from h.
    if (auto err = validate_tree_decomposition(h, td)) return *err;
    return std::nullopt;
}

// ---- PACE I/O ---------------------------------------------------------------

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

std::size_t to_index(const std::string& tok, std::size_t line) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError(line, "expected non-negative integer, got '" + tok + "'");
    return v;
}

}  // namespace

StaticGraph parse_gr(std::istream& in) {
    std::string raw;
    std::size_t line = 0, m = 0, seen = 0;
    std::optional<StaticGraph> h;
    while (std::getline(in, raw)) {
        ++line;
        auto tok = tokens(raw);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (h) throw ParseError(line, "duplicate header");
            if (tok.size() != 4 || tok[1] != "tw") throw ParseError(line, "header must be 'p tw <n> <m>'");
            h.emplace(to_index(tok[2], line));
            m = to_index(tok[3], line);
            continue;
        }
        if (!h) throw ParseError(line, "edge before header");
        if (tok.size() != 2) throw ParseError(line, "edge line must be '<u> <v>'");
        auto u = to_index(tok[0], line), v = to_index(tok[1], line);
        if (u < 1 || v < 1 || u > h->num_vertices() || v > h->num_vertices())
            throw ParseError(line, "vertex index out of range");
        if (u == v) throw ParseError(line, "self-loop on vertex " + std::to_string(u));
        h->add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
        ++seen;
    }
    if (!h) throw ParseError(line == 0 ? 1 : line, "missing header 'p tw <n> <m>'");
    if (seen != m) throw ParseError(line, "header declares " + std::to_string(m) + " edges, found " + std::to_string(seen));
    return *h;
}

StaticGraph read_gr(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_gr(in);
}

std::string write_gr(const StaticGraph& h) {
    std::ostringstream out;
    out << "p tw " << h.num_vertices() << ' ' << h.num_edges() << '\n';
    for (auto [u, v] : h.edges()) out << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

TreeDecomposition parse_td(std::istream& in) {
    std::string raw;
    std::size_t line = 0, nbags = 0, n = 0;
    bool header = false;
    TreeDecomposition td;
    std::vector<char> filled;
    while (std::getline(in, raw)) {
        ++line;
        auto tok = tokens(raw);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "s") {
            if (header) throw ParseError(line, "duplicate header");
            if (tok.size() != 5 || tok[1] != "td") throw ParseError(line, "header must be 's td <bags> <maxbag> <n>'");
            nbags = to_index(tok[2], line);
            n = to_index(tok[4], line);
            td.bags.assign(nbags, {});
            filled.assign(nbags, 0);
            header = true;
            continue;
        }
        if (!header) throw ParseError(line, "content before header");
        if (tok[0] == "b") {
            if (tok.size() < 2) throw ParseError(line, "bag line must be 'b <id> <v...>'");
            auto id = to_index(tok[1], line);
            if (id < 1 || id > nbags) throw ParseError(line, "bag id out of range");
            if (filled[id - 1]) throw ParseError(line, "bag defined twice");
            filled[id - 1] = 1;
            for (std::size_t i = 2; i < tok.size(); ++i) {
                auto v = to_index(tok[i], line);
                if (v < 1 || v > n) throw ParseError(line, "vertex index out of range");
                td.bags[id - 1].push_back(static_cast<Vertex>(v - 1));
            }
            auto& b = td.bags[id - 1];
            std::sort(b.begin(), b.end());
            b.erase(std::unique(b.begin(), b.end()), b.end());
            continue;
        }
        if (tok.size() != 2) throw ParseError(line, "tree edge line must be '<i> <j>'");
        auto a = to_index(tok[0], line), b = to_index(tok[1], line);
        if (a < 1 || b < 1 || a > nbags || b > nbags) throw ParseError(line, "bag id out of range");
        td.edges.emplace_back(a - 1, b - 1);
    }
    if (!header) throw ParseError(line == 0 ? 1 : line, "missing header 's td <bags> <maxbag> <n>'");
    return td;
}

TreeDecomposition read_td(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_td(in);
}

std::string write_td(const TreeDecomposition& td, std::size_t n) {
    std::ostringstream out;
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (Vertex v : td.bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : td.edges) out << a + 1 << ' ' << b + 1 << '\n';
    return out.str();
}

}  // namespace tardis
