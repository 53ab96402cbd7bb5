#include "tardis/core.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

namespace tardis {

std::string_view to_string(Semantics s) {
    return s == Semantics::Strict ? "strict" : "nonstrict";
}

Semantics parse_semantics(std::string_view text) {
    if (text == "strict") return Semantics::Strict;
    if (text == "nonstrict" || text == "non-strict") return Semantics::Nonstrict;
    throw PreconditionError("unknown semantics '" + std::string(text) + "'");
}

// ---- StaticGraph ---------------------------------------------------------

StaticGraph::StaticGraph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) : adj_(n) {
    for (auto [u, v] : edges) add_edge(u, v);
}

void StaticGraph::add_edge(Vertex u, Vertex v) {
    if (u == v) throw PreconditionError("self-loop on vertex " + std::to_string(u + 1));
    if (u >= adj_.size() || v >= adj_.size()) throw PreconditionError("edge endpoint out of range");
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) return;
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++num_edges_;
}

bool StaticGraph::adjacent(Vertex u, Vertex v) const {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

std::size_t StaticGraph::max_degree() const noexcept {
    std::size_t d = 0;
    for (const auto& a : adj_) d = std::max(d, a.size());
    return d;
}

std::vector<std::pair<Vertex, Vertex>> StaticGraph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(num_edges_);
    for (Vertex u = 0; u < adj_.size(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::vector<std::size_t> StaticGraph::component_ids() const {
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> id(adj_.size(), unset);
    std::size_t next = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < adj_.size(); ++s) {
        if (id[s] != unset) continue;
        id[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            for (Vertex y : adj_[x])
                if (id[y] == unset) {
                    id[y] = next;
                    stack.push_back(y);
                }
        }
        ++next;
    }
    return id;
}

std::size_t StaticGraph::component_count() const {
    auto id = component_ids();
    return id.empty() ? 0 : *std::max_element(id.begin(), id.end()) + 1;
}

bool StaticGraph::is_forest() const {
    return num_edges_ + component_count() == adj_.size();
}

std::vector<std::size_t> StaticGraph::distances_from(Vertex source) const {
    std::vector<std::size_t> d(adj_.size(), std::numeric_limits<std::size_t>::max());
    std::queue<Vertex> q;
    d[source] = 0;
    q.push(source);
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop();
        for (Vertex y : adj_[x])
            if (d[y] == std::numeric_limits<std::size_t>::max()) {
                d[y] = d[x] + 1;
                q.push(y);
            }
    }
    return d;
}

StaticGraph StaticGraph::square() const {
    StaticGraph sq(adj_.size());
    for (Vertex u = 0; u < adj_.size(); ++u)
        for (Vertex w : adj_[u]) {
            if (u < w) sq.add_edge(u, w);
            for (Vertex x : adj_[w])
                if (u < x) sq.add_edge(u, x);
        }
    return sq;
}

// ---- TemporalGraph -------------------------------------------------------

TemporalGraph::TemporalGraph(std::size_t n, std::vector<TimeEdge> time_edges) : n_(n) {
    for (auto& e : time_edges) {
        if (e.u == e.v) throw PreconditionError("self-loop on vertex " + std::to_string(e.u + 1));
        if (e.u >= n || e.v >= n) throw PreconditionError("time-edge endpoint out of range");
        if (e.t < 1) throw PreconditionError("time-edge with t < 1");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(time_edges.begin(), time_edges.end(), [](const TimeEdge& a, const TimeEdge& b) {
        return std::tie(a.u, a.v, a.t) < std::tie(b.u, b.v, b.t);
    });
    for (std::size_t i = 0; i < time_edges.size(); ++i) {
        const auto& e = time_edges[i];
        if (i > 0 && time_edges[i - 1] == e)
            throw PreconditionError("duplicate time-edge (" + std::to_string(e.u + 1) + "," +
                                    std::to_string(e.v + 1) + ")@" + std::to_string(e.t));
        if (edges_.empty() || edges_.back().u != e.u || edges_.back().v != e.v)
            edges_.push_back({e.u, e.v, {}});
        edges_.back().times.push_back(e.t);
        lifetime_ = std::max(lifetime_, e.t);
    }

    time_edges_ = std::move(time_edges);
    std::sort(time_edges_.begin(), time_edges_.end(), [](const TimeEdge& a, const TimeEdge& b) {
        return std::tie(a.t, a.u, a.v) < std::tie(b.t, b.u, b.v);
    });
    snapshot_begin_.assign(static_cast<std::size_t>(lifetime_) + 2, 0);
    for (const auto& e : time_edges_) ++snapshot_begin_[e.t + 1];
    for (std::size_t t = 1; t < snapshot_begin_.size(); ++t) snapshot_begin_[t] += snapshot_begin_[t - 1];

    inc_.assign(n, {});
    inc_edges_.assign(n, {});
    for (const auto& e : time_edges_) {
        inc_[e.u].emplace_back(e.t, e.v);
        inc_[e.v].emplace_back(e.t, e.u);
    }
    for (auto& l : inc_) std::sort(l.begin(), l.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        inc_edges_[edges_[i].u].push_back(i);
        inc_edges_[edges_[i].v].push_back(i);
    }
}

TemporalGraph TemporalGraph::from_assignment(const StaticGraph& h, std::span<const Time> times) {
    auto es = h.edges();
    if (es.size() != times.size()) throw PreconditionError("assignment length does not match edge count");
    std::vector<TimeEdge> te;
    te.reserve(es.size());
    for (std::size_t i = 0; i < es.size(); ++i) te.push_back({es[i].first, es[i].second, times[i]});
    return TemporalGraph(h.num_vertices(), std::move(te));
}

std::span<const TimeEdge> TemporalGraph::snapshot(Time t) const {
    if (t < 1 || t > lifetime_) return {};
    return std::span<const TimeEdge>(time_edges_.data() + snapshot_begin_[t],
                                     snapshot_begin_[t + 1] - snapshot_begin_[t]);
}

std::optional<std::size_t> TemporalGraph::edge_index(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                               [](const FootprintEdge& e, const std::pair<Vertex, Vertex>& k) {
                                   return std::pair{e.u, e.v} < k;
                               });
    if (it == edges_.end() || it->u != u || it->v != v) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

StaticGraph TemporalGraph::footprint() const {
    StaticGraph h(n_);
    for (const auto& e : edges_) h.add_edge(e.u, e.v);
    return h;
}

// ---- structural queries --------------------------------------------------

GraphClass classify(const TemporalGraph& g) {
    GraphClass c;
    for (const auto& e : g.edges())
        if (e.times.size() != 1) c.simple = false;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        const auto& inc = g.incidences(v);
        for (std::size_t i = 1; i < inc.size(); ++i)
            if (inc[i].first == inc[i - 1].first) c.proper = false;
    }
    c.happy = c.simple && c.proper;
    auto h = g.footprint();
    c.max_degree = h.max_degree();
    c.component_count = h.component_count();
    return c;
}

LocallyEarliest locally_earliest_edges(const TemporalGraph& g, bool weak) {
    // A time-edge is weakly locally earliest iff its time is the minimum incident
    // time at both endpoints; strictly iff it is also the only one there.
    const std::size_t n = g.num_vertices();
    std::vector<Time> first(n, 0);
    std::vector<std::size_t> ties(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        const auto& inc = g.incidences(v);
        if (inc.empty()) continue;
        first[v] = inc.front().first;
        for (const auto& [t, w] : inc) {
            if (t != first[v]) break;
            ++ties[v];
        }
    }
    LocallyEarliest out;
    for (const auto& e : g.time_edges()) {
        if (e.t != first[e.u] || e.t != first[e.v]) continue;
        if (!weak && (ties[e.u] != 1 || ties[e.v] != 1)) continue;
        out.time_edges.push_back(e);
        out.endpoints.push_back(e.u);
        out.endpoints.push_back(e.v);
    }
    std::sort(out.endpoints.begin(), out.endpoints.end());
    out.endpoints.erase(std::unique(out.endpoints.begin(), out.endpoints.end()), out.endpoints.end());
    return out;
}

VertexSet normalize_set(std::span<const Vertex> s, std::size_t n) {
    VertexSet out(s.begin(), s.end());
    for (Vertex v : out)
        if (v >= n) throw PreconditionError("vertex " + std::to_string(v + 1) + " out of range");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- .tg I/O -------------------------------------------------------------

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line, const char* what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, std::string("expected non-negative integer for ") + what + ", got '" +
                                   std::string(tok) + "'");
    return value;
}

}  // namespace

TemporalGraph parse_temporal_graph(std::istream& in) {
    std::string raw;
    std::size_t lineno = 0;
    bool have_header = false;
    std::size_t n = 0, m = 0;
    std::vector<TimeEdge> edges;
    std::vector<std::size_t> edge_line;
    while (std::getline(in, raw)) {
        ++lineno;
        auto tok = split_ws(raw);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (have_header) throw ParseError(lineno, "duplicate header");
            if (tok.size() != 4 || tok[1] != "tg") throw ParseError(lineno, "header must be 'p tg <n> <m>'");
            n = parse_uint(tok[2], lineno, "n");
            m = parse_uint(tok[3], lineno, "m");
            if (n > std::numeric_limits<Vertex>::max()) throw ParseError(lineno, "n too large");
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(lineno, "time-edge before header");
        if (tok.size() != 3) throw ParseError(lineno, "time-edge line must be '<u> <v> <t>'");
        auto u = parse_uint(tok[0], lineno, "u");
        auto v = parse_uint(tok[1], lineno, "v");
        auto t = parse_uint(tok[2], lineno, "t");
        if (u < 1 || u > n || v < 1 || v > n) throw ParseError(lineno, "vertex index out of range [1," + std::to_string(n) + "]");
        if (u == v) throw ParseError(lineno, "self-loop on vertex " + std::to_string(u));
        if (t < 1) throw ParseError(lineno, "time must be >= 1");
        if (t > std::numeric_limits<Time>::max() - 2) throw ParseError(lineno, "time too large");
        if (edges.size() == m) throw ParseError(lineno, "more time-edges than declared in header");
        Vertex a = static_cast<Vertex>(std::min(u, v) - 1), b = static_cast<Vertex>(std::max(u, v) - 1);
        edges.push_back({a, b, static_cast<Time>(t)});
        edge_line.push_back(lineno);
    }
    if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "missing header 'p tg <n> <m>'");
    if (edges.size() != m)
        throw ParseError(lineno, "header declares " + std::to_string(m) + " time-edges, found " +
                                     std::to_string(edges.size()));

    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(edges[a], a) < std::tie(edges[b], b);
    });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (edges[order[i]] == edges[order[i - 1]])
            throw ParseError(edge_line[order[i]], "duplicate time-edge");
    return TemporalGraph(n, std::move(edges));
}

TemporalGraph parse_temporal_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_temporal_graph(in);
}

TemporalGraph read_temporal_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_temporal_graph(in);
}

std::string serialize(const TemporalGraph& g) {
    std::ostringstream out;
    out << "p tg " << g.num_vertices() << ' ' << g.num_time_edges() << '\n';
    for (const auto& e : g.edges())
        for (Time t : e.times) out << e.u + 1 << ' ' << e.v + 1 << ' ' << t << '\n';
    return out.str();
}

}  // namespace tardis
