#include "tardis/tree.hpp"

#include <algorithm>
#include <limits>

#include "tardis/reach.hpp"

namespace tardis {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr Time kInf = std::numeric_limits<Time>::max() - 2;

struct Rooted {
    std::vector<Vertex> verts;  // component vertices in BFS order from the root
    std::vector<std::size_t> parent;
    std::vector<std::size_t> depth;
    std::vector<std::vector<Vertex>> children;
};

class TreeSolver {
public:
    TreeSolver(const TemporalGraph& g, Semantics sem)
        : g_(g), h_(g.footprint()), s_(sem == Semantics::Strict ? 1 : 0), sem_(sem) {
        lambda_.reserve(g.edges().size());
        for (const auto& e : g.edges()) lambda_.push_back(e.times);
    }

    VertexSet solve() {
        const std::size_t n = g_.num_vertices();
        if (!h_.is_forest()) throw PreconditionError("footprint is not a forest");
        marked_.assign(n, 0);
        auto id = h_.component_ids();
        std::vector<char> seen(n, 0);
        for (Vertex r = 0; r < n; ++r) {
            if (seen[id[r]]) continue;
            seen[id[r]] = 1;
            solve_component(root_at(r));
        }
        std::sort(S_.begin(), S_.end());
        S_.erase(std::unique(S_.begin(), S_.end()), S_.end());
        return S_;
    }

private:
    Rooted root_at(Vertex r) {
        const std::size_t n = g_.num_vertices();
        Rooted t;
        t.parent.assign(n, kNone);
        t.depth.assign(n, 0);
        t.children.assign(n, {});
        std::vector<char> vis(n, 0);
        t.verts.push_back(r);
        vis[r] = 1;
        for (std::size_t i = 0; i < t.verts.size(); ++i) {
            Vertex x = t.verts[i];
            for (Vertex y : h_.neighbours(x))
                if (!vis[y]) {
                    vis[y] = 1;
                    t.parent[y] = x;
                    t.depth[y] = t.depth[x] + 1;
                    t.children[x].push_back(y);
                    t.verts.push_back(y);
                }
        }
        return t;
    }

    TemporalGraph working_graph() const {
        std::vector<TimeEdge> te;
        for (std::size_t i = 0; i < lambda_.size(); ++i)
            for (Time t : lambda_[i]) te.push_back({g_.edges()[i].u, g_.edges()[i].v, t});
        return TemporalGraph(g_.num_vertices(), std::move(te));
    }

    std::vector<Time>& lam(Vertex a, Vertex b) { return lambda_[*g_.edge_index(a, b)]; }

    // Center of the unmarked part if it induces a star (or a single vertex).
    std::optional<Vertex> star_center(const Rooted& t) const {
        std::vector<Vertex> un;
        for (Vertex v : t.verts)
            if (!marked_[v]) un.push_back(v);
        if (un.empty()) return std::nullopt;
        if (un.size() == 1) return un[0];
        auto deg = [&](Vertex v) {
            std::size_t d = 0;
            for (Vertex y : h_.neighbours(v))
                if (!marked_[y]) ++d;
            return d;
        };
        // A star on k+1 vertices has a vertex of degree k and k leaves. For
        // K_{1,1} the shallower endpoint is taken as the center.
        std::optional<Vertex> center;
        for (Vertex v : un) {
            if (deg(v) != un.size() - 1) continue;
            if (!center || t.depth[v] < t.depth[*center]) center = v;
        }
        if (!center) return std::nullopt;
        for (Vertex v : un)
            if (v != *center && deg(v) != 1) return std::nullopt;
        return center;
    }

    void add_to_S(Vertex p) {
        S_.push_back(p);
        auto tab = foremost_arrivals(working_graph(), p, std::nullopt, sem_);
        for (Vertex v = 0; v < g_.num_vertices(); ++v)
            if (tab.reachable(v)) marked_[v] = 1;
    }

    void solve_component(const Rooted& t) {
        std::size_t budget = 0;
        for (Vertex v : t.verts)
            for (std::size_t e : g_.incident_edges(v)) budget += lambda_[e].size();
        budget += t.verts.size() + 1;

        for (;;) {
            bool all = std::all_of(t.verts.begin(), t.verts.end(), [&](Vertex v) { return marked_[v]; });
            if (all) return;
            if (auto c = star_center(t)) {
                add_to_S(*c);
                return;
            }
            std::size_t maxd = 0;
            for (Vertex v : t.verts)
                if (!marked_[v]) maxd = std::max(maxd, t.depth[v]);
            Vertex low = std::numeric_limits<Vertex>::max();
            for (Vertex v : t.verts)
                if (!marked_[v] && t.depth[v] == maxd) low = std::min(low, v);
            const Vertex p = static_cast<Vertex>(t.parent[low]);

            Vertex l = 0;
            Time best = kInf + 1;
            for (Vertex c : t.children[p])
                if (!marked_[c]) {
                    Time m = lam(p, c).back();
                    if (m < best || (m == best && c < l)) {
                        best = m;
                        l = c;
                    }
                }
            const std::size_t gp = t.parent[p];

            while (!marked_[l]) {
                if (budget-- == 0) throw Error("tree solver made no progress");
                const Time lmax_lp = lam(l, p).back();
                const Time lmin_pg = gp == kNone ? kInf : lam(p, static_cast<Vertex>(gp)).front();
                const Time lmax_pg = gp == kNone ? kInf : lam(p, static_cast<Vertex>(gp)).back();
                if (lmax_lp < lmin_pg + s_) {
                    add_to_S(p);
                } else if (lmax_lp >= lmax_pg + s_) {
                    marked_[p] = 0;
                    for (Vertex c : t.children[p]) marked_[c] = 1;
                } else {
                    lam(p, static_cast<Vertex>(gp)).pop_back();
                }
            }
        }
    }

    const TemporalGraph& g_;
    StaticGraph h_;
    Time s_;
    Semantics sem_;
    std::vector<std::vector<Time>> lambda_;
    std::vector<char> marked_;
    VertexSet S_;
};

}  // namespace

TardisResult min_tardis_tree(const TemporalGraph& g, Semantics semantics) {
    TreeSolver solver(g, semantics);
    auto w = solver.solve();
    return {w.size(), std::move(w), "tree", semantics};
}

}  // namespace tardis
