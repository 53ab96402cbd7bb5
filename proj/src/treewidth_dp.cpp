#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <unordered_map>

#include "tardis/reach.hpp"
#include "tardis/treewidth.hpp"

namespace tardis {

double dp_state_estimate(Time tau, long width) {
    return std::pow(static_cast<double>(tau) + 2.0, 2.0 * static_cast<double>(width + 1));
}

double dp_state_budget() {
    if (const char* env = std::getenv("TARDIS_BUDGET_STATES")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return kDefaultStateBudget;
}

namespace {

// Per bag position: arrival, block id, anchored flag of that block.
struct Work {
    std::vector<Time> t;
    std::vector<std::uint8_t> blk;
    std::vector<std::uint8_t> anc;
};

constexpr std::size_t kBytesPerVertex = 6;

std::string encode(const Work& w) {
    std::string key(w.t.size() * kBytesPerVertex, '\0');
    for (std::size_t i = 0; i < w.t.size(); ++i) {
        char* p = key.data() + i * kBytesPerVertex;
        for (int b = 0; b < 4; ++b) p[b] = static_cast<char>((w.t[i] >> (8 * (3 - b))) & 0xff);
        p[4] = static_cast<char>(w.blk[i]);
        p[5] = static_cast<char>(w.anc[i]);
    }
    return key;
}

Work decode(const std::string& key) {
    Work w;
    const std::size_t k = key.size() / kBytesPerVertex;
    w.t.resize(k);
    w.blk.resize(k);
    w.anc.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto* p = reinterpret_cast<const unsigned char*>(key.data() + i * kBytesPerVertex);
        w.t[i] = (Time{p[0]} << 24) | (Time{p[1]} << 16) | (Time{p[2]} << 8) | Time{p[3]};
        w.blk[i] = p[4];
        w.anc[i] = p[5];
    }
    return w;
}

std::string arrival_key(const std::string& key) {
    std::string out;
    for (std::size_t i = 0; i < key.size(); i += kBytesPerVertex) out.append(key, i, 4);
    return out;
}

struct UnionFind {
    explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
    std::vector<std::size_t> p;
};

// Relabels blocks by first occurrence after merging positions that share a
// representative in `uf`; anchored flags are OR-ed within each block.
void canonicalize(Work& w, UnionFind& uf) {
    const std::size_t k = w.t.size();
    std::vector<std::uint8_t> anc_root(k, 0);
    for (std::size_t i = 0; i < k; ++i) anc_root[uf.find(i)] |= w.anc[i];
    std::vector<int> label(k, -1);
    int next = 0;
    for (std::size_t i = 0; i < k; ++i) {
        auto r = uf.find(i);
        if (label[r] < 0) label[r] = next++;
        w.blk[i] = static_cast<std::uint8_t>(label[r]);
        w.anc[i] = anc_root[r];
    }
}

UnionFind blocks_of(const Work& w) {
    UnionFind uf(w.t.size());
    std::vector<int> first(w.t.size() + 1, -1);
    for (std::size_t i = 0; i < w.t.size(); ++i) {
        if (first[w.blk[i]] < 0) first[w.blk[i]] = static_cast<int>(i);
        else uf.unite(i, static_cast<std::size_t>(first[w.blk[i]]));
    }
    return uf;
}

struct Entry {
    std::size_t cost = 0;
    std::string a, b;  // child state keys (b only for joins)
};

using Table = std::unordered_map<std::string, Entry>;

void relax(Table& tab, std::string key, std::size_t cost, const std::string& a, const std::string& b = {}) {
    auto [it, fresh] = tab.try_emplace(std::move(key), Entry{cost, a, b});
    if (fresh) return;
    auto& e = it->second;
    if (cost < e.cost || (cost == e.cost && std::tie(a, b) < std::tie(e.a, e.b))) e = Entry{cost, a, b};
}

class Dp {
public:
    Dp(const TemporalGraph& g, Semantics sem, const NiceTreeDecomposition& ntd)
        : g_(g), strict_(sem == Semantics::Strict), ntd_(ntd), budget_(dp_state_budget()) {}

    std::vector<Table> run() {
        const auto& nodes = ntd_.nodes;
        std::vector<Table> tabs(nodes.size());
        for (std::size_t x : post_order()) {
            const auto& nd = nodes[x];
            switch (nd.kind) {
                case NodeKind::Leaf: tabs[x].emplace(std::string{}, Entry{}); break;
                case NodeKind::Introduce: introduce(nd, tabs[nd.children[0]], tabs[x]); break;
                case NodeKind::Forget: forget(nd, tabs[nd.children[0]], tabs[x]); break;
                case NodeKind::Join: join(nd, tabs[nd.children[0]], tabs[nd.children[1]], tabs[x]); break;
            }
            if (static_cast<double>(tabs[x].size()) > budget_)
                throw BudgetExceeded("DP table at node " + std::to_string(x) + " exceeds the state budget");
        }
        return tabs;
    }

    std::vector<std::size_t> post_order() const {
        std::vector<std::size_t> order, stack{ntd_.root};
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            order.push_back(x);
            for (std::size_t c : ntd_.nodes[x].children) stack.push_back(c);
        }
        std::reverse(order.begin(), order.end());
        return order;
    }

private:
    bool prec(Time a, Time t) const { return strict_ ? a < t : a <= t; }

    void introduce(const NiceNode& nd, const Table& child, Table& out) {
        const Vertex v = nd.vertex;
        const auto pos = static_cast<std::size_t>(std::lower_bound(nd.bag.begin(), nd.bag.end(), v) - nd.bag.begin());
        std::vector<std::pair<std::size_t, const std::vector<Time>*>> nbrs;
        for (std::size_t i = 0; i < nd.bag.size(); ++i) {
            if (i == pos) continue;
            if (auto e = g_.edge_index(v, nd.bag[i])) nbrs.emplace_back(i, &g_.edges()[*e].times);
        }
        for (const auto& [key, entry] : child) {
            const Work base = decode(key);
            for (Time tv = 0; tv <= g_.lifetime(); ++tv) {
                Work w = base;
                w.t.insert(w.t.begin() + static_cast<long>(pos), tv);
                w.blk.insert(w.blk.begin() + static_cast<long>(pos), static_cast<std::uint8_t>(nd.bag.size()));
                w.anc.insert(w.anc.begin() + static_cast<long>(pos), tv == 0 ? 1 : 0);
                UnionFind uf = blocks_of(w);
                bool ok = true;
                for (auto [i, times] : nbrs) {
                    const Time tu = w.t[i];
                    for (Time t : *times) {
                        // A path could arrive strictly before the claimed foremost time.
                        if ((prec(tu, t) && tv > t) || (prec(tv, t) && tu > t)) {
                            ok = false;
                            break;
                        }
                        if (prec(tu, t) && t == tv && tu < tv) w.anc[pos] = 1;
                        if (prec(tv, t) && t == tu && tv < tu) w.anc[i] = 1;
                        if (!strict_ && tu == tv && tv == t) uf.unite(i, pos);
                    }
                    if (!ok) break;
                }
                if (!ok) continue;
                canonicalize(w, uf);
                relax(out, encode(w), entry.cost + (tv == 0 ? 1 : 0), key);
            }
        }
    }

    void forget(const NiceNode& nd, const Table& child, Table& out) {
        const auto& cbag = ntd_.nodes[nd.children[0]].bag;
        const auto pos =
            static_cast<std::size_t>(std::lower_bound(cbag.begin(), cbag.end(), nd.vertex) - cbag.begin());
        for (const auto& [key, entry] : child) {
            Work w = decode(key);
            bool alone = true;
            for (std::size_t i = 0; i < w.t.size(); ++i)
                if (i != pos && w.blk[i] == w.blk[pos]) alone = false;
            if (alone && !w.anc[pos]) continue;
            w.t.erase(w.t.begin() + static_cast<long>(pos));
            w.blk.erase(w.blk.begin() + static_cast<long>(pos));
            w.anc.erase(w.anc.begin() + static_cast<long>(pos));
            UnionFind uf = blocks_of(w);
            canonicalize(w, uf);
            relax(out, encode(w), entry.cost, key);
        }
    }

    void join(const NiceNode&, const Table& left, const Table& right, Table& out) {
        std::unordered_map<std::string, std::vector<const std::pair<const std::string, Entry>*>> by_arrival;
        for (const auto& kv : right) by_arrival[arrival_key(kv.first)].push_back(&kv);
        for (const auto& [k1, e1] : left) {
            auto it = by_arrival.find(arrival_key(k1));
            if (it == by_arrival.end()) continue;
            const Work w1 = decode(k1);
            std::size_t zeros = 0;
            for (Time t : w1.t)
                if (t == 0) ++zeros;
            for (const auto* kv2 : it->second) {
                const Work w2 = decode(kv2->first);
                Work w = w1;
                UnionFind uf = blocks_of(w1);
                std::vector<int> first(w.t.size() + 1, -1);
                for (std::size_t i = 0; i < w.t.size(); ++i) {
                    w.anc[i] = w1.anc[i] | w2.anc[i];
                    if (first[w2.blk[i]] < 0) first[w2.blk[i]] = static_cast<int>(i);
                    else uf.unite(i, static_cast<std::size_t>(first[w2.blk[i]]));
                }
                canonicalize(w, uf);
                relax(out, encode(w), e1.cost + kv2->second.cost - zeros, k1, kv2->first);
            }
        }
    }

    const TemporalGraph& g_;
    bool strict_;
    const NiceTreeDecomposition& ntd_;
    double budget_;
};

DPState to_state(const std::string& key) {
    Work w = decode(key);
    DPState s;
    s.arrival = w.t;
    s.block = w.blk;
    std::uint8_t nb = 0;
    for (auto b : w.blk) nb = std::max<std::uint8_t>(nb, static_cast<std::uint8_t>(b + 1));
    s.anchored.assign(nb, 0);
    for (std::size_t i = 0; i < w.t.size(); ++i) s.anchored[w.blk[i]] = w.anc[i];
    return s;
}

void check_shape(const TemporalGraph& g, const NiceTreeDecomposition& ntd) {
    if (auto err = validate_nice(g.footprint(), ntd))
        throw PreconditionError("decomposition does not fit the graph: " + *err);
    const double est = dp_state_estimate(g.lifetime(), ntd.width());
    const double budget = dp_state_budget();
    if (est > budget)
        throw BudgetExceeded("DP state estimate (tau+2)^(2(w+1)) = " + std::to_string(static_cast<long long>(est)) +
                             " for tau=" + std::to_string(g.lifetime()) + ", w=" + std::to_string(ntd.width()) +
                             " exceeds budget " + std::to_string(static_cast<long long>(budget)));
}

}  // namespace

SignatureTable dp_signature(const TemporalGraph& g, Semantics semantics, const NiceTreeDecomposition& ntd) {
    check_shape(g, ntd);
    Dp dp(g, semantics, ntd);
    auto tabs = dp.run();
    SignatureTable out;
    out.nodes.resize(tabs.size());
    for (std::size_t x = 0; x < tabs.size(); ++x) {
        std::map<std::string, std::size_t> sorted;
        for (const auto& [k, e] : tabs[x]) sorted.emplace(k, e.cost);
        for (const auto& [k, c] : sorted) out.nodes[x].emplace_back(to_state(k), c);
    }
    out.root_cost = tabs[ntd.root].at(std::string{}).cost;
    return out;
}

TardisResult min_tardis_treewidth(const TemporalGraph& g, Semantics semantics,
                                  const std::optional<NiceTreeDecomposition>& given) {
    NiceTreeDecomposition ntd;
    if (given) {
        ntd = *given;
    } else {
        auto h = g.footprint();
        ntd = make_nice(h, compute_tree_decomposition(h));
    }
    check_shape(g, ntd);
    Dp dp(g, semantics, ntd);
    auto tabs = dp.run();
    auto root = tabs[ntd.root].find(std::string{});
    if (root == tabs[ntd.root].end()) throw Error("DP found no TaRDiS");

    VertexSet w;
    std::vector<std::pair<std::size_t, std::string>> stack{{ntd.root, std::string{}}};
    while (!stack.empty()) {
        auto [x, key] = std::move(stack.back());
        stack.pop_back();
        const auto& nd = ntd.nodes[x];
        const Entry& e = tabs[x].at(key);
        if (nd.kind == NodeKind::Introduce) {
            auto pos = std::lower_bound(nd.bag.begin(), nd.bag.end(), nd.vertex) - nd.bag.begin();
            if (decode(key).t[static_cast<std::size_t>(pos)] == 0) w.push_back(nd.vertex);
        }
        if (nd.kind == NodeKind::Join) {
            stack.emplace_back(nd.children[0], e.a);
            stack.emplace_back(nd.children[1], e.b);
        } else if (nd.kind != NodeKind::Leaf) {
            stack.emplace_back(nd.children[0], e.a);
        }
    }
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    if (w.size() != root->second.cost) throw Error("DP witness size disagrees with its signature");
    return {w.size(), std::move(w), "treewidth", semantics};
}

}  // namespace tardis
