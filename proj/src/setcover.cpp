#include "tardis/setcover.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace tardis {

std::optional<std::vector<std::size_t>> greedy_set_cover(const std::vector<Bitset>& sets, std::size_t universe) {
    Bitset covered(universe);
    std::vector<std::size_t> chosen;
    while (!covered.all()) {
        std::size_t best = sets.size(), gain = 0;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            std::size_t g = (sets[i] - covered).count();
            if (g > gain) {
                gain = g;
                best = i;
            }
        }
        if (best == sets.size()) return std::nullopt;
        covered |= sets[best];
        chosen.push_back(best);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

namespace {

class Search {
public:
    Search(std::vector<Bitset> sets, std::size_t universe) : sets_(std::move(sets)), n_(universe) {
        cols_.assign(n_, Bitset(sets_.size()));
        for (std::size_t s = 0; s < sets_.size(); ++s)
            for (auto e = sets_[s].find_first(); e != Bitset::npos; e = sets_[s].find_next(e)) cols_[e].set(s);
    }

    void run(std::vector<std::size_t> upper) {
        best_ = std::move(upper);
        Bitset covered(n_);
        Bitset allowed(sets_.size());
        allowed.set();
        std::vector<std::size_t> chosen;
        recurse(covered, allowed, chosen);
    }

    const std::vector<std::size_t>& best() const { return best_; }

private:
    void recurse(const Bitset& covered, Bitset allowed, std::vector<std::size_t>& chosen) {
        if (covered.all()) {
            if (chosen.size() < best_.size()) best_ = chosen;
            return;
        }
        if (chosen.size() + 1 >= best_.size()) return;

        // Uncovered elements sorted by how many allowed sets still cover them.
        std::vector<std::pair<std::size_t, std::size_t>> elems;
        for (std::size_t e = 0; e < n_; ++e) {
            if (covered.test(e)) continue;
            std::size_t c = (cols_[e] & allowed).count();
            if (c == 0) return;
            elems.emplace_back(c, e);
        }
        std::sort(elems.begin(), elems.end());

        if (chosen.size() + lower_bound(elems, allowed) >= best_.size()) return;

        const std::size_t pivot = elems.front().second;
        Bitset branch = cols_[pivot] & allowed;
        for (auto s = branch.find_first(); s != Bitset::npos; s = branch.find_next(s)) {
            chosen.push_back(s);
            recurse(covered | sets_[s], allowed, chosen);
            chosen.pop_back();
            allowed.reset(s);
            if (chosen.size() + 1 >= best_.size()) return;
        }
    }

    // Disjoint families of sets, each charged the exact number of its sets
    // needed for the elements only it can cover. A family starts from the
    // candidates of one element and absorbs elements adding few new sets.
    std::size_t lower_bound(const std::vector<std::pair<std::size_t, std::size_t>>& elems, const Bitset& allowed) {
        const std::size_t k = elems.size();
        std::vector<Bitset> cand(k);
        for (std::size_t i = 0; i < k; ++i) cand[i] = cols_[elems[i].second] & allowed;
        std::vector<char> claimed(k, 0);
        Bitset used(sets_.size());
        std::size_t simple = 0, lb = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (!cand[i].intersects(used)) {
                ++simple;
                used |= cand[i];
            }
        used.reset();
        for (std::size_t i = 0; i < k; ++i) {
            if (claimed[i] || cand[i].intersects(used)) continue;
            Bitset fam = cand[i];
            for (;;) {
                std::size_t pick = k, extra = kFamilyCap + 1;
                const std::size_t size = fam.count();
                for (std::size_t j = 0; j < k; ++j) {
                    if (claimed[j] || !cand[j].intersects(fam) || cand[j].intersects(used) || cand[j].is_subset_of(fam))
                        continue;
                    std::size_t x = (cand[j] - fam).count();
                    if (x < extra) {
                        extra = x;
                        pick = j;
                    }
                }
                if (pick == k || size + extra > kFamilyCap) break;
                fam |= cand[pick];
            }
            std::vector<std::size_t> group;
            for (std::size_t j = 0; j < k; ++j)
                if (!claimed[j] && cand[j].is_subset_of(fam)) {
                    group.push_back(j);
                    claimed[j] = 1;
                }
            lb += local_cover(group, cand, fam);
            used |= fam;
        }
        return std::max(simple, lb);
    }

    // Smallest number of sets from `fam` covering `group`, capped at kLocalDepth.
    std::size_t local_cover(const std::vector<std::size_t>& group, const std::vector<Bitset>& cand, const Bitset& fam) {
        std::vector<std::size_t> members;
        for (auto s = fam.find_first(); s != Bitset::npos; s = fam.find_next(s)) members.push_back(s);
        // rows[g]: members covering group element g.
        std::vector<std::uint64_t> rows(group.size(), 0);
        if (members.size() > 64) return 1;
        for (std::size_t g = 0; g < group.size(); ++g)
            for (std::size_t m = 0; m < members.size(); ++m)
                if (cand[group[g]].test(members[m])) rows[g] |= std::uint64_t{1} << m;
        auto covers = [&](auto&& self, std::vector<char>& done, std::size_t d) -> bool {
            std::size_t g = 0;
            while (g < rows.size() && done[g]) ++g;
            if (g == rows.size()) return true;
            if (d == 0) return false;
            for (std::uint64_t r = rows[g]; r; r &= r - 1) {
                const std::uint64_t bit = r & -r;
                std::vector<char> next = done;
                for (std::size_t h = 0; h < rows.size(); ++h)
                    if (rows[h] & bit) next[h] = 1;
                if (self(self, next, d - 1)) return true;
            }
            return false;
        };
        std::vector<char> done(rows.size(), 0);
        for (std::size_t d = 1; d < kLocalDepth; ++d)
            if (covers(covers, done, d)) return d;
        return kLocalDepth;
    }

    static constexpr std::size_t kFamilyCap = 12;
    static constexpr std::size_t kLocalDepth = 4;

    std::vector<Bitset> sets_;
    std::size_t n_;
    std::vector<Bitset> cols_;
    std::vector<std::size_t> best_;
};

}  // namespace

std::optional<std::vector<std::size_t>> min_set_cover(const std::vector<Bitset>& sets, std::size_t universe) {
    if (universe == 0) return std::vector<std::size_t>{};
    Bitset all(universe);
    for (const auto& s : sets) all |= s;
    if (!all.all()) return std::nullopt;

    // Decreasing size, then index. Sets contained in an earlier one are dropped.
    std::vector<std::size_t> order(sets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sets[a].count() > sets[b].count(); });
    std::vector<std::size_t> kept;
    for (std::size_t i : order) {
        bool dominated = false;
        for (std::size_t j : kept)
            if (sets[i].is_subset_of(sets[j])) {
                dominated = true;
                break;
            }
        if (!dominated) kept.push_back(i);
    }
    std::vector<Bitset> reduced;
    reduced.reserve(kept.size());
    for (std::size_t i : kept) reduced.push_back(sets[i]);

    auto greedy = greedy_set_cover(reduced, universe);
    Search search(std::move(reduced), universe);
    search.run(*greedy);

    std::vector<std::size_t> out;
    for (std::size_t s : search.best()) out.push_back(kept[s]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tardis
