#ifndef FFD_CANONICAL_HPP
#define FFD_CANONICAL_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace ffd {

/// Canonical byte encoding of a colored graph: vertex count, color-class
/// sizes and the sorted edge list of the canonically relabeled graph, all as
/// big-endian 32-bit integers. Equal certificates mean isomorphic graphs.
struct Certificate {
    std::vector<std::uint8_t> bytes;

    auto operator<=>(const Certificate&) const = default;
    bool operator==(const Certificate&) const = default;
};

namespace detail {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) noexcept {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ULL;
    return h ^ (h >> 29);
}

/// Ordered partition of the vertex set. Cells are contiguous ranges of
/// `lab`; a cell is named by the position where it starts.
struct Partition {
    std::vector<int> lab;       // position -> vertex
    std::vector<int> pos;       // vertex -> position
    std::vector<int> cell;      // position -> start of its cell
    std::vector<int> cell_end;  // start -> one past the end
    int cells = 0;

    bool discrete() const noexcept { return cells == static_cast<int>(lab.size()); }
};

class Canonizer {
public:
    explicit Canonizer(const ColoredGraph& g) : n_(g.vertex_count()) {
        std::vector<int> deg(n_, 0);
        for (auto [u, v] : g.edges) {
            ++deg[u];
            ++deg[v];
        }
        offset_.assign(n_ + 1, 0);
        for (int v = 0; v < n_; ++v) offset_[v + 1] = offset_[v] + deg[v];
        adj_.resize(offset_[n_]);
        std::vector<int> fill(offset_.begin(), offset_.end() - 1);
        for (auto [u, v] : g.edges) {
            adj_[fill[u]++] = v;
            adj_[fill[v]++] = u;
        }
        edges_ = g.edges;
        sizes_ = g.class_sizes();

        count_.assign(n_, 0);
        queued_.assign(n_, 0);
        hit_mark_.assign(n_, 0);

        root_.lab.resize(n_);
        std::iota(root_.lab.begin(), root_.lab.end(), 0);
        std::stable_sort(root_.lab.begin(), root_.lab.end(),
                         [&](int a, int b) { return g.colors[a] < g.colors[b]; });
        root_.pos.resize(n_);
        root_.cell.resize(n_);
        root_.cell_end.assign(n_, 0);
        for (int p = 0; p < n_; ++p) root_.pos[root_.lab[p]] = p;
        std::vector<int> starts;
        for (int p = 0; p < n_;) {
            int e = p;
            while (e < n_ && g.colors[root_.lab[e]] == g.colors[root_.lab[p]]) ++e;
            for (int q = p; q < e; ++q) root_.cell[q] = p;
            root_.cell_end[p] = e;
            starts.push_back(p);
            ++root_.cells;
            p = e;
        }
        root_inv_ = refine(root_, starts);
    }

    Certificate run() {
        if (n_ == 0) return encode({});
        cur_inv_.assign(1, root_inv_);
        std::vector<int> path;
        search(root_, 0, path);
        return encode(best_.code);
    }

private:
    struct Leaf {
        std::vector<int> lab;
        std::vector<std::uint64_t> inv;
        std::vector<std::uint32_t> code;
        std::vector<int> path;
    };

    /// Splits cells until the partition is equitable. Returns a hash of the
    /// refinement trace, which depends only on the ordered partition.
    std::uint64_t refine(Partition& p, const std::vector<int>& initial) {
        std::vector<int> queue(initial);
        for (int s : queue) queued_[s] = 1;
        std::uint64_t h = 0x51ed270b2f0c7e1dULL;
        std::vector<int> touched, hit;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int w = queue[head];
            queued_[w] = 0;
            const int w_end = p.cell_end[w];
            touched.clear();
            for (int q = w; q < w_end; ++q) {
                const int v = p.lab[q];
                for (int e = offset_[v]; e < offset_[v + 1]; ++e)
                    if (count_[adj_[e]]++ == 0) touched.push_back(adj_[e]);
            }
            hit.clear();
            for (int u : touched) {
                const int c = p.cell[p.pos[u]];
                if (!hit_mark_[c]) {
                    hit_mark_[c] = 1;
                    hit.push_back(c);
                }
            }
            std::sort(hit.begin(), hit.end());
            h = mix(h, static_cast<std::uint64_t>(w) << 32 | static_cast<std::uint32_t>(w_end - w));
            for (int c : hit) {
                hit_mark_[c] = 0;
                split(p, c, queue, h);
            }
            for (int u : touched) count_[u] = 0;
        }
        return mix(h, static_cast<std::uint64_t>(p.cells));
    }

    void split(Partition& p, int start, std::vector<int>& queue, std::uint64_t& h) {
        const int end = p.cell_end[start];
        auto first = p.lab.begin() + start;
        auto last = p.lab.begin() + end;
        std::sort(first, last, [&](int a, int b) { return count_[a] < count_[b]; });
        if (count_[p.lab[start]] == count_[p.lab[end - 1]]) {
            h = mix(h, static_cast<std::uint64_t>(start) << 32 | static_cast<std::uint32_t>(count_[p.lab[start]]));
            return;
        }
        const bool was_queued = queued_[start] != 0;
        int largest_start = start, largest_size = 0;
        std::vector<int> fragments;
        for (int s = start; s < end;) {
            int e = s;
            while (e < end && count_[p.lab[e]] == count_[p.lab[s]]) ++e;
            for (int q = s; q < e; ++q) {
                p.cell[q] = s;
                p.pos[p.lab[q]] = q;
            }
            p.cell_end[s] = e;
            h = mix(h, (static_cast<std::uint64_t>(s) << 40) ^ (static_cast<std::uint64_t>(e - s) << 20) ^
                           static_cast<std::uint64_t>(count_[p.lab[s]]));
            if (e - s > largest_size) {
                largest_size = e - s;
                largest_start = s;
            }
            fragments.push_back(s);
            s = e;
        }
        p.cells += static_cast<int>(fragments.size()) - 1;
        for (int s : fragments) {
            if (queued_[s]) continue;
            if (!was_queued && s == largest_start) continue;
            queued_[s] = 1;
            queue.push_back(s);
        }
    }

    void individualize(Partition& p, int v) {
        const int start = p.cell[p.pos[v]];
        const int end = p.cell_end[start];
        const int at = p.pos[v];
        std::swap(p.lab[start], p.lab[at]);
        p.pos[p.lab[at]] = at;
        p.pos[v] = start;
        p.cell_end[start] = start + 1;
        for (int q = start + 1; q < end; ++q) p.cell[q] = start + 1;
        p.cell_end[start + 1] = end;
        ++p.cells;
    }

    int target_cell(const Partition& p) const {
        int best = -1, best_size = n_ + 1;
        for (int s = 0; s < n_; s = p.cell_end[s]) {
            const int size = p.cell_end[s] - s;
            if (size > 1 && size < best_size) {
                best = s;
                best_size = size;
            }
        }
        return best;
    }

    std::vector<std::uint32_t> leaf_code(const Partition& p) const {
        std::vector<std::pair<int, int>> relabeled;
        relabeled.reserve(edges_.size());
        for (auto [u, v] : edges_) {
            const int a = p.pos[u], b = p.pos[v];
            relabeled.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(relabeled.begin(), relabeled.end());
        std::vector<std::uint32_t> code;
        code.reserve(2 * relabeled.size());
        for (auto [a, b] : relabeled) {
            code.push_back(static_cast<std::uint32_t>(a));
            code.push_back(static_cast<std::uint32_t>(b));
        }
        return code;
    }

    Certificate encode(const std::vector<std::uint32_t>& code) const {
        std::vector<std::uint32_t> words;
        words.push_back(static_cast<std::uint32_t>(n_));
        for (int s : sizes_) words.push_back(static_cast<std::uint32_t>(s));
        words.push_back(static_cast<std::uint32_t>(edges_.size()));
        words.insert(words.end(), code.begin(), code.end());
        Certificate c;
        c.bytes.reserve(4 * words.size());
        for (auto w : words)
            for (int shift = 24; shift >= 0; shift -= 8) c.bytes.push_back(static_cast<std::uint8_t>(w >> shift));
        return c;
    }

    /// Compares the current invariant sequence with the best leaf's, where a
    /// proper prefix counts as smaller.
    std::strong_ordering compare_to_best() const {
        return std::lexicographical_compare_three_way(cur_inv_.begin(), cur_inv_.end(), best_.inv.begin(),
                                                      best_.inv.end());
    }

    static int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
        std::size_t i = 0;
        while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
        return static_cast<int>(i);
    }

    /// Records the automorphism taking `other`'s leaf onto the current one and
    /// returns the level to resume at, or -1 when no backjump is justified.
    int automorphism(const Leaf& other, const Partition& p, const std::vector<int>& path) {
        std::vector<int> gamma(n_);
        for (int q = 0; q < n_; ++q) gamma[other.lab[q]] = p.lab[q];
        bool maps_path = other.path.size() == path.size();
        for (std::size_t i = 0; maps_path && i < path.size(); ++i) maps_path = gamma[other.path[i]] == path[i];
        generators_.push_back(std::move(gamma));
        return maps_path ? common_prefix(other.path, path) : -1;
    }

    int leaf(const Partition& p, int level, const std::vector<int>& path) {
        auto code = leaf_code(p);
        if (!have_best_) {
            first_ = {p.lab, cur_inv_, std::move(code), path};
            best_ = first_;
            have_best_ = true;
            return level;
        }
        if (cur_inv_ == first_.inv && code == first_.code) {
            const int back = automorphism(first_, p, path);
            if (back >= 0) return back;
        }
        const auto inv_cmp = compare_to_best();
        std::strong_ordering cmp = inv_cmp;
        if (inv_cmp == 0) cmp = std::lexicographical_compare_three_way(code.begin(), code.end(),
                                                                        best_.code.begin(), best_.code.end());
        if (cmp < 0) {
            best_ = {p.lab, cur_inv_, std::move(code), path};
        } else if (cmp == 0) {
            const int back = automorphism(best_, p, path);
            if (back >= 0) return back;
        }
        return level;
    }

    struct Orbits {
        std::vector<int> parent;
        std::size_t seen = 0;

        int find(int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        }
    };

    void update_orbits(Orbits& orb, const std::vector<int>& path) {
        for (; orb.seen < generators_.size(); ++orb.seen) {
            const auto& g = generators_[orb.seen];
            bool fixes = true;
            for (int v : path)
                if (g[v] != v) {
                    fixes = false;
                    break;
                }
            if (!fixes) continue;
            for (int v = 0; v < n_; ++v) {
                const int a = orb.find(v), b = orb.find(g[v]);
                if (a != b) orb.parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }

    int search(const Partition& p, int level, std::vector<int>& path) {
        if (p.discrete()) return leaf(p, level, path);
        const int start = target_cell(p);
        const std::vector<int> children(p.lab.begin() + start, p.lab.begin() + p.cell_end[start]);
        Orbits orb;
        orb.parent.resize(n_);
        std::iota(orb.parent.begin(), orb.parent.end(), 0);
        std::vector<int> explored;
        for (int w : children) {
            update_orbits(orb, path);
            const int root = orb.find(w);
            if (std::any_of(explored.begin(), explored.end(), [&](int e) { return orb.find(e) == root; }))
                continue;
            explored.push_back(w);

            Partition child = p;
            individualize(child, w);
            const std::uint64_t h = refine(child, {start});
            cur_inv_.resize(level + 1);
            cur_inv_.push_back(h);
            if (have_best_ && compare_to_best() > 0) continue;

            path.push_back(w);
            const int back = search(child, level + 1, path);
            path.pop_back();
            if (back < level) return back;
        }
        return level;
    }

    int n_;
    std::vector<int> offset_, adj_;
    std::vector<std::pair<int, int>> edges_;
    std::array<int, kColorCount> sizes_{};
    std::vector<int> count_;
    std::vector<char> queued_, hit_mark_;

    Partition root_;
    std::uint64_t root_inv_ = 0;
    std::vector<std::uint64_t> cur_inv_;
    Leaf first_, best_;
    bool have_best_ = false;
    std::vector<std::vector<int>> generators_;
};

} // namespace detail

inline Certificate canonical_certificate(const ColoredGraph& g) { return detail::Canonizer(g).run(); }

inline Certificate canonical_certificate(const RunMatrix& x) { return canonical_certificate(design_to_graph(x)); }

} // namespace ffd

#endif // FFD_CANONICAL_HPP
