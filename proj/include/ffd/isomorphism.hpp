#ifndef FFD_ISOMORPHISM_HPP
#define FFD_ISOMORPHISM_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "canonical.hpp"
#include "design.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "run_matrix.hpp"
#include "wlp.hpp"

namespace ffd {

inline Certificate design_certificate(const Design& d) { return canonical_certificate(design_to_graph(design_matrix(d))); }

struct ReduceOptions {
    unsigned workers = 1;
};

struct ReduceResult {
    /// Indices into the candidate list, in output order.
    std::vector<std::size_t> representatives;
    /// Certificates of the representatives when one was computed
    /// (members of WLP cells holding more than one candidate).
    std::vector<std::optional<Certificate>> certificates;
    std::size_t certificates_computed = 0;
};

/// Minimal complete set of the candidates. Candidates are partitioned by
/// their type-m flattened WLP; singleton cells pass directly, larger cells
/// keep the first occurrence of each certificate. Output is sorted by
/// (WLP key, certificate). `wlps` may be empty, in which case it is computed.
inline ReduceResult reduce_indices(std::span<const Design> candidates, std::span<const WlpMatrix> wlps = {},
                                   ReduceOptions options = {}) {
    for (const auto& d : candidates)
        if (d.k() != candidates.front().k() || d.m() != candidates.front().m() || d.n() != candidates.front().n())
            throw ValidationError("reduce: candidates differ in (N, m, n)");
    std::vector<WlpMatrix> own;
    if (wlps.empty() && !candidates.empty()) {
        own.resize(candidates.size());
        parallel_for(candidates.size(), options.workers, [&](std::size_t i) { own[i] = wlp(candidates[i]); });
        wlps = own;
    }
    if (wlps.size() != candidates.size()) throw std::invalid_argument("reduce: WLP list size mismatch");

    std::map<std::vector<std::int64_t>, std::vector<std::size_t>> cells;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        cells[flatten(wlps[i], AberrationOrdering::TypeM)].push_back(i);

    std::vector<std::size_t> need;
    for (const auto& [key, members] : cells)
        if (members.size() > 1) need.insert(need.end(), members.begin(), members.end());
    std::vector<Certificate> certs(need.size());
    parallel_for(need.size(), options.workers, [&](std::size_t i) { certs[i] = design_certificate(candidates[need[i]]); });
    std::vector<std::optional<Certificate>> cert_of(candidates.size());
    for (std::size_t i = 0; i < need.size(); ++i) cert_of[need[i]] = std::move(certs[i]);

    ReduceResult result;
    result.certificates_computed = need.size();
    for (auto& [key, members] : cells) {
        if (members.size() == 1) {
            result.representatives.push_back(members.front());
            result.certificates.emplace_back();
            continue;
        }
        std::vector<std::size_t> kept;
        for (std::size_t i : members) {
            const bool dup = std::any_of(kept.begin(), kept.end(), [&](std::size_t j) { return *cert_of[j] == *cert_of[i]; });
            if (!dup) kept.push_back(i);
        }
        std::sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) { return *cert_of[a] < *cert_of[b]; });
        for (std::size_t i : kept) {
            result.representatives.push_back(i);
            result.certificates.push_back(cert_of[i]);
        }
    }
    return result;
}

inline std::vector<Design> reduce(std::span<const Design> candidates, ReduceOptions options = {}) {
    std::vector<Design> out;
    for (auto i : reduce_indices(candidates, {}, options).representatives) out.push_back(candidates[i]);
    return out;
}

inline constexpr std::size_t kOracleMaxRuns = 32;
inline constexpr int kOracleMaxFactors = 8;

namespace detail {

/// Exhaustive isomorphism search on run matrices: factors of the first
/// design are mapped one at a time onto unused factors of the same kind,
/// with every level permutation, and a branch survives only while the
/// projected row multisets agree.
class PairwiseSearch {
public:
    PairwiseSearch(const RunMatrix& a, const RunMatrix& b) : a_(a), b_(b) {
        m_ = a.four_level_count();
        n_ = a.two_level_count();
        std::array<int, 4> perm{0, 1, 2, 3};
        do perms4_.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));
        used4_.assign(m_, false);
        used2_.assign(n_, false);
        code_a_.assign(a.runs(), 0);
        code_b_.assign(b.runs(), 0);
    }

    bool run() { return step(0); }

private:
    bool rows_match() const {
        std::vector<std::uint64_t> x = code_a_, y = code_b_;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        return x == y;
    }

    bool step(int f) {
        if (f == m_ + n_) return true;
        const bool four = f < m_;
        const int src = four ? f : f - m_;
        const int radix = four ? 4 : 2;
        const auto saved_a = code_a_, saved_b = code_b_;
        for (int dst = 0; dst < (four ? m_ : n_); ++dst) {
            auto& used = four ? used4_ : used2_;
            if (used[dst]) continue;
            used[dst] = true;
            const int options = four ? 24 : 2;
            for (int o = 0; o < options; ++o) {
                for (std::size_t r = 0; r < a_.runs(); ++r) {
                    int la, lb;
                    if (four) {
                        la = perms4_[o][a_.four(r, src)];
                        lb = b_.four(r, dst);
                    } else {
                        la = ((a_.two(r, src) > 0) != (o == 1)) ? 1 : 0;
                        lb = b_.two(r, dst) > 0 ? 1 : 0;
                    }
                    code_a_[r] = saved_a[r] * radix + la;
                    code_b_[r] = saved_b[r] * radix + lb;
                }
                if (rows_match() && step(f + 1)) return true;
            }
            used[dst] = false;
        }
        code_a_ = saved_a;
        code_b_ = saved_b;
        return false;
    }

    const RunMatrix& a_;
    const RunMatrix& b_;
    int m_ = 0, n_ = 0;
    std::vector<std::array<int, 4>> perms4_;
    std::vector<bool> used4_, used2_;
    std::vector<std::uint64_t> code_a_, code_b_;
};

} // namespace detail

/// Decides isomorphism by testing every isomorphic map. Test-scale only:
/// refuses designs with more than 32 runs or 8 factors.
inline bool pairwise_oracle(const RunMatrix& a, const RunMatrix& b) {
    if (a.runs() != b.runs() || a.four_level_count() != b.four_level_count() ||
        a.two_level_count() != b.two_level_count())
        throw ValidationError("pairwise_oracle: designs differ in (N, m, n)");
    if (a.runs() > kOracleMaxRuns || a.four_level_count() + a.two_level_count() > kOracleMaxFactors)
        throw std::length_error("pairwise_oracle: size guard exceeded");
    return detail::PairwiseSearch(a, b).run();
}

inline bool pairwise_oracle(const Design& d1, const Design& d2) {
    if (d1.k() != d2.k()) throw ValidationError("pairwise_oracle: designs differ in (N, m, n)");
    return pairwise_oracle(design_matrix(d1), design_matrix(d2));
}

} // namespace ffd

#endif // FFD_ISOMORPHISM_HPP
