#pragma once

// Divisor quota complexes: the proper divisors of n, each weighted by itself,
// under quota n.  Deficient n give contractible complexes; perfect n give a
// single top-dimensional sphere; abundant n are settled by counting exact
// representations of n-1 as sums of distinct non-unit proper divisors.  The
// counting runs on whichever side is cheaper: the divisors kept in the face,
// or the excluded ones, which must sum to the excess sigma(n) - 2n.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "parallel.hpp"
#include "rational.hpp"

namespace quotatope {

enum class Classification { deficient, perfect, abundant };

inline std::string to_string(Classification c) {
    switch (c) {
        case Classification::deficient:
            return "deficient";
        case Classification::perfect:
            return "perfect";
        default:
            return "abundant";
    }
}

inline std::vector<long> proper_divisors(long n) {
    if (n < 2) throw input_error("divisor complexes need n >= 2");
    std::vector<long> lo, hi;
    for (long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) hi.push_back(n / d);
        }
    for (auto it = hi.rbegin(); it != hi.rend(); ++it) lo.push_back(*it);
    lo.pop_back();  // drop n itself (largest, so last after the merge)
    return lo;
}

struct DivisorProfile {
    long n = 0;
    long tau = 0;           // number of positive divisors of n
    long sigma_proper = 0;  // sum of proper divisors (n excluded, 1 included)
    Classification classification = Classification::deficient;
    BouquetSignature signature;
    std::optional<int> top_dim;        // empty when contractible
    std::optional<long> perfect_gap;   // tau - 3 - top_dim when non-contractible
};

namespace detail {

// Counts of subsets of `items` (distinct entries) with the exact target sum,
// keyed by subset size.  Sizes whose counts vanish are omitted.
inline std::map<int, BigInt> exact_rep_counts(std::vector<long> items, long target,
                                              std::size_t cell_budget = 8'000'000) {
    std::map<int, BigInt> out;
    if (target < 0) return out;
    std::sort(items.begin(), items.end());
    while (!items.empty() && items.back() > target) items.pop_back();
    if (target == 0) {
        out[0] = 1;
        return out;
    }
    // subsets larger than kmax cannot stay at or below the target
    int kmax = 0;
    long run = 0;
    for (long w : items) {
        if (run + w > target) break;
        run += w;
        ++kmax;
    }
    if (kmax == 0) return out;
    const std::size_t cells =
        static_cast<std::size_t>(kmax + 1) * static_cast<std::size_t>(target + 1);
    if (cells > cell_budget)
        throw capacity_error("representation table needs " + std::to_string(cells) +
                             " cells; budget is " + std::to_string(cell_budget));
    if (items.size() <= 64) {
        // counts are bounded by C(64, k) < 2^63: plain integers suffice
        std::vector<std::vector<std::uint64_t>> cnt(
            kmax + 1, std::vector<std::uint64_t>(target + 1, 0));
        cnt[0][0] = 1;
        int seen = 0;
        for (long w : items) {
            ++seen;
            for (int k = std::min(kmax, seen); k >= 1; --k)
                for (long s = target; s >= w; --s)
                    if (cnt[k - 1][s - w]) cnt[k][s] += cnt[k - 1][s - w];
        }
        for (int k = 1; k <= kmax; ++k)
            if (cnt[k][target]) out[k] = BigInt(static_cast<unsigned long>(cnt[k][target]));
    } else {
        std::vector<std::vector<BigInt>> cnt(kmax + 1, std::vector<BigInt>(target + 1));
        cnt[0][0] = 1;
        int seen = 0;
        for (long w : items) {
            ++seen;
            for (int k = std::min(kmax, seen); k >= 1; --k)
                for (long s = target; s >= w; --s)
                    if (cnt[k - 1][s - w] != 0) cnt[k][s] += cnt[k - 1][s - w];
        }
        for (int k = 1; k <= kmax; ++k)
            if (cnt[k][target] != 0) out[k] = cnt[k][target];
    }
    return out;
}

// Existence of a subset of `items` with the exact target sum (bitset sweep).
inline bool exact_rep_exists(const std::vector<long>& items, long target) {
    if (target < 0) return false;
    if (target == 0) return true;
    const long words = target / 64 + 1;
    std::vector<std::uint64_t> bits(words, 0);
    bits[0] = 1;
    for (long w : items) {
        if (w > target || w <= 0) continue;
        const long wq = w / 64;
        const int wr = static_cast<int>(w % 64);
        for (long i = words - 1; i >= wq; --i) {
            std::uint64_t v = bits[i - wq] << wr;
            if (wr && i - wq - 1 >= 0) v |= bits[i - wq - 1] >> (64 - wr);
            bits[i] |= v;
        }
    }
    return (bits[target / 64] >> (target % 64)) & 1;
}

// Representations of n-1 by distinct non-unit proper divisors, keyed by size.
// Runs the count on the cheaper of the two equivalent targets.
inline std::map<int, BigInt> shell_rep_counts(long n, const std::vector<long>& nonunit,
                                              long excess) {
    const long direct_target = n - 1;
    std::vector<long> small;
    for (long d : nonunit)
        if (d <= excess) small.push_back(d);
    const auto direct_cost = static_cast<unsigned long long>(nonunit.size() + 1) *
                             static_cast<unsigned long long>(direct_target + 1);
    const auto comp_cost = static_cast<unsigned long long>(small.size() + 1) *
                           static_cast<unsigned long long>(excess + 1);
    if (comp_cost < direct_cost) {
        auto c = exact_rep_counts(std::move(small), excess);
        std::map<int, BigInt> out;
        for (const auto& [k_out, cnt] : c) {
            int k = static_cast<int>(nonunit.size()) - k_out;
            if (k >= 1) out[k] = cnt;
        }
        return out;
    }
    return exact_rep_counts(nonunit, direct_target);
}

}  // namespace detail

inline DivisorProfile divisor_profile(long n) {
    DivisorProfile p;
    p.n = n;
    auto divs = proper_divisors(n);  // throws for n < 2
    p.tau = static_cast<long>(divs.size()) + 1;
    p.sigma_proper = 0;
    for (long d : divs) p.sigma_proper += d;
    const long excess = p.sigma_proper - n;
    p.classification = excess < 0   ? Classification::deficient
                       : excess == 0 ? Classification::perfect
                                     : Classification::abundant;
    p.signature.empty_complex = false;  // vertex 1 always has weight 1 < n

    if (p.classification == Classification::deficient) {
        // even the full non-unit set sums to sigma_proper - 1 < n - 1
        return p;
    }
    std::vector<long> nonunit(divs.begin() + 1, divs.end());
    if (p.classification == Classification::perfect) {
        // exactly one representation: the whole non-unit set
        p.signature.sphere_counts[static_cast<int>(nonunit.size()) - 1] = 1;
    } else {
        for (const auto& [k, cnt] : detail::shell_rep_counts(n, nonunit, excess))
            p.signature.sphere_counts[k - 1] = cnt;
    }
    if (!p.signature.sphere_counts.empty()) {
        p.top_dim = p.signature.sphere_counts.rbegin()->first;
        p.perfect_gap = p.tau - 3 - *p.top_dim;
    }
    return p;
}

namespace detail {

// sigma(m) for every m in [0, n_hi), by the divisor-accumulation sieve.
inline std::vector<long> sigma_sieve(long n_hi) {
    std::vector<long> sigma(std::max<long>(n_hi, 1), 0);
    for (long d = 1; d < n_hi; ++d)
        for (long m = d; m < n_hi; m += d) sigma[m] += d;
    return sigma;
}

}  // namespace detail

// Profiles of every n in [n_lo, n_hi) whose complex is non-contractible,
// ascending.  Intended for ranges up to a few times 10^4; use
// topologically_perfect for existence-only sweeps over large ranges.
inline std::vector<DivisorProfile> perfect_scan(long n_lo, long n_hi) {
    if (n_lo < 2) throw input_error("scan starts at n >= 2");
    if (n_hi <= n_lo) throw input_error("empty scan range");
    auto sigma = detail::sigma_sieve(n_hi);
    std::vector<long> candidates;
    for (long n = n_lo; n < n_hi; ++n)
        if (sigma[n] - n >= n) candidates.push_back(n);  // perfect or abundant
    std::vector<std::optional<DivisorProfile>> slots(candidates.size());
    parallel_for(candidates.size(), [&](std::size_t k) {
        long n = candidates[k];
        auto divs = proper_divisors(n);
        std::vector<long> nonunit(divs.begin() + 1, divs.end());
        long excess = sigma[n] - 2 * n;
        if (excess > 0) {
            // cheap existence test on the smaller of the two targets
            std::vector<long> small;
            for (long d : nonunit)
                if (d <= excess) small.push_back(d);
            bool hit = (excess <= n - 1) ? detail::exact_rep_exists(small, excess)
                                         : detail::exact_rep_exists(nonunit, n - 1);
            if (!hit) return;
        }
        slots[k] = divisor_profile(n);
    });
    std::vector<DivisorProfile> out;
    for (auto& s : slots)
        if (s) out.push_back(std::move(*s));
    return out;
}

// The n in [n_lo, n_hi) with non-contractible complexes, existence checks
// only.  odd_only restricts the sweep to odd n.
inline std::vector<long> topologically_perfect(long n_lo, long n_hi, bool odd_only = false) {
    if (n_lo < 2) throw input_error("scan starts at n >= 2");
    if (n_hi <= n_lo) throw input_error("empty scan range");
    auto sigma = detail::sigma_sieve(n_hi);
    std::vector<long> candidates;
    for (long n = n_lo; n < n_hi; ++n) {
        if (odd_only && n % 2 == 0) continue;
        if (sigma[n] - n >= n) candidates.push_back(n);
    }
    std::vector<std::uint8_t> hit(candidates.size(), 0);
    parallel_for(candidates.size(), [&](std::size_t k) {
        long n = candidates[k];
        long excess = sigma[n] - 2 * n;
        if (excess == 0) {
            hit[k] = 1;
            return;
        }
        auto divs = proper_divisors(n);
        std::vector<long> nonunit(divs.begin() + 1, divs.end());
        if (excess <= n - 1) {
            std::vector<long> small;
            for (long d : nonunit)
                if (d <= excess) small.push_back(d);
            hit[k] = detail::exact_rep_exists(small, excess);
        } else {
            hit[k] = detail::exact_rep_exists(nonunit, n - 1);
        }
    });
    std::vector<long> out;
    for (std::size_t k = 0; k < candidates.size(); ++k)
        if (hit[k]) out.push_back(candidates[k]);
    return out;
}

}  // namespace quotatope
