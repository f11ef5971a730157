#pragma once

// Ground-truth rational simplicial homology for small explicit complexes.
// This is the slow, obviously-correct path used to verify the shell-face
// counting in core: enumerate the complex, build boundary matrices, compute
// exact ranks, read off reduced Betti numbers.

#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "core.hpp"
#include "rational.hpp"

namespace quotatope {

struct ExplicitComplex {
    int vertex_count = 0;
    std::vector<Face> faces;  // downward closed, no empty face
};

struct BettiProfile {
    std::map<int, long> reduced_betti;  // dimension -> rank, zero entries omitted

    bool operator==(const BettiProfile& o) const = default;
};

namespace detail {

constexpr int kMaxOracleVertices = 24;
constexpr std::size_t kMaxOracleFaces = std::size_t(1) << 22;

template <typename System>
void enumerate_faces(const System& sys, int next, Face& cur, Rational& sum,
                     std::vector<Face>& out);

// Scalar case walks sorted index prefixes and prunes on the running weight;
// every face is reached through its chain of prefixes.
inline void enumerate_scalar(const ScalarQuotaSystem& sys, int next, Face& cur, Rational& sum,
                             std::vector<Face>& out) {
    const int n = static_cast<int>(sys.weights.size());
    for (int i = next; i < n; ++i) {
        Rational s2 = sum + sys.weights[i];
        if (s2 >= sys.quota) continue;
        cur.v.push_back(i);
        if (out.size() >= kMaxOracleFaces) throw capacity_error("explicit complex too large");
        out.push_back(cur);
        enumerate_scalar(sys, i + 1, cur, s2, out);
        cur.v.pop_back();
    }
}

struct int_overflow {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw int_overflow{};
    return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw int_overflow{};
    return r;
}

inline std::int64_t abs_gcd(std::int64_t a, std::int64_t b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}
inline BigInt abs_gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }

// Exact rank of a sparse integer matrix by column reduction: repeatedly cancel
// each column's lowest nonzero row against the recorded pivot column for that
// row (integer cross-multiplication, then content normalization so entries
// stay small).  Columns are sorted (row, coeff) lists.
template <typename Z>
long sparse_rank(std::vector<std::vector<std::pair<int, Z>>> cols) {
    std::unordered_map<int, std::vector<std::pair<int, Z>>> pivot_at_row;
    long rank = 0;
    for (auto& col : cols) {
        while (!col.empty()) {
            int low = col.back().first;
            auto it = pivot_at_row.find(low);
            if (it == pivot_at_row.end()) {
                pivot_at_row.emplace(low, std::move(col));
                ++rank;
                break;
            }
            const auto& piv = it->second;
            Z a = col.back().second, b = piv.back().second;
            Z g = abs_gcd(a, b);
            Z ca = b / g, cb = a / g;  // ca*col - cb*piv kills row `low`
            std::vector<std::pair<int, Z>> merged;
            merged.reserve(col.size() + piv.size());
            std::size_t i = 0, j = 0;
            while (i < col.size() || j < piv.size()) {
                if (j == piv.size() || (i < col.size() && col[i].first < piv[j].first)) {
                    merged.emplace_back(col[i].first, checked_mul(ca, col[i].second));
                    ++i;
                } else if (i == col.size() || piv[j].first < col[i].first) {
                    merged.emplace_back(piv[j].first, checked_mul(Z(0) - cb, piv[j].second));
                    ++j;
                } else {
                    Z v = checked_sub(checked_mul(ca, col[i].second),
                                      checked_mul(cb, piv[j].second));
                    if (v != 0) merged.emplace_back(col[i].first, v);
                    ++i, ++j;
                }
            }
            Z content = 0;
            for (const auto& [r, v] : merged) content = abs_gcd(content, v);
            if (content > 1)
                for (auto& [r, v] : merged) v = v / content;
            col = std::move(merged);
        }
    }
    return rank;
}

}  // namespace detail

inline ExplicitComplex enumerate_complex(const ScalarQuotaSystem& sys) {
    detail::check_system(sys);
    if (sys.weights.size() > detail::kMaxOracleVertices)
        throw capacity_error("too many vertices for exhaustive enumeration");
    ExplicitComplex c;
    c.vertex_count = static_cast<int>(sys.weights.size());
    Face cur;
    Rational zero(0);
    detail::enumerate_scalar(sys, 0, cur, zero, c.faces);
    return c;
}

// Vector complexes are the union of their coordinate scalar complexes.
inline ExplicitComplex enumerate_complex(const VectorQuotaSystem& sys) {
    const int n = static_cast<int>(sys.weights.size());
    if (n > detail::kMaxOracleVertices)
        throw capacity_error("too many vertices for exhaustive enumeration");
    ExplicitComplex c;
    c.vertex_count = n;
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
        Face f;
        for (int i = 0; i < n; ++i)
            if (mask & (std::uint32_t(1) << i)) f.v.push_back(i);
        if (is_face(sys, f)) c.faces.push_back(std::move(f));
    }
    return c;
}

inline BigInt euler_characteristic(const ExplicitComplex& c) {
    BigInt chi = 0;
    for (const auto& f : c.faces) chi += (f.dim() % 2 == 0) ? 1 : -1;
    return chi;
}

// Reduced rational Betti numbers via exact ranks of the augmented boundary
// matrices: b_j = c_j - rank d_j - rank d_{j+1}.
inline BettiProfile betti_numbers(const ExplicitComplex& c) {
    if (c.faces.empty()) throw input_error("empty complex has no Betti profile");
    if (c.vertex_count > detail::kMaxOracleVertices)
        throw capacity_error("too many vertices for the homology oracle");

    int max_dim = 0;
    for (const auto& f : c.faces) max_dim = std::max(max_dim, f.dim());

    // bitmask encoding per dimension, with positions for boundary lookups
    std::vector<std::vector<std::uint32_t>> masks(max_dim + 1);
    for (const auto& f : c.faces) {
        std::uint32_t m = 0;
        for (int idx : f.v) m |= std::uint32_t(1) << idx;
        masks[f.dim()].push_back(m);
    }
    std::vector<std::unordered_map<std::uint32_t, int>> index(max_dim + 1);
    for (int d = 0; d <= max_dim; ++d) {
        auto& level = masks[d];
        std::sort(level.begin(), level.end());
        if (std::adjacent_find(level.begin(), level.end()) != level.end())
            throw input_error("duplicate face");
        for (int i = 0; i < static_cast<int>(level.size()); ++i) index[d].emplace(level[i], i);
    }

    // rank of the augmentation: 1 whenever there is a vertex
    std::vector<long> ranks(max_dim + 2, 0);
    ranks[0] = masks[0].empty() ? 0 : 1;

    for (int d = 1; d <= max_dim; ++d) {
        std::vector<std::vector<std::pair<int, std::int64_t>>> cols;
        cols.reserve(masks[d].size());
        for (std::uint32_t m : masks[d]) {
            std::vector<std::pair<int, std::int64_t>> col;
            int sign = 1, k = 0;
            for (std::uint32_t rest = m; rest; rest &= rest - 1, ++k) {
                std::uint32_t bit = rest & (0u - rest);
                auto it = index[d - 1].find(m ^ bit);
                if (it == index[d - 1].end())
                    throw input_error("complex is not downward closed");
                col.emplace_back(it->second, sign);
                sign = -sign;
            }
            std::sort(col.begin(), col.end());
            cols.push_back(std::move(col));
        }
        try {
            ranks[d] = detail::sparse_rank<std::int64_t>(cols);
        } catch (const detail::int_overflow&) {
            std::vector<std::vector<std::pair<int, BigInt>>> wide;
            wide.reserve(cols.size());
            for (auto& col : cols) {
                std::vector<std::pair<int, BigInt>> w;
                for (auto& [r, v] : col) w.emplace_back(r, BigInt(v));
                wide.push_back(std::move(w));
            }
            ranks[d] = detail::sparse_rank<BigInt>(std::move(wide));
        }
    }

    BettiProfile out;
    for (int d = 0; d <= max_dim; ++d) {
        long b = static_cast<long>(masks[d].size()) - ranks[d] - ranks[d + 1];
        if (b < 0) throw numeric_error("negative Betti rank: oracle bug");
        if (b > 0) out.reduced_betti[d] = b;
    }
    return out;
}

// Convenience equality between the fast signature and the slow profile.
inline bool agrees(const BouquetSignature& sig, const BettiProfile& betti) {
    if (sig.empty_complex) return false;
    std::map<int, BigInt> b;
    for (const auto& [d, r] : betti.reduced_betti) b[d] = r;
    return sig.sphere_counts == b;
}

}  // namespace quotatope
