#pragma once

// Quota systems and their homotopy invariants.
//
// A scalar quota system is a list of positive weights w(v) and a quota q; the
// associated complex has a face for every vertex subset of total weight < q.
// Every nonempty scalar quota complex is homotopy equivalent to a bouquet of
// spheres with one j-sphere per "shell face": a (j+1)-subset F avoiding the
// minimal-weight vertex with q - w(v_min) <= w(F) < q.  bouquet_signature
// counts shell faces per dimension, which gives the reduced Betti numbers
// directly (the oracle module verifies this against actual simplicial
// homology).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rational.hpp"

namespace quotatope {

struct Face {
    std::vector<int> v;  // strictly increasing vertex indices

    Face() = default;
    explicit Face(std::vector<int> idx) : v(std::move(idx)) {}
    int dim() const { return static_cast<int>(v.size()) - 1; }
    bool operator==(const Face& o) const = default;
    bool operator<(const Face& o) const { return v < o.v; }
};

struct ScalarQuotaSystem {
    std::vector<Rational> weights;
    Rational quota;
};

struct VectorQuotaSystem {
    std::vector<std::vector<Rational>> weights;  // weights[v][i], common length s
    std::vector<Rational> quota;                 // length s

    int weight_dim() const { return static_cast<int>(quota.size()); }
};

// Sphere multiset describing the homotopy type of a nonempty scalar quota
// complex; empty_complex marks the below-threshold case (no vertices at all),
// which is not a bouquet of anything.
struct BouquetSignature {
    std::map<int, BigInt> sphere_counts;
    bool empty_complex = false;

    bool contractible() const { return !empty_complex && sphere_counts.empty(); }
    bool operator==(const BouquetSignature& o) const = default;
};

namespace detail {

inline void check_face(const Face& f, std::size_t n) {
    int prev = -1;
    for (int idx : f.v) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= n)
            throw input_error("face index out of range");
        if (idx <= prev) throw input_error("face indices must be strictly increasing");
        prev = idx;
    }
}

inline void check_system(const ScalarQuotaSystem& sys) {
    if (sys.weights.empty()) throw input_error("quota system has no vertices");
    for (const auto& w : sys.weights)
        if (w <= 0) throw input_error("weights must be positive");
    if (sys.quota <= 0) throw input_error("quota must be positive");
}

}  // namespace detail

// Index of the minimal-weight vertex; ties broken by smallest index.  The
// bouquet theorem holds for any tied choice and the test suite checks that the
// signature is the same under all of them.
inline int min_vertex(const ScalarQuotaSystem& sys) {
    detail::check_system(sys);
    int best = 0;
    for (int i = 1; i < static_cast<int>(sys.weights.size()); ++i)
        if (sys.weights[i] < sys.weights[best]) best = i;
    return best;
}

inline Rational face_weight(const ScalarQuotaSystem& sys, const Face& f) {
    detail::check_face(f, sys.weights.size());
    Rational sum = 0;
    for (int idx : f.v) sum += sys.weights[idx];
    return sum;
}

inline bool is_face(const ScalarQuotaSystem& sys, const Face& f) {
    return face_weight(sys, f) < sys.quota;  // strict by definition
}

// Vector systems: a subset is a face when it passes the quota in at least one
// coordinate.
inline bool is_face(const VectorQuotaSystem& sys, const Face& f) {
    detail::check_face(f, sys.weights.size());
    for (int j = 0; j < sys.weight_dim(); ++j) {
        Rational sum = 0;
        for (int idx : f.v) sum += sys.weights[idx][j];
        if (sum < sys.quota[j]) return true;
    }
    return false;
}

inline bool is_shell_face(const ScalarQuotaSystem& sys, const Face& f, int vmin = -1) {
    if (vmin < 0) vmin = min_vertex(sys);
    for (int idx : f.v)
        if (idx == vmin) return false;
    Rational w = face_weight(sys, f);
    return sys.quota - sys.weights[vmin] <= w && w < sys.quota;
}

namespace detail {

// Counting route 1: integer subset-sum DP over (cardinality, scaled sum).
// Exact for any rational system once scaled to integer weights; used when the
// scaled quota is small enough to index an array.
inline bool try_bouquet_dp(const std::vector<Rational>& others, const Rational& lo,
                           const Rational& hi, std::map<int, BigInt>& out) {
    BigInt den = 1;
    for (const auto& w : others) den = lcm(den, w.get_den());
    den = lcm(den, lo.get_den());
    den = lcm(den, hi.get_den());

    BigInt cap_big = ceil_of(Rational(hi * den));  // sums >= cap are never faces
    if (!cap_big.fits_slong_p()) return false;
    long cap = cap_big.get_si();
    long n = static_cast<long>(others.size());
    if (cap < 0) return false;
    if (cap > 1'000'000 || n * cap > 4'000'000) return false;

    std::vector<long> w(n);
    for (long i = 0; i < n; ++i) {
        Rational scaled = others[i] * den;
        w[i] = to_long(scaled.get_num());  // den divides out exactly
    }
    // window of shell sums: integers s with lo*den <= s < hi*den
    long win_lo = to_long(ceil_of(Rational(lo * den)));
    long win_hi = cap - 1;  // largest integer < hi*den, whether or not hi*den is integral
    if (win_lo < 0) win_lo = 0;
    if (win_lo > win_hi) {
        return true;  // no shell faces
    }

    // counts[c*cap + s] = number of c-subsets with scaled sum s (< cap)
    std::vector<BigInt> counts(static_cast<std::size_t>(n + 1) * cap);
    counts[0] = 1;
    for (long i = 0; i < n; ++i) {
        long wi = w[i];
        if (wi >= cap) continue;  // can never participate in a face
        for (long c = std::min(i, n - 1); c >= 0; --c) {
            BigInt* src = counts.data() + static_cast<std::size_t>(c) * cap;
            BigInt* dst = counts.data() + static_cast<std::size_t>(c + 1) * cap;
            for (long s = cap - 1 - wi; s >= 0; --s)
                if (src[s] != 0) dst[s + wi] += src[s];
        }
    }
    for (long c = 1; c <= n; ++c) {
        BigInt total = 0;
        const BigInt* row = counts.data() + static_cast<std::size_t>(c) * cap;
        for (long s = win_lo; s <= win_hi; ++s) total += row[s];
        if (total != 0) out[static_cast<int>(c) - 1] += total;
    }
    return true;
}

// Counting route 2: branch-and-bound subset walk, exact rationals.  Handles
// irrational-free but huge-denominator weights (e.g. sampled doubles) where
// scaling is impossible; practical up to ~28 vertices.
inline void bouquet_dfs(const std::vector<Rational>& w, const std::vector<Rational>& suffix,
                        std::size_t i, const Rational& sum, int card, const Rational& lo,
                        const Rational& hi, std::map<int, BigInt>& out) {
    // invariant on entry: sum < hi, and the current subset is already counted
    if (sum + suffix[i] < lo) return;  // window unreachable even taking the rest
    if (i == w.size()) return;
    Rational with = sum + w[i];
    if (with < hi) {  // supersets of an over-quota set only grow
        if (with >= lo) ++out[card];  // count each subset once, when completed
        bouquet_dfs(w, suffix, i + 1, with, card + 1, lo, hi, out);
    }
    bouquet_dfs(w, suffix, i + 1, sum, card, lo, hi, out);
}

}  // namespace detail

// Reduced Betti numbers of the scalar quota complex, as sphere counts per
// dimension.  Counts are exact and may be astronomically large, hence BigInt.
inline BouquetSignature bouquet_signature(const ScalarQuotaSystem& sys, int vmin = -1) {
    detail::check_system(sys);
    if (vmin < 0) {
        vmin = min_vertex(sys);
    } else {
        if (vmin >= static_cast<int>(sys.weights.size()))
            throw input_error("min-vertex index out of range");
        if (sys.weights[vmin] != sys.weights[min_vertex(sys)])
            throw input_error("designated min vertex does not have minimal weight");
    }

    BouquetSignature sig;
    if (sys.weights[vmin] >= sys.quota) {  // no vertex passes the quota
        sig.empty_complex = true;
        return sig;
    }

    std::vector<Rational> others;
    others.reserve(sys.weights.size() - 1);
    for (int i = 0; i < static_cast<int>(sys.weights.size()); ++i)
        if (i != vmin) others.push_back(sys.weights[i]);

    Rational lo = sys.quota - sys.weights[vmin];
    const Rational& hi = sys.quota;

    if (detail::try_bouquet_dp(others, lo, hi, sig.sphere_counts)) return sig;

    if (others.size() > 28)
        throw capacity_error("quota system too large for exact shell-face enumeration");
    std::sort(others.begin(), others.end(), std::greater<Rational>());
    std::vector<Rational> suffix(others.size() + 1, Rational(0));
    for (std::size_t i = others.size(); i-- > 0;) suffix[i] = suffix[i + 1] + others[i];
    detail::bouquet_dfs(others, suffix, 0, Rational(0), 0, lo, hi, sig.sphere_counts);
    return sig;
}

// chi of the complex: 1 for the base point plus (-1)^j per j-sphere; 0 for the
// empty complex.  Equals the alternating face-count sum (checked in tests).
inline BigInt euler_characteristic(const BouquetSignature& sig) {
    if (sig.empty_complex) return 0;
    BigInt chi = 1;
    for (const auto& [dim, count] : sig.sphere_counts) {
        if (dim % 2 == 0)
            chi += count;
        else
            chi -= count;
    }
    return chi;
}

inline BigInt euler_characteristic(const ScalarQuotaSystem& sys) {
    return euler_characteristic(bouquet_signature(sys));
}

// Vertices that are shell faces of some coordinate subcomplex.  The default
// window closes on the left (q - w(v_min) <= w(v) < q); strict = true selects
// the open-left variant.
inline std::vector<int> shell_vertices(const VectorQuotaSystem& sys, bool strict = false) {
    const int s = sys.weight_dim();
    const int n = static_cast<int>(sys.weights.size());
    if (s < 1) throw input_error("weight dimension must be >= 1");
    for (const auto& wv : sys.weights)
        if (static_cast<int>(wv.size()) != s)
            throw input_error("weight vectors must all have the quota's length");

    std::vector<int> result;
    for (int v = 0; v < n; ++v) {
        bool shell = false;
        for (int j = 0; j < s && !shell; ++j) {
            int vmin = 0;
            for (int i = 1; i < n; ++i)
                if (sys.weights[i][j] < sys.weights[vmin][j]) vmin = i;
            if (v == vmin) continue;
            const Rational& w = sys.weights[v][j];
            Rational left = sys.quota[j] - sys.weights[vmin][j];
            bool left_ok = strict ? (left < w) : (left <= w);
            shell = left_ok && w < sys.quota[j];
        }
        if (shell) result.push_back(v);
    }
    return result;
}

// Upper bound 2N-1 on the Lusternik-Schnirelmann category (N = weight
// dimension), valid only when the system has no shell vertices.
inline std::optional<int> category_upper_bound(const VectorQuotaSystem& sys, bool strict = false) {
    if (!shell_vertices(sys, strict).empty()) return std::nullopt;
    return 2 * sys.weight_dim() - 1;
}

inline VectorQuotaSystem as_vector_system(const ScalarQuotaSystem& sys) {
    VectorQuotaSystem v;
    v.quota = {sys.quota};
    for (const auto& w : sys.weights) v.weights.push_back({w});
    return v;
}

// Realizes an arbitrary finite simplicial complex (given by its maximal faces)
// as a vector quota system with one coordinate per facet: inside facet F_i a
// vertex weighs 1, outside it weighs |F_i|+1, and the coordinate quota is
// |F_i|+1, so exactly the subsets of some facet pass.  With perturb = true the
// entries are additionally made pairwise distinct by adding k/B (B a common
// bound) to the k-th entry, quota entries first so that every face relation is
// preserved exactly.
inline VectorQuotaSystem complex_to_quota(const std::vector<Face>& facets, int vertex_count,
                                          bool perturb = false) {
    if (facets.empty()) throw input_error("need at least one facet");
    for (const auto& f : facets) {
        detail::check_face(f, static_cast<std::size_t>(vertex_count));
        if (f.v.empty()) throw input_error("empty facet");
    }
    for (std::size_t a = 0; a < facets.size(); ++a)
        for (std::size_t b = 0; b < facets.size(); ++b) {
            if (a == b) continue;
            if (std::includes(facets[b].v.begin(), facets[b].v.end(), facets[a].v.begin(),
                              facets[a].v.end()))
                throw input_error("facets must be pairwise non-contained");
        }

    const int s = static_cast<int>(facets.size());
    const int n = vertex_count;
    VectorQuotaSystem sys;
    sys.quota.resize(s);
    sys.weights.assign(n, std::vector<Rational>(s));
    for (int i = 0; i < s; ++i) {
        const long fi = static_cast<long>(facets[i].v.size());
        sys.quota[i] = fi + 1;
        for (int v = 0; v < n; ++v) {
            bool inside = std::binary_search(facets[i].v.begin(), facets[i].v.end(), v);
            sys.weights[v][i] = inside ? Rational(1) : Rational(fi + 1);
        }
    }

    if (perturb) {
        // Quota entries take the s smallest perturbations, so every weight
        // perturbation exceeds every quota perturbation; any face's total
        // perturbation stays below 1 because B > n * (total entry count).
        const long total = static_cast<long>(s) * (n + 1);
        const BigInt B = BigInt(n) * total + 1;
        long k = 1;
        for (int i = 0; i < s; ++i) sys.quota[i] += Rational(BigInt(k++), B);
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < s; ++i) sys.weights[v][i] += Rational(BigInt(k++), B);
    }
    return sys;
}

}  // namespace quotatope
