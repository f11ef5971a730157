#pragma once

// Counting engines for quota complexes on integer sequences (primes, squares,
// cubes, or custom lists).  The central object is the face-count table
// s_i(q) = #{(i+1)-subsets of V minus its least element, sum < q}, computed
// exactly for all quotas at once by a subset-sum DP; homology follows from the
// shell identity h_i(q) = s_i(q) - s_i(q - v1).

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "rational.hpp"

namespace quotatope {

enum class SeqKind { primes, squares, cubes, custom };

inline std::vector<long> primes_below(long n) {
    std::vector<long> out;
    if (n <= 2) return out;
    std::vector<bool> comp(n, false);
    for (long p = 2; p < n; ++p) {
        if (comp[p]) continue;
        out.push_back(p);
        for (long m = p * p; m < n; m += p) comp[m] = true;
    }
    return out;
}

struct SequenceSpec {
    SeqKind kind = SeqKind::custom;
    std::vector<long> elements;  // strictly increasing; finite prefix of the sequence
    long covers = 0;             // all sequence members < covers are present

    long v1() const {
        if (elements.empty()) throw input_error("sequence prefix is empty");
        return elements.front();
    }

    static SequenceSpec primes(long below) {
        SequenceSpec s;
        s.kind = SeqKind::primes;
        s.elements = primes_below(below);
        s.covers = below;
        if (s.elements.empty()) throw input_error("no primes below the requested bound");
        return s;
    }
    static SequenceSpec powers(long below, int exponent, SeqKind kind) {
        SequenceSpec s;
        s.kind = kind;
        for (long k = 1;; ++k) {
            long v = 1;
            for (int e = 0; e < exponent; ++e) v *= k;
            if (v >= below) break;
            s.elements.push_back(v);
        }
        s.covers = below;
        if (s.elements.empty()) throw input_error("no sequence members below the requested bound");
        return s;
    }
    static SequenceSpec squares(long below) { return powers(below, 2, SeqKind::squares); }
    static SequenceSpec cubes(long below) { return powers(below, 3, SeqKind::cubes); }
    static SequenceSpec custom(std::vector<long> elems) {
        SequenceSpec s;
        s.elements = std::move(elems);
        for (std::size_t i = 0; i < s.elements.size(); ++i) {
            if (s.elements[i] <= 0) throw input_error("sequence members must be positive");
            if (i > 0 && s.elements[i] <= s.elements[i - 1])
                throw input_error("sequence must be strictly increasing");
        }
        if (s.elements.empty()) throw input_error("sequence prefix is empty");
        s.covers = s.elements.back() + 1;
        return s;
    }
};

// The scalar quota system a sequence induces at quota q (members >= q are
// outside every face and dropped).
inline ScalarQuotaSystem system_at(const SequenceSpec& spec, long q) {
    if (q > spec.covers)
        throw input_error("sequence prefix covers only < " + std::to_string(spec.covers));
    ScalarQuotaSystem sys;
    for (long v : spec.elements)
        if (v < q) sys.weights.emplace_back(v);
    if (sys.weights.empty()) sys.weights.emplace_back(spec.v1());  // keep system well-formed
    sys.quota = q;
    return sys;
}

struct FaceCountTable {
    long q_max = 0;
    int i_max = 0;
    long v1 = 0;
    long truncation_valid_q = 0;
    // s[i][q] = s_i(q), exact; index q runs 0..q_max (entries below v1+2 are 0)
    std::vector<std::vector<BigInt>> s;

    const BigInt& at(int i, long q) const {
        if (i < 0 || i > i_max || q < 0 || q > q_max)
            throw input_error("face-count index out of range");
        return s[i][q];
    }
};

inline FaceCountTable count_table(const SequenceSpec& spec, long q_max, int i_max) {
    if (q_max <= spec.v1()) throw input_error("q_max must exceed the least sequence element");
    if (i_max < 0) throw input_error("i_max must be nonnegative");
    if (spec.covers < q_max)
        throw input_error("sequence prefix insufficient: need all members below " +
                          std::to_string(q_max) + ", have them below " +
                          std::to_string(spec.covers));

    FaceCountTable t;
    t.q_max = q_max;
    t.i_max = i_max;
    t.v1 = spec.v1();
    t.truncation_valid_q = q_max;

    // cnt[c][sum] = number of c-subsets of V \ {v1} with that exact sum
    const long cap = q_max;  // sums >= q_max never satisfy sum < q <= q_max
    std::vector<std::vector<BigInt>> cnt(i_max + 2, std::vector<BigInt>(cap));
    cnt[0][0] = 1;
    for (std::size_t e = 1; e < spec.elements.size(); ++e) {
        long w = spec.elements[e];
        if (w >= cap) break;
        for (int c = i_max; c >= 0; --c) {
            auto& src = cnt[c];
            auto& dst = cnt[c + 1];
            for (long sum = cap - 1 - w; sum >= 0; --sum)
                if (src[sum] != 0) dst[sum + w] += src[sum];
        }
    }

    t.s.assign(i_max + 1, std::vector<BigInt>(q_max + 1));
    for (int i = 0; i <= i_max; ++i) {
        BigInt run = 0;
        for (long q = 1; q <= q_max; ++q) {
            run += cnt[i + 1][q - 1];  // subsets with sum exactly q-1 enter at quota q
            t.s[i][q] = run;
        }
    }
    return t;
}

struct HomologyTable {
    long q_max = 0;
    int i_max = 0;
    long v1 = 0;
    std::vector<std::vector<BigInt>> h;  // h[i][q] = s_i(q) - s_i(q - v1)

    const BigInt& at(int i, long q) const {
        if (i < 0 || i > i_max || q < 0 || q > q_max)
            throw input_error("homology index out of range");
        return h[i][q];
    }
};

inline HomologyTable homology_table(const FaceCountTable& t) {
    HomologyTable h;
    h.q_max = t.q_max;
    h.i_max = t.i_max;
    h.v1 = t.v1;
    h.h.assign(t.i_max + 1, std::vector<BigInt>(t.q_max + 1));
    for (int i = 0; i <= t.i_max; ++i)
        for (long q = 0; q <= t.q_max; ++q) {
            const BigInt& prev = (q >= t.v1) ? t.s[i][q - t.v1] : BigInt(0);
            BigInt v = t.s[i][q] - prev;
            if (v < 0) throw numeric_error("face counts must be monotone in q");
            h.h[i][q] = v;
        }
    return h;
}

// Exact cell-fraction ratios S_i(q), H_i(q) (absent where the complex has no
// counted cells) and the running averages of S_i.
struct RatioSeries {
    long q_max = 0;
    int i_max = 0;
    std::vector<std::vector<std::optional<Rational>>> S, H;
    std::vector<std::vector<Rational>> S_ave;  // (1/q) * sum of defined S_i(k), k <= q
};

inline RatioSeries ratio_series(const FaceCountTable& t, const HomologyTable& hom) {
    if (t.q_max != hom.q_max || t.i_max != hom.i_max)
        throw input_error("tables are not aligned");
    RatioSeries r;
    r.q_max = t.q_max;
    r.i_max = t.i_max;
    r.S.assign(t.i_max + 1, std::vector<std::optional<Rational>>(t.q_max + 1));
    r.H.assign(t.i_max + 1, std::vector<std::optional<Rational>>(t.q_max + 1));
    r.S_ave.assign(t.i_max + 1, std::vector<Rational>(t.q_max + 1, Rational(0)));
    for (long q = 1; q <= t.q_max; ++q) {
        BigInt s_tot = 0, h_tot = 0;
        for (int i = 0; i <= t.i_max; ++i) {
            s_tot += t.s[i][q];
            h_tot += hom.h[i][q];
        }
        for (int i = 0; i <= t.i_max; ++i) {
            if (s_tot != 0) {
                Rational v(t.s[i][q], s_tot);
                v.canonicalize();
                r.S[i][q] = v;
            }
            if (h_tot != 0) {
                Rational v(hom.h[i][q], h_tot);
                v.canonicalize();
                r.H[i][q] = v;
            }
        }
    }
    for (int i = 0; i <= t.i_max; ++i) {
        Rational acc = 0;
        for (long q = 1; q <= t.q_max; ++q) {
            if (r.S[i][q]) acc += *r.S[i][q];
            r.S_ave[i][q] = acc / q;
        }
    }
    return r;
}

// Quotas in [q_lo, q_hi] where h_i vanishes; an empty result means the
// positivity conjecture holds on the range.
inline std::vector<long> goldbach_scan(const HomologyTable& h, int i, long q_lo, long q_hi) {
    if (i < 0 || i > h.i_max || q_lo < 0 || q_hi > h.q_max)
        throw input_error("scan range outside the table");
    std::vector<long> zeros;
    for (long q = q_lo; q <= q_hi; ++q)
        if (h.h[i][q] == 0) zeros.push_back(q);
    return zeros;
}

enum class FitTransform { prime, square, cube };

struct FitResult {
    double slope = 0, intercept = 0, rms_residual = 0;
    long points = 0;
};

// Ordinary least squares of the growth-normalized series against q, over the
// quotas where s_i(q) > 0.  prime: s^{1/(i+1)} ln q;  square: s^{2/(i+1)};
// cube: s^{3/(i+1)}.
inline FitResult slope_fit(const FaceCountTable& t, int i, FitTransform tr) {
    if (i < 0 || i > t.i_max) throw input_error("dimension outside the table");
    std::vector<double> xs, ys;
    for (long q = 1; q <= t.q_max; ++q) {
        if (t.s[i][q] == 0) continue;
        double s = t.s[i][q].get_d();
        double y = 0;
        switch (tr) {
            case FitTransform::prime:
                y = std::pow(s, 1.0 / (i + 1)) * std::log(static_cast<double>(q));
                break;
            case FitTransform::square:
                y = std::pow(s, 2.0 / (i + 1));
                break;
            case FitTransform::cube:
                y = std::pow(s, 3.0 / (i + 1));
                break;
        }
        xs.push_back(static_cast<double>(q));
        ys.push_back(y);
    }
    if (xs.size() < 2) throw input_error("need at least two populated quotas to fit");

    double n = static_cast<double>(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
    }
    FitResult f;
    f.points = static_cast<long>(xs.size());
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        double r = ys[k] - (f.slope * xs[k] + f.intercept);
        ss += r * r;
    }
    f.rms_residual = std::sqrt(ss / n);
    return f;
}

// ---- smooth heuristic profile ------------------------------------------------
//
// With f interpolating the counting function of the sequence (x/ln x for
// primes, x^{1/2} for squares, x^{1/3} for cubes), the smoothed cell fraction
// is Shat_i(x) = C(f(x), i+1) / 2^{f(x)}.  Each Shat_i has a single interior
// maximum m_i, pinned between the grid points x_{2i+1} and x_{2i+2} where
// f(x_j) = j.

struct HeuristicProfile {
    SeqKind kind = SeqKind::primes;
    int k_prime = 1;        // first index with x_j defined
    double kappa = 0;       // left end of the domain of f's inverse
    std::map<int, double> x;     // x_j: f(x_j) = j
    std::map<int, double> m;     // critical points, i in [k_prime, i_max]
    std::map<int, double> peak;  // Shat_i(m_i)
};

namespace detail {

inline double interp_f(SeqKind kind, double x) {
    switch (kind) {
        case SeqKind::primes:
            return x / std::log(x);
        case SeqKind::squares:
            return std::sqrt(x);
        case SeqKind::cubes:
            return std::cbrt(x);
        default:
            throw input_error("no interpolating function for custom sequences");
    }
}

inline double shat(SeqKind kind, double x, int i) {
    double fx = interp_f(kind, x);
    double ln_binom = std::lgamma(fx + 1) - std::lgamma(fx - i) - std::lgamma(i + 2);
    return std::exp(ln_binom - fx * std::numbers::ln2);
}

}  // namespace detail

inline HeuristicProfile heuristic_profile(SeqKind kind, int i_max) {
    HeuristicProfile p;
    p.kind = kind;
    switch (kind) {
        case SeqKind::primes:
            p.kappa = std::numbers::e;  // x/ln x has its minimum there
            p.k_prime = 3;              // smallest integer >= f(kappa) = e
            break;
        case SeqKind::squares:
        case SeqKind::cubes:
            p.kappa = 0;
            p.k_prime = 1;
            break;
        default:
            throw input_error("no heuristic profile for custom sequences");
    }
    if (i_max < p.k_prime) throw input_error("i_max below the first admissible index");

    auto solve_x = [&](int j) {
        // f is increasing on [kappa, inf); bisect f(x) = j
        double lo = std::max(p.kappa, 1e-12), hi = std::max(lo * 2, 8.0);
        while (detail::interp_f(kind, hi) < j) hi *= 2;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (detail::interp_f(kind, mid) < j ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    for (int j = p.k_prime; j <= 2 * i_max + 2; ++j) p.x[j] = solve_x(j);

    for (int i = p.k_prime; i <= i_max; ++i) {
        double xl = p.x[2 * i + 1], xr = p.x[2 * i + 2];
        auto deriv_sign = [&](double x) {
            double fx = detail::interp_f(kind, x);
            double sum = 0;
            for (int j = 0; j <= i; ++j) sum += 1.0 / (fx - j);
            return sum - std::numbers::ln2;
        };
        if (!(deriv_sign(xl) > 0 && deriv_sign(xr) < 0))
            throw numeric_error("critical point not bracketed on [x_" +
                                std::to_string(2 * i + 1) + ", x_" + std::to_string(2 * i + 2) +
                                "]");
        double lo = xl, hi = xr;
        while (hi - lo > 1e-9 * std::max(1.0, lo)) {
            double mid = 0.5 * (lo + hi);
            (deriv_sign(mid) > 0 ? lo : hi) = mid;
        }
        p.m[i] = 0.5 * (lo + hi);
        p.peak[i] = detail::shat(kind, p.m[i], i);
    }
    return p;
}

inline double shat_value(SeqKind kind, double x, int i) { return detail::shat(kind, x, i); }

}  // namespace quotatope
