#pragma once

// Truncated integer power series around the product identity
//   prod_i (1 - x^{nu_i})  =  1 - (1-x) * sum_{j >= nu_1} chi[j+1] x^j,
// where chi[q] is the Euler characteristic of the quota complex the weight
// multiset nu induces at quota q.  Specializations: partition numbers from the
// reciprocal of the plain integer product, Ramanujan tau from the 24-fold
// product, and a floating-point Euler-product convergence check.

#include <algorithm>
#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "seq.hpp"
#include "zeta.hpp"

namespace quotatope {

struct IntPowerSeries {
    std::vector<BigInt> coeffs;  // c_0 .. c_D

    long degree_cap() const { return static_cast<long>(coeffs.size()) - 1; }
    const BigInt& at(long k) const {
        if (k < 0 || k > degree_cap()) throw input_error("coefficient index beyond degree cap");
        return coeffs[static_cast<std::size_t>(k)];
    }
};

inline IntPowerSeries series_const(long D, long c0 = 1) {
    if (D < 0) throw input_error("degree cap must be nonnegative");
    IntPowerSeries s;
    s.coeffs.assign(D + 1, BigInt(0));
    s.coeffs[0] = c0;
    return s;
}

inline IntPowerSeries series_add(const IntPowerSeries& a, const IntPowerSeries& b) {
    IntPowerSeries r = series_const(std::min(a.degree_cap(), b.degree_cap()), 0);
    for (long k = 0; k <= r.degree_cap(); ++k) r.coeffs[k] = a.coeffs[k] + b.coeffs[k];
    return r;
}

inline IntPowerSeries series_sub(const IntPowerSeries& a, const IntPowerSeries& b) {
    IntPowerSeries r = series_const(std::min(a.degree_cap(), b.degree_cap()), 0);
    for (long k = 0; k <= r.degree_cap(); ++k) r.coeffs[k] = a.coeffs[k] - b.coeffs[k];
    return r;
}

inline IntPowerSeries series_mul(const IntPowerSeries& a, const IntPowerSeries& b) {
    IntPowerSeries r = series_const(std::min(a.degree_cap(), b.degree_cap()), 0);
    r.coeffs[0] = 0;
    for (long i = 0; i <= r.degree_cap(); ++i) {
        if (a.coeffs[i] == 0 || i > a.degree_cap()) continue;
        for (long j = 0; i + j <= r.degree_cap() && j <= b.degree_cap(); ++j)
            if (b.coeffs[j] != 0) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    return r;
}

// 1/a to the same degree cap; the constant term must be a unit (+1 or -1).
inline IntPowerSeries series_reciprocal(const IntPowerSeries& a) {
    if (a.coeffs.empty() || (a.coeffs[0] != 1 && a.coeffs[0] != -1))
        throw input_error("reciprocal needs constant term +1 or -1");
    IntPowerSeries r = series_const(a.degree_cap(), 0);
    r.coeffs[0] = a.coeffs[0];  // 1/c0 = c0 for a unit
    for (long n = 1; n <= a.degree_cap(); ++n) {
        BigInt acc = 0;
        for (long k = 1; k <= n; ++k) acc += a.coeffs[k] * r.coeffs[n - k];
        r.coeffs[n] = -a.coeffs[0] * acc;
    }
    return r;
}

struct WeightMultiset {
    std::vector<long> nu;  // nondecreasing positive entries, a prefix of the multiset
    long valid_below = 0;  // every multiset entry < valid_below appears in nu

    static WeightMultiset finite(std::vector<long> entries) {
        WeightMultiset m;
        m.nu = std::move(entries);
        for (std::size_t i = 0; i < m.nu.size(); ++i) {
            if (m.nu[i] < 1) throw input_error("weights must be positive integers");
            if (i > 0 && m.nu[i] < m.nu[i - 1]) throw input_error("weights must be nondecreasing");
        }
        if (m.nu.empty()) throw input_error("weight multiset is empty");
        m.valid_below = std::numeric_limits<long>::max();  // complete multiset
        return m;
    }
    static WeightMultiset integers(long below, int copies = 1) {
        if (below < 2 || copies < 1) throw input_error("need at least the weight 1");
        WeightMultiset m;
        for (long v = 1; v < below; ++v)
            for (int c = 0; c < copies; ++c) m.nu.push_back(v);
        m.valid_below = below;
        return m;
    }
    static WeightMultiset primes(long below) {
        WeightMultiset m;
        m.nu = primes_below(below);
        if (m.nu.empty()) throw input_error("no primes below the requested bound");
        m.valid_below = below;
        return m;
    }

    long v1() const { return nu.front(); }
};

inline IntPowerSeries product_series(const WeightMultiset& m, long D) {
    if (D < 0) throw input_error("degree cap must be nonnegative");
    if (m.valid_below <= D)
        throw input_error("weight prefix valid below " + std::to_string(m.valid_below) +
                          " cannot support degree " + std::to_string(D));
    IntPowerSeries p = series_const(D);
    for (long v : m.nu) {
        if (v > D) break;
        for (long k = D; k >= v; --k) p.coeffs[k] -= p.coeffs[k - v];
    }
    return p;
}

struct ChiSeries {
    long q_max = 0;
    long v1 = 0;              // quotas at or below v1 give the empty complex
    std::vector<BigInt> chi;  // chi[q] for 0 <= q <= q_max

    const BigInt& at(long q) const {
        if (q < 0 || q > q_max) throw input_error("quota outside the chi series");
        return chi[static_cast<std::size_t>(q)];
    }
};

// chi[j+1] is the j-th partial sum of 1 - prod(1 - x^{nu_i}), i.e. the
// quotient by 1-x.
inline ChiSeries chi_from_product(const WeightMultiset& m, long q_max) {
    if (q_max < 1) throw input_error("q_max must be at least 1");
    auto p = product_series(m, q_max - 1);
    ChiSeries c;
    c.q_max = q_max;
    c.v1 = m.v1();
    c.chi.assign(q_max + 1, BigInt(0));
    BigInt run = 0;
    for (long j = 0; j < q_max; ++j) {
        if (j == 0)
            run += 1 - p.coeffs[0];
        else
            run -= p.coeffs[j];
        c.chi[j + 1] = run;
    }
    return c;
}

inline std::vector<BigInt> partition_numbers(long D) {
    if (D < 1) throw input_error("need D >= 1");
    auto inv = series_reciprocal(product_series(WeightMultiset::integers(D + 1), D));
    std::vector<BigInt> p(inv.coeffs.begin() + 1, inv.coeffs.end());  // p(1)..p(D)
    return p;
}

struct LehmerResult {
    std::vector<BigInt> tau;  // tau[n] for 1 <= n <= q_max (index 0 unused)
    std::vector<long> ties;   // m in [2, q_max-1] with chi[m] = chi[m+1]
};

// chi here is of the 24-fold counting complex; consecutive equal values pick
// out exactly the vanishing points of tau.
inline LehmerResult lehmer_check(long q_max) {
    if (q_max < 3) throw input_error("need q_max >= 3");
    auto m = WeightMultiset::integers(q_max + 1, 24);
    auto p = product_series(m, q_max - 1);
    LehmerResult r;
    r.tau.assign(q_max + 1, BigInt(0));
    for (long n = 1; n <= q_max; ++n) r.tau[n] = p.coeffs[n - 1];
    BigInt prev_chi = 0, run = 0;  // chi[1] = 0: the quota-1 complex is empty
    for (long j = 1; j < q_max; ++j) {
        run += -p.coeffs[j];
        long q = j + 1;  // chi[q] = run
        if (q >= 3 && run == prev_chi) r.ties.push_back(q - 1);
        prev_chi = run;
    }
    return r;
}

// Reconstructs every weight <= the series cap by peeling factors 1 - x^v off
// the product implied by the chi values, smallest v first.
inline std::vector<long> recover_weights(const ChiSeries& c) {
    const long D = c.q_max - 1;
    std::vector<BigInt> p(D + 1);
    p[0] = 1;
    for (long k = 1; k <= D; ++k) p[k] = c.at(k) - c.at(k + 1);
    std::vector<long> nu;
    for (long v = 1; v <= D; ++v) {
        while (p[v] != 0) {
            if (p[v] > 0)
                throw input_error("chi sequence is not generated by a weight product");
            nu.push_back(v);
            for (long k = v; k <= D; ++k) p[k] += p[k - v];  // exact division by 1 - x^v
        }
    }
    return nu;
}

// Partial Euler product over primes below P, against the partial mu-sum with
// `terms` terms, both at the sample point s.  Converging partials for the
// reciprocal zeta value; floating point by design.
inline std::pair<std::complex<double>, std::complex<double>> euler_product_partial(
    long primes_bound, std::complex<double> s, long terms) {
    if (s.real() <= 1.0) throw input_error("need Re(s) > 1 for convergence");
    std::complex<double> prod = 1.0;
    for (long p : primes_below(primes_bound))
        prod *= 1.0 - std::exp(-s * std::log(static_cast<double>(p)));
    std::complex<double> sum = 0.0;
    auto sieve = mobius_sieve(std::max<long>(terms, 1));
    for (long n = 1; n <= terms; ++n)
        if (sieve.mu[n])
            sum += static_cast<double>(sieve.mu[n]) *
                   std::exp(-s * std::log(static_cast<double>(n)));
    return {prod, sum};
}

}  // namespace quotatope
