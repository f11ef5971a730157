#pragma once

// Mobius/Mertens machinery.  The Euler characteristic of the prime quota
// complex at integer quota q equals minus the sum of mu(n) over square-free n
// whose prime-divisor sum stays below q; for the log-weighted complex it
// collapses to 1 - M(N) at q = ln(N+1).  rh_diagnostic compares ln|chi|
// against a reference line of slope 0.55 anchored at the first sample.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "rational.hpp"
#include "seq.hpp"

namespace quotatope {

struct MobiusSieve {
    std::vector<std::int8_t> mu;  // mu[n] for 1 <= n <= n_max(); mu[0] unused

    long n_max() const { return static_cast<long>(mu.size()) - 1; }
    int at(long n) const {
        if (n < 1 || n > n_max()) throw input_error("mu(n) outside sieve range");
        return mu[static_cast<std::size_t>(n)];
    }
};

inline MobiusSieve mobius_sieve(long n_max) {
    if (n_max < 1) throw input_error("sieve bound must be at least 1");
    MobiusSieve s;
    s.mu.assign(n_max + 1, 0);
    s.mu[1] = 1;
    std::vector<long> primes;
    std::vector<bool> comp(n_max + 1, false);
    for (long i = 2; i <= n_max; ++i) {
        if (!comp[i]) {
            primes.push_back(i);
            s.mu[i] = -1;
        }
        for (long p : primes) {
            if (p > n_max / i) break;
            comp[i * p] = true;
            if (i % p == 0) {
                s.mu[i * p] = 0;
                break;
            }
            s.mu[i * p] = -s.mu[i];
        }
    }
    return s;
}

struct MertensSeries {
    std::vector<long> M;  // M[N] = mu(1) + ... + mu(N); M[0] = 0

    long n_max() const { return static_cast<long>(M.size()) - 1; }
    long at(long n) const {
        if (n < 0 || n > n_max()) throw input_error("M(N) outside series range");
        return M[static_cast<std::size_t>(n)];
    }
};

inline MertensSeries mertens_series(const MobiusSieve& sieve) {
    MertensSeries m;
    m.M.assign(sieve.mu.size(), 0);
    for (std::size_t n = 1; n < sieve.mu.size(); ++n) m.M[n] = m.M[n - 1] + sieve.mu[n];
    return m;
}

// chi of the prime system at integer quota q, by a signed subset-sum DP over
// the primes below q: chi = 1 - sum over subsets with sum < q of (-1)^|S|.
inline BigInt chi_prime(long q) {
    if (q < 0) throw input_error("quota must be nonnegative");
    auto primes = primes_below(q);
    std::vector<BigInt> g(std::max<long>(q, 1));
    g[0] = 1;
    for (long p : primes)
        for (long sum = q - 1 - p; sum >= 0; --sum)
            if (g[sum] != 0) g[sum + p] -= g[sum];
    BigInt total = 0;
    for (const auto& v : g) total += v;
    return 1 - total;
}

// The same quantity from the mu-weighted count: minus the sum of mu(n) over
// square-free n > 1 whose prime divisors sum below q.  Enumerates subsets of
// the primes below q directly; products that fit inside the sieve are
// cross-checked against its mu values.
inline BigInt chi_prime_mobius(long q, const MobiusSieve& sieve) {
    if (q < 0) throw input_error("quota must be nonnegative");
    auto primes = primes_below(q);
    BigInt acc = 0;
    // iterative DFS: (next index, running sum, parity, product while tracked)
    struct Node {
        std::size_t next;
        long sum;
        int parity;
        long product;  // -1 once it leaves the sieve range
    };
    std::vector<Node> stack{{0, 0, 0, 1}};
    while (!stack.empty()) {
        Node nd = stack.back();
        stack.pop_back();
        if (nd.sum > 0) {
            acc -= (nd.parity ? -1 : 1);
            if (nd.product > 0 && sieve.at(nd.product) != (nd.parity ? -1 : 1))
                throw numeric_error("sieve disagrees with square-free parity at " +
                                    std::to_string(nd.product));
        }
        for (std::size_t k = nd.next; k < primes.size(); ++k) {
            if (nd.sum + primes[k] >= q) break;
            long prod = nd.product;
            if (prod > 0) prod = (prod <= sieve.n_max() / primes[k]) ? prod * primes[k] : -1;
            stack.push_back({k + 1, nd.sum + primes[k], 1 - nd.parity, prod});
        }
    }
    return acc;
}

namespace detail {

// e^q with floating-point noise snapped away when the value is
// (mathematically) an integer.
inline double snap_exp(double q) {
    double x = std::exp(q);
    double r = std::round(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) x = r;
    return x;
}

// Largest integer N with N < e^q.
inline long integers_below_exp(double q) {
    return static_cast<long>(std::ceil(snap_exp(q))) - 1;
}

}  // namespace detail

inline long chi_logprime(double q, const MertensSeries& mertens) {
    long n = detail::integers_below_exp(q);
    if (n < 1) throw input_error("quota puts no integer below e^q but 1");
    if (n > mertens.n_max())
        throw capacity_error("sieve covers " + std::to_string(mertens.n_max()) +
                             " but e^q needs " + std::to_string(n));
    return 1 - mertens.at(n);
}

inline long chi_logprime(double q, const MobiusSieve& sieve) {
    return chi_logprime(q, mertens_series(sieve));
}

struct RhPoint {
    double q = 0;
    double ln_abs_chi = 0;
};

struct RhDiagnostic {
    std::vector<RhPoint> points;  // samples with chi != 0
    long skipped_zero = 0;        // samples dropped because chi vanished
    double slope = 0.55;
    double intercept = 0;  // anchored so the first kept sample lies on the line
    double fraction_below = 0;
};

// samples > 0: that many uniform quotas across [q_lo, q_hi].
// samples = 0: one sample at every jump of floor(e^q), i.e. q = ln(N+1).
inline RhDiagnostic rh_diagnostic(const MertensSeries& mertens, double q_lo, double q_hi,
                                  long samples = 0) {
    if (!(q_lo < q_hi)) throw input_error("need q_lo < q_hi");
    RhDiagnostic d;
    std::vector<double> qs, chis;
    if (samples > 0) {
        qs.resize(samples);
        chis.resize(samples);
        parallel_for(static_cast<std::size_t>(samples), [&](std::size_t k) {
            double q = (samples == 1)
                           ? q_lo
                           : q_lo + (q_hi - q_lo) * static_cast<double>(k) / (samples - 1);
            qs[k] = q;
            chis[k] = static_cast<double>(chi_logprime(q, mertens));
        });
    } else {
        // jumps q = ln(N+1) inside [q_lo, q_hi]: e^{q_lo} - 1 <= N <= e^{q_hi} - 1
        long n_lo = std::max<long>(1, detail::integers_below_exp(q_lo));
        long n_hi = static_cast<long>(std::floor(detail::snap_exp(q_hi))) - 1;
        if (n_hi > mertens.n_max())
            throw capacity_error("sieve covers " + std::to_string(mertens.n_max()) +
                                 " but e^q needs " + std::to_string(n_hi));
        for (long n = n_lo; n <= n_hi; ++n) {
            qs.push_back(std::log(static_cast<double>(n) + 1));
            chis.push_back(static_cast<double>(1 - mertens.at(n)));
        }
    }
    for (std::size_t k = 0; k < qs.size(); ++k) {
        if (chis[k] == 0) {
            ++d.skipped_zero;
            continue;
        }
        d.points.push_back({qs[k], std::log(std::abs(chis[k]))});
    }
    if (!d.points.empty()) {
        d.intercept = d.points.front().ln_abs_chi - d.slope * d.points.front().q;
        long below = 0;
        for (const auto& p : d.points)
            if (p.ln_abs_chi <= d.slope * p.q + d.intercept + 1e-9) ++below;
        d.fraction_below = static_cast<double>(below) / static_cast<double>(d.points.size());
    }
    return d;
}

inline RhDiagnostic rh_diagnostic(const MobiusSieve& sieve, double q_lo, double q_hi,
                                  long samples = 0) {
    return rh_diagnostic(mertens_series(sieve), q_lo, q_hi, samples);
}

}  // namespace quotatope
