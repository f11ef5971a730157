#pragma once

// Random scalar quota systems: one deterministic minimal weight m plus N
// independent continuous weights with compact support in [m, inf).  Expected
// reduced homology dimensions and Euler characteristics come from convolution
// window integrals; a Monte Carlo sampler checks them empirically.
//
// Grids store node values on a uniform step.  Densities with jump
// discontinuities (only at support ends) store the midpoint value at the jump
// node plus jump metadata; with that convention plain rectangle sums integrate
// piecewise-linear-with-steps functions exactly, and discrete convolution
// needs only a local correction where jumps of both factors coincide.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "parallel.hpp"
#include "rational.hpp"
#include "zeta.hpp"

namespace quotatope {

struct DensityGrid {
    double origin = 0;
    double step = 0;
    std::vector<double> values;                 // node values, size = cells + 1
    std::vector<std::pair<long, double>> jumps;  // node index -> jump height

    long cells() const { return static_cast<long>(values.size()) - 1; }
    double x_at(long k) const { return origin + step * static_cast<double>(k); }
    double support_end() const { return x_at(cells()); }

    double integral() const {
        double s = 0;
        for (double v : values) s += v;
        return s * step;
    }

    // linear interpolation; zero outside the stored support
    double value_at(double x) const {
        if (values.empty()) return 0;
        double t = (x - origin) / step;
        if (t < 0 || t > static_cast<double>(cells())) return 0;
        long k = static_cast<long>(t);
        if (k >= cells()) return values.back();
        double frac = t - static_cast<double>(k);
        return values[k] * (1 - frac) + values[k + 1] * frac;
    }
};

namespace detail {

inline void check_grid(const DensityGrid& g, const char* what) {
    if (g.values.size() < 2) throw input_error(std::string(what) + ": grid needs >= 2 nodes");
    if (!(g.step > 0)) throw input_error(std::string(what) + ": grid step must be positive");
}

inline long span_cells(double a, double b, double step, const char* what) {
    double raw = (b - a) / step;
    long n = static_cast<long>(std::llround(raw));
    if (n < 1 || std::abs(raw - static_cast<double>(n)) > 1e-6)
        throw input_error(std::string(what) + ": support is not commensurate with the step");
    return n;
}

}  // namespace detail

inline DensityGrid density_uniform(double a, double b, double step) {
    if (!(a < b)) throw input_error("uniform density needs a < b");
    DensityGrid g;
    g.origin = a;
    g.step = step;
    long n = detail::span_cells(a, b, step, "uniform density");
    double h = 1.0 / (b - a);
    g.values.assign(n + 1, h);
    g.values.front() = h / 2;  // midpoint convention at the support jumps
    g.values.back() = h / 2;
    g.jumps = {{0, h}, {n, -h}};
    return g;
}

inline DensityGrid density_triangular(double a, double apex, double b, double step) {
    if (!(a < apex && apex < b)) throw input_error("triangular density needs a < apex < b");
    DensityGrid g;
    g.origin = a;
    g.step = step;
    long n = detail::span_cells(a, b, step, "triangular density");
    long na = detail::span_cells(a, apex, step, "triangular density apex");
    double peak = 2.0 / (b - a);
    g.values.assign(n + 1, 0.0);
    for (long k = 0; k <= n; ++k) {
        double x = g.x_at(k);
        g.values[k] = (k <= na) ? peak * (x - a) / (apex - a) : peak * (b - x) / (b - apex);
    }
    return g;
}

// Piecewise-linear density from node values; discontinuities are allowed only
// at the support ends (nonzero first/last entries become registered jumps).
inline DensityGrid density_table(double origin, double step, std::vector<double> values) {
    DensityGrid g;
    g.origin = origin;
    g.step = step;
    g.values = std::move(values);
    detail::check_grid(g, "table density");
    for (double v : g.values)
        if (v < -1e-12) throw input_error("table density has negative values");
    if (g.values.front() != 0) {
        g.jumps.push_back({0, g.values.front()});
        g.values.front() /= 2;
    }
    if (g.values.back() != 0) {
        g.jumps.push_back({g.cells(), -g.values.back()});
        g.values.back() /= 2;
    }
    return g;
}

inline DensityGrid convolve(const DensityGrid& a, const DensityGrid& b) {
    detail::check_grid(a, "convolve");
    detail::check_grid(b, "convolve");
    if (std::abs(a.step - b.step) > 1e-12 * a.step)
        throw input_error("convolve: grid steps differ");
    DensityGrid r;
    r.origin = a.origin + b.origin;
    r.step = a.step;
    r.values.assign(a.values.size() + b.values.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.values[i] == 0) continue;
        const double ai = a.values[i] * a.step;
        for (std::size_t j = 0; j < b.values.size(); ++j) r.values[i + j] += ai * b.values[j];
    }
    // where jumps of both factors coincide the stored product of midpoints
    // overshoots the midpoint of the product by (jump_a * jump_b)/4
    for (const auto& [ia, da] : a.jumps)
        for (const auto& [jb, db] : b.jumps) r.values[ia + jb] -= a.step * da * db / 4;
    return r;  // continuous: no jumps survive a convolution
}

inline DensityGrid grid_scale(DensityGrid g, double c) {
    for (double& v : g.values) v *= c;
    for (auto& [k, d] : g.jumps) d *= c;
    return g;
}

inline DensityGrid grid_add(const DensityGrid& a, const DensityGrid& b) {
    if (a.values.empty()) return b;
    if (b.values.empty()) return a;
    if (std::abs(a.step - b.step) > 1e-12 * a.step)
        throw input_error("grid_add: grid steps differ");
    const double h = a.step;
    auto base_index = [&](double origin) {
        double raw = origin / h;
        long k = static_cast<long>(std::llround(raw));
        if (std::abs(raw - static_cast<double>(k)) > 1e-6)
            throw input_error("grid_add: origins are not commensurate with the step");
        return k;
    };
    long ka = base_index(a.origin), kb = base_index(b.origin);
    long lo = std::min(ka, kb);
    long hi = std::max(ka + a.cells(), kb + b.cells());
    DensityGrid r;
    r.origin = static_cast<double>(lo) * h;
    r.step = h;
    r.values.assign(hi - lo + 1, 0.0);
    for (std::size_t i = 0; i < a.values.size(); ++i) r.values[ka - lo + i] += a.values[i];
    for (std::size_t i = 0; i < b.values.size(); ++i) r.values[kb - lo + i] += b.values[i];
    std::map<long, double> jm;
    for (const auto& [k, d] : a.jumps) jm[ka - lo + k] += d;
    for (const auto& [k, d] : b.jumps) jm[kb - lo + k] += d;
    for (const auto& [k, d] : jm)
        if (d != 0) r.jumps.push_back({k, d});
    return r;
}

inline DensityGrid grid_sub(const DensityGrid& a, const DensityGrid& b) {
    return grid_add(a, grid_scale(b, -1.0));
}

namespace detail {

// node values of the cumulative integral, exact for piecewise-linear parts and
// for registered node jumps under the midpoint convention
inline std::vector<double> cumulative_nodes(const DensityGrid& g) {
    std::map<long, double> jm(g.jumps.begin(), g.jumps.end());
    std::vector<double> C(g.values.size(), 0.0);
    for (long k = 1; k <= g.cells(); ++k) {
        double seg = g.step * (g.values[k - 1] + g.values[k]) / 2;
        if (auto it = jm.find(k - 1); it != jm.end()) seg += g.step * it->second / 4;
        if (auto it = jm.find(k); it != jm.end()) seg -= g.step * it->second / 4;
        C[k] = C[k - 1] + seg;
    }
    return C;
}

}  // namespace detail

// The sliding-window integral q -> integral of f over [q-m, q], as a grid
// curve; this is (f convolved with the indicator of [0, m]) evaluated at q.
inline DensityGrid window_integral_curve(const DensityGrid& f, double m) {
    detail::check_grid(f, "window integral");
    if (!(m > 0)) throw input_error("window width must be positive");
    double raw = m / f.step;
    long K = static_cast<long>(std::llround(raw));
    if (K < 1 || std::abs(raw - static_cast<double>(K)) > 1e-6)
        throw input_error("window width is not commensurate with the grid step");
    auto C = detail::cumulative_nodes(f);
    const long n = f.cells();
    DensityGrid g;
    g.origin = f.origin;
    g.step = f.step;
    g.values.assign(n + K + 1, 0.0);
    auto cat = [&](long k) { return C[std::clamp(k, 0L, n)]; };
    for (long k = 0; k <= n + K; ++k) g.values[k] = cat(k) - cat(k - K);
    return g;
}

struct RandomQuotaSpec {
    double m = 1;                       // deterministic minimal weight
    double step = 0;                    // grid step; 0 selects m / 1000
    std::vector<DensityGrid> densities;  // one per random weight, on that step
    std::vector<double> q_grid;
    long trials = 100000;
    std::uint64_t seed = 1;

    double effective_step() const { return step > 0 ? step : m / 1000.0; }

    void validate() const {
        if (!(m > 0)) throw input_error("spec: m must be positive");
        if (densities.empty()) throw input_error("spec: need at least one density");
        const double h = effective_step();
        double raw = m / h;
        if (std::abs(raw - std::llround(raw)) > 1e-6)
            throw input_error("spec: step must divide m");
        for (const auto& d : densities) {
            detail::check_grid(d, "spec density");
            if (std::abs(d.step - h) > 1e-12 * h)
                throw input_error("spec: density step differs from the spec step");
            if (d.origin < m - 1e-9) throw input_error("spec: density support must start at m or later");
            for (double v : d.values)
                if (v < -1e-12) throw input_error("spec: density has negative values");
            if (std::abs(d.integral() - 1.0) > 1e-9)
                throw input_error("spec: density does not integrate to 1");
        }
        for (double q : q_grid)
            if (!(q > m)) throw input_error("spec: quotas must exceed m");
    }
};

// E[dim of reduced H_{j-1}] as a curve over q: the sum over all j-element
// index sets of the window integral of their convolved density.
inline DensityGrid expected_homology(const RandomQuotaSpec& spec, int j) {
    spec.validate();
    const int N = static_cast<int>(spec.densities.size());
    if (j < 1 || j > N) throw input_error("homology index must lie in [1, N]");
    DensityGrid acc;
    auto rec = [&](auto&& self, int start, int chosen, const DensityGrid& partial) -> void {
        if (chosen == j) {
            acc = grid_add(acc, window_integral_curve(partial, spec.m));
            return;
        }
        for (int i = start; i <= N - (j - chosen); ++i)
            self(self, i + 1, chosen + 1,
                 chosen == 0 ? spec.densities[i] : convolve(partial, spec.densities[i]));
    };
    rec(rec, 0, 0, DensityGrid{});
    return acc;
}

// 1 - E[chi] as a curve over q: the alternating-sign window integrals over all
// nonempty index sets.  The subset walk handles N <= 20; product_form uses the
// recursion g_i = g_{i-1} - f_i - g_{i-1} * f_i over the signed mixture and
// scales to any N.
inline DensityGrid expected_euler(const RandomQuotaSpec& spec, bool product_form = false) {
    spec.validate();
    const int N = static_cast<int>(spec.densities.size());
    if (product_form) {
        DensityGrid g;
        for (int i = 0; i < N; ++i) {
            DensityGrid with = grid_sub(g, spec.densities[i]);
            if (!g.values.empty())
                with = grid_sub(with, convolve(g, spec.densities[i]));
            g = std::move(with);
        }
        return window_integral_curve(g, spec.m);
    }
    if (N > 20)
        throw capacity_error("subset walk over 2^N index sets; use the product form for N > 20");
    DensityGrid acc;
    auto rec = [&](auto&& self, int start, int parity, const DensityGrid& partial) -> void {
        if (start > 0) {
            auto term = window_integral_curve(partial, spec.m);
            acc = grid_add(acc, parity ? grid_scale(std::move(term), -1.0) : term);
        }
        for (int i = start; i < N; ++i)
            self(self, i + 1, 1 - parity,
                 partial.values.empty() ? spec.densities[i] : convolve(partial, spec.densities[i]));
    };
    // parity tracks (-1)^{|J|}: odd subsets enter negatively
    rec(rec, 0, 0, DensityGrid{});
    return acc;
}

struct MonteCarloRow {
    double q = 0;
    int j = 0;  // 1..N for reduced homology dimensions; -1 for chi
    double expected = 0;
    double empirical_mean = 0;
    double stderr_ = 0;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// splitmix64 stream seeded per (seed, trial): reproducible no matter how the
// trials are distributed over workers
struct TrialRng {
    std::uint64_t s;
    TrialRng(std::uint64_t seed, std::uint64_t trial)
        : s(mix64(seed ^ mix64(trial * 0x9e3779b97f4a7c15ULL + 1))) {}
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct InverseCdf {
    double origin = 0, step = 0;
    std::vector<double> C;  // normalized cumulative at nodes

    explicit InverseCdf(const DensityGrid& g) : origin(g.origin), step(g.step) {
        C = cumulative_nodes(g);
        double total = C.back();
        if (!(total > 0)) throw input_error("density has zero mass");
        for (double& c : C) c /= total;
    }
    double sample(double u) const {
        auto it = std::upper_bound(C.begin(), C.end(), u);
        long k = std::clamp<long>(it - C.begin() - 1, 0, static_cast<long>(C.size()) - 2);
        while (k + 2 < static_cast<long>(C.size()) && C[k + 1] <= C[k]) ++k;
        double width = C[k + 1] - C[k];
        double t = width > 0 ? (u - C[k]) / width : 0.0;
        return origin + step * (static_cast<double>(k) + std::clamp(t, 0.0, 1.0));
    }
};

}  // namespace detail

inline std::vector<MonteCarloRow> monte_carlo(const RandomQuotaSpec& spec, long trials,
                                              std::uint64_t seed) {
    spec.validate();
    if (trials < 1) throw input_error("need at least one trial");
    if (spec.q_grid.empty()) throw input_error("spec: q_grid is empty");
    const int N = static_cast<int>(spec.densities.size());
    if (N > 20) throw capacity_error("Monte Carlo walks 2^N subsets per trial; N > 20 unsupported");
    const std::size_t Q = spec.q_grid.size();

    std::vector<detail::InverseCdf> inv;
    inv.reserve(N);
    for (const auto& d : spec.densities) inv.emplace_back(d);

    // expected curves once
    std::vector<DensityGrid> ehom;
    for (int j = 1; j <= N; ++j) ehom.push_back(expected_homology(spec, j));
    DensityGrid eeul = expected_euler(spec, N > 10);

    // integer accumulators per (q, statistic); statistic N is chi
    const std::size_t stats = static_cast<std::size_t>(N) + 1;
    const long n_blocks = 64;
    std::vector<std::vector<long>> bsum(n_blocks, std::vector<long>(Q * stats, 0));
    std::vector<std::vector<long>> bsq(n_blocks, std::vector<long>(Q * stats, 0));

    parallel_for(static_cast<std::size_t>(n_blocks), [&](std::size_t blk) {
        auto& sum = bsum[blk];
        auto& sq = bsq[blk];
        const long t_lo = static_cast<long>(blk) * trials / n_blocks;
        const long t_hi = static_cast<long>(blk + 1) * trials / n_blocks;
        std::vector<double> x(N), ssum(static_cast<std::size_t>(1) << N, 0.0);
        std::vector<long> dims(N);
        for (long t = t_lo; t < t_hi; ++t) {
            detail::TrialRng rng(seed, static_cast<std::uint64_t>(t));
            for (int i = 0; i < N; ++i) x[i] = inv[i].sample(rng.unit());
            for (std::size_t msk = 1; msk < ssum.size(); ++msk) {
                std::size_t low = msk & (~msk + 1);
                std::size_t bit = std::countr_zero(msk);
                ssum[msk] = ssum[msk ^ low] + x[bit];
            }
            for (std::size_t qi = 0; qi < Q; ++qi) {
                const double q = spec.q_grid[qi];
                std::fill(dims.begin(), dims.end(), 0L);
                long chi = 1;
                for (std::size_t msk = 1; msk < ssum.size(); ++msk) {
                    double s = ssum[msk];
                    if (s >= q - spec.m && s < q) {
                        int card = std::popcount(msk);
                        ++dims[card - 1];
                        chi += (card % 2 == 1) ? 1 : -1;  // (-1)^(card-1)
                    }
                }
                for (int j = 0; j < N; ++j) {
                    long v = dims[j];
                    sum[qi * stats + j] += v;
                    sq[qi * stats + j] += v * v;
                }
                sum[qi * stats + N] += chi;
                sq[qi * stats + N] += chi * chi;
            }
        }
    });

    std::vector<long> sum(Q * stats, 0), sq(Q * stats, 0);
    for (long b = 0; b < n_blocks; ++b)
        for (std::size_t k = 0; k < Q * stats; ++k) {
            sum[k] += bsum[b][k];
            sq[k] += bsq[b][k];
        }

    std::vector<MonteCarloRow> rows;
    const double T = static_cast<double>(trials);
    auto push = [&](double q, int j, double expected, std::size_t idx) {
        MonteCarloRow r;
        r.q = q;
        r.j = j;
        r.expected = expected;
        r.empirical_mean = static_cast<double>(sum[idx]) / T;
        double var = 0;
        if (trials > 1) {
            double mean = r.empirical_mean;
            var = (static_cast<double>(sq[idx]) - T * mean * mean) / (T - 1);
            var = std::max(var, 0.0);
        }
        r.stderr_ = std::sqrt(var / T);
        rows.push_back(r);
    };
    for (std::size_t qi = 0; qi < Q; ++qi) {
        const double q = spec.q_grid[qi];
        for (int j = 1; j <= N; ++j)
            push(q, j, ehom[j - 1].value_at(q), qi * stats + (j - 1));
        push(q, -1, 1.0 - eeul.value_at(q), qi * stats + N);
    }
    return rows;
}

// Both sides of the exact Mertens identity at q: the direct mu-sum over
// 1 <= n < e^q, and 1 - chi of the log-weighted prime complex.
inline std::pair<long, long> logprime_mertens_identity(double q, const MobiusSieve& sieve,
                                                       const MertensSeries& mertens) {
    long n_max = detail::integers_below_exp(q);
    if (n_max < 1) throw input_error("no integers below e^q");
    if (n_max > sieve.n_max())
        throw capacity_error("sieve covers " + std::to_string(sieve.n_max()) + " but e^q needs " +
                             std::to_string(n_max));
    long lhs = 0;
    for (long n = 1; n <= n_max; ++n) lhs += sieve.mu[n];
    long rhs = 1 - chi_logprime(q, mertens);
    return {lhs, rhs};
}

inline std::pair<long, long> logprime_mertens_identity(double q, const MobiusSieve& sieve) {
    return logprime_mertens_identity(q, sieve, mertens_series(sieve));
}

}  // namespace quotatope
