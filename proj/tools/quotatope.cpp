// quotatope — command-line surface for quota-complex topology.
//
// Subcommands reproduce the library's datasets (sequence complexes, Euler
// characteristics, Mertens diagnostics, divisor scans, series checks, random
// complexes) as deterministic CSV, plus verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 capacity
// error.  Identical invocations produce byte-identical outputs.  The env var
// QUOTATOPE_THREADS caps internal parallelism.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quotatope/core.hpp"
#include "quotatope/csv.hpp"
#include "quotatope/divisor.hpp"
#include "quotatope/json_io.hpp"
#include "quotatope/oracle.hpp"
#include "quotatope/random_complex.hpp"
#include "quotatope/seq.hpp"
#include "quotatope/series.hpp"
#include "quotatope/svg.hpp"
#include "quotatope/zeta.hpp"

namespace qt = quotatope;

namespace {

int g_rc = 0;  // set by verification commands on failure

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw qt::input_error("cannot open output file: " + path);
    out << content;
    if (!out) throw qt::input_error("failed writing output file: " + path);
}

std::string svg_path_for(const std::string& out, const char* fallback) {
    std::string base = out.empty() || out == "-" ? fallback : out;
    auto dot = base.rfind(".csv");
    if (dot != std::string::npos && dot == base.size() - 4) base.resize(dot);
    return base + ".svg";
}

struct CsvBuffer {
    std::ostringstream os;
    void row(const std::vector<std::string>& cells) { qt::csv_row(os, cells); }
    std::string str() const { return os.str(); }
};

// ---- seq ---------------------------------------------------------------------

int run_seq(qt::SeqKind kind, long q_max, int i_max, const std::string& prefix, bool svg) {
    qt::SequenceSpec spec = kind == qt::SeqKind::primes    ? qt::SequenceSpec::primes(q_max + 1)
                            : kind == qt::SeqKind::squares ? qt::SequenceSpec::squares(q_max + 1)
                                                           : qt::SequenceSpec::cubes(q_max + 1);
    auto counts = qt::count_table(spec, q_max, i_max);
    auto hom = qt::homology_table(counts);
    auto ratios = qt::ratio_series(counts, hom);

    CsvBuffer cs, ch, cr, cf;
    cs.row({"i", "q", "s"});
    ch.row({"i", "q", "h"});
    cr.row({"i", "q", "S", "H", "S_ave"});
    for (int i = 0; i <= i_max; ++i)
        for (long q = 1; q <= q_max; ++q) {
            cs.row({qt::csv_cell(i), qt::csv_cell(q), qt::csv_cell(counts.at(i, q))});
            ch.row({qt::csv_cell(i), qt::csv_cell(q), qt::csv_cell(hom.at(i, q))});
            const auto& S = ratios.S[i][q];
            const auto& H = ratios.H[i][q];
            cr.row({qt::csv_cell(i), qt::csv_cell(q), S ? qt::csv_cell(*S) : "",
                    H ? qt::csv_cell(*H) : "", qt::csv_cell(ratios.S_ave[i][q])});
        }

    qt::FitTransform tr = kind == qt::SeqKind::primes    ? qt::FitTransform::prime
                          : kind == qt::SeqKind::squares ? qt::FitTransform::square
                                                         : qt::FitTransform::cube;
    cf.row({"i", "slope", "intercept", "rms_residual", "points"});
    for (int i = 0; i <= std::min(5, i_max); ++i) {
        auto f = qt::slope_fit(counts, i, tr);
        cf.row({qt::csv_cell(i), qt::csv_cell(f.slope), qt::csv_cell(f.intercept),
                qt::csv_cell(f.rms_residual), qt::csv_cell(f.points)});
    }

    write_text(prefix + "_counts.csv", cs.str());
    write_text(prefix + "_homology.csv", ch.str());
    write_text(prefix + "_ratios.csv", cr.str());
    write_text(prefix + "_slopes.csv", cf.str());
    if (svg) {
        std::vector<qt::SvgSeries> plot;
        for (int i = 0; i <= std::min(7, i_max); ++i) {
            qt::SvgSeries s;
            s.label = "S_" + std::to_string(i);
            for (long q = 1; q <= q_max; ++q)
                if (ratios.S[i][q]) s.pts.push_back({static_cast<double>(q), ratios.S[i][q]->get_d()});
            plot.push_back(std::move(s));
        }
        write_text(prefix + "_ratios.svg", qt::svg_scatter(plot, "cell fractions", "q", "S_i(q)"));
    }
    std::cerr << "wrote " << prefix << "_{counts,homology,ratios,slopes}.csv\n";
    return 0;
}

// ---- euler -------------------------------------------------------------------

int run_euler(long q_max, const std::string& out, bool svg) {
    if (q_max < 3) throw qt::input_error("euler: need --qmax >= 3");
    auto chi = qt::chi_from_product(qt::WeightMultiset::primes(q_max + 1), q_max);
    CsvBuffer c;
    c.row({"q", "chi"});
    for (long q = 3; q <= q_max; ++q) c.row({qt::csv_cell(q), qt::csv_cell(chi.at(q))});
    write_text(out, c.str());
    if (svg) {
        qt::SvgSeries s;
        for (long q = 3; q <= q_max; ++q)
            s.pts.push_back({static_cast<double>(q), chi.at(q).get_d()});
        write_text(svg_path_for(out, "euler"),
                   qt::svg_scatter({s}, "Euler characteristic of the prime complex", "q", "chi"));
    }
    return 0;
}

// ---- logprime ----------------------------------------------------------------

int run_logprime(double q_lo, double q_hi, long n_max, long samples, const std::string& out,
                 bool svg) {
    if (n_max < 2) throw qt::input_error("logprime: need --nmax >= 2");
    auto sieve = qt::mobius_sieve(n_max);
    auto mertens = qt::mertens_series(sieve);
    if (q_hi <= 0) q_hi = std::log(static_cast<double>(n_max) + 1.0);
    if (!(q_lo < q_hi)) throw qt::input_error("logprime: need --qlo < --qhi");
    auto d = qt::rh_diagnostic(mertens, q_lo, q_hi, samples);
    CsvBuffer c;
    c.row({"q", "ln_abs_chi", "envelope"});
    for (const auto& p : d.points)
        c.row({qt::csv_cell(p.q), qt::csv_cell(p.ln_abs_chi),
               qt::csv_cell(d.slope * p.q + d.intercept)});
    write_text(out, c.str());
    std::cerr << "points=" << d.points.size() << " skipped_zero=" << d.skipped_zero
              << " slope=" << qt::csv_cell(d.slope) << " intercept=" << qt::csv_cell(d.intercept)
              << " fraction_below=" << qt::csv_cell(d.fraction_below) << "\n";
    if (svg) {
        qt::SvgSeries pts, env;
        pts.label = "ln|chi|";
        env.label = "0.55 q + c";
        for (const auto& p : d.points) {
            pts.pts.push_back({p.q, p.ln_abs_chi});
            env.pts.push_back({p.q, d.slope * p.q + d.intercept});
        }
        write_text(svg_path_for(out, "logprime"),
                   qt::svg_scatter({pts, env}, "log-prime complex growth", "q", "ln|chi|"));
    }
    return 0;
}

// ---- divisor -----------------------------------------------------------------

int run_divisor(long n_max, const std::string& out, bool svg) {
    auto rows = qt::perfect_scan(2, n_max);
    CsvBuffer c;
    c.row({"n", "tau", "sigma_proper", "classification", "top_dim", "perfect_gap", "signature"});
    for (const auto& p : rows) {
        std::string sig;
        for (const auto& [dim, cnt] : p.signature.sphere_counts) {
            if (!sig.empty()) sig += ';';
            sig += std::to_string(dim) + ":" + cnt.get_str();
        }
        c.row({qt::csv_cell(p.n), qt::csv_cell(p.tau), qt::csv_cell(p.sigma_proper),
               qt::to_string(p.classification), qt::csv_cell(p.top_dim.value()),
               qt::csv_cell(p.perfect_gap.value()), sig});
    }
    write_text(out, c.str());
    std::cerr << "non-contractible=" << rows.size() << " in [2," << n_max << ")\n";
    if (svg) {
        qt::SvgSeries s;
        for (const auto& p : rows)
            s.pts.push_back({static_cast<double>(p.n), static_cast<double>(p.top_dim.value())});
        write_text(svg_path_for(out, "divisor"),
                   qt::svg_scatter({s}, "divisor complexes: top sphere dimension", "n", "top dim"));
    }
    return 0;
}

// ---- series ------------------------------------------------------------------

int run_series_lehmer(long degree, const std::string& out) {
    auto r = qt::lehmer_check(degree);
    CsvBuffer c;
    c.row({"m"});
    for (long m : r.ties) c.row({qt::csv_cell(m)});
    write_text(out, c.str());
    std::cerr << "ties=" << r.ties.size() << " (tau checked for n <= " << degree << ")\n";
    if (!r.ties.empty()) {
        std::cerr << "verification failure: consecutive equal chi values found\n";
        return 1;
    }
    return 0;
}

int run_series_tau(long degree, const std::string& out) {
    auto r = qt::lehmer_check(degree);
    CsvBuffer c;
    c.row({"n", "tau"});
    for (long n = 1; n <= degree; ++n) c.row({qt::csv_cell(n), qt::csv_cell(r.tau[n])});
    write_text(out, c.str());
    return 0;
}

int run_series_partitions(long degree, const std::string& out) {
    auto p = qt::partition_numbers(degree);
    CsvBuffer c;
    c.row({"n", "p"});
    for (long n = 1; n <= degree; ++n) c.row({qt::csv_cell(n), qt::csv_cell(p[n - 1])});
    write_text(out, c.str());
    return 0;
}

// ---- random ------------------------------------------------------------------

int run_random(const std::string& spec_path, const std::string& out, bool svg) {
    std::ifstream in(spec_path);
    if (!in) throw qt::input_error("cannot open spec file: " + spec_path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto spec = qt::random_spec_from_text(ss.str());
    auto rows = qt::monte_carlo(spec, spec.trials, spec.seed);
    CsvBuffer c;
    c.row({"q", "j", "expected", "empirical_mean", "stderr"});
    for (const auto& r : rows)
        c.row({qt::csv_cell(r.q), qt::csv_cell(r.j), qt::csv_cell(r.expected),
               qt::csv_cell(r.empirical_mean), qt::csv_cell(r.stderr_)});
    write_text(out, c.str());
    std::cerr << "densities=" << spec.densities.size() << " trials=" << spec.trials
              << " seed=" << spec.seed << " (j=-1 rows report chi)\n";
    if (svg) {
        std::vector<qt::SvgSeries> plot;
        const int N = static_cast<int>(spec.densities.size());
        for (int j = 1; j <= N; ++j) {
            qt::SvgSeries s;
            s.label = "E[dim H~_" + std::to_string(j - 1) + "]";
            for (const auto& r : rows)
                if (r.j == j) s.pts.push_back({r.q, r.empirical_mean});
            plot.push_back(std::move(s));
        }
        write_text(svg_path_for(out, "random"),
                   qt::svg_scatter(plot, "random quota complex homology", "q", "empirical mean"));
    }
    return 0;
}

// ---- verify ------------------------------------------------------------------

int run_verify_shell(long trials, std::uint64_t seed) {
    long failures = 0;
    for (long t = 0; t < trials; ++t) {
        qt::detail::TrialRng rng(seed, static_cast<std::uint64_t>(t));
        int n = 2 + static_cast<int>(rng.next() % 11);  // up to 12 vertices
        qt::ScalarQuotaSystem sys;
        long total = 0, wmin = 40;
        for (int i = 0; i < n; ++i) {
            long w = 1 + static_cast<long>(rng.next() % 40);
            total += w;
            wmin = std::min(wmin, w);
            sys.weights.emplace_back(w);
        }
        // quota above the least weight: the complex is nonempty and the shell
        // window is live
        sys.quota = wmin + 1 + static_cast<long>(rng.next() % (total - wmin + 2));
        auto sig = qt::bouquet_signature(sys);
        auto betti = qt::betti_numbers(qt::enumerate_complex(sys));
        if (!qt::agrees(sig, betti)) {
            ++failures;
            if (failures <= 5) {
                std::cerr << "mismatch: quota=" << qt::to_string(sys.quota) << " weights=";
                for (const auto& w : sys.weights) std::cerr << qt::to_string(w) << " ";
                std::cerr << "\n";
            }
        }
    }
    std::cout << "shell-theorem: trials=" << trials << " failures=" << failures << "\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "quotatope: topology of quota complexes (sphere counts, Euler characteristics,\n"
        "arithmetic sequence complexes, divisor scans, series identities, random models)"};
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 capacity exceeded.\n"
        "QUOTATOPE_THREADS caps internal parallelism.");

    // seq
    auto* seq = app.add_subcommand("seq", "face counts, homology, cell fractions, slope fits");
    seq->require_subcommand(1);
    struct SeqOpts {
        long qmax;
        int imax;
        std::string out;
        bool svg = false;
    };
    auto add_seq = [&](const char* name, qt::SeqKind kind, long def_q, int def_i) {
        auto opts = std::make_shared<SeqOpts>();
        opts->qmax = def_q;
        opts->imax = def_i;
        opts->out = std::string("seq_") + name;
        auto* sub = seq->add_subcommand(name, std::string("sequence complex of ") + name);
        sub->add_option("--qmax", opts->qmax, "largest quota")->capture_default_str();
        sub->add_option("--imax", opts->imax, "largest homology dimension")->capture_default_str();
        sub->add_option("--out", opts->out, "output file prefix")->capture_default_str();
        sub->add_flag("--svg", opts->svg, "also write an SVG scatter");
        sub->callback([opts, kind] { g_rc = run_seq(kind, opts->qmax, opts->imax, opts->out, opts->svg); });
    };
    add_seq("primes", qt::SeqKind::primes, 550, 16);
    add_seq("squares", qt::SeqKind::squares, 629, 9);
    add_seq("cubes", qt::SeqKind::cubes, 15633, 13);

    // euler
    long euler_qmax = 550;
    std::string euler_out;
    bool euler_svg = false;
    auto* euler = app.add_subcommand("euler", "Euler characteristic of the prime complex per quota");
    euler->add_option("--qmax", euler_qmax, "largest quota")->capture_default_str();
    euler->add_option("--out", euler_out, "output CSV (default stdout)");
    euler->add_flag("--svg", euler_svg, "also write an SVG scatter");
    euler->callback([&] { g_rc = run_euler(euler_qmax, euler_out, euler_svg); });

    // logprime
    double lp_qlo = 7.0, lp_qhi = 0.0;
    long lp_nmax = 1000000, lp_samples = 0;
    std::string lp_out;
    bool lp_svg = false;
    auto* lp = app.add_subcommand("logprime",
                                  "growth diagnostic of the log-weighted prime complex");
    lp->add_option("--qlo", lp_qlo, "lower quota")->capture_default_str();
    lp->add_option("--qhi", lp_qhi, "upper quota (default ln(nmax+1))");
    lp->add_option("--nmax", lp_nmax, "Moebius sieve size")->capture_default_str();
    lp->add_option("--samples", lp_samples, "0 = every jump of floor(e^q); else uniform count")
        ->capture_default_str();
    lp->add_option("--out", lp_out, "output CSV (default stdout)");
    lp->add_flag("--svg", lp_svg, "also write an SVG scatter");
    lp->callback([&] { g_rc = run_logprime(lp_qlo, lp_qhi, lp_nmax, lp_samples, lp_out, lp_svg); });

    // divisor
    long dv_nmax = 12384;
    std::string dv_out;
    bool dv_svg = false;
    auto* dv = app.add_subcommand("divisor", "non-contractible divisor complexes in 2 <= n < nmax");
    dv->add_option("--nmax", dv_nmax, "scan upper bound (exclusive)")->capture_default_str();
    dv->add_option("--out", dv_out, "output CSV (default stdout)");
    dv->add_flag("--svg", dv_svg, "also write an SVG scatter");
    dv->callback([&] { g_rc = run_divisor(dv_nmax, dv_out, dv_svg); });

    // series
    auto* sr = app.add_subcommand("series", "power-series identities of counting complexes");
    sr->require_subcommand(1);
    long lehmer_deg = 1000, tau_deg = 100, part_deg = 100;
    std::string lehmer_out, tau_out, part_out;
    auto* lh = sr->add_subcommand("lehmer", "consecutive equal chi values (tau zeros)");
    lh->add_option("--degree", lehmer_deg, "check tau(n) for n <= degree")->capture_default_str();
    lh->add_option("--out", lehmer_out, "output CSV (default stdout)");
    lh->callback([&] { g_rc = run_series_lehmer(lehmer_deg, lehmer_out); });
    auto* ta = sr->add_subcommand("tau", "tau coefficients of the 24-fold counting complex");
    ta->add_option("--degree", tau_deg, "largest n")->capture_default_str();
    ta->add_option("--out", tau_out, "output CSV (default stdout)");
    ta->callback([&] { g_rc = run_series_tau(tau_deg, tau_out); });
    auto* pa = sr->add_subcommand("partitions", "partition numbers from the reciprocal series");
    pa->add_option("--degree", part_deg, "largest n")->capture_default_str();
    pa->add_option("--out", part_out, "output CSV (default stdout)");
    pa->callback([&] { g_rc = run_series_partitions(part_deg, part_out); });

    // random
    std::string rn_spec, rn_out;
    bool rn_svg = false;
    auto* rn = app.add_subcommand("random", "expected vs sampled homology of random systems");
    rn->add_option("--spec", rn_spec, "JSON spec file")->required();
    rn->add_option("--out", rn_out, "output CSV (default stdout)");
    rn->add_flag("--svg", rn_svg, "also write an SVG scatter");
    rn->callback([&] { g_rc = run_random(rn_spec, rn_out, rn_svg); });

    // verify
    auto* vf = app.add_subcommand("verify", "verification suites");
    vf->require_subcommand(1);
    long vs_trials = 1000;
    std::uint64_t vs_seed = 7;
    auto* vs = vf->add_subcommand("shell-theorem",
                                  "sphere counts vs boundary-matrix homology on random systems");
    vs->add_option("--trials", vs_trials, "number of random systems")->capture_default_str();
    vs->add_option("--seed", vs_seed, "base seed")->capture_default_str();
    vs->callback([&] { g_rc = run_verify_shell(vs_trials, vs_seed); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const qt::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qt::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const qt::numeric_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return g_rc;
}
