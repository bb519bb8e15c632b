#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "eprb/oracle.hpp"
#include "eprb/rng.hpp"
#include "eprb/selection.hpp"
#include "eprb/sweep.hpp"

using namespace eprb;

namespace
{

int failures = 0;

void report(int id, bool pass, std::string const& name, std::string const& detail)
{
    std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    failures += !pass;
}

std::string fmt(char const* format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

RunConfig defaults()
{
    RunConfig cfg;
    cfg.n = 100'000;
    cfg.d = 4;
    cfg.v_min = 0.5;
    cfg.v_max = 1.0;
    cfg.threshold = -0.995;
    cfg.theta_steps = 40;
    return cfg;
}

SweepRow single_row(RunConfig cfg, double theta)
{
    cfg.theta_start = cfg.theta_end = theta;
    cfg.theta_steps = 1;
    return sweep_theta(cfg).front();
}

double max_e_deviation(std::vector<SweepRow> const& rows, double scale)
{
    double worst = 0;
    for (auto const& r : rows)
        worst = std::max(worst, std::abs(*r.photon[0].E + scale * std::cos(2 * r.theta)));
    return worst;
}

double max_single(std::vector<SweepRow> const& rows)
{
    double worst = 0;
    for (auto const& r : rows)
        for (auto const& e : r.singles)
            worst = std::max(worst, std::abs(*e));
    return worst;
}

double max_s_deviation(std::vector<SweepRow> const& rows)
{
    double worst = 0;
    for (auto const& r : rows)
        worst = std::max(worst, std::abs(*r.S - r.reference.S));
    return worst;
}

struct SignPattern
{
    bool detection_nonnegative = true;
    std::size_t negative_points = 0;
    double first_negative = NAN;
    double last_negative = NAN;
    std::int64_t min_j = INT64_MAX;
};

SignPattern sign_pattern(std::vector<SweepRow> const& rows)
{
    SignPattern s;
    for (auto const& r : rows)
    {
        s.detection_nonnegative = s.detection_nonnegative && r.J_eberhard_detection >= 0
                                  && r.J_ch_detection >= 0;
        s.min_j = std::min(s.min_j, r.J_eberhard);
        if (r.J_eberhard < 0)
        {
            if (s.negative_points == 0)
                s.first_negative = r.theta;
            s.last_negative = r.theta;
            ++s.negative_points;
        }
    }
    return s;
}

void criterion_1_2(std::vector<SweepRow> const& rows)
{
    double const e_dev = max_e_deviation(rows, 1.0);
    double const singles = max_single(rows);
    report(1, e_dev <= 0.10 && singles <= 0.05, "singlet correlation",
           fmt("max|E+cos2theta| = %.4f (tol 0.10), max|E_i| = %.4f (tol 0.05)", e_dev,
               singles));

    double const s_dev = max_s_deviation(rows);
    double const s_peak = *single_row(defaults(), 3 * kPi / 8).S;
    report(2, s_dev <= 0.15 && s_peak >= 2.5, "CHSH violation",
           fmt("max|S-S_ref| = %.4f (tol 0.15), S(3pi/8) = %.4f (need >= 2.5)", s_dev,
               s_peak));
}

void criterion_4(std::vector<SweepRow> const& rows)
{
    auto cfg = defaults();
    cfg.mode = Mode::noncfd;
    auto const noncfd_rows = sweep_theta(cfg);
    auto const cfd = sign_pattern(rows);
    auto const noncfd = sign_pattern(noncfd_rows);
    bool const pass = cfd.detection_nonnegative && noncfd.detection_nonnegative
                      && cfd.negative_points > 0 && noncfd.negative_points > 0;
    report(4, pass, "Eberhard sign flip",
           fmt("no threshold J>=0: cfd %s, noncfd %s; with threshold J<0 at %zu (cfd) "
               "and %zu (noncfd) of %zu points; min J: cfd %lld, noncfd %lld",
               cfd.detection_nonnegative ? "yes" : "no",
               noncfd.detection_nonnegative ? "yes" : "no", cfd.negative_points,
               noncfd.negative_points, rows.size(), static_cast<long long>(cfd.min_j),
               static_cast<long long>(noncfd.min_j)));
}

void criterion_5()
{
    double max_delta = 0;
    double min_margin = INFINITY;
    bool ok = true;
    int runs = 0;
    for (std::uint64_t seed : {kDefaultSeed, std::uint64_t{1}, std::uint64_t{2}})
    {
        auto cfg = defaults();
        cfg.seed = seed;
        for (auto const& r : sweep_theta(cfg))
        {
            if (!r.delta.delta || !r.S)
            {
                ok = false;
                continue;
            }
            max_delta = std::max(max_delta, *r.delta.delta);
            min_margin = std::min(min_margin, *r.delta.bound - std::abs(*r.S));
            ok = ok && *r.delta.delta < 0.8 && std::abs(*r.S) <= *r.delta.bound;
        }
        ++runs;
    }
    report(5, ok, "delta bound",
           fmt("%d seeded runs: max delta = %.5f (need < 0.8), min (4-2delta)-|S| = %.4f",
               runs, max_delta, min_margin));
}

void criterion_3()
{
    auto cfg = defaults();
    cfg.threshold = -0.999;
    cfg.n = 1'000'000;
    auto const rows = sweep_theta(cfg);
    double const e_dev = max_e_deviation(rows, 1.0);
    double const singles = max_single(rows);
    double const s_peak = *single_row(cfg, 3 * kPi / 8).S;
    double const s_gap = std::abs(s_peak - 2 * std::sqrt(2.0));
    report(3, e_dev <= 0.04 && s_gap <= 0.06, "convergence",
           fmt("threshold -0.999, N=1e6: max|E+cos2theta| = %.4f (tol 0.04), "
               "S(3pi/8) = %.4f, |S-2sqrt2| = %.4f (tol 0.06), max|E_i| = %.4f",
               e_dev, s_peak, s_gap, singles));
}

void criterion_6()
{
    auto cfg = defaults();
    cfg.d = 0;
    cfg.v_min = 0.95;
    auto const rows = sweep_theta(cfg);
    double const e_dev = max_e_deviation(rows, 0.5);
    double max_s = 0;
    for (auto const& r : rows)
        max_s = std::max(max_s, std::abs(*r.S));
    report(6, e_dev <= 0.10 && max_s <= 2.1, "d=0 null result",
           fmt("max|E+cos2theta/2| = %.4f (tol 0.10), max|S| = %.4f (tol 2.1)", e_dev,
               max_s));
}

void criterion_7()
{
    auto const quad = enumerate_quadruple_identities();
    auto const noncfd = enumerate_noncfd_constraint();
    auto const eb = enumerate_eberhard();
    std::size_t const violations = quad.violations.size() + noncfd.violations.size()
                                   + eb.eberhard.violations.size()
                                   + eb.ch.violations.size();
    bool const counts = quad.cases_checked == 16 && noncfd.cases_checked == 256
                        && eb.eberhard.cases_checked == 81 && eb.ch.cases_checked == 16;
    report(7, counts && violations == 0, "enumeration oracles",
           fmt("%llu+%llu+%llu+%llu cases, %zu violations",
               static_cast<unsigned long long>(quad.cases_checked),
               static_cast<unsigned long long>(noncfd.cases_checked),
               static_cast<unsigned long long>(eb.eberhard.cases_checked),
               static_cast<unsigned long long>(eb.ch.cases_checked), violations));
}

void criterion_8()
{
    CounterRng const rng{0xACCE55};
    std::uint64_t mismatches = 0;
    std::uint64_t passing_pairs = 0;
    std::uint64_t exceptions = 0;
    for (std::uint64_t k = 0; k < 1'000'000; ++k)
    {
        auto const u = rng.uniforms(k, Stream::station_1);
        auto const w = rng.uniforms(k, Stream::station_2);
        double const threshold = -1.0 + 0.5 * u[1];
        ModelParams const p{4.0, 0.5, 1.0, threshold};
        double const v = -1.0 + 0.5 * u[0];
        bool const by_voltage = identify_photon(v, threshold) == 1;
        bool const by_time = to_time(v, p) < window_of(p);
        mismatches += by_voltage != by_time;

        // a passing pair below the threshold
        double const v1 = -1.0 + (threshold + 1.0) * w[0];
        double const v2 = -1.0 + (threshold + 1.0) * w[1];
        auto const sel = select_by_window(to_time(v1, p), to_time(v2, p), window_of(p));
        if (sel.pass_pair)
        {
            ++passing_pairs;
            exceptions += !sel.coincident;
        }
    }
    report(8, mismatches == 0 && exceptions == 0 && passing_pairs > 990'000,
           "selection equivalence",
           fmt("1e6 (v, threshold) pairs: %llu mismatches; %llu passing pairs: %llu "
               "outside the coincidence window",
               static_cast<unsigned long long>(mismatches),
               static_cast<unsigned long long>(passing_pairs),
               static_cast<unsigned long long>(exceptions)));
}

void criterion_9()
{
    ModelParams const p{4.0, 0.5, 1.0, -0.995};
    constexpr std::uint64_t n = 1'000'000;
    double const expected = pass_probability_quadrature(p);
    double const simulated = simulated_pass_fraction(p, n, 0x9A55);
    double const sigma = std::sqrt(expected * (1 - expected) / n);
    bool const pass = std::abs(simulated - expected) <= 4 * sigma;

    auto const row = single_row(defaults(), 0.0);
    double const station = row.pass_fraction;
    double const pair = row.pair_pass_fraction;
    double const quadruple = row.quadruple_pass_fraction.value_or(0);
    constexpr double quoted = 0.23;
    bool const flagged = std::abs(station - quoted) > 0.08 && std::abs(pair - quoted) > 0.08
                         && std::abs(quadruple - quoted) > 0.08;
    report(9, pass, "pass-probability oracle",
           fmt("quadrature P = %.6f, simulated = %.6f, 4 sigma = %.6f; reported ~23%%: "
               "per-station %.4f, per-pair %.4f, per-quadruple %.4f%s",
               expected, simulated, 4 * sigma, station, pair, quadruple,
               flagged ? " [FLAG: all three differ by > 8 points]" : ""));
}

void criterion_10()
{
    auto cfg = defaults();
    cfg.theta_steps = 10;
    auto csv = [](RunConfig const& c) {
        std::ostringstream os;
        write_csv(os, theta_table(sweep_theta(c)));
        return os.str();
    };
    cfg.threads = 1;
    auto const a = csv(cfg);
    auto const b = csv(cfg);
    cfg.threads = 8;
    auto const c = csv(cfg);
    cfg.mode = Mode::noncfd;
    cfg.threads = 1;
    auto const d = csv(cfg);
    cfg.threads = 5;
    auto const e = csv(cfg);
    report(10, a == b && a == c && d == e, "determinism",
           fmt("cfd csv %zu bytes identical across runs and 1/8 threads: %s; noncfd "
               "identical across 1/5 threads: %s",
               a.size(), a == b && a == c ? "yes" : "no", d == e ? "yes" : "no"));
}

}  // namespace

int main()
{
    {
        auto cfg = defaults();
        cfg.threads = 1;
        auto const start = std::chrono::steady_clock::now();
        single_row(cfg, 0.0);
        std::chrono::duration<double> const elapsed = std::chrono::steady_clock::now() - start;
        std::printf("info: N=1e5 CFD trials on one thread in %.3f s\n", elapsed.count());
    }

    auto const rows = sweep_theta(defaults());
    criterion_1_2(rows);
    criterion_3();
    criterion_4(rows);
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
