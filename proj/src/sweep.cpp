#include "eprb/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "eprb/oracle.hpp"
#include "eprb/parallel.hpp"

namespace eprb
{
namespace
{

double to_radians(double value, AngleUnit unit)
{
    return unit == AngleUnit::deg ? value * kPi / 180.0 : value;
}

double ratio_or_zero(std::int64_t num, std::int64_t den)
{
    return den == 0 ? 0.0
                    : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

void validate(RunConfig const& cfg)
{
    if (cfg.n == 0)
        throw ConfigError("--n", "must be at least 1");
    if (cfg.theta_steps == 0)
        throw ConfigError("--theta-steps", "must be at least 1");
    if (!std::isfinite(cfg.theta_start))
        throw ConfigError("--theta-start", "must be finite");
    if (!std::isfinite(cfg.theta_end))
        throw ConfigError("--theta-end", "must be finite");
    if (!(cfg.d >= 0) || !std::isfinite(cfg.d))
        throw ConfigError("--d", "must be finite and >= 0");
    if (!(cfg.v_max > 0) || !std::isfinite(cfg.v_max))
        throw ConfigError("--vmax", "must be finite and > 0");
    if (!(cfg.v_min >= 0) || cfg.v_min > cfg.v_max)
        throw ConfigError("--vmin", "must satisfy 0 <= vmin <= vmax");
    if (!(cfg.threshold >= -cfg.v_max && cfg.threshold <= -cfg.v_min))
        throw ConfigError("--threshold", "must lie in [-vmax, -vmin]");
    if (cfg.threshold_sweep)
    {
        auto const& g = *cfg.threshold_sweep;
        if (g.steps == 0)
            throw ConfigError("--threshold-sweep", "needs at least one step");
        for (double t : {g.start, g.end})
        {
            if (!(t >= -cfg.v_max && t <= -cfg.v_min))
                throw ConfigError("--threshold-sweep",
                                  "grid must lie in [-vmax, -vmin]");
        }
        if (!(cfg.v_max > cfg.v_min))
            throw ConfigError("--vmin",
                              "threshold sweep needs vmin < vmax");
    }
}

ModelParams model_params(RunConfig const& cfg)
{
    return {cfg.d, cfg.v_min, cfg.v_max, cfg.threshold};
}

std::vector<double> theta_grid(RunConfig const& cfg)
{
    double const lo = to_radians(cfg.theta_start, cfg.angle_unit);
    double const hi = to_radians(cfg.theta_end, cfg.angle_unit);
    std::vector<double> grid(cfg.theta_steps);
    if (cfg.theta_steps == 1)
    {
        grid[0] = lo;
        return grid;
    }
    double const step = (hi - lo) / (cfg.theta_steps - 1);
    for (std::uint32_t i = 0; i < cfg.theta_steps; ++i)
        grid[i] = lo + step * i;
    grid.back() = hi;
    return grid;
}

//---------------------------------------------------------------------------//

CfdTally simulate_cfd(ModelParams const& p, SettingsQuad const& q,
                      std::uint64_t n, CounterRng const& rng, unsigned threads)
{
    if (n == 0)
        throw InvalidParameter("simulate_cfd needs at least one trial");
    return parallel_reduce(n, threads, CfdTally{},
                           [&](std::uint64_t k, CfdTally& acc) {
                               acc.add(make_cfd_trial(p, q, k,
                                                      counter_draws(rng, k)));
                           });
}

NonCfdTally simulate_noncfd(ModelParams const& p, SettingsQuad const& q,
                            std::uint64_t quota, CounterRng const& rng,
                            unsigned threads)
{
    auto const schedule = schedule_noncfd(quota, rng);
    return parallel_reduce(
        schedule.size(), threads, NonCfdTally{},
        [&](std::uint64_t i, NonCfdTally& acc) {
            auto const& t = schedule[i];
            acc.add(make_noncfd_trial(p, q, t.pair, t.k, counter_draws(rng, t.k)));
        });
}

SweepRow make_row(double theta, CfdTally const& t, DeltaNorm norm,
                  std::uint64_t n, std::uint64_t seed)
{
    SweepRow row;
    row.theta = theta;
    std::int64_t pair_pass = 0;
    for (std::size_t i = 0; i < 4; ++i)
    {
        row.photon[i] = photon_averages(t.pairs[i]);
        row.detection[i] = detection_averages(t.pairs[i]);
        row.singles[i] = photon_single(t.stations[i]);
        pair_pass += t.pairs[i].n_pass;
    }
    row.S = chsh(row.photon);
    row.S_hat = chsh_detection(t);
    row.reference = quantum_reference(theta);
    row.J_eberhard = eberhard_j(t.pairs);
    row.J_ch = ch_j(t.pairs);
    row.J_eberhard_detection = eberhard_j(t.pairs, {}, false);
    row.J_ch_detection = ch_j(t.pairs, {}, false);
    row.delta = delta(t, norm);

    std::int64_t n_w = 0;
    std::int64_t n_station = 0;
    for (auto const& s : t.stations)
    {
        n_w += s.n_w;
        n_station += s.n;
    }
    row.pass_fraction = ratio_or_zero(n_w, n_station);
    row.pair_pass_fraction = ratio_or_zero(pair_pass, 4 * t.n_trials);
    row.quadruple_pass_fraction = ratio_or_zero(t.n_any_pass, t.n_trials);
    row.n = n;
    row.seed = seed;
    return row;
}

SweepRow make_row(double theta, NonCfdTally const& t, std::uint64_t n,
                  std::uint64_t seed)
{
    SweepRow row;
    row.theta = theta;
    std::int64_t pair_pass = 0;
    std::int64_t pair_total = 0;
    for (std::size_t i = 0; i < 4; ++i)
    {
        row.photon[i] = photon_averages(t.pairs[i]);
        row.detection[i] = detection_averages(t.pairs[i]);
        row.singles[i] = photon_single(t.stations[i]);
        pair_pass += t.pairs[i].n_pass;
        pair_total += t.pairs[i].n_total;
    }
    row.S = chsh(row.photon);
    row.S_hat = chsh(row.detection);
    row.reference = quantum_reference(theta);
    row.J_eberhard = eberhard_j(t.pairs);
    row.J_ch = ch_j(t.pairs);
    row.J_eberhard_detection = eberhard_j(t.pairs, {}, false);
    row.J_ch_detection = ch_j(t.pairs, {}, false);

    std::int64_t n_w = 0;
    std::int64_t n_station = 0;
    for (auto const& s : t.stations)
    {
        n_w += s.n_w;
        n_station += s.n;
    }
    row.pass_fraction = ratio_or_zero(n_w, n_station);
    row.pair_pass_fraction = ratio_or_zero(pair_pass, pair_total);
    row.n = n;
    row.seed = seed;
    return row;
}

std::vector<SweepRow> sweep_theta(RunConfig const& cfg, std::ostream* dump)
{
    validate(cfg);
    if (cfg.mode == Mode::oracles)
        throw ConfigError("--mode", "oracles mode has no theta sweep");
    ModelParams const p = model_params(cfg);
    auto const grid = theta_grid(cfg);

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    RunOptions const opts{cfg.threads};
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        double const theta = grid[i];
        auto const q = SettingsQuad::from_theta(theta);
        CounterRng const rng{cfg.seed, static_cast<std::uint32_t>(i)};
        auto const supplier = [&rng](std::uint64_t k) {
            return counter_draws(rng, k);
        };

        if (cfg.mode == Mode::cfd)
        {
            CfdTally t;
            if (dump)
            {
                auto const records = run_cfd(p, q, cfg.n, supplier, opts);
                write_trial_dump(*dump, q, records, i == 0);
                t = tally(records);
            }
            else
            {
                t = simulate_cfd(p, q, cfg.n, rng, cfg.threads);
            }
            rows.push_back(make_row(theta, t, cfg.delta_norm, cfg.n, cfg.seed));
        }
        else
        {
            NonCfdTally t;
            if (dump)
            {
                auto const schedule = schedule_noncfd(cfg.n, rng);
                auto const records = run_noncfd(p, q, schedule, supplier, opts);
                write_trial_dump(*dump, q, records, i == 0);
                t = tally(records);
            }
            else
            {
                t = simulate_noncfd(p, q, cfg.n, rng, cfg.threads);
            }
            rows.push_back(make_row(theta, t, cfg.n, cfg.seed));
        }
    }
    return rows;
}

std::vector<ThresholdRow> sweep_threshold(RunConfig const& cfg)
{
    validate(cfg);
    if (!cfg.threshold_sweep)
        throw ConfigError("--threshold-sweep", "no threshold grid given");
    if (cfg.mode == Mode::oracles)
        throw ConfigError("--mode", "oracles mode has no threshold sweep");
    auto const& g = *cfg.threshold_sweep;
    double const theta = 3 * kPi / 8;
    auto const q = SettingsQuad::from_theta(theta);

    std::vector<ThresholdRow> rows;
    rows.reserve(g.steps);
    for (std::uint32_t i = 0; i < g.steps; ++i)
    {
        double threshold = g.start;
        if (g.steps > 1)
            threshold = i + 1 == g.steps
                            ? g.end
                            : g.start + (g.end - g.start) * i / (g.steps - 1);
        ModelParams const p = model_params(cfg).with_threshold(threshold);
        CounterRng const rng{cfg.seed, i};
        ThresholdRow out;
        out.threshold = threshold;
        if (cfg.mode == Mode::cfd)
            out.row = make_row(theta, simulate_cfd(p, q, cfg.n, rng, cfg.threads),
                               cfg.delta_norm, cfg.n, cfg.seed);
        else
            out.row = make_row(theta,
                               simulate_noncfd(p, q, cfg.n, rng, cfg.threads),
                               cfg.n, cfg.seed);
        out.pass_probability = pass_probability_quadrature(p);
        rows.push_back(out);
    }
    return rows;
}

//---------------------------------------------------------------------------//
// Tables
//---------------------------------------------------------------------------//

namespace
{

Cell cell(std::optional<double> v)
{
    return v ? Cell{*v} : Cell{};
}

}  // namespace

Table theta_table(std::vector<SweepRow> const& rows)
{
    Table t;
    t.columns = {"theta",     "E11",       "E12",       "E21",
                 "E22",       "E1_1",      "E1_2",      "E2_1",
                 "E2_2",      "S",         "S_ref",     "E_ref",
                 "S_hat",     "J_eberhard", "J_ch",     "delta",
                 "bound",     "n_pass_11", "n_pass_12", "n_pass_21",
                 "n_pass_22", "pass_fraction", "N",     "seed"};
    for (auto const& r : rows)
    {
        std::vector<Cell> line;
        line.reserve(t.columns.size());
        line.emplace_back(r.theta);
        for (auto const& e : r.photon)
            line.push_back(cell(e.E));
        for (auto const& s : r.singles)
            line.push_back(cell(s));
        line.push_back(cell(r.S));
        line.emplace_back(r.reference.S);
        line.emplace_back(r.reference.E);
        line.push_back(cell(r.S_hat));
        line.emplace_back(r.J_eberhard);
        line.emplace_back(r.J_ch);
        line.push_back(cell(r.delta.delta));
        line.push_back(cell(r.delta.bound));
        for (auto const& e : r.photon)
            line.emplace_back(e.n_pass);
        line.emplace_back(r.pass_fraction);
        line.emplace_back(r.n);
        line.emplace_back(r.seed);
        t.rows.push_back(std::move(line));
    }
    return t;
}

Table threshold_table(std::vector<ThresholdRow> const& rows)
{
    Table t;
    t.columns = {"threshold", "theta",     "S",         "S_ref",
                 "S_hat",     "delta",     "bound",     "pass_fraction",
                 "pass_probability",       "n_pass_11", "n_pass_12",
                 "n_pass_21", "n_pass_22", "N",         "seed"};
    for (auto const& tr : rows)
    {
        auto const& r = tr.row;
        std::vector<Cell> line;
        line.emplace_back(tr.threshold);
        line.emplace_back(r.theta);
        line.push_back(cell(r.S));
        line.emplace_back(r.reference.S);
        line.push_back(cell(r.S_hat));
        line.push_back(cell(r.delta.delta));
        line.push_back(cell(r.delta.bound));
        line.emplace_back(r.pass_fraction);
        line.emplace_back(tr.pass_probability);
        for (auto const& e : r.photon)
            line.emplace_back(e.n_pass);
        line.emplace_back(r.n);
        line.emplace_back(r.seed);
        t.rows.push_back(std::move(line));
    }
    return t;
}

void write_csv(std::ostream& os, Table const& table)
{
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << table.columns[i];
    os << '\n';
    char buf[40];
    for (auto const& line : table.rows)
    {
        for (std::size_t i = 0; i < line.size(); ++i)
        {
            if (i)
                os << ',';
            std::visit(
                [&](auto const& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>)
                        os << "null";
                    else if constexpr (std::is_same_v<T, double>)
                    {
                        std::snprintf(buf, sizeof buf, "%.17g", v);
                        os << buf;
                    }
                    else
                        os << v;
                },
                line[i]);
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, Table const& table)
{
    auto doc = nlohmann::ordered_json::array();
    for (auto const& line : table.rows)
    {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < line.size(); ++i)
        {
            std::visit(
                [&](auto const& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>)
                        obj[table.columns[i]] = nullptr;
                    else
                        obj[table.columns[i]] = v;
                },
                line[i]);
        }
        doc.push_back(std::move(obj));
    }
    os << doc.dump(2) << '\n';
}

}  // namespace eprb
