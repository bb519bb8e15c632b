#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eprb/oracle.hpp"
#include "eprb/sweep.hpp"

namespace eprb::cli
{
namespace
{

ThresholdGrid parse_threshold_grid(std::string const& text)
{
    // START,END,STEPS
    std::stringstream ss(text);
    std::string start;
    std::string end;
    std::string steps;
    if (!std::getline(ss, start, ',') || !std::getline(ss, end, ',')
        || !std::getline(ss, steps) || steps.find(',') != std::string::npos)
        throw ConfigError("--threshold-sweep", "expected START,END,STEPS");
    try
    {
        ThresholdGrid grid;
        std::size_t used = 0;
        grid.start = std::stod(start, &used);
        if (used != start.size())
            throw std::invalid_argument(start);
        grid.end = std::stod(end, &used);
        if (used != end.size())
            throw std::invalid_argument(end);
        unsigned long const n = std::stoul(steps, &used);
        if (used != steps.size())
            throw std::invalid_argument(steps);
        grid.steps = static_cast<std::uint32_t>(n);
        return grid;
    }
    catch (std::exception const&)
    {
        throw ConfigError("--threshold-sweep",
                          "expected numbers in START,END,STEPS, got " + text);
    }
}

void emit(RunConfig const& cfg, Table const& table, std::ostream& out)
{
    auto write = [&](std::ostream& os) {
        if (cfg.format == OutputFormat::json)
            write_json(os, table);
        else
            write_csv(os, table);
    };
    if (cfg.out.empty() || cfg.out == "-")
    {
        write(out);
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file)
        throw ConfigError("--out", "cannot open " + cfg.out);
    write(file);
}

}  // namespace

int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    std::string threshold_sweep;

    CLI::App app{"Event-by-event simulation of EPRB experiments with local "
                 "photon identification thresholds"};
    app.option_defaults()->always_capture_default();

    std::map<std::string, Mode> const modes{
        {"cfd", Mode::cfd}, {"noncfd", Mode::noncfd}, {"oracles", Mode::oracles}};
    std::map<std::string, OutputFormat> const formats{
        {"csv", OutputFormat::csv}, {"json", OutputFormat::json}};
    std::map<std::string, AngleUnit> const units{{"rad", AngleUnit::rad},
                                                 {"deg", AngleUnit::deg}};
    std::map<std::string, DeltaNorm> const norms{
        {"max", DeltaNorm::max_pair_pass}, {"quota", DeltaNorm::trial_count}};

    app.add_option("--mode", cfg.mode, "cfd, noncfd or oracles")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    app.add_option("--n", cfg.n,
                   "Trials (cfd) or trials per setting pair (noncfd)");
    app.add_option("--d", cfg.d, "Exponent of |sin 2(a - phi)| in the voltage");
    app.add_option("--vmin", cfg.v_min, "Magnitude of the top of the voltage range");
    app.add_option("--vmax", cfg.v_max, "Magnitude of the bottom of the voltage range");
    app.add_option("--threshold", cfg.threshold,
                   "Photon identification threshold (negative voltage)");
    app.add_option("--theta-start", cfg.theta_start, "First theta of the grid");
    app.add_option("--theta-end", cfg.theta_end, "Last theta of the grid");
    app.add_option("--theta-steps", cfg.theta_steps, "Grid points, endpoints included");
    app.add_option("--seed", cfg.seed, "64-bit seed");
    app.add_option("--out", cfg.out, "Output file; stdout when omitted");
    app.add_option("--format", cfg.format, "csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_option("--angle-unit", cfg.angle_unit,
                   "Unit of --theta-start/--theta-end: rad or deg")
        ->transform(CLI::CheckedTransformer(units, CLI::ignore_case));
    app.add_option("--dump-trials", cfg.dump_trials,
                   "Write every raw trial to this CSV file");
    app.add_option("--threshold-sweep", threshold_sweep,
                   "START,END,STEPS: sweep the threshold at theta = 3pi/8");
    app.add_option("--delta-norm", cfg.delta_norm,
                   "N_max in delta: max (largest pair count) or quota (N)")
        ->transform(CLI::CheckedTransformer(norms, CLI::ignore_case));
    app.add_option("--threads", cfg.threads, "Worker threads, 0 = all cores");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e)
    {
        app.exit(e, out, err);
        return kExitOk;
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e, out, err);
        return kExitConfig;
    }

    try
    {
        if (!threshold_sweep.empty())
            cfg.threshold_sweep = parse_threshold_grid(threshold_sweep);

        if (cfg.mode == Mode::oracles)
        {
            OracleSuiteOptions opts;
            opts.seed = cfg.seed;
            opts.threads = cfg.threads;
            return run_oracles(out, opts) == 0 ? kExitOk : kExitOracle;
        }

        validate(cfg);
        if (cfg.threshold_sweep)
        {
            emit(cfg, threshold_table(sweep_threshold(cfg)), out);
            return kExitOk;
        }

        std::ofstream dump;
        if (!cfg.dump_trials.empty())
        {
            dump.open(cfg.dump_trials, std::ios::binary);
            if (!dump)
                throw ConfigError("--dump-trials", "cannot open " + cfg.dump_trials);
        }
        auto const rows = sweep_theta(cfg, dump.is_open() ? &dump : nullptr);
        emit(cfg, theta_table(rows), out);
        return kExitOk;
    }
    catch (ConfigError const& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (InvalidParameter const& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace eprb::cli
