#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "eprb/experiment.hpp"
#include "eprb/model.hpp"
#include "eprb/stats.hpp"

namespace eprb
{

inline constexpr std::uint64_t kDefaultSeed = 20160915;

enum class Mode
{
    cfd,
    noncfd,
    oracles,
};

enum class OutputFormat
{
    csv,
    json,
};

enum class AngleUnit
{
    rad,
    deg,
};

struct ThresholdGrid
{
    double start = -1.0;
    double end = -0.5;
    std::uint32_t steps = 11;
};

/*!
 * Complete description of a batch run. Angles are in the configured unit;
 * voltages are negative as on the command line.
 */
struct RunConfig
{
    Mode mode = Mode::cfd;
    std::uint64_t n = 100'000;  // trials (cfd) or per-pair quota (noncfd)
    double d = 4.0;
    double v_min = 0.5;
    double v_max = 1.0;
    double threshold = -0.995;
    double theta_start = 0.0;
    double theta_end = kPi;
    std::uint32_t theta_steps = 40;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
    OutputFormat format = OutputFormat::csv;
    AngleUnit angle_unit = AngleUnit::rad;
    std::string dump_trials;
    std::optional<ThresholdGrid> threshold_sweep;
    DeltaNorm delta_norm = DeltaNorm::max_pair_pass;
    unsigned threads = 0;
};

//! Invalid configuration; field() names the offending option.
class ConfigError : public std::invalid_argument
{
  public:
    ConfigError(std::string field, std::string const& what)
        : std::invalid_argument(field + ": " + what), field_{std::move(field)}
    {
    }
    std::string const& field() const noexcept { return field_; }

  private:
    std::string field_;
};

//! Throws ConfigError on the first invalid field.
void validate(RunConfig const& cfg);

ModelParams model_params(RunConfig const& cfg);

//! Evenly spaced grid in radians, endpoints included.
std::vector<double> theta_grid(RunConfig const& cfg);

//---------------------------------------------------------------------------//
// Rows
//---------------------------------------------------------------------------//

struct SweepRow
{
    double theta = 0;
    std::array<PairEstimate, 4> photon;     // by SettingPair::id()
    std::array<PairEstimate, 4> detection;  // by SettingPair::id()
    //! Photon single-station averages at a1, a1', a2, a2'.
    std::array<std::optional<double>, 4> singles;
    std::optional<double> S;
    std::optional<double> S_hat;
    QuantumReference reference;
    std::int64_t J_eberhard = 0;
    std::int64_t J_ch = 0;
    //! Same functionals with every detection event taken as a photon.
    std::int64_t J_eberhard_detection = 0;
    std::int64_t J_ch_detection = 0;
    //! Empty in non-CFD mode where no quadruples exist.
    DeltaResult delta;
    //! Photon fraction per station evaluation.
    double pass_fraction = 0;
    //! Photon-pair fraction averaged over the four setting pairs.
    double pair_pass_fraction = 0;
    //! CFD: trials with at least one photon among the four stations.
    std::optional<double> quadruple_pass_fraction;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

//! Fold a CFD tally into a row.
SweepRow make_row(double theta, CfdTally const& t, DeltaNorm norm,
                  std::uint64_t n, std::uint64_t seed);
//! Fold a non-CFD tally into a row.
SweepRow make_row(double theta, NonCfdTally const& t, std::uint64_t n,
                  std::uint64_t seed);

//! Stream a CFD run straight into a tally without storing trials.
CfdTally simulate_cfd(ModelParams const& p, SettingsQuad const& q,
                      std::uint64_t n, CounterRng const& rng,
                      unsigned threads = 0);
NonCfdTally simulate_noncfd(ModelParams const& p, SettingsQuad const& q,
                            std::uint64_t quota, CounterRng const& rng,
                            unsigned threads = 0);

/*!
 * One row per theta on the grid. Row i draws from lane i of the seed, so
 * rows are independent and each is reproducible on its own.
 * When dump is non-null the raw trials of every row are written to it.
 */
std::vector<SweepRow> sweep_theta(RunConfig const& cfg,
                                  std::ostream* dump = nullptr);

struct ThresholdRow
{
    double threshold = 0;
    SweepRow row;
    double pass_probability = 0;  // quadrature oracle
};

//! Fixed theta = 3pi/8, one row per threshold of cfg.threshold_sweep.
std::vector<ThresholdRow> sweep_threshold(RunConfig const& cfg);

//---------------------------------------------------------------------------//
// Output tables
//---------------------------------------------------------------------------//

//! Empty cell for undefined estimators.
using Cell = std::variant<std::monostate, double, std::int64_t, std::uint64_t>;

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

Table theta_table(std::vector<SweepRow> const& rows);
Table threshold_table(std::vector<ThresholdRow> const& rows);

//! Header row then one line per row; reals with 17 significant digits.
void write_csv(std::ostream& os, Table const& table);
//! Array of objects keyed by the column names; undefined cells are null.
void write_json(std::ostream& os, Table const& table);

}  // namespace eprb
