#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "eprb/model.hpp"
#include "eprb/rng.hpp"

namespace eprb
{

//! Index of a station in the four-station layout.
enum class Station : int
{
    a1 = 0,
    a1_prime = 1,
    a2 = 2,
    a2_prime = 3,
};

/*!
 * One setting pair (side-1 choice, side-2 choice). Index 0 selects the
 * unprimed setting, 1 the primed one. Pair ids run 11, 12, 21, 22 in the
 * order (a1,a2), (a1,a2'), (a1',a2), (a1',a2').
 */
struct SettingPair
{
    int side1 = 0;
    int side2 = 0;

    constexpr int id() const noexcept { return 2 * side1 + side2; }
    static constexpr SettingPair from_id(int id) noexcept
    {
        return {id / 2, id % 2};
    }
    friend constexpr bool operator==(SettingPair, SettingPair) = default;
};

inline constexpr std::array<SettingPair, 4> kAllPairs{
    SettingPair{0, 0}, SettingPair{0, 1}, SettingPair{1, 0}, SettingPair{1, 1}};

struct SettingsQuad
{
    Setting a1;
    Setting a1_prime;
    Setting a2;
    Setting a2_prime;

    //! a1 = theta + pi/8, a1' = a1 + pi/4, a2 = pi/8, a2' = 3pi/8.
    static SettingsQuad from_theta(double theta);

    Setting side1(int choice) const { return choice == 0 ? a1 : a1_prime; }
    Setting side2(int choice) const { return choice == 0 ? a2 : a2_prime; }
};

//! Orthogonally polarized pair: phi2 = phi1 + pi/2 (mod 2*pi).
struct SourceEvent
{
    double phi1 = 0;
    double phi2 = 0;

    static SourceEvent from_phi1(double phi1);
};

//! Source event k of the stream keyed by rng.
SourceEvent generate_source_event(CounterRng const& rng, std::uint64_t k);

//! A station outcome together with its photon flag.
struct Detection
{
    int x = 1;
    double v = 0;
    int w = 0;

    friend bool operator==(Detection const&, Detection const&) = default;
};

struct TrialRecordCfd
{
    std::uint64_t k = 0;
    std::array<Detection, 4> stations;  // indexed by Station

    Detection const& at(Station s) const
    {
        return stations[static_cast<std::size_t>(s)];
    }
    Detection const& side1(int choice) const { return stations[choice]; }
    Detection const& side2(int choice) const { return stations[2 + choice]; }

    friend bool operator==(TrialRecordCfd const&, TrialRecordCfd const&) = default;
};

struct TrialRecordNonCfd
{
    std::uint64_t k = 0;
    SettingPair pair;
    Detection side1;
    Detection side2;

    friend bool operator==(TrialRecordNonCfd const&, TrialRecordNonCfd const&) = default;
};

//---------------------------------------------------------------------------//
// Per-trial inputs
//---------------------------------------------------------------------------//

//! Everything random that enters one trial. Station draws indexed by Station.
struct TrialDraws
{
    double phi1 = 0;
    std::array<RandomPair, 4> stations;
};

/*!
 * Supplies the draws of trial k. The default supplier reads the counter
 * generator; tests substitute fixed sequences.
 */
using DrawSupplier = std::function<TrialDraws(std::uint64_t k)>;

//! Draws of trial k from independent streams keyed by (seed, k, stream).
TrialDraws counter_draws(CounterRng const& rng, std::uint64_t k);

DrawSupplier counter_draw_supplier(std::uint64_t seed);

//! Four-station trial: phi1 feeds both side-1 stations, phi2 both side-2.
TrialRecordCfd make_cfd_trial(ModelParams const& p, SettingsQuad const& q,
                              std::uint64_t k, TrialDraws const& draws);

/*!
 * Two-station trial for one setting pair. Side 1 consumes the a1 draw slot
 * and side 2 the a2 slot whichever setting was chosen.
 */
TrialRecordNonCfd make_noncfd_trial(ModelParams const& p,
                                    SettingsQuad const& q, SettingPair pair,
                                    std::uint64_t k, TrialDraws const& draws);

//---------------------------------------------------------------------------//
// Runs
//---------------------------------------------------------------------------//

struct RunOptions
{
    //! Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/*!
 * CFD-compliant layout: N trials of four stations each, ordered by k.
 * Output is bit-identical for identical inputs at any thread count.
 */
std::vector<TrialRecordCfd> run_cfd(ModelParams const& p,
                                    SettingsQuad const& q, std::uint64_t n,
                                    std::uint64_t seed, RunOptions opts = {});

std::vector<TrialRecordCfd> run_cfd(ModelParams const& p,
                                    SettingsQuad const& q, std::uint64_t n,
                                    DrawSupplier const& draws,
                                    RunOptions opts = {});

//! One accepted non-CFD trial: its index and the setting pair it uses.
struct ScheduledTrial
{
    std::uint64_t k = 0;
    SettingPair pair;
};

/*!
 * Fair coin per side per trial. Trials whose pair already holds the quota
 * are dropped; the schedule ends once every pair holds exactly quota trials.
 */
std::vector<ScheduledTrial> schedule_noncfd(std::uint64_t quota_per_pair,
                                            CounterRng const& rng);
std::vector<ScheduledTrial> schedule_noncfd(std::uint64_t quota_per_pair,
                                            std::uint64_t seed);

//! Number of coin-flip trials consumed to fill the schedule, accepted or not.
std::uint64_t schedule_length(std::span<ScheduledTrial const> schedule);

std::vector<TrialRecordNonCfd>
run_noncfd(ModelParams const& p, SettingsQuad const& q,
           std::uint64_t quota_per_pair, std::uint64_t seed,
           RunOptions opts = {});

std::vector<TrialRecordNonCfd>
run_noncfd(ModelParams const& p, SettingsQuad const& q,
           std::span<ScheduledTrial const> schedule, DrawSupplier const& draws,
           RunOptions opts = {});

//---------------------------------------------------------------------------//
// Raw trial dump
//---------------------------------------------------------------------------//

/*!
 * Comma-separated, one trial per line, header first. CFD columns:
 *   k,a1,a1p,a2,a2p,x1,x1p,x2,x2p,v1,v1p,v2,v2p,w1,w1p,w2,w2p
 * Non-CFD columns:
 *   k,setting1,setting2,x1,x2,v1,v2,w1,w2
 * Angles in radians; reals with 17 significant digits.
 */
void write_trial_dump(std::ostream& os, SettingsQuad const& q,
                      std::span<TrialRecordCfd const> records,
                      bool header = true);
void write_trial_dump(std::ostream& os, SettingsQuad const& q,
                      std::span<TrialRecordNonCfd const> records,
                      bool header = true);

}  // namespace eprb
