#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "eprb/experiment.hpp"

namespace eprb
{

//---------------------------------------------------------------------------//
// Fates
//---------------------------------------------------------------------------//

/*!
 * Fate of a photon: +1 ordinary beam (o), -1 extraordinary beam (e),
 * 0 undetected (u).
 */
struct Fate
{
    int f = 0;

    constexpr int n_o() const noexcept { return f * (f + 1) / 2; }
    constexpr int n_e() const noexcept { return f * (f - 1) / 2; }
    constexpr int n_u() const noexcept { return 1 - f * f; }

    static constexpr Fate o() noexcept { return {1}; }
    static constexpr Fate e() noexcept { return {-1}; }
    static constexpr Fate u() noexcept { return {0}; }

    friend constexpr bool operator==(Fate, Fate) = default;
};

//! f = x * w.
constexpr Fate fate_encode(int x, int w) noexcept { return {x * w}; }

//! Two-fate view for a single-detector station: e counts as undetected.
constexpr Fate ch_fate(Fate fate) noexcept { return {fate.f == 1 ? 1 : 0}; }

/*!
 * Per-trial Eberhard term over the fates at settings alpha1, alpha2 (side 1)
 * and beta1, beta2 (side 2):
 *   j = n_oe(a1,b2) + n_ou(a1,b2) + n_eo(a2,b1) + n_uo(a2,b1)
 *       + n_oo(a2,b2) - n_oo(a1,b1)
 */
constexpr int eberhard_term(Fate alpha1, Fate alpha2, Fate beta1,
                            Fate beta2) noexcept
{
    return alpha1.n_o() * beta2.n_e() + alpha1.n_o() * beta2.n_u()
           + alpha2.n_e() * beta1.n_o() + alpha2.n_u() * beta1.n_o()
           + alpha2.n_o() * beta2.n_o() - alpha1.n_o() * beta1.n_o();
}

//! CH term; inputs restricted to {o, u}.
constexpr int ch_term(Fate alpha1, Fate alpha2, Fate beta1, Fate beta2) noexcept
{
    return alpha1.n_o() * beta2.n_u() + alpha2.n_u() * beta1.n_o()
           + alpha2.n_o() * beta2.n_o() - alpha1.n_o() * beta1.n_o();
}

/*!
 * Which settings play Eberhard's alpha1, alpha2 (side 1) and beta1, beta2
 * (side 2). Values are setting choices (0 unprimed, 1 primed). The default
 * is alpha1 = a1', alpha2 = a1, beta1 = a2, beta2 = a2'.
 */
struct EberhardMap
{
    int alpha1 = 1;
    int alpha2 = 0;
    int beta1 = 0;
    int beta2 = 1;
};

//---------------------------------------------------------------------------//
// Accumulators
//---------------------------------------------------------------------------//

//! Integer sums for one setting pair; exact and order-independent.
struct PairTally
{
    std::int64_t n_total = 0;
    std::int64_t sum_x1 = 0;
    std::int64_t sum_x2 = 0;
    std::int64_t sum_x1x2 = 0;
    std::int64_t n_w1 = 0;
    std::int64_t n_w2 = 0;
    std::int64_t sum_w1x1 = 0;
    std::int64_t sum_w2x2 = 0;
    std::int64_t n_pass = 0;  // sum of w1 w2
    std::int64_t sum_w1w2x1x2 = 0;
    //! Joint fate counts [f1 + 1][f2 + 1] with fates from (x, w).
    std::array<std::array<std::int64_t, 3>, 3> photon_fates{};
    //! Joint outcome counts [(x1 + 1) / 2][(x2 + 1) / 2], w ignored.
    std::array<std::array<std::int64_t, 2>, 2> joint_x{};

    void add(Detection const& d1, Detection const& d2) noexcept;
    void merge(PairTally const& other) noexcept;

    //! Pairs with fate f1 on side 1 and f2 on side 2.
    std::int64_t count(Fate f1, Fate f2) const noexcept
    {
        return photon_fates[f1.f + 1][f2.f + 1];
    }
    //! Same with the detection-event fates (every w taken as 1).
    std::int64_t detection_count(Fate f1, Fate f2) const noexcept;
};

//! Integer sums for one station.
struct StationTally
{
    std::int64_t n = 0;
    std::int64_t sum_x = 0;
    std::int64_t n_w = 0;
    std::int64_t sum_wx = 0;

    void add(Detection const& d) noexcept;
    void merge(StationTally const& other) noexcept;
};

/*!
 * Everything the estimators need from a CFD run. Pair entries are indexed by
 * SettingPair::id(), stations by Station.
 */
struct CfdTally
{
    std::array<PairTally, 4> pairs;
    std::array<StationTally, 4> stations;
    std::int64_t n_trials = 0;
    std::int64_t n_all_pass = 0;      // trials with all four w = 1
    std::int64_t n_any_pass = 0;      // trials with at least one w = 1
    std::int64_t sum_s_detection = 0; // sum of x1x2 - x1x2' + x1'x2 + x1'x2'

    void add(TrialRecordCfd const& rec) noexcept;
    void merge(CfdTally const& other) noexcept;
};

//! Sums from a non-CFD run: disjoint per-pair subsets.
struct NonCfdTally
{
    std::array<PairTally, 4> pairs;
    //! Side-1 stations indexed by choice, then side-2 stations.
    std::array<StationTally, 4> stations;

    void add(TrialRecordNonCfd const& rec) noexcept;
    void merge(NonCfdTally const& other) noexcept;
};

CfdTally tally(std::span<TrialRecordCfd const> records);
NonCfdTally tally(std::span<TrialRecordNonCfd const> records);

//---------------------------------------------------------------------------//
// Estimators
//---------------------------------------------------------------------------//

/*!
 * Pair correlation and single-side averages. An estimate whose denominator
 * is zero is left empty rather than reported as zero.
 */
struct PairEstimate
{
    std::optional<double> E;
    std::optional<double> E1;
    std::optional<double> E2;
    std::int64_t n_pass = 0;
    std::int64_t n_total = 0;

    bool defined() const noexcept { return E.has_value(); }
};

//! Plain means over all trials, ignoring w.
PairEstimate detection_averages(PairTally const& t);
//! w-weighted ratios: only photon events contribute.
PairEstimate photon_averages(PairTally const& t);

PairEstimate detection_averages(std::span<TrialRecordCfd const> records,
                                SettingPair pair);
PairEstimate photon_averages(std::span<TrialRecordCfd const> records,
                             SettingPair pair);
PairEstimate detection_averages(std::span<TrialRecordNonCfd const> records,
                                SettingPair pair);
PairEstimate photon_averages(std::span<TrialRecordNonCfd const> records,
                             SettingPair pair);

//! Standard error of a correlation estimate, sqrt((1 - E^2) / n).
std::optional<double> correlation_stderr(PairEstimate const& est);

//! Photon single-station average sum(w x) / sum(w).
std::optional<double> photon_single(StationTally const& t);
//! Detection single-station average sum(x) / n.
std::optional<double> detection_single(StationTally const& t);

//! S = E11 - E12 + E21 + E22; empty if any input is.
std::optional<double> chsh(std::optional<double> e11, std::optional<double> e12,
                           std::optional<double> e21, std::optional<double> e22);

//! CHSH over the four pair estimates indexed by SettingPair::id().
std::optional<double> chsh(std::array<PairEstimate, 4> const& pairs);

//! Detection-event CHSH, (1/N) sum_k s_k.
double chsh_detection(CfdTally const& t);

/*!
 * Eberhard function J = sum over pairs of the fate counts entering j.
 * photon = false evaluates the detection-event fates (all w = 1).
 */
std::int64_t eberhard_j(std::array<PairTally, 4> const& pairs,
                        EberhardMap map = {}, bool photon = true);
std::int64_t ch_j(std::array<PairTally, 4> const& pairs, EberhardMap map = {},
                  bool photon = true);

std::int64_t eberhard_j(std::span<TrialRecordCfd const> records,
                        EberhardMap map = {});
std::int64_t ch_j(std::span<TrialRecordCfd const> records,
                  EberhardMap map = {});
//! Throws std::invalid_argument when a setting pair has no records.
std::int64_t eberhard_j(std::span<TrialRecordNonCfd const> records,
                        EberhardMap map = {});
std::int64_t ch_j(std::span<TrialRecordNonCfd const> records,
                  EberhardMap map = {});

//! How N_max in delta = N'/N_max is taken.
enum class DeltaNorm
{
    max_pair_pass,  // largest per-pair photon-pair count
    trial_count,    // fixed per-setting quota, i.e. N
};

struct DeltaResult
{
    std::optional<double> delta;
    std::optional<double> bound;  // 4 - 2 delta
    std::int64_t n_all_pass = 0;
    std::int64_t n_max = 0;
};

DeltaResult delta(CfdTally const& t, DeltaNorm norm = DeltaNorm::max_pair_pass);
DeltaResult delta(std::span<TrialRecordCfd const> records,
                  DeltaNorm norm = DeltaNorm::max_pair_pass);

struct QuantumReference
{
    double E = 0;  // -cos 2 theta
    double S = 0;  // -2 sqrt 2 cos(2 theta + pi/4)
};

QuantumReference quantum_reference(double theta) noexcept;

}  // namespace eprb
