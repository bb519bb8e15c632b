#include "eprb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <type_traits>

namespace eprb
{
namespace
{

std::optional<double> ratio(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

int half_index(int x) { return (x + 1) / 2; }

}  // namespace

//---------------------------------------------------------------------------//
// Tallies
//---------------------------------------------------------------------------//

void PairTally::add(Detection const& d1, Detection const& d2) noexcept
{
    int const w12 = d1.w * d2.w;
    int const x12 = d1.x * d2.x;
    ++n_total;
    sum_x1 += d1.x;
    sum_x2 += d2.x;
    sum_x1x2 += x12;
    n_w1 += d1.w;
    n_w2 += d2.w;
    sum_w1x1 += d1.w * d1.x;
    sum_w2x2 += d2.w * d2.x;
    n_pass += w12;
    sum_w1w2x1x2 += w12 * x12;
    ++photon_fates[fate_encode(d1.x, d1.w).f + 1][fate_encode(d2.x, d2.w).f + 1];
    ++joint_x[half_index(d1.x)][half_index(d2.x)];
}

void PairTally::merge(PairTally const& o) noexcept
{
    n_total += o.n_total;
    sum_x1 += o.sum_x1;
    sum_x2 += o.sum_x2;
    sum_x1x2 += o.sum_x1x2;
    n_w1 += o.n_w1;
    n_w2 += o.n_w2;
    sum_w1x1 += o.sum_w1x1;
    sum_w2x2 += o.sum_w2x2;
    n_pass += o.n_pass;
    sum_w1w2x1x2 += o.sum_w1w2x1x2;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            photon_fates[i][j] += o.photon_fates[i][j];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            joint_x[i][j] += o.joint_x[i][j];
}

std::int64_t PairTally::detection_count(Fate f1, Fate f2) const noexcept
{
    if (f1.f == 0 || f2.f == 0)
        return 0;
    return joint_x[half_index(f1.f)][half_index(f2.f)];
}

void StationTally::add(Detection const& d) noexcept
{
    ++n;
    sum_x += d.x;
    n_w += d.w;
    sum_wx += d.w * d.x;
}

void StationTally::merge(StationTally const& o) noexcept
{
    n += o.n;
    sum_x += o.sum_x;
    n_w += o.n_w;
    sum_wx += o.sum_wx;
}

void CfdTally::add(TrialRecordCfd const& rec) noexcept
{
    for (auto pair : kAllPairs)
        pairs[pair.id()].add(rec.side1(pair.side1), rec.side2(pair.side2));
    int all = 1;
    int any = 0;
    for (std::size_t i = 0; i < 4; ++i)
    {
        stations[i].add(rec.stations[i]);
        all &= rec.stations[i].w;
        any |= rec.stations[i].w;
    }
    ++n_trials;
    n_all_pass += all;
    n_any_pass += any;
    int const x1 = rec.stations[0].x;
    int const x1p = rec.stations[1].x;
    int const x2 = rec.stations[2].x;
    int const x2p = rec.stations[3].x;
    sum_s_detection += x1 * x2 - x1 * x2p + x1p * x2 + x1p * x2p;
}

void CfdTally::merge(CfdTally const& o) noexcept
{
    for (std::size_t i = 0; i < 4; ++i)
    {
        pairs[i].merge(o.pairs[i]);
        stations[i].merge(o.stations[i]);
    }
    n_trials += o.n_trials;
    n_all_pass += o.n_all_pass;
    n_any_pass += o.n_any_pass;
    sum_s_detection += o.sum_s_detection;
}

void NonCfdTally::add(TrialRecordNonCfd const& rec) noexcept
{
    pairs[rec.pair.id()].add(rec.side1, rec.side2);
    stations[rec.pair.side1].add(rec.side1);
    stations[2 + rec.pair.side2].add(rec.side2);
}

void NonCfdTally::merge(NonCfdTally const& o) noexcept
{
    for (std::size_t i = 0; i < 4; ++i)
    {
        pairs[i].merge(o.pairs[i]);
        stations[i].merge(o.stations[i]);
    }
}

CfdTally tally(std::span<TrialRecordCfd const> records)
{
    CfdTally t;
    for (auto const& rec : records)
        t.add(rec);
    return t;
}

NonCfdTally tally(std::span<TrialRecordNonCfd const> records)
{
    NonCfdTally t;
    for (auto const& rec : records)
        t.add(rec);
    return t;
}

//---------------------------------------------------------------------------//
// Averages
//---------------------------------------------------------------------------//

PairEstimate detection_averages(PairTally const& t)
{
    PairEstimate est;
    est.E = ratio(t.sum_x1x2, t.n_total);
    est.E1 = ratio(t.sum_x1, t.n_total);
    est.E2 = ratio(t.sum_x2, t.n_total);
    est.n_pass = t.n_total;
    est.n_total = t.n_total;
    return est;
}

PairEstimate photon_averages(PairTally const& t)
{
    PairEstimate est;
    est.E = ratio(t.sum_w1w2x1x2, t.n_pass);
    est.E1 = ratio(t.sum_w1x1, t.n_w1);
    est.E2 = ratio(t.sum_w2x2, t.n_w2);
    est.n_pass = t.n_pass;
    est.n_total = t.n_total;
    return est;
}

namespace
{

template<class Record>
PairTally pair_tally(std::span<Record const> records, SettingPair pair)
{
    if (records.empty())
        throw std::invalid_argument("averages need at least one record");
    if constexpr (std::is_same_v<Record, TrialRecordCfd>)
    {
        PairTally t;
        for (auto const& rec : records)
            t.add(rec.side1(pair.side1), rec.side2(pair.side2));
        return t;
    }
    else
    {
        PairTally t;
        for (auto const& rec : records)
        {
            if (rec.pair == pair)
                t.add(rec.side1, rec.side2);
        }
        return t;
    }
}

}  // namespace

PairEstimate detection_averages(std::span<TrialRecordCfd const> records,
                                SettingPair pair)
{
    return detection_averages(pair_tally(records, pair));
}

PairEstimate photon_averages(std::span<TrialRecordCfd const> records,
                             SettingPair pair)
{
    return photon_averages(pair_tally(records, pair));
}

PairEstimate detection_averages(std::span<TrialRecordNonCfd const> records,
                                SettingPair pair)
{
    return detection_averages(pair_tally(records, pair));
}

PairEstimate photon_averages(std::span<TrialRecordNonCfd const> records,
                             SettingPair pair)
{
    return photon_averages(pair_tally(records, pair));
}

std::optional<double> correlation_stderr(PairEstimate const& est)
{
    if (!est.E || est.n_pass == 0)
        return std::nullopt;
    double const e = *est.E;
    return std::sqrt(std::max(0.0, 1.0 - e * e)
                     / static_cast<double>(est.n_pass));
}

std::optional<double> photon_single(StationTally const& t)
{
    return ratio(t.sum_wx, t.n_w);
}

std::optional<double> detection_single(StationTally const& t)
{
    return ratio(t.sum_x, t.n);
}

//---------------------------------------------------------------------------//
// Inequality functionals
//---------------------------------------------------------------------------//

std::optional<double> chsh(std::optional<double> e11, std::optional<double> e12,
                           std::optional<double> e21, std::optional<double> e22)
{
    if (!e11 || !e12 || !e21 || !e22)
        return std::nullopt;
    return *e11 - *e12 + *e21 + *e22;
}

std::optional<double> chsh(std::array<PairEstimate, 4> const& pairs)
{
    return chsh(pairs[0].E, pairs[1].E, pairs[2].E, pairs[3].E);
}

double chsh_detection(CfdTally const& t)
{
    if (t.n_trials == 0)
        throw std::invalid_argument("CHSH needs at least one trial");
    return static_cast<double>(t.sum_s_detection)
           / static_cast<double>(t.n_trials);
}

namespace
{

struct FateCounter
{
    PairTally const& tally;
    bool photon;

    std::int64_t operator()(Fate f1, Fate f2) const
    {
        return photon ? tally.count(f1, f2) : tally.detection_count(f1, f2);
    }
};

PairTally const& at(std::array<PairTally, 4> const& pairs, int side1, int side2)
{
    return pairs[SettingPair{side1, side2}.id()];
}

}  // namespace

std::int64_t eberhard_j(std::array<PairTally, 4> const& pairs, EberhardMap m,
                        bool photon)
{
    auto const o = Fate::o();
    auto const e = Fate::e();
    auto const u = Fate::u();
    FateCounter const a1b2{at(pairs, m.alpha1, m.beta2), photon};
    FateCounter const a2b1{at(pairs, m.alpha2, m.beta1), photon};
    FateCounter const a2b2{at(pairs, m.alpha2, m.beta2), photon};
    FateCounter const a1b1{at(pairs, m.alpha1, m.beta1), photon};
    return a1b2(o, e) + a1b2(o, u) + a2b1(e, o) + a2b1(u, o) + a2b2(o, o)
           - a1b1(o, o);
}

std::int64_t ch_j(std::array<PairTally, 4> const& pairs, EberhardMap m,
                  bool photon)
{
    auto const o = Fate::o();
    auto const e = Fate::e();
    auto const u = Fate::u();
    FateCounter const a1b2{at(pairs, m.alpha1, m.beta2), photon};
    FateCounter const a2b1{at(pairs, m.alpha2, m.beta1), photon};
    FateCounter const a2b2{at(pairs, m.alpha2, m.beta2), photon};
    FateCounter const a1b1{at(pairs, m.alpha1, m.beta1), photon};
    // e is folded into u
    std::int64_t const n_ou = a1b2(o, u) + a1b2(o, e);
    std::int64_t const n_uo = a2b1(u, o) + a2b1(e, o);
    return n_ou + n_uo + a2b2(o, o) - a1b1(o, o);
}

std::int64_t eberhard_j(std::span<TrialRecordCfd const> records, EberhardMap m)
{
    return eberhard_j(tally(records).pairs, m);
}

std::int64_t ch_j(std::span<TrialRecordCfd const> records, EberhardMap m)
{
    return ch_j(tally(records).pairs, m);
}

namespace
{

NonCfdTally complete_tally(std::span<TrialRecordNonCfd const> records,
                           EberhardMap m)
{
    NonCfdTally t = tally(records);
    for (auto pair : {SettingPair{m.alpha1, m.beta1},
                      SettingPair{m.alpha1, m.beta2},
                      SettingPair{m.alpha2, m.beta1},
                      SettingPair{m.alpha2, m.beta2}})
    {
        if (t.pairs[pair.id()].n_total == 0)
            throw std::invalid_argument(
                "Eberhard function needs records for every setting pair");
    }
    return t;
}

}  // namespace

std::int64_t eberhard_j(std::span<TrialRecordNonCfd const> records,
                        EberhardMap m)
{
    return eberhard_j(complete_tally(records, m).pairs, m);
}

std::int64_t ch_j(std::span<TrialRecordNonCfd const> records, EberhardMap m)
{
    return ch_j(complete_tally(records, m).pairs, m);
}

DeltaResult delta(CfdTally const& t, DeltaNorm norm)
{
    DeltaResult out;
    out.n_all_pass = t.n_all_pass;
    if (norm == DeltaNorm::trial_count)
    {
        out.n_max = t.n_trials;
    }
    else
    {
        for (auto const& p : t.pairs)
            out.n_max = std::max(out.n_max, p.n_pass);
    }
    out.delta = ratio(t.n_all_pass, out.n_max);
    if (out.delta)
        out.bound = 4.0 - 2.0 * *out.delta;
    return out;
}

DeltaResult delta(std::span<TrialRecordCfd const> records, DeltaNorm norm)
{
    return delta(tally(records), norm);
}

QuantumReference quantum_reference(double theta) noexcept
{
    return {-std::cos(2 * theta),
            -2 * std::numbers::sqrt2 * std::cos(2 * theta + kPi / 4)};
}

}  // namespace eprb
