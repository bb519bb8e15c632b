#include "eprb/experiment.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "eprb/parallel.hpp"

namespace eprb
{
namespace
{

Detection detect(Setting a, double phi, RandomPair draws, ModelParams const& p)
{
    StationOutcome const out = station_respond(a, phi, draws, p);
    return {out.x, out.v, identify_photon(out.v, p.threshold())};
}

std::string format_real(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

}  // namespace

SettingsQuad SettingsQuad::from_theta(double theta)
{
    double const a1 = theta + kPi / 8;
    return {Setting{a1}, Setting{a1 + kPi / 4}, Setting{kPi / 8},
            Setting{3 * kPi / 8}};
}

SourceEvent SourceEvent::from_phi1(double phi1)
{
    double const first = normalize_angle(phi1);
    return {first, normalize_angle(first + kPi / 2)};
}

SourceEvent generate_source_event(CounterRng const& rng, std::uint64_t k)
{
    return SourceEvent::from_phi1(kTwoPi * rng.uniforms(k, Stream::source)[0]);
}

TrialDraws counter_draws(CounterRng const& rng, std::uint64_t k)
{
    TrialDraws draws;
    draws.phi1 = generate_source_event(rng, k).phi1;
    constexpr std::array<Stream, 4> streams{
        Stream::station_1, Stream::station_1_prime, Stream::station_2,
        Stream::station_2_prime};
    for (std::size_t i = 0; i < streams.size(); ++i)
    {
        auto const u = rng.uniforms(k, streams[i]);
        draws.stations[i] = {u[0], u[1]};
    }
    return draws;
}

DrawSupplier counter_draw_supplier(std::uint64_t seed)
{
    return [rng = CounterRng{seed}](std::uint64_t k) {
        return counter_draws(rng, k);
    };
}

TrialRecordCfd make_cfd_trial(ModelParams const& p, SettingsQuad const& q,
                              std::uint64_t k, TrialDraws const& draws)
{
    SourceEvent const src = SourceEvent::from_phi1(draws.phi1);
    TrialRecordCfd rec;
    rec.k = k;
    rec.stations[0] = detect(q.a1, src.phi1, draws.stations[0], p);
    rec.stations[1] = detect(q.a1_prime, src.phi1, draws.stations[1], p);
    rec.stations[2] = detect(q.a2, src.phi2, draws.stations[2], p);
    rec.stations[3] = detect(q.a2_prime, src.phi2, draws.stations[3], p);
    return rec;
}

TrialRecordNonCfd make_noncfd_trial(ModelParams const& p,
                                    SettingsQuad const& q, SettingPair pair,
                                    std::uint64_t k, TrialDraws const& draws)
{
    SourceEvent const src = SourceEvent::from_phi1(draws.phi1);
    TrialRecordNonCfd rec;
    rec.k = k;
    rec.pair = pair;
    rec.side1 = detect(q.side1(pair.side1), src.phi1, draws.stations[0], p);
    rec.side2 = detect(q.side2(pair.side2), src.phi2, draws.stations[2], p);
    return rec;
}

std::vector<TrialRecordCfd> run_cfd(ModelParams const& p,
                                    SettingsQuad const& q, std::uint64_t n,
                                    std::uint64_t seed, RunOptions opts)
{
    CounterRng const rng{seed};
    return run_cfd(
        p, q, n, [&rng](std::uint64_t k) { return counter_draws(rng, k); },
        opts);
}

std::vector<TrialRecordCfd> run_cfd(ModelParams const& p,
                                    SettingsQuad const& q, std::uint64_t n,
                                    DrawSupplier const& draws,
                                    RunOptions opts)
{
    if (n == 0)
        throw InvalidParameter("run_cfd needs at least one trial");
    std::vector<TrialRecordCfd> records(n);
    parallel_chunks(n, opts.threads,
                    [&](std::uint64_t begin, std::uint64_t end, unsigned) {
                        for (std::uint64_t k = begin; k < end; ++k)
                            records[k] = make_cfd_trial(p, q, k, draws(k));
                    });
    return records;
}

std::vector<ScheduledTrial> schedule_noncfd(std::uint64_t quota_per_pair,
                                            std::uint64_t seed)
{
    return schedule_noncfd(quota_per_pair, CounterRng{seed});
}

std::vector<ScheduledTrial> schedule_noncfd(std::uint64_t quota_per_pair,
                                            CounterRng const& rng)
{
    if (quota_per_pair == 0)
        throw InvalidParameter("non-CFD run needs a quota of at least one");
    std::array<std::uint64_t, 4> filled{};
    std::uint64_t remaining = 4;
    std::vector<ScheduledTrial> schedule;
    schedule.reserve(4 * quota_per_pair);
    for (std::uint64_t k = 0; remaining > 0; ++k)
    {
        auto const coins = rng.uniforms(k, Stream::setting_choice);
        SettingPair const pair{coins[0] < 0.5 ? 0 : 1, coins[1] < 0.5 ? 0 : 1};
        auto& count = filled[static_cast<std::size_t>(pair.id())];
        if (count == quota_per_pair)
            continue;
        schedule.push_back({k, pair});
        if (++count == quota_per_pair)
            --remaining;
    }
    return schedule;
}

std::uint64_t schedule_length(std::span<ScheduledTrial const> schedule)
{
    return schedule.empty() ? 0 : schedule.back().k + 1;
}

std::vector<TrialRecordNonCfd>
run_noncfd(ModelParams const& p, SettingsQuad const& q,
           std::uint64_t quota_per_pair, std::uint64_t seed, RunOptions opts)
{
    auto const schedule = schedule_noncfd(quota_per_pair, seed);
    CounterRng const rng{seed};
    return run_noncfd(
        p, q, schedule,
        [&rng](std::uint64_t k) { return counter_draws(rng, k); }, opts);
}

std::vector<TrialRecordNonCfd>
run_noncfd(ModelParams const& p, SettingsQuad const& q,
           std::span<ScheduledTrial const> schedule, DrawSupplier const& draws,
           RunOptions opts)
{
    if (schedule.empty())
        throw InvalidParameter("non-CFD run needs a nonempty schedule");
    std::vector<TrialRecordNonCfd> records(schedule.size());
    parallel_chunks(schedule.size(), opts.threads,
                    [&](std::uint64_t begin, std::uint64_t end, unsigned) {
                        for (std::uint64_t i = begin; i < end; ++i)
                        {
                            auto const& t = schedule[i];
                            records[i] = make_noncfd_trial(p, q, t.pair, t.k,
                                                           draws(t.k));
                        }
                    });
    return records;
}

void write_trial_dump(std::ostream& os, SettingsQuad const& q,
                      std::span<TrialRecordCfd const> records, bool header)
{
    if (header)
        os << "k,a1,a1p,a2,a2p,x1,x1p,x2,x2p,v1,v1p,v2,v2p,w1,w1p,w2,w2p\n";
    std::string const settings = format_real(q.a1.angle()) + ','
                                 + format_real(q.a1_prime.angle()) + ','
                                 + format_real(q.a2.angle()) + ','
                                 + format_real(q.a2_prime.angle());
    for (auto const& rec : records)
    {
        os << rec.k << ',' << settings;
        for (auto const& d : rec.stations)
            os << ',' << d.x;
        for (auto const& d : rec.stations)
            os << ',' << format_real(d.v);
        for (auto const& d : rec.stations)
            os << ',' << d.w;
        os << '\n';
    }
}

void write_trial_dump(std::ostream& os, SettingsQuad const& q,
                      std::span<TrialRecordNonCfd const> records,
                      bool header)
{
    if (header)
        os << "k,setting1,setting2,x1,x2,v1,v2,w1,w2\n";
    for (auto const& rec : records)
    {
        os << rec.k << ',' << format_real(q.side1(rec.pair.side1).angle())
           << ',' << format_real(q.side2(rec.pair.side2).angle()) << ','
           << rec.side1.x << ',' << rec.side2.x << ','
           << format_real(rec.side1.v) << ',' << format_real(rec.side2.v)
           << ',' << rec.side1.w << ',' << rec.side2.w << '\n';
    }
}

}  // namespace eprb
