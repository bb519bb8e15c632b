#include <doctest.h>

#include "eprb/rng.hpp"
#include "eprb/selection.hpp"

using namespace eprb;

namespace
{
ModelParams const kRef{4.0, 0.5, 1.0, -0.995};
}

TEST_CASE("to_time worked examples")
{
    CHECK(to_time(-1.0, kRef) == 0.0);
    CHECK(to_time(-0.5, kRef) == 1.0);
    CHECK(window_of(kRef) == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("to_time rejects a degenerate range")
{
    ModelParams const flat{4.0, 1.0, 1.0, -1.0};
    CHECK_THROWS_AS(to_time(-1.0, flat), InvalidParameter);
}

TEST_CASE("to_time is monotone increasing")
{
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i)
    {
        double const t = to_time(-1.0 + 0.0005 * i, kRef);
        CHECK(t > prev);
        prev = t;
    }
}

TEST_CASE("select_by_window worked examples")
{
    auto const both = select_by_window(0.0, 0.0, 0.01);
    CHECK(both.pass1);
    CHECK(both.pass2);
    CHECK(both.pass_pair);
    CHECK(both.coincident);

    auto const one = select_by_window(0.005, 0.5, 0.01);
    CHECK(one.pass1);
    CHECK_FALSE(one.pass2);
    CHECK_FALSE(one.pass_pair);
    CHECK_FALSE(one.coincident);

    // strict boundary
    CHECK_FALSE(select_by_window(0.01, 0.0, 0.01).pass1);
}

TEST_CASE("threshold pass and window pass agree bit-exactly")
{
    CounterRng const rng{99};
    std::uint64_t mismatches = 0;
    for (std::uint64_t k = 0; k < 1'000'000; ++k)
    {
        auto const u = rng.uniforms(k, Stream::station_1);
        double const v = -1.0 + 0.5 * u[0];
        double const threshold = -1.0 + 0.5 * u[1];
        ModelParams const p{4.0, 0.5, 1.0, threshold};
        bool const by_voltage = identify_photon(v, threshold) == 1;
        bool const by_time = select_by_window(to_time(v, p), 1.0, window_of(p)).pass1;
        mismatches += by_voltage != by_time;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("passing pairs are always coincident")
{
    CounterRng const rng{100};
    std::uint64_t exceptions = 0;
    for (std::uint64_t k = 0; k < 1'000'000; ++k)
    {
        auto const u = rng.uniforms(k, Stream::station_1);
        auto const w = rng.uniforms(k, Stream::station_2);
        double const threshold = -1.0 + 0.5 * w[0];
        ModelParams const p{4.0, 0.5, 1.0, threshold};
        double const v1 = -1.0 + (threshold + 1.0) * u[0];
        double const v2 = -1.0 + (threshold + 1.0) * u[1];
        auto const sel = select_by_window(to_time(v1, p), to_time(v2, p), window_of(p));
        if (!sel.pass_pair)
            continue;
        exceptions += !sel.coincident;
    }
    CHECK(exceptions == 0);
}

TEST_CASE("raising the threshold never rejects a passing event")
{
    CounterRng const rng{101};
    for (std::uint64_t k = 0; k < 100'000; ++k)
    {
        auto const u = rng.uniforms(k, Stream::station_1);
        auto const w = rng.uniforms(k, Stream::station_2);
        double const v = -1.0 + 0.5 * u[0];
        double const low = -1.0 + 0.5 * u[1];
        double const high = low + (-0.5 - low) * w[0];
        if (identify_photon(v, low) == 1)
            REQUIRE(identify_photon(v, high) == 1);
    }
}
