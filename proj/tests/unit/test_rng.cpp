#include <doctest.h>

#include <set>

#include "eprb/rng.hpp"

using namespace eprb;

TEST_CASE("philox4x32-10 known answers")
{
    // Reference vectors published with Random123.
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;

    CHECK(Philox4x32::apply(C{0, 0, 0, 0}, K{0, 0})
          == C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(Philox4x32::apply(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                            K{0xffffffffu, 0xffffffffu})
          == C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(Philox4x32::apply(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                            K{0xa4093822u, 0x299f31d0u})
          == C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("unit interval mapping stays half open")
{
    CHECK(to_unit_interval(0) == 0.0);
    CHECK(to_unit_interval(~std::uint64_t{0}) < 1.0);
}

TEST_CASE("draws are addressed, not sequenced")
{
    CounterRng const rng{42};
    auto const late = rng.uniforms(1000, Stream::station_1);
    auto const early = rng.uniforms(3, Stream::station_1);
    CHECK(rng.uniforms(1000, Stream::station_1) == late);
    CHECK(rng.uniforms(3, Stream::station_1) == early);
    CHECK(rng.seed() == 42);
}

TEST_CASE("streams, lanes and seeds give distinct blocks")
{
    CounterRng const a{7};
    CounterRng const b{8};
    CounterRng const lane1{7, 1};
    std::set<std::array<std::uint32_t, 4>> seen;
    for (std::uint64_t k = 0; k < 64; ++k)
    {
        for (auto s : {Stream::source, Stream::station_1, Stream::station_2_prime})
        {
            seen.insert(a.block(k, s));
            seen.insert(b.block(k, s));
            seen.insert(lane1.block(k, s));
        }
    }
    CHECK(seen.size() == 64 * 3 * 3);
}

TEST_CASE("uniform mean and variance")
{
    CounterRng const rng{2024};
    constexpr int n = 200'000;
    double sum = 0;
    double sum2 = 0;
    for (int k = 0; k < n; ++k)
    {
        for (double u : rng.uniforms(k, Stream::malus))
        {
            REQUIRE(u >= 0.0);
            REQUIRE(u < 1.0);
            sum += u;
            sum2 += u * u;
        }
    }
    double const mean = sum / (2 * n);
    double const var = sum2 / (2 * n) - mean * mean;
    // sigma of the mean is sqrt(1/12 / 4e5) ~ 4.6e-4
    CHECK(mean == doctest::Approx(0.5).epsilon(0.004));
    CHECK(var == doctest::Approx(1.0 / 12).epsilon(0.01));
}
