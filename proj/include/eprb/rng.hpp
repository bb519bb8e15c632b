#pragma once

#include <array>
#include <cstdint>

namespace eprb
{

//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 counter-based generator.
 *
 * Every draw is a pure function of (key, counter), so trial k of a run can be
 * generated on any thread in any order and still produce the same bits.
 */
class Philox4x32
{
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter apply(Counter ctr, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round)
        {
            if (round > 0)
            {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            std::uint64_t const p0 = std::uint64_t{kMul0} * ctr[0];
            std::uint64_t const p1 = std::uint64_t{kMul1} * ctr[2];
            auto const hi0 = static_cast<std::uint32_t>(p0 >> 32);
            auto const lo0 = static_cast<std::uint32_t>(p0);
            auto const hi1 = static_cast<std::uint32_t>(p1 >> 32);
            auto const lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

  private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

// Top 53 bits of a 64-bit word mapped onto [0, 1).
constexpr double to_unit_interval(std::uint64_t bits) noexcept
{
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

//! Independent random streams used by the experiment layouts.
enum class Stream : std::uint32_t
{
    source = 0,
    setting_choice = 1,
    station_1 = 2,
    station_1_prime = 3,
    station_2 = 4,
    station_2_prime = 5,
    malus = 6,
};

//---------------------------------------------------------------------------//
/*!
 * Keyed view of the generator: one 64-bit seed, addressed by
 * (lane, trial index, stream). Lanes separate independent runs under one
 * seed, e.g. the rows of a sweep. Each address yields two uniforms in [0, 1).
 */
class CounterRng
{
  public:
    explicit constexpr CounterRng(std::uint64_t seed,
                                  std::uint32_t lane = 0) noexcept
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)}
        , lane_{lane}
    {
    }

    constexpr std::array<std::uint32_t, 4>
    block(std::uint64_t index, Stream stream) const noexcept
    {
        return Philox4x32::apply({static_cast<std::uint32_t>(index),
                                  static_cast<std::uint32_t>(index >> 32),
                                  static_cast<std::uint32_t>(stream), lane_},
                                 key_);
    }

    constexpr std::array<double, 2>
    uniforms(std::uint64_t index, Stream stream) const noexcept
    {
        auto const b = block(index, stream);
        return {to_unit_interval((std::uint64_t{b[1]} << 32) | b[0]),
                to_unit_interval((std::uint64_t{b[3]} << 32) | b[2])};
    }

    constexpr std::uint64_t seed() const noexcept
    {
        return (std::uint64_t{key_[1]} << 32) | key_[0];
    }

    constexpr std::uint32_t lane() const noexcept { return lane_; }

  private:
    Philox4x32::Key key_;
    std::uint32_t lane_;
};

}  // namespace eprb
