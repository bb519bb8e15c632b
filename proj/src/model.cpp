#include "eprb/model.hpp"

#include <cmath>
#include <string>

namespace eprb
{

double normalize_angle(double radians) noexcept
{
    double a = std::fmod(radians, kTwoPi);
    if (a < 0)
        a += kTwoPi;
    // fmod of a tiny negative value can round back up to 2*pi
    if (a >= kTwoPi)
        a = 0;
    return a;
}

ModelParams::ModelParams(double exponent, double v_min_mag, double v_max_mag,
                         double threshold)
    : exponent_{exponent}
    , v_min_mag_{v_min_mag}
    , v_max_mag_{v_max_mag}
    , threshold_{threshold}
{
    if (!(exponent >= 0) || !std::isfinite(exponent))
        throw InvalidParameter("exponent d must be finite and >= 0, got "
                               + std::to_string(exponent));
    if (!(v_max_mag > 0) || !std::isfinite(v_max_mag))
        throw InvalidParameter("v_max must be finite and > 0, got "
                               + std::to_string(v_max_mag));
    if (!(v_min_mag >= 0) || v_min_mag > v_max_mag)
        throw InvalidParameter("v_min must satisfy 0 <= v_min <= v_max, got "
                               + std::to_string(v_min_mag));
    if (!(threshold >= -v_max_mag && threshold <= -v_min_mag))
        throw InvalidParameter(
            "threshold must lie in [-v_max, -v_min], got "
            + std::to_string(threshold));
}

StationOutcome station_respond(Setting a, double phi, RandomPair draws,
                               ModelParams const& p) noexcept
{
    double const angle = 2.0 * (a.angle() - normalize_angle(phi));
    double const c = std::cos(angle);
    double const s = std::sin(angle);

    StationOutcome out;
    out.x = (1.0 + c - 2.0 * draws.r > 0) ? 1 : -1;
    // pow(0, 0) == 1, so d = 0 leaves v independent of the angle
    double const span = p.v_max_mag() - p.v_min_mag();
    out.v = draws.r_hat * std::pow(std::abs(s), p.exponent()) * span
            - p.v_max_mag();
    return out;
}

double malus_frequency(Setting a, double phi, std::uint64_t n,
                       std::uint64_t seed)
{
    if (n == 0)
        throw InvalidParameter("malus_frequency needs n >= 1");
    CounterRng const rng{seed};
    double const c = std::cos(2.0 * (a.angle() - normalize_angle(phi)));
    std::uint64_t plus = 0;
    for (std::uint64_t k = 0; k < n; ++k)
    {
        double const r = rng.uniforms(k, Stream::malus)[0];
        if (1.0 + c - 2.0 * r > 0)
            ++plus;
    }
    return static_cast<double>(plus) / static_cast<double>(n);
}

}  // namespace eprb
