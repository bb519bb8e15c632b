#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "eprb/model.hpp"

namespace eprb
{

/*!
 * Outcome of an exhaustive check. Each violation lists the input tuple that
 * broke the claim, in the order documented by the producing function.
 */
struct EnumerationReport
{
    std::string claim;
    std::uint64_t cases_checked = 0;
    std::vector<std::vector<int>> violations;

    bool holds() const noexcept { return violations.empty(); }
};

//---------------------------------------------------------------------------//
// Quadruple identities
//---------------------------------------------------------------------------//

using QuadrupleForm = int (*)(int x1, int x1p, int x2, int x2p);

/*!
 * The five arithmetic forms over a quadruple (x1, x1', x2, x2'):
 *   s  = x1 x2 - x1 x2' + x1' x2 + x1' x2'   in {-2, +2}
 *   b1 = x1 x1' + x1 x2 + x1' x2             in {-1, +3}
 *   b2 = x1 x1' + x1 x2' + x1' x2'
 *   b3 = x1 x2 + x1 x2' + x2 x2'
 *   b4 = x1' x2 + x1' x2' + x2 x2'
 * Replaceable so a deliberately broken form can be fed to the checker.
 */
struct QuadrupleForms
{
    QuadrupleForm s;
    std::array<QuadrupleForm, 4> b;

    static QuadrupleForms standard() noexcept;
};

//! All 16 quadruples; violations hold (x1, x1', x2, x2').
EnumerationReport enumerate_quadruple_identities(
    QuadrupleForms const& forms = QuadrupleForms::standard());

/*!
 * All 256 assignments of four measured pairs
 *   (x1, x2), (x~1, x2'), (x1', x~2), (x~1', x~2')
 * checking that s~ in {-2, 2} together with b~1..b~4 in {-1, 3} forces every
 * tilde value to equal its untilded partner. Violations hold
 * (x1, x2, x~1, x2', x1', x~2, x~1', x~2').
 */
EnumerationReport enumerate_noncfd_constraint();

//! Number of the 256 assignments that satisfy every non-CFD constraint.
std::uint64_t count_noncfd_consistent();

struct EberhardReports
{
    EnumerationReport eberhard;  // 81 cases, j >= 0
    EnumerationReport ch;        // 16 cases, j_CH >= 0
};

//! Violations hold fates (alpha1, alpha2, beta1, beta2).
EberhardReports enumerate_eberhard();

//---------------------------------------------------------------------------//
// Single-station pass probability
//---------------------------------------------------------------------------//

/*!
 * P(w = 1) for a station fed uniformly distributed polarizations:
 *   (1/pi) int_0^pi min(1, max(0, kappa / |sin u|^d)) du,
 *   kappa = (threshold + V_max) / (V_max - V_min).
 * Integrated by adaptive Gauss-Kronrod to relative error 1e-10.
 */
double pass_probability_quadrature(ModelParams const& p);

//! kappa for the parameter set; +inf when the voltage range is degenerate.
double pass_kappa(ModelParams const& p) noexcept;

/*!
 * Fraction of w = 1 over n station evaluations with uniform polarization
 * and a fixed setting, drawn from the counter generator keyed by seed.
 */
double simulated_pass_fraction(ModelParams const& p, std::uint64_t n,
                               std::uint64_t seed, unsigned threads = 0);

//---------------------------------------------------------------------------//
// Oracle suite
//---------------------------------------------------------------------------//

struct OracleSuiteOptions
{
    QuadrupleForms forms = QuadrupleForms::standard();
    std::uint64_t monte_carlo_samples = 1'000'000;
    std::uint64_t seed = 0x5EEDF00Du;
    unsigned threads = 0;
};

//! Exit status of the oracle suite: 0 clean, 2 on any violation.
inline constexpr int kOracleViolation = 2;

/*!
 * Run every enumeration and the quadrature cross-checks, writing a report
 * to out. Returns 0 when every claim holds, kOracleViolation otherwise.
 */
int run_oracles(std::ostream& out, OracleSuiteOptions const& opts = {});

}  // namespace eprb
