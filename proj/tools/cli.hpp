#pragma once

#include <iosfwd>

namespace eprb::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitOracle = 2;

//! Entry point shared by the executable and the tests.
int run(int argc, char const* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace eprb::cli
