#include "eprb/selection.hpp"

namespace eprb
{

double to_time(double v, ModelParams const& p)
{
    double const span = p.v_top() - p.v_bottom();
    if (!(span > 0))
        throw InvalidParameter(
            "time view needs v_min < v_max (degenerate voltage range)");
    return (v - p.v_bottom()) / span;
}

}  // namespace eprb
