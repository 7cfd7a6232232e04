#pragma once

#include <cmath>
#include <numbers>

namespace twistcurve {

inline constexpr double k_two_pi = 2.0 * std::numbers::pi;

// Wraps x into [0, 1).  floor rounding can land on 1.0 for tiny negative x.
inline double wrap_unit(double x) {
    double y = x - std::floor(x);
    return y < 1.0 ? y : 0.0;
}

// Distance on R/Z: shorter arc between x and y, always in [0, 1/2].
inline double circle_dist(double x, double y) {
    double d = std::fabs(x - y);
    d -= std::floor(d);
    return d <= 0.5 ? d : 1.0 - d;
}

}  // namespace twistcurve
