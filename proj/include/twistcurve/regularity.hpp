#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "twistcurve/alpha.hpp"

namespace twistcurve {

struct HolderEstimate {
    double x;
    double exponent;    // regression slope of log osc against log h
    double std_error;   // standard error of the slope
    std::vector<double> scales;        // retained h = 2^-j, decreasing
    std::vector<double> oscillations;  // matching osc(x, h), nonincreasing
    int dropped_scales;                // scales discarded as noise-dominated
};

// Local oscillation regression for an arbitrary pointwise-evaluable function.
// osc(x, h) = max over offsets y = x + k h / K, |k| <= K, of |fn(y) - fn(x)|,
// made monotone across scales by cumulative max from the finest scale up
// (sound: the ideal osc is a sup over nested windows).  Scales whose
// oscillation is below 10x the evaluation noise (2 * eval_err per difference)
// are dropped; fewer than two surviving scales is an error.
HolderEstimate holder_regression(const std::function<double(double)>& fn,
                                 double x, int j_min, int j_max,
                                 int offsets_per_scale, double eval_err);

// Same regression applied to alpha, evaluated at tolerance
// 2^{-j_max theta} * 1e-3 so the finest oscillations stay above the noise.
HolderEstimate holder_exponent_at(double x, int j_min, int j_max,
                                  int offsets_per_scale, const CircleMap& map,
                                  const Observable& obs, const TwistConfig& cfg);

struct BoxDimEstimate {
    std::vector<double> scales;        // 2^-j for j = j_min..j_max
    std::vector<std::uint64_t> counts; // N_j: boxes of side 2^-j meeting the graph
    double dim;                        // regression slope of log N_j against j log 2
    double r2;
};

// Box-counting dimension of the graph of alpha over one sampling pass of
// sample_count uniform points (needs sample_count >= 4 * 2^j_max).  Counts at
// every scale derive from per-column min/max at the finest scale, so
// N_{j+1} >= N_j holds structurally.
BoxDimEstimate box_dimension(std::int64_t sample_count, int j_min, int j_max,
                             const CircleMap& map, const Observable& obs,
                             const TwistConfig& cfg);

// A graph of box dimension D in [1, 2] is Holder of exponent at most 2 - D.
double exponent_bound_from_dimension(double dim);

}  // namespace twistcurve
