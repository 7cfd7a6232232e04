#pragma once

#include <vector>

#include "twistcurve/map.hpp"
#include "twistcurve/observable.hpp"

namespace twistcurve {

// Parameters of the cohomological equation
//   v(E_r(x)) = alpha(f(x)) - f'(x)^theta alpha(x),
// whose unique bounded solution is
//   alpha(x) = - sum_{i>=0} v(E_r(f^i(x))) / (f^{i+1})'(x)^theta.
struct TwistConfig {
    double theta = 0.5;  // twist exponent, in (0, 1)
    int r = 1;           // frequency multiplier applied to the forcing term
    int k0 = 1;          // block length for the lower-bound machinery
};

void validate(const TwistConfig& cfg);  // throws std::invalid_argument

struct EvalResult {
    double value;
    int truncation;      // series summed for i = 0..truncation inclusive
    double tail_radius;  // bound on the discarded tail: the certified error
};

// Smallest N with M_v lambda^{-(N+1)theta} / (1 - lambda^{-theta}) <= tol.
int truncation_for(double tol, const MapConstants& constants,
                   const Observable& obs, const TwistConfig& cfg);

// Direct series evaluation, truncated so the tail bound is at most tol.
// Derivative products are accumulated in log space so deep truncations at
// small theta cannot overflow; terms are Kahan-compensated.
EvalResult eval_alpha(double x, double tol, const CircleMap& map,
                      const Observable& obs, const TwistConfig& cfg);

// Fixed point of the graph transform
//   (T alpha)(x) = (alpha(f(x)) - v(E_r(x))) / f'(x)^theta,
// iterated on a uniform grid from alpha == 0.  T contracts by lambda^{-theta}
// per sweep.  Off-grid reads use linear interpolation with wraparound, except
// when the map is linear and degree divides grid_size: then f maps the grid
// onto itself, reads are exact by integer index, and the interpolation
// component of the certified radius is exactly zero.
struct GraphSample {
    std::vector<double> xs;      // k / grid_size
    std::vector<double> values;
    double tail_radius;          // iteration tail + interpolation bound
    int sweeps;
};

GraphSample eval_alpha_iterative(int grid_size, int sweeps, const CircleMap& map,
                                 const Observable& obs, const TwistConfig& cfg);

// v(E_r(x)) - alpha(f(x)) + f'(x)^theta alpha(x) with both evaluations at
// tolerance tol; bounded by (1 + lambda1^theta) * tol in magnitude.
double residual(double x, double tol, const CircleMap& map,
                const Observable& obs, const TwistConfig& cfg);

// sup |alpha| <= M_v / (lambda^theta - 1).
double alpha_sup_bound(const MapConstants& constants, const Observable& obs,
                       const TwistConfig& cfg);

// Global Holder-seminorm bound H with |alpha(x) - alpha(y)| <= H d(x,y)^theta
// for d(x,y) <= 1/(C1 lambda1).  Linear maps use the sharp two-term constant;
// nonlinear maps a four-term constant absorbing distortion.
double holder_upper_bound(const MapConstants& constants, const Observable& obs,
                          const TwistConfig& cfg);

}  // namespace twistcurve
