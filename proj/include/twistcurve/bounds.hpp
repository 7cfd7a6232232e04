#pragma once

#include <cstdint>
#include <vector>

#include "twistcurve/alpha.hpp"

namespace twistcurve {

// Orbit-condition audit at the derivative-argmax c (or a supplied center):
// same-sign derivatives along the first k0 iterates plus three quantitative
// inequalities strong enough to run the increment lower bound.  Also carries
// the simpler pinching-style sufficient conditions and the per-regime
// thresholds (delta1, delta2) and constant C0 of the witness inequality
//   |alpha(x) - alpha(x + h)| >= C0 h^theta.
enum class Regime { linear_k1, nonlinear_k1, general_k0 };

struct ConditionAReport {
    double c;
    int k0;
    bool sign_flipped;                 // v replaced by -v so v'(c) > 0
    std::vector<double> vprime_orbit;  // v'(f^j(c)), j = 0..k0-1, after any flip
    double v_min;                      // min_j |v'(f^j(c))|
    bool same_sign;

    double a1_lhs, a1_rhs;             // global-size inequality, rhs = 1
    std::vector<double> a2_lhs;        // per-j perturbation bound ...
    std::vector<double> a2_rhs;        // ... against v'(f^j(c)) / 4
    double a3_lhs, a3_rhs;             // V_min/(6 Gamma_2) <= lambda1^{k0-1}
    bool passes_a;

    double kappa;                      // lambda1 / lambda^2
    bool pinching_ok;                  // kappa < 1

    double simple1_lhs;                // lambda1^theta C1^2 / (lambda (1 - lambda^{theta-1}))
    bool simple1_ok;                   // ... <= 1/4
    double simple2_lhs, simple2_rhs;   // M_v' <= 9 Gamma
    bool simple2_ok;

    Regime regime;
    std::vector<double> d1, d2;        // per-block thresholds D1^{(j)}, D2^{(j)}
    double delta1, delta2;             // max_j D1, min_j D2
    double c0;                         // witness constant
};

ConditionAReport condition_a_report(const CircleMap& map, const Observable& obs,
                                    const TwistConfig& cfg, double c);

struct PinchingResult {
    double kappa;
    bool ok;  // kappa < 1
};

PinchingResult pinching_constant(const MapConstants& constants);

// Smallest integer degree b with b^{1-theta} > 5, i.e. above 5^{1/(1-theta)};
// past it the classical lacunary obstruction to differentiability kicks in.
struct HardyResult {
    double threshold;  // 5^{1/(1-theta)}
    int min_degree;
};

HardyResult hardy_threshold(double theta);

// A concrete increment certificate: point x whose orbit returns near c after
// k0*N steps, an admissible h, and the measured |alpha(x) - alpha(x+h)|
// against C0 h^theta.  block_sums reconstruct the increment from the series.
struct WitnessReport {
    double x;
    int n;                           // block count N
    double h;
    double delta_alpha;              // alpha(x) - alpha(x + h)
    double lower_bound;              // C0 h^theta
    double margin;                   // |delta_alpha| - lower_bound
    bool passed;
    std::vector<double> block_sums;  // B_j, residue classes j = 0..k0-1
    double head_sum;                 // series indices i < k0 N
    double tail_sum;                 // series indices i >= k0 N
    double perturbation;             // derivative-ratio correction, 0 for linear maps
    double eval_error;               // combined certified radii of the two evaluations
};

WitnessReport find_witness(const CircleMap& map, const Observable& obs,
                           const TwistConfig& cfg, const ConditionAReport& report,
                           double h_cap, std::uint64_t rng_seed);

}  // namespace twistcurve
