#pragma once

#include <memory>
#include <vector>

#include "twistcurve/alpha.hpp"

namespace twistcurve {

// Finite symbol block over the full d-shift; digits[i] is the branch index of
// f^i(x).  boundary_nudged records that some orbit point sat within 1e-15 of
// a branch endpoint and was pushed right before reading its digit.
struct SymbolSeq {
    std::vector<int> digits;
    bool boundary_nudged = false;
};

SymbolSeq itinerary(double x, int len, const CircleMap& map);

// Point of the cylinder [digits] obtained by pulling 1/2 back through the
// inverse branches, last digit first.
double code_point(const SymbolSeq& seq, const CircleMap& map);

// Length of the cylinder [digits]: the interval [0, 1] pushed through the
// inverse branches.  Between lambda^-n and lambda1^-n for n digits.
double cylinder_diameter(const SymbolSeq& seq, const CircleMap& map);

// Weight/height potential pair attached to (f, theta): the height is theta
// times the weight, so Birkhoff sums of the pair have exact ratio theta.
struct Potential {
    const CircleMap* map;
    double theta;

    double weight(double x) const;  // log f'(x)
    double height(double x) const;  // theta log f'(x)

    // Branch contraction a_i(y) = 1 / f'(f_i^{-1}(y)) and its theta-power.
    double contraction(int branch, double y) const;
    double twisted_contraction(int branch, double y) const;
};

// (sum_{i<m} height(f^i x)) / (sum_{i<m} weight(f^i x)); equals theta up to
// rounding, by construction.
double birkhoff_ratio(double x, int m, const CircleMap& map,
                      const TwistConfig& cfg);

struct PressureEstimate {
    double s;
    int depth;
    double value;                   // P_depth(s)
    double extrapolated;            // Aitken over the last three depths
    double error_bound;             // s log C1 / depth
    std::vector<double> per_depth;  // P_1 .. P_depth
};

// Cylinder statistics for the weight potential, reusable across s:
// one depth-first enumeration of all d^n cylinders (every prefix of the walk
// is itself a coded cylinder midpoint, so all depths 1..n come out of one
// tree), compressed into per-depth histograms over the Birkhoff sums
//   T = sum_{i<n} log f'(f^i(midpoint)).
// P_n(s) = (1/n) log sum_cylinders exp(-s T) is then one log-sum-exp over
// bins per query.  Exact for linear maps (a single T per depth); the bin
// width contributes relative error exp(s * bin_width) - 1, about 2e-7 for
// degree 8 at depth 8.
class PressureTable {
public:
    PressureTable(const CircleMap& map, int depth);
    ~PressureTable();
    PressureTable(PressureTable&&) noexcept;
    PressureTable& operator=(PressureTable&&) noexcept;

    int depth() const;
    double pressure_at(double s, int depth) const;
    PressureEstimate estimate(double s, int depth) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

PressureEstimate pressure(const CircleMap& map, double s, int depth);

// Root of the extrapolated pressure s -> P(-s log f'), located by bisection
// on [1/2, 3/2]; the graph dimension prediction is 1 + (root - theta).
struct DimViaPressure {
    double root;   // s* with P(s*) = 0
    double t;      // s* - theta
    double dim;    // 1 + t
    int depth;
};

// depth == 0 picks the largest n <= 8 with degree^n <= 2^24.
DimViaPressure dimension_via_pressure(const CircleMap& map,
                                      const TwistConfig& cfg, int depth = 0);

}  // namespace twistcurve
