#pragma once

#include <cstdint>
#include <vector>

namespace twistcurve {

enum class MapKind { linear, sine_perturbed };

struct CircleMapSpec {
    MapKind kind = MapKind::linear;
    int degree = 2;          // topological degree d >= 2
    double amplitude = 0.0;  // sine perturbation strength; needs |amplitude| < degree - 1
};

// Derived global constants of an expanding map, fixed at construction.
struct MapConstants {
    double lambda;      // min f' > 1
    double lambda1;     // max f'
    double lambda2;     // max |f''|
    double kappa;       // lambda1 / lambda^2, pinching ratio
    double distortion;  // C1 = max(1, exp(lambda2 / (lambda - 1)))
};

// Orientation-preserving expanding circle map
//   f(x) = d x + amplitude * sin(2 pi x) / (2 pi)   (mod 1).
// Immutable after construction; cheap to copy, safe to share.
class CircleMap {
public:
    CircleMap(const CircleMapSpec& spec, double newton_tol);

    // Lift F: R -> R with F(x + 1) = F(x) + degree, F(0) = 0.
    double lift(double x) const;
    double eval(double x) const;          // f(x) in [0, 1)
    double deriv(double x) const;         // f'(x) = d + amplitude cos(2 pi x)
    double second_deriv(double x) const;  // f''(x) = -amplitude 2 pi sin(2 pi x)

    int degree() const { return spec_.degree; }
    bool linear() const { return spec_.kind == MapKind::linear; }
    const CircleMapSpec& spec() const { return spec_; }
    double newton_tol() const { return newton_tol_; }
    const MapConstants& constants() const { return constants_; }

    // Left endpoint l_i of the i-th monotone branch: lift(l_i) = i,
    // i in [0, degree]; l_0 = 0 and l_degree = 1 exactly.
    double branch_endpoint(int i) const;

    // Index i with x in [l_i, l_{i+1}).
    int branch_of(double x) const;

    // Unique x in branch i with f(x) = y (mod 1); y may be any real, wrapped
    // to [0, 1).  Safeguarded Newton on the lift, bisection-bracketed.
    double inverse_branch(int branch, double y) const;

    // Same solve with y in the closed interval [0, 1]; y = 1 returns the
    // right branch endpoint.  Needed to push interval endpoints backwards.
    double inverse_branch_closed(int branch, double y) const;

private:
    CircleMapSpec spec_;
    double newton_tol_;
    std::vector<double> endpoints_;  // l_0 .. l_degree
    MapConstants constants_;

    double solve_lift(int branch, double target_frac) const;
    void compute_endpoints();
    void compute_constants();
};

CircleMap make_map(const CircleMapSpec& spec, double newton_tol = 1e-14);

inline MapConstants map_constants(const CircleMap& map) { return map.constants(); }

// Forward orbit segment together with the running derivative products:
//   points[i]         = f^i(x)            for i = 0..m
//   deriv_products[i] = (f^i)'(x)         for i = 0..m   ((f^0)' = 1)
struct OrbitSlice {
    std::vector<double> points;
    std::vector<double> deriv_products;
};

OrbitSlice forward_orbit(const CircleMap& map, double x, int m);

// Empirical extremes of (f^n)'(x) / (f^n)'(x') over random admissible pairs,
// where |x - x'| <= 1 / (C1 (f^n)'(x)) and n <= 30.  The bounded-distortion
// envelope predicts both ratios inside [1/C1, C1].
struct DistortionRange {
    double min_ratio = 1.0;
    double max_ratio = 1.0;
    int trials = 0;
};

DistortionRange distortion_check(const CircleMap& map, int trials,
                                 std::uint64_t rng_seed);

}  // namespace twistcurve
