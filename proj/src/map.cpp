#include "twistcurve/map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "twistcurve/circle.hpp"
#include "extremum.hpp"

namespace twistcurve {

CircleMap::CircleMap(const CircleMapSpec& spec, double newton_tol)
    : spec_(spec), newton_tol_(newton_tol) {
    if (spec.degree < 2)
        throw std::invalid_argument("map degree must be at least 2, got " +
                                    std::to_string(spec.degree));
    if (spec.kind == MapKind::linear) {
        if (spec.amplitude != 0.0)
            throw std::invalid_argument("linear map cannot carry a sine amplitude");
    } else {
        if (!(std::fabs(spec.amplitude) < spec.degree - 1))
            throw std::invalid_argument(
                "sine amplitude must satisfy |amplitude| < degree - 1, got " +
                std::to_string(spec.amplitude));
    }
    if (!(newton_tol > 0.0 && newton_tol <= 1e-6))
        throw std::invalid_argument("newton_tol must lie in (0, 1e-6]");
    compute_endpoints();
    compute_constants();
}

double CircleMap::lift(double x) const {
    double base = static_cast<double>(spec_.degree) * x;
    if (spec_.kind == MapKind::linear) return base;
    return base + spec_.amplitude * std::sin(k_two_pi * x) / k_two_pi;
}

double CircleMap::eval(double x) const { return wrap_unit(lift(wrap_unit(x))); }

double CircleMap::deriv(double x) const {
    if (spec_.kind == MapKind::linear) return static_cast<double>(spec_.degree);
    return static_cast<double>(spec_.degree) +
           spec_.amplitude * std::cos(k_two_pi * x);
}

double CircleMap::second_deriv(double x) const {
    if (spec_.kind == MapKind::linear) return 0.0;
    return -spec_.amplitude * k_two_pi * std::sin(k_two_pi * x);
}

double CircleMap::branch_endpoint(int i) const {
    if (i < 0 || i > spec_.degree)
        throw std::invalid_argument("branch endpoint index out of range");
    return endpoints_[static_cast<std::size_t>(i)];
}

int CircleMap::branch_of(double x) const {
    double p = wrap_unit(x);
    // largest i with l_i <= p
    auto it = std::upper_bound(endpoints_.begin(), endpoints_.end(), p);
    int i = static_cast<int>(it - endpoints_.begin()) - 1;
    return std::clamp(i, 0, spec_.degree - 1);
}

// Solves lift(x) = branch + frac on the branch interval.  The residual is
// formed cancellation-free (fma for the linear part), so its only noise is
// the quantization of representable x: adjacent doubles move the residual by
// about degree * 2^-52.  Convergence is declared at
// max(newton_tol, degree * 2^-52); bisection guards every Newton step.
double CircleMap::solve_lift(int branch, double target_frac) const {
    const double d = static_cast<double>(spec_.degree);
    const double target = static_cast<double>(branch) + target_frac;
    auto res = [&](double x) {
        double r = std::fma(d, x, -target);
        if (spec_.kind == MapKind::sine_perturbed)
            r += spec_.amplitude * std::sin(k_two_pi * x) / k_two_pi;
        return r;
    };
    const double quantum = d * std::numeric_limits<double>::epsilon();
    const double tol = std::max(newton_tol_, quantum);
    double lo = endpoints_[static_cast<std::size_t>(branch)];
    double hi = endpoints_[static_cast<std::size_t>(branch) + 1];
    double x = lo + (hi - lo) * target_frac;  // exact already for linear maps
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        double r = res(x);
        if (std::fabs(r) <= tol) return x;
        (r > 0.0 ? hi : lo) = x;
        double next = x - r / deriv(x);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;  // bracket at representable resolution
        x = next;
    }
    double r = res(x);
    if (std::fabs(r) <= 8.0 * tol) return x;
    throw std::runtime_error("inverse branch solve stalled: |lift(x) - target| = " +
                             std::to_string(std::fabs(r)));
}

double CircleMap::inverse_branch(int branch, double y) const {
    if (branch < 0 || branch >= spec_.degree)
        throw std::invalid_argument("branch index out of range");
    return solve_lift(branch, wrap_unit(y));
}

double CircleMap::inverse_branch_closed(int branch, double y) const {
    if (branch < 0 || branch >= spec_.degree)
        throw std::invalid_argument("branch index out of range");
    if (!(y >= 0.0 && y <= 1.0))
        throw std::invalid_argument("inverse_branch_closed needs y in [0, 1]");
    if (y == 0.0) return endpoints_[static_cast<std::size_t>(branch)];
    if (y == 1.0) return endpoints_[static_cast<std::size_t>(branch) + 1];
    return solve_lift(branch, y);
}

void CircleMap::compute_endpoints() {
    const int d = spec_.degree;
    endpoints_.assign(static_cast<std::size_t>(d) + 1, 0.0);
    endpoints_[static_cast<std::size_t>(d)] = 1.0;
    if (spec_.kind == MapKind::linear) {
        for (int i = 1; i < d; ++i)
            endpoints_[static_cast<std::size_t>(i)] = static_cast<double>(i) / d;
        return;
    }
    // lift is strictly increasing; bisect lift(x) = i, then polish by Newton.
    for (int i = 1; i < d; ++i) {
        double lo = 0.0, hi = 1.0;
        double x = static_cast<double>(i) / d;
        for (int it = 0; it < 200; ++it) {
            double r = std::fma(static_cast<double>(d), x, -static_cast<double>(i)) +
                       spec_.amplitude * std::sin(k_two_pi * x) / k_two_pi;
            if (std::fabs(r) <= std::max(newton_tol_, d * std::numeric_limits<double>::epsilon()))
                break;
            (r > 0.0 ? hi : lo) = x;
            double next = x - r / deriv(x);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (next == x) break;
            x = next;
        }
        endpoints_[static_cast<std::size_t>(i)] = x;
    }
}

void CircleMap::compute_constants() {
    const int grid = 1 << 14;
    double x_min = detail::grid_argmin([&](double x) { return deriv(x); }, grid);
    double x_max = detail::grid_argmax([&](double x) { return deriv(x); }, grid);
    double x_bend = detail::grid_argmax(
        [&](double x) { return std::fabs(second_deriv(x)); }, grid);
    MapConstants c;
    c.lambda = deriv(x_min);
    c.lambda1 = deriv(x_max);
    c.lambda2 = std::fabs(second_deriv(x_bend));
    if (!(c.lambda > 1.0))
        throw std::runtime_error("map is not expanding: min f' = " +
                                 std::to_string(c.lambda));
    c.kappa = c.lambda1 / (c.lambda * c.lambda);
    c.distortion = std::max(1.0, std::exp(c.lambda2 / (c.lambda - 1.0)));
    constants_ = c;
}

CircleMap make_map(const CircleMapSpec& spec, double newton_tol) {
    return CircleMap(spec, newton_tol);
}

OrbitSlice forward_orbit(const CircleMap& map, double x, int m) {
    if (m < 0) throw std::invalid_argument("orbit length must be nonnegative");
    OrbitSlice out;
    out.points.reserve(static_cast<std::size_t>(m) + 1);
    out.deriv_products.reserve(static_cast<std::size_t>(m) + 1);
    double p = wrap_unit(x);
    double prod = 1.0;
    out.points.push_back(p);
    out.deriv_products.push_back(prod);
    for (int i = 0; i < m; ++i) {
        prod *= map.deriv(p);
        p = map.eval(p);
        out.points.push_back(p);
        out.deriv_products.push_back(prod);
    }
    return out;
}

DistortionRange distortion_check(const CircleMap& map, int trials,
                                 std::uint64_t rng_seed) {
    DistortionRange out;
    out.trials = std::max(trials, 0);
    if (trials <= 0) return out;
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double c1 = map.constants().distortion;
    // cap n so (f^n)' stays far from overflow
    int n_cap = std::min(30, static_cast<int>(600.0 / std::log(map.constants().lambda1)));
    n_cap = std::max(n_cap, 1);
    std::uniform_int_distribution<int> pick_n(1, n_cap);
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (int t = 0; t < trials; ++t) {
        double x = unif(rng);
        int n = pick_n(rng);
        OrbitSlice a = forward_orbit(map, x, n);
        double dn = a.deriv_products[static_cast<std::size_t>(n)];
        double h = (2.0 * unif(rng) - 1.0) / (c1 * dn);
        OrbitSlice b = forward_orbit(map, x + h, n);
        double ratio = dn / b.deriv_products[static_cast<std::size_t>(n)];
        mn = std::min(mn, ratio);
        mx = std::max(mx, ratio);
    }
    out.min_ratio = mn;
    out.max_ratio = mx;
    return out;
}

}  // namespace twistcurve
