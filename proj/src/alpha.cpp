#include "twistcurve/alpha.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "twistcurve/circle.hpp"
#include "kahan.hpp"

namespace twistcurve {

using detail::CompSum;

void validate(const TwistConfig& cfg) {
    if (!(cfg.theta > 0.0 && cfg.theta < 1.0))
        throw std::invalid_argument("twist exponent theta must lie in (0, 1), got " +
                                    std::to_string(cfg.theta));
    if (cfg.r < 1)
        throw std::invalid_argument("frequency multiplier r must be >= 1");
    if (cfg.k0 < 1)
        throw std::invalid_argument("block length k0 must be >= 1");
}

int truncation_for(double tol, const MapConstants& constants,
                   const Observable& obs, const TwistConfig& cfg) {
    validate(cfg);
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (!(constants.lambda > 1.0))
        throw std::invalid_argument("expansion constant lambda must exceed 1");
    double mv = obs.max_abs();
    if (mv == 0.0) return 0;
    double denom = 1.0 - std::pow(constants.lambda, -cfg.theta);
    int n = 0;
    while (mv * std::pow(constants.lambda, -(n + 1) * cfg.theta) / denom > tol) {
        if (++n > 200000)
            throw std::runtime_error("series truncation exceeded 200000 terms");
    }
    return n;
}

EvalResult eval_alpha(double x, double tol, const CircleMap& map,
                      const Observable& obs, const TwistConfig& cfg) {
    validate(cfg);
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    Observable forced = compose_frequency(obs, cfg.r);
    const MapConstants& mc = map.constants();
    const int n = truncation_for(tol, mc, forced, cfg);
    const double theta = cfg.theta;

    // denominators (f^{i+1})'(x)^theta accumulated in log space to survive
    // deep truncations; both running sums Kahan-compensated
    CompSum series;
    CompSum log_den;
    double p = wrap_unit(x);
    for (int i = 0; i <= n; ++i) {
        log_den.add(std::log(map.deriv(p)));
        series.add(forced.value(p) * std::exp(-theta * log_den.sum));
        p = map.eval(p);
    }
    double tail = forced.max_abs() * std::pow(mc.lambda, -(n + 1) * theta) /
                  (1.0 - std::pow(mc.lambda, -theta));
    return EvalResult{-series.sum, n, tail};
}

double alpha_sup_bound(const MapConstants& constants, const Observable& obs,
                       const TwistConfig& cfg) {
    validate(cfg);
    return obs.max_abs() / (std::pow(constants.lambda, cfg.theta) - 1.0);
}

double holder_upper_bound(const MapConstants& constants, const Observable& obs,
                          const TwistConfig& cfg) {
    validate(cfg);
    Observable forced = compose_frequency(obs, cfg.r);
    const double th = cfg.theta;
    const double lam = constants.lambda;
    const double mv = forced.max_abs();
    const double mvp = forced.max_abs_deriv();
    if (constants.lambda2 == 0.0) {
        // linear map: sharp two-term constant
        return 2.0 * mvp * std::pow(lam, th) / (1.0 - std::pow(lam, th - 1.0)) +
               4.0 * mv / (std::pow(lam, 2.0 * th) * (1.0 - std::pow(lam, -th)));
    }
    const double l1 = constants.lambda1;
    const double l2 = constants.lambda2;
    const double c1t = std::pow(constants.distortion, th);
    const double lbar = l2 / (lam * (lam - 1.0));
    const double geo_head = 1.0 - std::pow(lam, th - 1.0);
    const double geo_tail = 1.0 - std::pow(lam, -th);
    return mvp * c1t / (lam * geo_head) +
           mv * th * std::exp(th * lbar) * l2 * c1t / (lam * (lam - 1.0) * geo_head) +
           2.0 * mv * c1t / geo_tail +
           mv * (c1t + c1t * c1t * std::pow(l1, th)) / geo_tail;
}

GraphSample eval_alpha_iterative(int grid_size, int sweeps, const CircleMap& map,
                                 const Observable& obs, const TwistConfig& cfg) {
    validate(cfg);
    if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");
    if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
    Observable forced = compose_frequency(obs, cfg.r);
    const MapConstants& mc = map.constants();
    const double theta = cfg.theta;
    const std::size_t g = static_cast<std::size_t>(grid_size);
    const bool aligned = map.linear() && grid_size % map.degree() == 0;

    GraphSample out;
    out.xs.resize(g);
    out.values.assign(g, 0.0);
    out.sweeps = sweeps;
    std::vector<double> forcing(g), den_pow(g), next(g);
    std::vector<std::size_t> target_idx;
    std::vector<double> img;
    if (aligned) target_idx.resize(g);
    else img.resize(g);
    for (std::size_t k = 0; k < g; ++k) {
        double x = static_cast<double>(k) / grid_size;
        out.xs[k] = x;
        forcing[k] = forced.value(x);
        den_pow[k] = std::pow(map.deriv(x), theta);
        if (aligned)
            // f maps the grid onto itself: (k d) mod g, integer-exact
            target_idx[k] = static_cast<std::size_t>(
                (static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(map.degree())) % g);
        else
            img[k] = map.eval(x);
    }
    std::vector<double>& cur = out.values;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t k = 0; k < g; ++k) {
            double a;
            if (aligned) {
                a = cur[target_idx[k]];
            } else {
                double pos = img[k] * grid_size;
                std::size_t i0 = static_cast<std::size_t>(pos);
                if (i0 >= g) i0 = g - 1;
                double frac = pos - static_cast<double>(i0);
                std::size_t i1 = i0 + 1 == g ? 0 : i0 + 1;
                a = cur[i0] + frac * (cur[i1] - cur[i0]);
            }
            next[k] = (a - forcing[k]) / den_pow[k];
        }
        cur.swap(next);
    }

    const double lam_t = std::pow(mc.lambda, -theta);
    double radius = forced.max_abs() * std::pow(mc.lambda, -theta * sweeps) / (1.0 - lam_t);
    if (!aligned) {
        // each sweep reads alpha between grid nodes: linear interpolation of a
        // theta-Holder function on spacing 1/g errs by at most H (1/g)^theta
        double h = 1.0 / grid_size;
        double per_read;
        if (h <= 1.0 / (mc.distortion * mc.lambda1))
            per_read = holder_upper_bound(mc, obs, cfg) * std::pow(h, theta);
        else
            per_read = 2.0 * alpha_sup_bound(mc, forced, cfg);
        radius += per_read * lam_t / (1.0 - lam_t);
    }
    out.tail_radius = radius;
    return out;
}

double residual(double x, double tol, const CircleMap& map,
                const Observable& obs, const TwistConfig& cfg) {
    validate(cfg);
    Observable forced = compose_frequency(obs, cfg.r);
    double p = wrap_unit(x);
    EvalResult at_x = eval_alpha(p, tol, map, obs, cfg);
    EvalResult at_fx = eval_alpha(map.eval(p), tol, map, obs, cfg);
    return forced.value(p) - at_fx.value +
           std::pow(map.deriv(p), cfg.theta) * at_x.value;
}

}  // namespace twistcurve
