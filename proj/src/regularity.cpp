#include "twistcurve/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "twistcurve/circle.hpp"

namespace twistcurve {

namespace {

struct LineFit {
    double slope;
    double std_error;
    double r2;
};

// ordinary least squares of y against x
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit out;
    out.slope = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double resid = (y[i] - my) - out.slope * (x[i] - mx);
        ssr += resid * resid;
    }
    out.std_error = n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2) / sxx) : 0.0;
    out.r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    return out;
}

}  // namespace

HolderEstimate holder_regression(const std::function<double(double)>& fn,
                                 double x, int j_min, int j_max,
                                 int offsets_per_scale, double eval_err) {
    if (j_min < 1 || j_max <= j_min || j_max > 45)
        throw std::invalid_argument("need 1 <= j_min < j_max <= 45");
    if (offsets_per_scale < 3 || offsets_per_scale % 2 == 0)
        throw std::invalid_argument("offsets_per_scale must be odd and >= 3");
    if (!(eval_err >= 0.0))
        throw std::invalid_argument("eval_err must be nonnegative");

    const int half = (offsets_per_scale - 1) / 2;
    const double fx = fn(x);
    const int n_scales = j_max - j_min + 1;
    std::vector<double> raw(static_cast<std::size_t>(n_scales), 0.0);
    for (int j = j_max; j >= j_min; --j) {
        double h = std::ldexp(1.0, -j);
        double m = 0.0;
        for (int k = -half; k <= half; ++k) {
            if (k == 0) continue;
            double osc = std::fabs(fn(x + k * h / half) - fx);
            m = std::max(m, osc);
        }
        raw[static_cast<std::size_t>(j - j_min)] = m;
    }
    // sampled windows at different scales are not nested; restore the ideal
    // monotonicity (finer window => smaller sup) by cumulative max upward
    std::vector<double> osc(raw);
    for (int i = n_scales - 2; i >= 0; --i)
        osc[static_cast<std::size_t>(i)] =
            std::max(osc[static_cast<std::size_t>(i)], osc[static_cast<std::size_t>(i) + 1]);

    const double noise_floor = 10.0 * (2.0 * eval_err);
    HolderEstimate out;
    out.x = x;
    out.dropped_scales = 0;
    std::vector<double> lx, ly;
    for (int i = 0; i < n_scales; ++i) {
        double h = std::ldexp(1.0, -(j_min + i));
        double v = osc[static_cast<std::size_t>(i)];
        if (v <= noise_floor) {
            ++out.dropped_scales;
            continue;
        }
        out.scales.push_back(h);
        out.oscillations.push_back(v);
        lx.push_back(std::log(h));
        ly.push_back(std::log(v));
    }
    if (out.scales.size() < 2)
        throw std::runtime_error(
            "oscillation regression degenerate: fewer than two scales above the "
            "noise floor (is the function constant?)");
    LineFit fit = fit_line(lx, ly);
    out.exponent = fit.slope;
    out.std_error = fit.std_error;
    return out;
}

HolderEstimate holder_exponent_at(double x, int j_min, int j_max,
                                  int offsets_per_scale, const CircleMap& map,
                                  const Observable& obs, const TwistConfig& cfg) {
    validate(cfg);
    // evaluation noise must sit far below the finest expected oscillation
    double tol = std::exp2(-j_max * cfg.theta) * 1e-3;
    auto fn = [&](double y) { return eval_alpha(y, tol, map, obs, cfg).value; };
    return holder_regression(fn, x, j_min, j_max, offsets_per_scale, tol);
}

BoxDimEstimate box_dimension(std::int64_t sample_count, int j_min, int j_max,
                             const CircleMap& map, const Observable& obs,
                             const TwistConfig& cfg) {
    validate(cfg);
    if (j_min < 1 || j_max <= j_min || j_max > 26)
        throw std::invalid_argument("need 1 <= j_min < j_max <= 26");
    const std::int64_t finest = std::int64_t{1} << j_max;
    if (sample_count < 4 * finest)
        throw std::invalid_argument(
            "undersampled: need at least 4 samples per finest column, got " +
            std::to_string(sample_count) + " for " + std::to_string(finest) +
            " columns");

    const double tol = std::exp2(-j_max) * 1e-3;
    std::vector<double> cmin(static_cast<std::size_t>(finest),
                             std::numeric_limits<double>::infinity());
    std::vector<double> cmax(static_cast<std::size_t>(finest),
                             -std::numeric_limits<double>::infinity());
    for (std::int64_t k = 0; k < sample_count; ++k) {
        double x = static_cast<double>(k) / static_cast<double>(sample_count);
        double v = eval_alpha(x, tol, map, obs, cfg).value;
        auto col = static_cast<std::size_t>(x * static_cast<double>(finest));
        if (col >= cmin.size()) col = cmin.size() - 1;
        cmin[col] = std::min(cmin[col], v);
        cmax[col] = std::max(cmax[col], v);
    }

    BoxDimEstimate out;
    std::vector<double> jx, jy;
    for (int j = j_min; j <= j_max; ++j) {
        const double scale = std::exp2(j);
        const std::int64_t cols = std::int64_t{1} << j;
        const std::int64_t group = finest / cols;  // finest columns per column
        std::uint64_t boxes = 0;
        std::vector<std::pair<std::int64_t, std::int64_t>> segs;
        for (std::int64_t cgrp = 0; cgrp < cols; ++cgrp) {
            segs.clear();
            for (std::int64_t i = cgrp * group; i < (cgrp + 1) * group; ++i) {
                const auto idx = static_cast<std::size_t>(i);
                if (!(cmin[idx] <= cmax[idx])) continue;  // column never sampled
                auto lo = static_cast<std::int64_t>(std::floor(cmin[idx] * scale));
                auto hi = static_cast<std::int64_t>(std::floor(cmax[idx] * scale));
                segs.emplace_back(lo, hi);
            }
            std::sort(segs.begin(), segs.end());
            std::int64_t covered_to = std::numeric_limits<std::int64_t>::min();
            for (const auto& [lo, hi] : segs) {
                std::int64_t from = std::max(lo, covered_to + 1);
                if (hi >= from) {
                    boxes += static_cast<std::uint64_t>(hi - from + 1);
                    covered_to = hi;
                } else {
                    covered_to = std::max(covered_to, hi);
                }
            }
        }
        out.scales.push_back(std::exp2(-j));
        out.counts.push_back(boxes);
        jx.push_back(static_cast<double>(j) * std::log(2.0));
        jy.push_back(std::log(static_cast<double>(boxes)));
    }
    LineFit fit = fit_line(jx, jy);
    out.dim = fit.slope;
    out.r2 = fit.r2;
    return out;
}

double exponent_bound_from_dimension(double dim) {
    if (!(dim >= 1.0 && dim <= 2.0))
        throw std::domain_error("graph box dimension must lie in [1, 2], got " +
                                std::to_string(dim));
    return 2.0 - dim;
}

}  // namespace twistcurve
