#include "twistcurve/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "twistcurve/circle.hpp"
#include "kahan.hpp"

namespace twistcurve {

using detail::CompSum;

PinchingResult pinching_constant(const MapConstants& constants) {
    return PinchingResult{constants.kappa, constants.kappa < 1.0};
}

HardyResult hardy_threshold(double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("theta must lie in (0, 1)");
    HardyResult out;
    out.threshold = std::pow(5.0, 1.0 / (1.0 - theta));
    out.min_degree = static_cast<int>(std::floor(out.threshold)) + 1;
    return out;
}

ConditionAReport condition_a_report(const CircleMap& map, const Observable& obs,
                                    const TwistConfig& cfg, double c) {
    validate(cfg);
    Observable forced = compose_frequency(obs, cfg.r);
    ConditionAReport rep;
    rep.c = wrap_unit(c);
    rep.k0 = cfg.k0;
    double vpc = forced.deriv(rep.c);
    if (vpc == 0.0)
        throw std::domain_error("v' vanishes at the chosen center; no usable block");
    rep.sign_flipped = vpc < 0.0;
    if (rep.sign_flipped) forced = forced.negated();

    const MapConstants& mc = map.constants();
    const int k0 = cfg.k0;
    const double th = cfg.theta;
    const double eps = forced.epsilon();
    const double lam = mc.lambda;
    const double l1 = mc.lambda1;
    const double c1 = mc.distortion;
    const double mv = forced.max_abs();
    const double mvp = forced.max_abs_deriv();
    const double g2 = forced.deriv_holder();
    const double g3 = forced.second_holder();

    OrbitSlice orb = forward_orbit(map, rep.c, k0 - 1);
    rep.vprime_orbit.resize(static_cast<std::size_t>(k0));
    rep.v_min = std::numeric_limits<double>::infinity();
    rep.same_sign = true;
    for (int j = 0; j < k0; ++j) {
        double vp = forced.deriv(orb.points[static_cast<std::size_t>(j)]);
        rep.vprime_orbit[static_cast<std::size_t>(j)] = vp;
        rep.v_min = std::min(rep.v_min, std::fabs(vp));
        if (!(vp > 0.0)) rep.same_sign = false;
    }

    // quantitative sides; a degenerate orbit (v_min == 0) fails cleanly
    rep.a1_lhs = std::pow(6.0, 1.0 + 1.0 / eps) * std::pow(c1, 2.0 - th) * mv *
                 std::pow(g2, 1.0 / eps) /
                 ((1.0 - std::pow(lam, -k0 * th)) * std::pow(rep.v_min, 1.0 + 1.0 / eps)) *
                 (std::pow(l1, k0 - 1 + th) / std::pow(lam, (k0 + 1) * th));
    rep.a1_rhs = 1.0;
    rep.a2_lhs.resize(static_cast<std::size_t>(k0));
    rep.a2_rhs.resize(static_cast<std::size_t>(k0));
    bool a2_ok = true;
    for (int j = 0; j < k0; ++j) {
        double lhs = mvp * c1 * c1 / (1.0 - std::pow(lam, -k0 * (1.0 - th))) *
                     (std::pow(l1, th) / std::pow(lam, k0 * (1.0 - th) + th)) *
                     std::pow(l1 / lam, j * (1.0 - th));
        double rhs = rep.vprime_orbit[static_cast<std::size_t>(j)] / 4.0;
        rep.a2_lhs[static_cast<std::size_t>(j)] = lhs;
        rep.a2_rhs[static_cast<std::size_t>(j)] = rhs;
        if (!(lhs <= rhs)) a2_ok = false;
    }
    rep.a3_lhs = rep.v_min / (6.0 * g2);
    rep.a3_rhs = std::pow(l1, k0 - 1);
    rep.passes_a = rep.same_sign && rep.a1_lhs <= rep.a1_rhs && a2_ok &&
                   rep.a3_lhs <= rep.a3_rhs;

    rep.kappa = mc.kappa;
    rep.pinching_ok = mc.kappa < 1.0;
    rep.simple1_lhs = std::pow(l1, th) * c1 * c1 / (lam * (1.0 - std::pow(lam, th - 1.0)));
    rep.simple1_ok = rep.simple1_lhs <= 0.25;
    rep.simple2_lhs = mvp;
    rep.simple2_rhs = 9.0 * g3;
    rep.simple2_ok = rep.simple2_lhs <= rep.simple2_rhs;

    rep.regime = k0 == 1 ? (map.linear() ? Regime::linear_k1 : Regime::nonlinear_k1)
                         : Regime::general_k0;

    rep.d1.resize(static_cast<std::size_t>(k0));
    rep.d2.resize(static_cast<std::size_t>(k0));
    for (int j = 0; j < k0; ++j) {
        double vp = rep.vprime_orbit[static_cast<std::size_t>(j)];
        double d1j, d2j;
        if (map.linear()) {
            d1j = 6.0 * mv /
                  ((1.0 - std::pow(lam, -k0 * th)) * vp * std::pow(lam, k0 * th + j));
            d2j = std::pow(vp / (6.0 * g2), 1.0 / eps) * std::pow(lam, -static_cast<double>(j));
        } else {
            d1j = 6.0 * mv * std::pow(c1, 2.0 - th) * std::pow(l1, th) /
                  ((1.0 - std::pow(lam, -k0 * th)) * std::pow(lam, (k0 + 1) * th + j) * vp);
            d2j = std::pow(vp / (6.0 * g2), 1.0 / eps) * std::pow(l1, -static_cast<double>(j));
        }
        rep.d1[static_cast<std::size_t>(j)] = d1j;
        rep.d2[static_cast<std::size_t>(j)] = d2j;
    }
    rep.delta1 = *std::max_element(rep.d1.begin(), rep.d1.end());
    rep.delta2 = *std::min_element(rep.d2.begin(), rep.d2.end());

    switch (rep.regime) {
        case Regime::linear_k1:
            rep.c0 = std::pow(rep.delta1, 1.0 - th) * std::pow(lam, -th) *
                     rep.vprime_orbit[0] / 12.0;
            break;
        case Regime::nonlinear_k1:
            rep.c0 = std::pow(rep.delta1, 1.0 - th) * rep.vprime_orbit[0] /
                     (24.0 * std::pow(l1, th) * std::pow(c1, 2.0 - th));
            break;
        case Regime::general_k0: {
            CompSum s;
            if (map.linear()) {
                for (int j = 0; j < k0; ++j)
                    s.add(rep.vprime_orbit[static_cast<std::size_t>(j)] *
                          std::pow(lam, j * (1.0 - th) - th));
                rep.c0 = std::pow(rep.delta1, 1.0 - th) * s.sum / 12.0;
            } else {
                for (int j = 0; j < k0; ++j)
                    s.add(rep.vprime_orbit[static_cast<std::size_t>(j)] *
                          std::pow(lam, j * (1.0 - th)));
                rep.c0 = std::pow(c1, th - 2.0) * std::pow(rep.delta1, 1.0 - th) /
                         (24.0 * std::pow(l1, th)) * s.sum;
            }
            break;
        }
    }
    return rep;
}

namespace {

// log-accumulated denominators along an orbit: dens[i] = log (f^{i+1})'(x)
void orbit_with_log_dens(const CircleMap& map, double x, int n,
                         std::vector<double>& points, std::vector<double>& dens) {
    points.resize(static_cast<std::size_t>(n) + 1);
    dens.resize(static_cast<std::size_t>(n) + 1);
    CompSum log_den;
    double p = wrap_unit(x);
    for (int i = 0; i <= n; ++i) {
        points[static_cast<std::size_t>(i)] = p;
        log_den.add(std::log(map.deriv(p)));
        dens[static_cast<std::size_t>(i)] = log_den.sum;
        p = map.eval(p);
    }
}

}  // namespace

WitnessReport find_witness(const CircleMap& map, const Observable& obs,
                           const TwistConfig& cfg, const ConditionAReport& report,
                           double h_cap, std::uint64_t rng_seed) {
    validate(cfg);
    if (!(h_cap > 0.0 && h_cap <= 0.5))
        throw std::invalid_argument("h_cap must lie in (0, 1/2]");
    const bool admissible =
        report.passes_a ||
        (report.k0 == 1 && report.simple1_ok && report.simple2_ok && report.same_sign);
    if (!admissible)
        throw std::invalid_argument(
            "condition audit does not certify an increment lower bound at this center");
    if (!(report.delta1 <= report.delta2) || !(report.c0 > 0.0))
        throw std::invalid_argument(
            "empty admissible window: delta1 > delta2 or C0 <= 0");

    Observable forced = compose_frequency(obs, cfg.r);
    const MapConstants& mc = map.constants();
    const int k0 = report.k0;
    const double th = cfg.theta;
    const double rho = report.delta2 * std::pow(mc.lambda1, -(k0 - 1));
    const double h_floor = std::ldexp(1.0, -45);

    auto window_for = [&](int n, const OrbitSlice& orb) {
        if (map.linear()) {
            double s = std::pow(mc.lambda, -static_cast<double>(k0) * n);
            return std::pair<double, double>{report.delta1 * s, report.delta2 * s};
        }
        double dn = orb.deriv_products[static_cast<std::size_t>(k0 * n)];
        return std::pair<double, double>{report.delta1 / (mc.distortion * dn),
                                         report.delta2 / (mc.distortion * dn)};
    };

    const int orbit_len = 1000;
    const int starts = 10000;
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double x = 0.0, h = 0.0;
    int n_found = 0, deepest = 0;
    bool found = false, floored = false;

    for (int s = 0; s < starts && !found; ++s) {
        double x0 = unif(rng);
        OrbitSlice orb = forward_orbit(map, x0, orbit_len);
        for (int t = k0; t <= orbit_len; t += k0) {
            if (circle_dist(orb.points[static_cast<std::size_t>(t)], report.c) >= rho)
                continue;
            int n = t / k0;
            deepest = std::max(deepest, n);
            auto [lo, hi] = window_for(n, orb);
            if (hi > h_cap) continue;  // window still too wide; deeper returns shrink it
            double cand = std::sqrt(lo * hi);
            if (cand < h_floor) {
                floored = true;  // deeper returns only shrink h further
            } else {
                x = x0;
                h = cand;
                n_found = n;
                found = true;
            }
            break;
        }
    }

    if (!found) {
        // construct a return orbit directly: pull the center back through
        // random inverse branches, so f^{k0 n}(x) = c up to solver drift
        std::mt19937_64 rng2(rng_seed ^ 0x9e3779b97f4a7c15ULL);
        std::uniform_int_distribution<int> pick(0, map.degree() - 1);
        for (int n = 1; n <= 60 && !found; ++n) {
            double y = report.c;
            for (int i = 0; i < k0 * n; ++i) y = map.inverse_branch(pick(rng2), y);
            OrbitSlice orb = forward_orbit(map, y, k0 * n);
            if (circle_dist(orb.points[static_cast<std::size_t>(k0 * n)], report.c) >= rho)
                continue;
            deepest = std::max(deepest, n);
            auto [lo, hi] = window_for(n, orb);
            if (hi > h_cap) continue;
            double cand = std::sqrt(lo * hi);
            if (cand < h_floor) {
                floored = true;
                break;
            }
            x = y;
            h = cand;
            n_found = n;
            found = true;
        }
    }
    if (!found) {
        if (floored)
            throw std::runtime_error(
                "admissible increment window lies below the 2^-45 precision floor "
                "(deepest block count tried: " + std::to_string(deepest) + ")");
        throw std::runtime_error(
            "no orbit returned to the center within the search budget "
            "(deepest block count reached: " + std::to_string(deepest) + ")");
    }

    WitnessReport w;
    w.x = x;
    w.n = n_found;
    w.h = h;
    w.lower_bound = report.c0 * std::pow(h, th);
    const double tol = w.lower_bound / 100.0;
    EvalResult at_x = eval_alpha(x, tol, map, obs, cfg);
    EvalResult at_xh = eval_alpha(x + h, tol, map, obs, cfg);
    w.delta_alpha = at_x.value - at_xh.value;
    w.eval_error = at_x.tail_radius + at_xh.tail_radius;
    w.margin = std::fabs(w.delta_alpha) - w.lower_bound;
    w.passed = w.margin >= 0.0;

    // reconstruct the increment from the series at the shared truncation:
    // delta_alpha = sum_j B_j + perturbation, exactly at this truncation
    const int nt = std::max(at_x.truncation, at_xh.truncation);
    std::vector<double> px, dx, ph, dh;
    orbit_with_log_dens(map, x, nt, px, dx);
    orbit_with_log_dens(map, x + h, nt, ph, dh);
    std::vector<CompSum> blocks(static_cast<std::size_t>(k0));
    CompSum head, tail, pert;
    const int split = k0 * n_found;
    for (int i = 0; i <= nt; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        double den_x = std::exp(-th * dx[idx]);
        double diff = (forced.value(ph[idx]) - forced.value(px[idx])) * den_x;
        blocks[static_cast<std::size_t>(i % k0)].add(diff);
        (i < split ? head : tail).add(diff);
        pert.add(forced.value(ph[idx]) * (std::exp(-th * dh[idx]) - den_x));
    }
    w.block_sums.resize(static_cast<std::size_t>(k0));
    for (int j = 0; j < k0; ++j) w.block_sums[static_cast<std::size_t>(j)] = blocks[static_cast<std::size_t>(j)].sum;
    w.head_sum = head.sum;
    w.tail_sum = tail.sum;
    w.perturbation = pert.sum;
    return w;
}

}  // namespace twistcurve
