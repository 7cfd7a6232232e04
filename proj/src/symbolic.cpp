#include "twistcurve/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "twistcurve/circle.hpp"
#include "kahan.hpp"

namespace twistcurve {

using detail::CompSum;

SymbolSeq itinerary(double x, int len, const CircleMap& map) {
    if (len < 0) throw std::invalid_argument("itinerary length must be nonnegative");
    SymbolSeq out;
    out.digits.reserve(static_cast<std::size_t>(len));
    double p = wrap_unit(x);
    for (int i = 0; i < len; ++i) {
        int b = map.branch_of(p);
        // a point within 1e-15 of the right endpoint is treated as belonging
        // to the next branch: upstream rounding may have landed it just short
        double right = map.branch_endpoint(b + 1);
        if (right - p <= 1e-15) {
            out.boundary_nudged = true;
            p = wrap_unit(p + 1e-15);
            b = map.branch_of(p);
        }
        out.digits.push_back(b);
        p = map.eval(p);
    }
    return out;
}

double code_point(const SymbolSeq& seq, const CircleMap& map) {
    double y = 0.5;
    for (auto it = seq.digits.rbegin(); it != seq.digits.rend(); ++it)
        y = map.inverse_branch(*it, y);
    return y;
}

double cylinder_diameter(const SymbolSeq& seq, const CircleMap& map) {
    double lo = 0.0, hi = 1.0;
    for (auto it = seq.digits.rbegin(); it != seq.digits.rend(); ++it) {
        lo = map.inverse_branch_closed(*it, lo);
        hi = map.inverse_branch_closed(*it, hi);
    }
    return hi - lo;
}

double Potential::weight(double x) const { return std::log(map->deriv(x)); }

double Potential::height(double x) const { return theta * std::log(map->deriv(x)); }

double Potential::contraction(int branch, double y) const {
    return 1.0 / map->deriv(map->inverse_branch(branch, y));
}

double Potential::twisted_contraction(int branch, double y) const {
    return std::pow(contraction(branch, y), theta);
}

double birkhoff_ratio(double x, int m, const CircleMap& map,
                      const TwistConfig& cfg) {
    validate(cfg);
    if (m < 1) throw std::invalid_argument("birkhoff_ratio needs m >= 1");
    Potential pot{&map, cfg.theta};
    CompSum sw, sh;
    double p = wrap_unit(x);
    for (int i = 0; i < m; ++i) {
        sw.add(pot.weight(p));
        sh.add(pot.height(p));
        p = map.eval(p);
    }
    return sh.sum / sw.sum;
}

namespace {

constexpr int k_bins = 1 << 16;
constexpr std::int64_t k_cylinder_budget = std::int64_t{1} << 24;

}  // namespace

struct PressureTable::Impl {
    const CircleMap map;
    int depth;

    struct Bin {
        std::int64_t count = 0;
        double sum = 0.0;
    };
    // hist[l-1]: distribution of T = S_l(log f') over all degree^l cylinders,
    // T measured at the coded midpoint of each cylinder
    std::vector<std::vector<Bin>> hist;
    std::vector<double> t_lo, t_wid;

    Impl(const CircleMap& m, int d) : map(m), depth(d) {
        const MapConstants& mc = map.constants();
        hist.assign(static_cast<std::size_t>(depth), {});
        t_lo.resize(static_cast<std::size_t>(depth));
        t_wid.resize(static_cast<std::size_t>(depth));
        for (int l = 1; l <= depth; ++l) {
            double lo = l * std::log(mc.lambda) - 1e-9;
            double hi = l * std::log(mc.lambda1) + 1e-9;
            t_lo[static_cast<std::size_t>(l - 1)] = lo;
            t_wid[static_cast<std::size_t>(l - 1)] = (hi - lo) / k_bins;
            hist[static_cast<std::size_t>(l - 1)].assign(k_bins, Bin{});
        }
        dfs(0.5, 0.0, 0);
    }

    void record(int level, double t) {
        auto& lo = t_lo[static_cast<std::size_t>(level - 1)];
        auto& wid = t_wid[static_cast<std::size_t>(level - 1)];
        auto idx = static_cast<std::int64_t>((t - lo) / wid);
        idx = std::clamp<std::int64_t>(idx, 0, k_bins - 1);
        Bin& b = hist[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(idx)];
        b.count += 1;
        b.sum += t;
    }

    // walk suffixes inward-out: prepending digit a to a suffix with coded
    // point y gives coded point inv_a(y); every node visited is the coded
    // midpoint of exactly one cylinder of its level
    void dfs(double y, double t, int level) {
        if (level == depth) return;
        for (int a = 0; a < map.degree(); ++a) {
            double y2 = map.inverse_branch(a, y);
            double t2 = t + std::log(map.deriv(y2));
            record(level + 1, t2);
            dfs(y2, t2, level + 1);
        }
    }

    double pressure_at(double s, int level) const {
        const auto& bins = hist[static_cast<std::size_t>(level - 1)];
        double m = -std::numeric_limits<double>::infinity();
        for (const Bin& b : bins)
            if (b.count > 0)
                m = std::max(m, -s * (b.sum / static_cast<double>(b.count)));
        CompSum acc;
        for (const Bin& b : bins)
            if (b.count > 0)
                acc.add(static_cast<double>(b.count) *
                        std::exp(-s * (b.sum / static_cast<double>(b.count)) - m));
        return (m + std::log(acc.sum)) / level;
    }

    // Aitken delta-squared over the last three depths
    double extrapolated(double s, int level) const {
        double p2 = pressure_at(s, level);
        if (level < 3) return p2;
        double p0 = pressure_at(s, level - 2);
        double p1 = pressure_at(s, level - 1);
        double den = (p2 - p1) - (p1 - p0);
        if (std::fabs(den) <= 1e-14 * std::max(1.0, std::fabs(p2))) return p2;
        return p2 - (p2 - p1) * (p2 - p1) / den;
    }
};

PressureTable::PressureTable(const CircleMap& map, int depth) {
    if (depth < 1 || depth > 12)
        throw std::invalid_argument("pressure depth must lie in [1, 12]");
    std::int64_t leaves = 1;
    for (int i = 0; i < depth; ++i) {
        leaves *= map.degree();
        if (leaves > k_cylinder_budget)
            throw std::invalid_argument(
                "cylinder budget exceeded: degree^depth > 2^24 (degree " +
                std::to_string(map.degree()) + ", depth " + std::to_string(depth) + ")");
    }
    impl_ = std::make_unique<Impl>(map, depth);
}

PressureTable::~PressureTable() = default;
PressureTable::PressureTable(PressureTable&&) noexcept = default;
PressureTable& PressureTable::operator=(PressureTable&&) noexcept = default;

int PressureTable::depth() const { return impl_->depth; }

double PressureTable::pressure_at(double s, int depth) const {
    if (depth < 1 || depth > impl_->depth)
        throw std::invalid_argument("depth out of the tabulated range");
    return impl_->pressure_at(s, depth);
}

PressureEstimate PressureTable::estimate(double s, int depth) const {
    if (depth < 1 || depth > impl_->depth)
        throw std::invalid_argument("depth out of the tabulated range");
    PressureEstimate out;
    out.s = s;
    out.depth = depth;
    out.per_depth.resize(static_cast<std::size_t>(depth));
    for (int l = 1; l <= depth; ++l)
        out.per_depth[static_cast<std::size_t>(l - 1)] = impl_->pressure_at(s, l);
    out.value = out.per_depth.back();
    out.extrapolated = impl_->extrapolated(s, depth);
    out.error_bound = std::fabs(s) *
                      std::log(impl_->map.constants().distortion) / depth;
    return out;
}

PressureEstimate pressure(const CircleMap& map, double s, int depth) {
    PressureTable table(map, depth);
    return table.estimate(s, depth);
}

DimViaPressure dimension_via_pressure(const CircleMap& map,
                                      const TwistConfig& cfg, int depth) {
    validate(cfg);
    if (depth < 0 || depth > 12)
        throw std::invalid_argument("pressure depth must lie in [0, 12]");
    if (depth == 0) {
        depth = 1;
        std::int64_t n = map.degree();
        while (depth < 8 && n * map.degree() <= k_cylinder_budget) {
            n *= map.degree();
            ++depth;
        }
    }
    PressureTable table(map, depth);
    auto p = [&](double s) { return table.estimate(s, depth).extrapolated; };
    double a = 0.5, b = 1.5;
    double pa = p(a), pb = p(b);
    if (!(pa > 0.0 && pb < 0.0))
        throw std::runtime_error(
            "pressure root not bracketed on [0.5, 1.5]: P(0.5) = " +
            std::to_string(pa) + ", P(1.5) = " + std::to_string(pb));
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        double m = 0.5 * (a + b);
        (p(m) > 0.0 ? a : b) = m;
    }
    DimViaPressure out;
    out.root = 0.5 * (a + b);
    out.t = out.root - cfg.theta;
    out.dim = 1.0 + out.t;
    out.depth = depth;
    return out;
}

}  // namespace twistcurve
