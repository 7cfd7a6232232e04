#include "twistcurve/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "twistcurve/bounds.hpp"
#include "twistcurve/regularity.hpp"
#include "twistcurve/report.hpp"
#include "twistcurve/symbolic.hpp"

namespace twistcurve {

namespace {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::linear_k1: return "linear_k1";
        case Regime::nonlinear_k1: return "nonlinear_k1";
        default: return "general_k0";
    }
}

double resolve_center(const RunConfig& cfg) {
    if (cfg.center) return *cfg.center;
    Observable forced = compose_frequency(build_observable(cfg), cfg.twist.r);
    return forced.deriv_argmax();
}

std::string csv_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

RunOutcome run_eval(const RunConfig& cfg, const std::string& out_dir) {
    CircleMap map = build_map(cfg);
    Observable obs = build_observable(cfg);
    std::string csv = "x,alpha,tail_radius\n";
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    int truncation = 0;
    double radius = 0.0;
    for (int k = 0; k < cfg.eval_points; ++k) {
        double x = static_cast<double>(k) / cfg.eval_points;
        EvalResult r = eval_alpha(x, cfg.eval_tol, map, obs, cfg.twist);
        csv += csv_cell(x) + "," + csv_cell(r.value) + "," + csv_cell(r.tail_radius) + "\n";
        lo = std::min(lo, r.value);
        hi = std::max(hi, r.value);
        truncation = std::max(truncation, r.truncation);
        radius = std::max(radius, r.tail_radius);
    }
    write_text_file(out_dir + "/alpha.csv", csv);
    nlohmann::json result = {{"points", cfg.eval_points},
                             {"tolerance", cfg.eval_tol},
                             {"truncation", truncation},
                             {"tail_radius", radius},
                             {"alpha_min", lo},
                             {"alpha_max", hi},
                             {"csv_path", "alpha.csv"}};
    return {result, 0};
}

RunOutcome run_residual_scan(const RunConfig& cfg, const std::string&) {
    CircleMap map = build_map(cfg);
    Observable obs = build_observable(cfg);
    std::mt19937_64 rng(cfg.rng_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0, worst_x = 0.0;
    for (int k = 0; k < cfg.residual_points; ++k) {
        double x = unif(rng);
        double r = std::fabs(residual(x, cfg.eval_tol, map, obs, cfg.twist));
        if (r > worst) {
            worst = r;
            worst_x = x;
        }
    }
    double bound = (1.0 + std::pow(map.constants().lambda1, cfg.twist.theta)) *
                   cfg.eval_tol;
    nlohmann::json result = {{"points", cfg.residual_points},
                             {"tolerance", cfg.eval_tol},
                             {"max_abs_residual", worst},
                             {"argmax", worst_x},
                             {"bound", bound},
                             {"within_bound", worst <= bound}};
    return {result, 0};
}

RunOutcome run_holder(const RunConfig& cfg, const std::string&) {
    CircleMap map = build_map(cfg);
    Observable obs = build_observable(cfg);
    std::vector<double> exps;
    std::vector<nlohmann::json> rows;
    for (int k = 0; k < cfg.holder_points; ++k) {
        double x = (k + 0.5) / cfg.holder_points;
        HolderEstimate est = holder_exponent_at(x, cfg.holder_j_min, cfg.holder_j_max,
                                                cfg.holder_offsets, map, obs, cfg.twist);
        exps.push_back(est.exponent);
        rows.push_back({{"x", est.x},
                        {"exponent", est.exponent},
                        {"std_error", est.std_error},
                        {"dropped_scales", est.dropped_scales}});
    }
    std::vector<double> sorted = exps;
    std::sort(sorted.begin(), sorted.end());
    std::size_t n = sorted.size();
    double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    nlohmann::json result = {{"points", cfg.holder_points},
                             {"j_min", cfg.holder_j_min},
                             {"j_max", cfg.holder_j_max},
                             {"offsets_per_scale", cfg.holder_offsets},
                             {"median_exponent", median},
                             {"estimates", rows}};
    return {result, 0};
}

RunOutcome run_boxdim(const RunConfig& cfg, const std::string&) {
    CircleMap map = build_map(cfg);
    Observable obs = build_observable(cfg);
    BoxDimEstimate est = box_dimension(cfg.boxdim_samples, cfg.boxdim_j_min,
                                       cfg.boxdim_j_max, map, obs, cfg.twist);
    nlohmann::json result = {{"samples", cfg.boxdim_samples},
                             {"j_min", cfg.boxdim_j_min},
                             {"j_max", cfg.boxdim_j_max},
                             {"scales", est.scales},
                             {"counts", est.counts},
                             {"dim", est.dim},
                             {"r2", est.r2},
                             {"exponent_bound", exponent_bound_from_dimension(
                                                    std::clamp(est.dim, 1.0, 2.0))}};
    return {result, 0};
}

nlohmann::json condition_a_json(const ConditionAReport& rep) {
    return {{"c", rep.c},
            {"k0", rep.k0},
            {"sign_flipped", rep.sign_flipped},
            {"vprime_orbit", rep.vprime_orbit},
            {"v_min", rep.v_min},
            {"same_sign", rep.same_sign},
            {"a1_lhs", rep.a1_lhs},
            {"a1_rhs", rep.a1_rhs},
            {"a2_lhs", rep.a2_lhs},
            {"a2_rhs", rep.a2_rhs},
            {"a3_lhs", rep.a3_lhs},
            {"a3_rhs", rep.a3_rhs},
            {"passes_a", rep.passes_a},
            {"kappa", rep.kappa},
            {"pinching_ok", rep.pinching_ok},
            {"simple1_lhs", rep.simple1_lhs},
            {"simple1_ok", rep.simple1_ok},
            {"simple2_lhs", rep.simple2_lhs},
            {"simple2_rhs", rep.simple2_rhs},
            {"simple2_ok", rep.simple2_ok},
            {"regime", regime_name(rep.regime)},
            {"d1", rep.d1},
            {"d2", rep.d2},
            {"delta1", rep.delta1},
            {"delta2", rep.delta2},
            {"c0", rep.c0}};
}

RunOutcome run_condition_a(const RunConfig& cfg, const std::string&) {
    CircleMap map = build_map(cfg);
    Observable obs = build_observable(cfg);
    ConditionAReport rep = condition_a_report(map, obs, cfg.twist, resolve_center(cfg));
    return {condition_a_json(rep), rep.passes_a ? 0 : 1};
}

RunOutcome run_witness(const RunConfig& cfg, const std::string&) {
    CircleMap map = build_map(cfg);
    Observable obs = build_observable(cfg);
    ConditionAReport rep = condition_a_report(map, obs, cfg.twist, resolve_center(cfg));
    WitnessReport w = find_witness(map, obs, cfg.twist, rep, cfg.witness_h_cap,
                                   cfg.rng_seed);
    nlohmann::json result = {{"x", w.x},
                             {"n", w.n},
                             {"h", w.h},
                             {"delta_alpha", w.delta_alpha},
                             {"lower_bound", w.lower_bound},
                             {"margin", w.margin},
                             {"passed", w.passed},
                             {"block_sums", w.block_sums},
                             {"head_sum", w.head_sum},
                             {"tail_sum", w.tail_sum},
                             {"perturbation", w.perturbation},
                             {"eval_error", w.eval_error},
                             {"condition_a", condition_a_json(rep)}};
    return {result, w.passed ? 0 : 1};
}

RunOutcome run_pressure(const RunConfig& cfg, const std::string&) {
    CircleMap map = build_map(cfg);
    PressureEstimate est = pressure(map, cfg.pressure_s, cfg.pressure_depth);
    nlohmann::json result = {{"s", est.s},
                             {"depth", est.depth},
                             {"value", est.value},
                             {"extrapolated", est.extrapolated},
                             {"error_bound", est.error_bound},
                             {"per_depth", est.per_depth}};
    return {result, 0};
}

RunOutcome run_dim(const RunConfig& cfg, const std::string&) {
    CircleMap map = build_map(cfg);
    DimViaPressure d = dimension_via_pressure(map, cfg.twist, cfg.dim_depth);
    nlohmann::json result = {
        {"root", d.root}, {"t", d.t}, {"dim", d.dim}, {"depth", d.depth}};
    return {result, 0};
}

RunOutcome run_hardy(const RunConfig& cfg, const std::string&) {
    HardyResult hr = hardy_threshold(cfg.twist.theta);
    bool above = cfg.hardy_degree >= hr.min_degree;
    nlohmann::json result = {{"theta", cfg.twist.theta},
                             {"threshold", hr.threshold},
                             {"min_degree", hr.min_degree},
                             {"degree", cfg.hardy_degree},
                             {"above_threshold", above}};
    return {result, above ? 0 : 1};
}

}  // namespace

RunOutcome run(const std::string& command, const RunConfig& cfg,
               const std::string& out_dir) {
    if (command == "eval") return run_eval(cfg, out_dir);
    if (command == "residual-scan") return run_residual_scan(cfg, out_dir);
    if (command == "holder") return run_holder(cfg, out_dir);
    if (command == "boxdim") return run_boxdim(cfg, out_dir);
    if (command == "condition-a") return run_condition_a(cfg, out_dir);
    if (command == "witness") return run_witness(cfg, out_dir);
    if (command == "pressure") return run_pressure(cfg, out_dir);
    if (command == "dim") return run_dim(cfg, out_dir);
    if (command == "hardy") return run_hardy(cfg, out_dir);
    throw std::invalid_argument("unknown command: " + command);
}

}  // namespace twistcurve
