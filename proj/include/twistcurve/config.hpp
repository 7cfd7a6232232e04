#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "twistcurve/alpha.hpp"
#include "twistcurve/map.hpp"
#include "twistcurve/observable.hpp"

namespace twistcurve {

// Carries every message produced while validating a config document.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Fully validated run parameters; every field has a default, so an empty
// document is a valid config.
struct RunConfig {
    CircleMapSpec map{MapKind::linear, 4, 0.0};

    ObservableKind obs_kind = ObservableKind::cosine;
    double obs_scale = 1.0;

    TwistConfig twist;  // twist.r mirrors observable.frequency

    double eval_tol = 1e-10;
    double newton_tol = 1e-14;
    std::uint64_t rng_seed = 1;

    int eval_points = 4096;

    int residual_points = 10000;

    int holder_points = 64;
    int holder_j_min = 8;
    int holder_j_max = 20;
    int holder_offsets = 17;

    std::int64_t boxdim_samples = 1 << 20;
    int boxdim_j_min = 4;
    int boxdim_j_max = 10;

    std::optional<double> center;  // condition-a / witness center; default: argmax of v'
    double witness_h_cap = 1e-2;

    double pressure_s = 1.0;
    int pressure_depth = 8;
    int dim_depth = 0;  // 0 = auto

    int hardy_degree = 32;
};

// Parses and validates a config document.  Unknown keys and out-of-range
// values are collected and reported together in one ConfigError.
RunConfig parse_config(const nlohmann::json& doc);

// The document parse_config(doc) round-trips to: defaults filled in, every
// value normalized.  This is what reports echo.
nlohmann::json effective_config(const RunConfig& cfg);

// Applies one "dotted.path=value" override onto a document (value parsed as
// JSON when possible, else kept as a string).
void apply_override(nlohmann::json& doc, const std::string& assignment);

Observable build_observable(const RunConfig& cfg);
CircleMap build_map(const RunConfig& cfg);

}  // namespace twistcurve
