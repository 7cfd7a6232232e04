#include "twistcurve/config.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace twistcurve {

namespace {

// Reader for one object section: typed getters with defaults, range checks,
// and an unknown-key sweep.  Errors accumulate so one parse reports them all.
class Section {
public:
    Section(const nlohmann::json* obj, std::string name, std::vector<std::string>& errs)
        : obj_(obj), name_(std::move(name)), errs_(errs) {}

    double num(const char* key, double dflt, double lo, double hi) {
        used_.insert(key);
        if (!obj_ || !obj_->contains(key)) return dflt;
        const auto& v = obj_->at(key);
        if (!v.is_number()) {
            fail(key, "expected a number");
            return dflt;
        }
        double x = v.get<double>();
        if (!std::isfinite(x) || x < lo || x > hi) {
            std::ostringstream os;
            os << "must lie in [" << lo << ", " << hi << "], got " << x;
            fail(key, os.str());
            return dflt;
        }
        return x;
    }

    std::int64_t integer(const char* key, std::int64_t dflt, std::int64_t lo,
                         std::int64_t hi) {
        used_.insert(key);
        if (!obj_ || !obj_->contains(key)) return dflt;
        const auto& v = obj_->at(key);
        if (!v.is_number_integer()) {
            fail(key, "expected an integer");
            return dflt;
        }
        auto x = v.get<std::int64_t>();
        if (x < lo || x > hi) {
            std::ostringstream os;
            os << "must lie in [" << lo << ", " << hi << "], got " << x;
            fail(key, os.str());
            return dflt;
        }
        return x;
    }

    std::string str(const char* key, const std::string& dflt) {
        used_.insert(key);
        if (!obj_ || !obj_->contains(key)) return dflt;
        const auto& v = obj_->at(key);
        if (!v.is_string()) {
            fail(key, "expected a string");
            return dflt;
        }
        return v.get<std::string>();
    }

    // number or null; null and absence both mean "unset"
    std::optional<double> opt_num(const char* key, double lo, double hi) {
        used_.insert(key);
        if (!obj_ || !obj_->contains(key)) return std::nullopt;
        const auto& v = obj_->at(key);
        if (v.is_null()) return std::nullopt;
        if (!v.is_number()) {
            fail(key, "expected a number or null");
            return std::nullopt;
        }
        double x = v.get<double>();
        if (!std::isfinite(x) || x < lo || x > hi) {
            std::ostringstream os;
            os << "must lie in [" << lo << ", " << hi << "], got " << x;
            fail(key, os.str());
            return std::nullopt;
        }
        return x;
    }

    void fail(const char* key, const std::string& msg) {
        errs_.push_back(name_ + "." + key + ": " + msg);
    }

    ~Section() {
        if (!obj_) return;
        for (const auto& item : obj_->items())
            if (!used_.count(item.key()))
                errs_.push_back(name_ + "." + item.key() + ": unknown key");
    }

private:
    const nlohmann::json* obj_;
    std::string name_;
    std::vector<std::string>& errs_;
    std::set<std::string> used_;
};

const nlohmann::json* section_obj(const nlohmann::json& doc, const char* key,
                                  std::vector<std::string>& errs) {
    if (!doc.contains(key)) return nullptr;
    const auto& v = doc.at(key);
    if (!v.is_object()) {
        errs.push_back(std::string(key) + ": expected an object");
        return nullptr;
    }
    return &v;
}

}  // namespace

RunConfig parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    std::vector<std::string> errs;
    static const std::set<std::string> known = {
        "map",    "observable", "twist",       "tolerances", "seeds",
        "eval",   "residual_scan", "holder",   "boxdim",     "condition_a",
        "witness", "pressure",  "dim",         "hardy"};
    for (const auto& item : doc.items())
        if (!known.count(item.key()))
            errs.push_back(item.key() + ": unknown section");

    RunConfig cfg;
    {
        Section s(section_obj(doc, "map", errs), "map", errs);
        std::string kind = s.str("kind", "linear");
        if (kind == "linear") cfg.map.kind = MapKind::linear;
        else if (kind == "sine_perturbed") cfg.map.kind = MapKind::sine_perturbed;
        else s.fail("kind", "must be \"linear\" or \"sine_perturbed\"");
        cfg.map.degree = static_cast<int>(s.integer("degree", 4, 2, 1 << 20));
        cfg.map.amplitude = s.num("amplitude", 0.0, -1e6, 1e6);
        if (cfg.map.kind == MapKind::linear && cfg.map.amplitude != 0.0)
            s.fail("amplitude", "must be 0 for a linear map");
        if (cfg.map.kind == MapKind::sine_perturbed &&
            !(std::fabs(cfg.map.amplitude) < cfg.map.degree - 1))
            s.fail("amplitude", "needs |amplitude| < degree - 1 to keep the map expanding");
    }
    {
        Section s(section_obj(doc, "observable", errs), "observable", errs);
        std::string kind = s.str("kind", "cosine");
        if (kind == "cosine") cfg.obs_kind = ObservableKind::cosine;
        else if (kind == "constant") cfg.obs_kind = ObservableKind::constant;
        else s.fail("kind", "must be \"cosine\" or \"constant\"");
        cfg.obs_scale = s.num("scale", 1.0, 1e-12, 1e12);
        cfg.twist.r = static_cast<int>(s.integer("frequency", 1, 1, 1 << 20));
    }
    {
        Section s(section_obj(doc, "twist", errs), "twist", errs);
        cfg.twist.theta = s.num("theta", 0.5, 1e-6, 1.0 - 1e-6);
        cfg.twist.k0 = static_cast<int>(s.integer("k0", 1, 1, 64));
    }
    {
        Section s(section_obj(doc, "tolerances", errs), "tolerances", errs);
        cfg.eval_tol = s.num("eval_tol", 1e-10, 1e-15, 1.0);
        cfg.newton_tol = s.num("newton_tol", 1e-14, 1e-16, 1e-6);
    }
    {
        Section s(section_obj(doc, "seeds", errs), "seeds", errs);
        cfg.rng_seed = static_cast<std::uint64_t>(
            s.integer("rng_seed", 1, 0, std::numeric_limits<std::int64_t>::max()));
    }
    {
        Section s(section_obj(doc, "eval", errs), "eval", errs);
        cfg.eval_points = static_cast<int>(s.integer("points", 4096, 2, 1 << 26));
    }
    {
        Section s(section_obj(doc, "residual_scan", errs), "residual_scan", errs);
        cfg.residual_points = static_cast<int>(s.integer("points", 10000, 1, 100000000));
    }
    {
        Section s(section_obj(doc, "holder", errs), "holder", errs);
        cfg.holder_points = static_cast<int>(s.integer("points", 64, 1, 1000000));
        cfg.holder_j_min = static_cast<int>(s.integer("j_min", 8, 1, 44));
        cfg.holder_j_max = static_cast<int>(s.integer("j_max", 20, 2, 45));
        cfg.holder_offsets = static_cast<int>(s.integer("offsets_per_scale", 17, 3, 1001));
        if (cfg.holder_j_max <= cfg.holder_j_min)
            s.fail("j_max", "must exceed j_min");
        if (cfg.holder_offsets % 2 == 0)
            s.fail("offsets_per_scale", "must be odd");
    }
    {
        Section s(section_obj(doc, "boxdim", errs), "boxdim", errs);
        cfg.boxdim_samples = s.integer("samples", std::int64_t{1} << 20, 16,
                                       std::int64_t{1} << 34);
        cfg.boxdim_j_min = static_cast<int>(s.integer("j_min", 4, 1, 25));
        cfg.boxdim_j_max = static_cast<int>(s.integer("j_max", 10, 2, 26));
        if (cfg.boxdim_j_max <= cfg.boxdim_j_min) s.fail("j_max", "must exceed j_min");
    }
    {
        Section s(section_obj(doc, "condition_a", errs), "condition_a", errs);
        cfg.center = s.opt_num("c", 0.0, 1.0);
    }
    {
        Section s(section_obj(doc, "witness", errs), "witness", errs);
        if (auto c = s.opt_num("c", 0.0, 1.0)) cfg.center = c;
        cfg.witness_h_cap = s.num("h_cap", 1e-2, 1e-13, 0.5);
    }
    {
        Section s(section_obj(doc, "pressure", errs), "pressure", errs);
        cfg.pressure_s = s.num("s", 1.0, -10.0, 10.0);
        cfg.pressure_depth = static_cast<int>(s.integer("depth", 8, 1, 12));
    }
    {
        Section s(section_obj(doc, "dim", errs), "dim", errs);
        cfg.dim_depth = static_cast<int>(s.integer("depth", 0, 0, 12));
    }
    {
        Section s(section_obj(doc, "hardy", errs), "hardy", errs);
        cfg.hardy_degree = static_cast<int>(s.integer("degree", 32, 2, 1 << 30));
    }

    if (!errs.empty()) {
        std::string joined = "invalid config:";
        for (const auto& e : errs) joined += "\n  " + e;
        throw ConfigError(joined);
    }
    return cfg;
}

nlohmann::json effective_config(const RunConfig& cfg) {
    nlohmann::json doc;
    doc["map"] = {
        {"kind", cfg.map.kind == MapKind::linear ? "linear" : "sine_perturbed"},
        {"degree", cfg.map.degree},
        {"amplitude", cfg.map.amplitude}};
    doc["observable"] = {
        {"kind", cfg.obs_kind == ObservableKind::cosine ? "cosine" : "constant"},
        {"scale", cfg.obs_scale},
        {"frequency", cfg.twist.r}};
    doc["twist"] = {{"theta", cfg.twist.theta}, {"k0", cfg.twist.k0}};
    doc["tolerances"] = {{"eval_tol", cfg.eval_tol}, {"newton_tol", cfg.newton_tol}};
    doc["seeds"] = {{"rng_seed", cfg.rng_seed}};
    doc["eval"] = {{"points", cfg.eval_points}};
    doc["residual_scan"] = {{"points", cfg.residual_points}};
    doc["holder"] = {{"points", cfg.holder_points},
                     {"j_min", cfg.holder_j_min},
                     {"j_max", cfg.holder_j_max},
                     {"offsets_per_scale", cfg.holder_offsets}};
    doc["boxdim"] = {{"samples", cfg.boxdim_samples},
                     {"j_min", cfg.boxdim_j_min},
                     {"j_max", cfg.boxdim_j_max}};
    doc["condition_a"] = {{"c", cfg.center ? nlohmann::json(*cfg.center)
                                           : nlohmann::json(nullptr)}};
    doc["witness"] = {{"h_cap", cfg.witness_h_cap}};
    doc["pressure"] = {{"s", cfg.pressure_s}, {"depth", cfg.pressure_depth}};
    doc["dim"] = {{"depth", cfg.dim_depth}};
    doc["hardy"] = {{"degree", cfg.hardy_degree}};
    return doc;
}

void apply_override(nlohmann::json& doc, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override must look like dotted.path=value, got \"" +
                          assignment + "\"");
    std::string path = assignment.substr(0, eq);
    std::string raw = assignment.substr(eq + 1);
    nlohmann::json value;
    try {
        value = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error&) {
        value = raw;  // unquoted strings pass through verbatim
    }
    nlohmann::json* cur = &doc;
    std::size_t start = 0;
    while (true) {
        auto dot = path.find('.', start);
        std::string key = path.substr(start, dot == std::string::npos
                                                 ? std::string::npos
                                                 : dot - start);
        if (key.empty())
            throw ConfigError("override path has an empty component: \"" + path + "\"");
        if (dot == std::string::npos) {
            (*cur)[key] = value;
            return;
        }
        if (!cur->contains(key) || !(*cur)[key].is_object())
            (*cur)[key] = nlohmann::json::object();
        cur = &(*cur)[key];
        start = dot + 1;
    }
}

Observable build_observable(const RunConfig& cfg) {
    if (cfg.obs_kind == ObservableKind::constant)
        return Observable::constant(cfg.obs_scale);
    return scale(make_cosine(), cfg.obs_scale);
}

CircleMap build_map(const RunConfig& cfg) { return make_map(cfg.map, cfg.newton_tol); }

}  // namespace twistcurve
