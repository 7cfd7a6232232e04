#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "twistcurve/config.hpp"
#include "twistcurve/report.hpp"

using namespace twistcurve;
using nlohmann::json;

TEST_CASE("empty document parses to defaults") {
    RunConfig cfg = parse_config(json::object());
    CHECK(cfg.map.kind == MapKind::linear);
    CHECK(cfg.map.degree == 4);
    CHECK(cfg.map.amplitude == 0.0);
    CHECK(cfg.obs_kind == ObservableKind::cosine);
    CHECK(cfg.obs_scale == 1.0);
    CHECK(cfg.twist.theta == 0.5);
    CHECK(cfg.twist.r == 1);
    CHECK(cfg.twist.k0 == 1);
    CHECK(cfg.eval_tol == 1e-10);
    CHECK(cfg.rng_seed == 1);
    CHECK(cfg.eval_points == 4096);
    CHECK_FALSE(cfg.center.has_value());
    CHECK(cfg.hardy_degree == 32);
}

TEST_CASE("explicit document lands in every field") {
    json doc = {
        {"map", {{"kind", "sine_perturbed"}, {"degree", 8}, {"amplitude", 0.1}}},
        {"observable", {{"kind", "cosine"}, {"scale", 2.0}, {"frequency", 3}}},
        {"twist", {{"theta", 0.3}, {"k0", 2}}},
        {"tolerances", {{"eval_tol", 1e-9}, {"newton_tol", 1e-13}}},
        {"seeds", {{"rng_seed", 99}}},
        {"witness", {{"c", 0.6}, {"h_cap", 0.005}}},
        {"pressure", {{"s", 0.8}, {"depth", 5}}},
    };
    RunConfig cfg = parse_config(doc);
    CHECK(cfg.map.kind == MapKind::sine_perturbed);
    CHECK(cfg.map.degree == 8);
    CHECK(cfg.map.amplitude == 0.1);
    CHECK(cfg.obs_scale == 2.0);
    CHECK(cfg.twist.r == 3);
    CHECK(cfg.twist.theta == 0.3);
    CHECK(cfg.twist.k0 == 2);
    CHECK(cfg.eval_tol == 1e-9);
    CHECK(cfg.newton_tol == 1e-13);
    CHECK(cfg.rng_seed == 99);
    REQUIRE(cfg.center.has_value());
    CHECK(*cfg.center == 0.6);
    CHECK(cfg.witness_h_cap == 0.005);
    CHECK(cfg.pressure_s == 0.8);
    CHECK(cfg.pressure_depth == 5);
}

TEST_CASE("all config complaints arrive in one error") {
    json doc = {
        {"map", {{"degre", 4}}},
        {"twst", {{"theta", 0.4}}},
        {"twist", {{"theta", 1.5}}},
    };
    try {
        parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("map.degre") != std::string::npos);
        CHECK(msg.find("twst") != std::string::npos);
        CHECK(msg.find("twist.theta") != std::string::npos);
    }
}

TEST_CASE("cross-field constraints are enforced") {
    CHECK_THROWS_AS(parse_config(json{{"map", {{"degree", 1}}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"map", {{"kind", "linear"}, {"amplitude", 0.5}}}}),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config(json{{"map", {{"kind", "sine_perturbed"}, {"degree", 2}, {"amplitude", 1.0}}}}),
        ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"holder", {{"j_min", 10}, {"j_max", 10}}}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"holder", {{"offsets_per_scale", 4}}}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
}

TEST_CASE("overrides write dotted paths") {
    json doc = json::object();
    apply_override(doc, "map.degree=8");
    apply_override(doc, "map.kind=sine_perturbed");
    apply_override(doc, "map.amplitude=0.1");
    apply_override(doc, "twist.theta=0.3");
    apply_override(doc, "condition_a.c=null");
    CHECK(doc["map"]["degree"] == 8);
    CHECK(doc["map"]["kind"] == "sine_perturbed");
    CHECK(doc["map"]["amplitude"] == 0.1);
    CHECK(doc["twist"]["theta"] == 0.3);
    CHECK(doc["condition_a"]["c"].is_null());
    RunConfig cfg = parse_config(doc);
    CHECK(cfg.map.degree == 8);
    CHECK(cfg.twist.theta == 0.3);
}

TEST_CASE("effective config round-trips through the parser") {
    RunConfig cfg = parse_config(json::object());
    json echo = effective_config(cfg);
    RunConfig again = parse_config(echo);
    CHECK(effective_config(again) == echo);
    CHECK(echo["map"]["degree"] == 4);
    CHECK(echo["condition_a"]["c"].is_null());

    cfg.center = 0.75;
    json with_center = effective_config(cfg);
    CHECK(with_center["condition_a"]["c"] == 0.75);
    CHECK(effective_config(parse_config(with_center)) == with_center);
}

TEST_CASE("builders construct what the config names") {
    json doc = {{"observable", {{"kind", "constant"}, {"scale", 3.7}}}};
    RunConfig cfg = parse_config(doc);
    Observable v = build_observable(cfg);
    CHECK(v.kind() == ObservableKind::constant);
    CHECK(v.value(0.2) == 3.7);

    CircleMap m = build_map(parse_config(json::object()));
    CHECK(m.degree() == 4);
    CHECK(m.linear());
}

TEST_CASE("deterministic dump is stable and sorted") {
    json doc = {{"b", 1},        {"a", 0.5},          {"s", "x"},
                {"n", nullptr},  {"arr", {1.5, "y"}}, {"t", true}};
    std::string expected =
        "{\n"
        "  \"a\": 0.5,\n"
        "  \"arr\": [\n"
        "    1.5,\n"
        "    \"y\"\n"
        "  ],\n"
        "  \"b\": 1,\n"
        "  \"n\": null,\n"
        "  \"s\": \"x\",\n"
        "  \"t\": true\n"
        "}\n";
    CHECK(dump_deterministic(doc) == expected);
    CHECK(dump_deterministic(doc) == dump_deterministic(doc));

    // doubles survive a round trip through the printed text
    json nums = {{"tenth", 0.1}, {"tiny", 5e-324}, {"big", 1.7976931348623157e308}};
    json back = json::parse(dump_deterministic(nums));
    CHECK(back["tenth"].get<double>() == 0.1);
    CHECK(back["tiny"].get<double>() == 5e-324);
    CHECK(back["big"].get<double>() == 1.7976931348623157e308);

    // non-finite values degrade to null rather than invalid JSON
    json bad = {{"nan", std::nan("")}};
    CHECK(dump_deterministic(bad) == "{\n  \"nan\": null\n}\n");
}

TEST_CASE("report envelope carries the standard keys") {
    json rep = make_report("eval", json::object(), json{{"k", 1}}, 12.5);
    CHECK(rep["command"] == "eval");
    CHECK(rep["version"] == "0.1.0");
    CHECK(rep["wall_ms"] == 12.5);
    CHECK(rep["result"]["k"] == 1);
}
