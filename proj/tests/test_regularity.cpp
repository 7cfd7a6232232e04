#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "twistcurve/regularity.hpp"

using namespace twistcurve;

namespace {

const CircleMap& e4() {
    static CircleMap m = make_map({MapKind::linear, 4, 0.0});
    return m;
}

}  // namespace

TEST_CASE("oscillation regression recovers a pure power law") {
    // osc(x0, h) = h^0.6 exactly for |y - x0|^0.6, so the log-log fit is a
    // perfect line.
    auto cusp = [](double y) { return std::pow(std::fabs(y - 0.37), 0.6); };
    auto est = holder_regression(cusp, 0.37, 4, 20, 9, 1e-15);
    CHECK(est.exponent == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(est.std_error <= 1e-10);
    CHECK(est.dropped_scales == 0);
    CHECK(est.scales.size() == est.oscillations.size());

    auto line = [](double y) { return y; };
    auto lin = holder_regression(line, 0.5, 4, 20, 9, 1e-15);
    CHECK(lin.exponent == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("oscillation regression rejects flat data") {
    auto flat = [](double) { return 42.0; };
    CHECK_THROWS_AS(holder_regression(flat, 0.5, 4, 12, 9, 1e-12), std::runtime_error);
}

TEST_CASE("oscillation regression validates its window") {
    auto line = [](double y) { return y; };
    CHECK_THROWS_AS(holder_regression(line, 0.5, 0, 12, 9, 1e-15), std::invalid_argument);
    CHECK_THROWS_AS(holder_regression(line, 0.5, 12, 12, 9, 1e-15), std::invalid_argument);
    CHECK_THROWS_AS(holder_regression(line, 0.5, 4, 46, 9, 1e-15), std::invalid_argument);
    CHECK_THROWS_AS(holder_regression(line, 0.5, 4, 12, 1, 1e-15), std::invalid_argument);
    CHECK_THROWS_AS(holder_regression(line, 0.5, 4, 12, 8, 1e-15), std::invalid_argument);
}

TEST_CASE("pointwise exponent of the solution is near theta") {
    TwistConfig half{0.5, 1, 1};
    auto est = holder_exponent_at(0.3, 6, 16, 9, e4(), make_cosine(), half);
    CHECK(est.x == 0.3);
    CHECK(est.exponent > 0.35);
    CHECK(est.exponent < 0.65);
    CHECK(est.std_error >= 0.0);

    // Oscillations are cumulative maxima from the finest scale: nonincreasing
    // as the scale shrinks.
    REQUIRE(est.oscillations.size() >= 2);
    for (std::size_t i = 1; i < est.oscillations.size(); ++i)
        CHECK(est.oscillations[i] <= est.oscillations[i - 1]);
    for (std::size_t i = 1; i < est.scales.size(); ++i)
        CHECK(est.scales[i] < est.scales[i - 1]);
}

TEST_CASE("box counts grow monotonically with refinement") {
    TwistConfig half{0.5, 1, 1};
    auto est = box_dimension(1 << 14, 3, 7, e4(), make_cosine(), half);
    REQUIRE(est.counts.size() == 5);
    CHECK(est.dim > 1.3);
    CHECK(est.dim < 1.7);
    CHECK(est.r2 > 0.95);
    for (std::size_t i = 1; i < est.counts.size(); ++i)
        CHECK(est.counts[i] >= est.counts[i - 1]);
    // At scale 2^-j the graph meets at least 2^j columns and at most the
    // whole 2^j x 2^j grid.
    for (std::size_t i = 0; i < est.counts.size(); ++i) {
        std::uint64_t cols = std::uint64_t(1) << (3 + i);
        CHECK(est.counts[i] >= cols);
        CHECK(est.counts[i] <= cols * cols);
    }
}

TEST_CASE("box dimension refuses undersampled passes") {
    TwistConfig half{0.5, 1, 1};
    CHECK_THROWS_AS(box_dimension(100, 3, 7, e4(), make_cosine(), half),
                    std::invalid_argument);
}

TEST_CASE("dimension converts to an exponent bound") {
    CHECK(exponent_bound_from_dimension(1.5) == 0.5);
    CHECK(exponent_bound_from_dimension(1.0) == 1.0);
    CHECK(exponent_bound_from_dimension(2.0) == 0.0);
    CHECK_THROWS_AS(exponent_bound_from_dimension(0.9), std::domain_error);
    CHECK_THROWS_AS(exponent_bound_from_dimension(2.1), std::domain_error);
}
