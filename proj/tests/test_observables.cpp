#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "twistcurve/circle.hpp"
#include "twistcurve/observable.hpp"

using namespace twistcurve;

TEST_CASE("cosine observable values and derivatives") {
    auto v = make_cosine();
    CHECK(v.value(0.0) == 1.0);
    CHECK(v.value(0.5) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(v.deriv(0.0) == 0.0);
    CHECK(v.deriv(0.75) == doctest::Approx(k_two_pi).epsilon(1e-14));
    CHECK(v.second_deriv(0.0) == doctest::Approx(-k_two_pi * k_two_pi).epsilon(1e-14));

    const double e = 1e-6;
    for (double x : {0.13, 0.4, 0.62}) {
        double fd1 = (v.value(x + e) - v.value(x - e)) / (2 * e);
        double fd2 = (v.deriv(x + e) - v.deriv(x - e)) / (2 * e);
        CHECK(v.deriv(x) == doctest::Approx(fd1).epsilon(1e-8));
        CHECK(v.second_deriv(x) == doctest::Approx(fd2).epsilon(1e-7));
    }
}

TEST_CASE("cosine observable global constants") {
    auto v = make_cosine();
    CHECK(v.epsilon() == 1.0);
    CHECK(v.max_abs() == 1.0);
    CHECK(v.max_abs_deriv() == k_two_pi);
    CHECK(v.deriv_holder() == k_two_pi * k_two_pi);
    CHECK(v.second_holder() == k_two_pi * k_two_pi * k_two_pi);
}

TEST_CASE("derivative argmax of the cosine sits at 3/4 exactly") {
    // v' = -2 pi sin(2 pi x) peaks at the grid point 3/4; the strict-improvement
    // refinement must not drift off it.
    CHECK(make_cosine().deriv_argmax() == 0.75);
    CHECK(make_cosine().negated().deriv_argmax() == 0.25);
    CHECK(Observable::constant(3.0).deriv_argmax() == 0.0);
}

TEST_CASE("scaling multiplies values and constants in lockstep") {
    auto v = scale(make_cosine(), 2.5);
    CHECK(v.value(0.2) == doctest::Approx(2.5 * std::cos(k_two_pi * 0.2)).epsilon(1e-15));
    CHECK(v.max_abs() == 2.5);
    CHECK(v.max_abs_deriv() == 2.5 * k_two_pi);
    CHECK(v.deriv_holder() == 2.5 * k_two_pi * k_two_pi);
    CHECK(v.deriv_argmax() == 0.75);
    CHECK_THROWS_AS(scale(make_cosine(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(scale(make_cosine(), -1.0), std::invalid_argument);
}

TEST_CASE("frequency composition rescales derivative constants") {
    auto v = compose_frequency(make_cosine(), 3);
    CHECK(v.frequency() == 3);
    CHECK(v.value(0.1) == doctest::Approx(std::cos(3 * k_two_pi * 0.1)).epsilon(1e-14));
    CHECK(v.max_abs() == 1.0);
    CHECK(v.max_abs_deriv() == 3 * k_two_pi);
    CHECK(v.deriv_holder() == 9 * k_two_pi * k_two_pi);
    CHECK(v.second_holder() ==
          doctest::Approx(27 * k_two_pi * k_two_pi * k_two_pi).epsilon(1e-14));
    // Smallest argmax of x -> v'(3x): the base argmax divided by 3.
    CHECK(v.deriv_argmax() == 0.25);

    auto same = compose_frequency(make_cosine(), 1);
    CHECK(same.frequency() == 1);
    CHECK(same.deriv_argmax() == 0.75);
}

TEST_CASE("negation flips values and keeps magnitudes") {
    auto v = make_cosine().negated();
    CHECK(v.value(0.0) == -1.0);
    CHECK(v.deriv(0.25) == doctest::Approx(k_two_pi).epsilon(1e-14));
    CHECK(v.max_abs() == 1.0);
    CHECK(v.max_abs_deriv() == k_two_pi);
}

TEST_CASE("constant observable is flat") {
    auto v = Observable::constant(3.7);
    for (double x : {0.0, 0.3, 0.99}) {
        CHECK(v.value(x) == 3.7);
        CHECK(v.deriv(x) == 0.0);
        CHECK(v.second_deriv(x) == 0.0);
    }
    CHECK(v.max_abs() == 3.7);
    CHECK(v.max_abs_deriv() == 0.0);
    CHECK(v.deriv_holder() == 0.0);
}
