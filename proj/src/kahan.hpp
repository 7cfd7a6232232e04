#pragma once

namespace twistcurve::detail {

// Kahan-compensated accumulator.
struct CompSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double term) {
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace twistcurve::detail
