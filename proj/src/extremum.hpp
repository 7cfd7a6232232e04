#pragma once

namespace twistcurve::detail {

// argmax of fn over [0, 1): dense grid scan, then golden-section refinement
// inside the bracketing cells.  The incumbent is replaced only on strict
// improvement, so a grid point that already attains the maximum (exactly, in
// floating point) survives refinement untouched; ties go to the smallest x.
// fn must accept arguments slightly outside [0, 1).
template <class Fn>
double grid_argmax(Fn&& fn, int grid) {
    double best_x = 0.0;
    double best = fn(0.0);
    for (int k = 1; k < grid; ++k) {
        double x = static_cast<double>(k) / grid;
        double v = fn(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    double a = best_x - 1.0 / grid;
    double b = best_x + 1.0 / grid;
    const double inv_phi = 0.61803398874989485;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = fn(x1);
    double f2 = fn(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 > best) { best = f1; best_x = x1; }
        if (f2 > best) { best = f2; best_x = x2; }
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a); f2 = fn(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a); f1 = fn(x1);
        }
    }
    if (f1 > best) { best = f1; best_x = x1; }
    if (f2 > best) { best_x = x2; }
    return best_x;
}

template <class Fn>
double grid_argmin(Fn&& fn, int grid) {
    return grid_argmax([&](double x) { return -fn(x); }, grid);
}

}  // namespace twistcurve::detail
