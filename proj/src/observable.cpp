#include "twistcurve/observable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twistcurve/circle.hpp"
#include "extremum.hpp"

namespace twistcurve {

Observable::Observable(ObservableKind kind, double amp, int freq)
    : kind_(kind), amp_(amp), freq_(freq), argmax_(0.0) {
    if (freq < 1) throw std::invalid_argument("observable frequency must be >= 1");
    compute_argmax();
}

Observable Observable::cosine() { return Observable(ObservableKind::cosine, 1.0, 1); }

Observable Observable::constant(double value) {
    return Observable(ObservableKind::constant, value, 1);
}

double Observable::value(double x) const {
    if (kind_ == ObservableKind::constant) return amp_;
    return amp_ * std::cos(k_two_pi * freq_ * x);
}

double Observable::deriv(double x) const {
    if (kind_ == ObservableKind::constant) return 0.0;
    return -amp_ * k_two_pi * freq_ * std::sin(k_two_pi * freq_ * x);
}

double Observable::second_deriv(double x) const {
    if (kind_ == ObservableKind::constant) return 0.0;
    double w = k_two_pi * freq_;
    return -amp_ * w * w * std::cos(k_two_pi * freq_ * x);
}

double Observable::max_abs() const { return std::fabs(amp_); }

double Observable::max_abs_deriv() const {
    if (kind_ == ObservableKind::constant) return 0.0;
    return std::fabs(amp_) * k_two_pi * freq_;
}

double Observable::deriv_holder() const {
    if (kind_ == ObservableKind::constant) return 0.0;
    double w = k_two_pi * freq_;
    return std::fabs(amp_) * w * w;
}

double Observable::second_holder() const {
    if (kind_ == ObservableKind::constant) return 0.0;
    double w = k_two_pi * freq_;
    return std::fabs(amp_) * w * w * w;
}

double Observable::deriv_argmax() const { return argmax_; }

Observable Observable::negated() const { return Observable(kind_, -amp_, freq_); }

void Observable::compute_argmax() {
    if (kind_ == ObservableKind::constant || amp_ == 0.0) {
        argmax_ = 0.0;
        return;
    }
    // grid must resolve every oscillation of v'
    int grid = std::max(1 << 14, 32 * freq_);
    argmax_ = wrap_unit(
        detail::grid_argmax([&](double x) { return deriv(x); }, grid));
}

Observable make_cosine() { return Observable::cosine(); }

Observable scale(const Observable& obs, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("observable scale must be positive");
    return Observable(obs.kind(), t * obs.amplitude(), obs.frequency());
}

Observable compose_frequency(const Observable& obs, int r) {
    if (r < 1) throw std::invalid_argument("frequency multiplier must be >= 1");
    if (r == 1) return obs;
    return Observable(obs.kind(), obs.amplitude(), obs.frequency() * r);
}

}  // namespace twistcurve
