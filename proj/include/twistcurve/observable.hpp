#pragma once

namespace twistcurve {

enum class ObservableKind { cosine, constant };

// Forcing term v on the circle, carried with exact derivative data and the
// global constants the regularity machinery consumes.  Built-ins:
//   cosine    amp * cos(2 pi freq x)
//   constant  v == amp, v' == 0
// Both have Lipschitz v' (Holder exponent eps = 1 for v').
class Observable {
public:
    static Observable cosine();                // cos(2 pi x)
    static Observable constant(double value);  // v == value

    double value(double x) const;
    double deriv(double x) const;
    double second_deriv(double x) const;

    ObservableKind kind() const { return kind_; }
    double amplitude() const { return amp_; }
    int frequency() const { return freq_; }

    double epsilon() const { return 1.0; }     // Holder exponent of v'
    double max_abs() const;                    // M_v   = sup |v|
    double max_abs_deriv() const;              // M_v'  = sup |v'|
    double deriv_holder() const;               // Gamma_2: eps-Holder constant of v'
    double second_holder() const;              // Gamma: eps-Holder constant of v'' near the critical argmax
    double deriv_argmax() const;               // c: smallest argmax of v'

    Observable negated() const;                // -v, used when v'(c) < 0

    Observable(ObservableKind kind, double amp, int freq);

private:
    ObservableKind kind_;
    double amp_;
    int freq_;
    double argmax_;

    void compute_argmax();
};

Observable make_cosine();

// t * v; t > 0 keeps the argmax of v' in place.
Observable scale(const Observable& obs, double t);

// v composed with the degree-r linear map: x -> v(r x mod 1).
// M_v is unchanged; M_v' scales by r, Gamma_2 by r^{1+eps}, Gamma by r^{2+eps};
// the argmax becomes its smallest preimage.
Observable compose_frequency(const Observable& obs, int r);

}  // namespace twistcurve
