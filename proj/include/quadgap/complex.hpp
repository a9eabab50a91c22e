#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>

namespace quadgap {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Integer power by repeated squaring. Negative exponents invert once at the end.
inline Complex ipow(Complex base, long long exponent) {
    const bool invert = exponent < 0;
    unsigned long long e = invert ? static_cast<unsigned long long>(-exponent)
                                  : static_cast<unsigned long long>(exponent);
    Complex acc{1.0, 0.0};
    while (e != 0) {
        if (e & 1ULL) acc *= base;
        e >>= 1;
        if (e != 0) base *= base;
    }
    return invert ? Complex{1.0, 0.0} / acc : acc;
}

/// Point of the Riemann sphere: a finite complex number or infinity.
class SpherePoint {
public:
    SpherePoint() = default;
    SpherePoint(Complex z) : z_(z) {}  // NOLINT: implicit on purpose, finite points are the common case
    SpherePoint(double x) : z_(x, 0.0) {}  // NOLINT

    static SpherePoint infinity() {
        SpherePoint p;
        p.inf_ = true;
        return p;
    }

    bool is_infinity() const noexcept { return inf_; }
    Complex value() const noexcept { return z_; }

private:
    Complex z_{0.0, 0.0};
    bool inf_ = false;
};

/// Leading Laurent term lead * t^order in the standard chart at a point
/// (t = z - z0 at finite z0, t = 1/z at infinity). order > 0 is a zero,
/// order < 0 a pole.
struct Jet {
    int order = 0;
    Complex lead{1.0, 0.0};
};

/// Values of the sphere map. Finite values carry their number;
/// poles are reported as infinity together with the order.
struct WaveValue {
    Complex value{0.0, 0.0};
    bool infinite = false;
    int pole_order = 0;

    static WaveValue finite(Complex v) { return WaveValue{v, false, 0}; }
    static WaveValue pole(int order) { return WaveValue{Complex{}, true, order}; }
};

inline double rel_diff(Complex a, Complex b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace quadgap
