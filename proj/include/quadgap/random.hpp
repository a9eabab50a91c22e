#pragma once

// Seeded generators for randomized suites. std::mt19937_64 output is fixed by
// the standard; the conversion to doubles is done here so results do not
// depend on the library's distribution implementations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "complex.hpp"
#include "spectral.hpp"

namespace quadgap {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    Complex in_disc(double radius) {
        const double r = radius * std::sqrt(uniform());
        return std::polar(r, uniform(0.0, 2 * std::numbers::pi));
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(integer(0, int(i) - 1))]);
    }

private:
    std::mt19937_64 engine_;
};

/// tau-symmetric data whose A+ block is contiguous: arguments drawn from an
/// open half-circle, pairwise at least `min_gap` apart. Unless `shuffle`, the
/// axes are already in oval order.
inline SpectralData random_m_ordered(Rng& rng, int d, double C = 1.0, bool shuffle = false, double min_gap = 1e-3) {
    const double pi = std::numbers::pi;
    std::vector<double> theta;
    while (static_cast<int>(theta.size()) < d) {
        theta.clear();
        const double start = rng.uniform(0.0, 2 * pi);
        for (int j = 0; j < d; ++j) theta.push_back(rng.uniform(min_gap, pi - min_gap));
        std::sort(theta.begin(), theta.end());
        bool ok = true;
        for (int j = 1; j < d; ++j) ok = ok && theta[j] - theta[j - 1] >= min_gap;
        if (!ok) theta.clear();
        else
            for (double& t : theta) t += start;
    }
    if (shuffle) rng.shuffle(theta);
    std::vector<Complex> alpha;
    for (double t : theta) alpha.push_back(std::polar(C, t));
    return SpectralData(std::move(alpha), C);
}

/// sigma-symmetric data with no reality constraint: independent alpha_j with
/// moduli in [0.5, 2].
inline SpectralData random_sigma_data(Rng& rng, int d) {
    for (;;) {
        std::vector<Complex> alpha;
        for (int j = 0; j < d; ++j) alpha.push_back(std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2 * std::numbers::pi)));
        bool ok = true;
        for (int j = 0; j < d && ok; ++j)
            for (int k = j + 1; k < d && ok; ++k)
                ok = std::abs(std::imag(alpha[j] * std::conj(alpha[k]))) > 1e-2 * std::abs(alpha[j]) * std::abs(alpha[k]);
        if (ok) return SpectralData(std::move(alpha));
    }
}

/// A point of the sphere away from 0, infinity and every +-alpha_j.
inline Complex random_point(Rng& rng, const SpectralData& s, double margin = 0.05) {
    const double c = s.scale();
    for (;;) {
        const Complex z = rng.in_disc(3.0 * c);
        bool ok = std::abs(z) > margin * c;
        for (Complex a : s.alpha()) ok = ok && std::abs(z - a) > margin * c && std::abs(z + a) > margin * c;
        if (ok) return z;
    }
}

inline Lattice random_lattice(Rng& rng, int d, int bound = 4) {
    Lattice n(d);
    for (int& v : n) v = rng.integer(-bound, bound);
    return n;
}

}  // namespace quadgap
