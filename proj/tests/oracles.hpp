#pragma once

// Test-only reference computations. Nothing here calls into the library's
// closed forms: products are multiplied out term by term, residues come from
// trapezoid-rule contour integrals, limits from circle means.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

using C = std::complex<double>;
inline constexpr C I{0.0, 1.0};

/// prod_j ((z + a_j)/(z - a_j))^{n_j}, one factor at a time.
inline C psi(const std::vector<C>& alpha, const std::vector<int>& n, C z) {
    C acc = 1.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        const C f = (z + alpha[j]) / (z - alpha[j]);
        for (int k = 0; k < std::abs(n[j]); ++k) acc = n[j] > 0 ? acc * f : acc / f;
    }
    return acc;
}

/// (1/2 pi i) \oint g(z) dz over |z - c| = r, N-point trapezoid rule.
inline C contour(const std::function<C(C)>& g, C c, double r, int N = 512) {
    C acc = 0.0;
    for (int k = 0; k < N; ++k) {
        const C e = std::polar(1.0, 2 * std::numbers::pi * k / N);
        acc += g(c + r * e) * r * e;  // dz = i r e dtheta; the i cancels against 1/(2 pi i)
    }
    return acc / static_cast<double>(N);
}

/// Residue at infinity: -(1/2 pi i) \oint over a large circle.
inline C contour_at_infinity(const std::function<C(C)>& g, double R, int N = 2048) {
    return -contour(g, 0.0, R, N);
}

/// Value at c of a function holomorphic near c (mean over a small circle).
inline C circle_mean(const std::function<C(C)>& g, C c, double r, int N = 256) {
    C acc = 0.0;
    for (int k = 0; k < N; ++k) acc += g(c + r * std::polar(1.0, 2 * std::numbers::pi * k / N));
    return acc / static_cast<double>(N);
}

/// Gaussian elimination with partial pivoting on a dense copy.
inline std::vector<C> gauss_solve(std::vector<std::vector<C>> a, std::vector<C> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) throw std::runtime_error("singular");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const C m = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= m * a[col][k];
            b[r] -= m * b[col];
        }
    }
    std::vector<C> x(n);
    for (std::size_t i = n; i-- > 0;) {
        C s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

inline double rel(C a, C b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace oracle
