#pragma once

// Four-point relation coefficients per face and the weight function nu on
// E(G) and E(G*), plus the quasicrystalline embedding P(p) = sum_j n_j alpha_j.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "complex.hpp"
#include "quadgraph.hpp"
#include "spectral.hpp"

namespace quadgap {

/// Relative closeness |alpha_x -+ alpha_y| <= kDegenerateTol * C that makes a face degenerate.
inline constexpr double kDegenerateTol = 1e-10;

struct FaceCoefficients {
    int face = -1;
    int x = 0, y = 0;
    Complex a1, a2, a3;
    FaceFrame frame;
};

inline void check_face_nondegenerate(const SpectralData& s, int f, int x, int y) {
    const Complex ax = s.alpha(x), ay = s.alpha(y);
    const double c = s.scale();
    if (std::abs(ax - ay) <= kDegenerateTol * c || std::abs(ax + ay) <= kDegenerateTol * c)
        throw DegenerateFaceError(f, x, y);
}

/// Closed-form limits for the discrete exponential on face f, read in the
/// frame (p1, p2, p4, p3) with p2 = p1 + e_x, p3 = p1 + e_y.
inline FaceCoefficients face_coefficients(const SpectralData& s, const QuadGraph& q, const ZdLabeling& lab, int f) {
    if (lab.dim() != s.dim()) throw ArgumentError("labeling and spectral data disagree on d");
    FaceCoefficients fc;
    fc.face = f;
    fc.frame = face_frame(q, lab, f);
    fc.x = fc.frame.x;
    fc.y = fc.frame.y;
    check_face_nondegenerate(s, f, fc.x, fc.y);
    const Complex ax = s.alpha(fc.x), ay = s.alpha(fc.y);
    fc.a1 = -(ax + ay) / (ax - ay);
    fc.a2 = -(ay + ax) / (ay - ax);
    fc.a3 = -1.0 - fc.a1 - fc.a2;
    return fc;
}

/// The same coefficients from the defining limits
///   a1 = -lim_{z -> A+_x} Psi(p4)/Psi(p2),  a2 = -lim_{z -> A+_y} Psi(p4)/Psi(p3),
/// approached along z = alpha (1 + eps) and Richardson-extrapolated.
inline FaceCoefficients face_coefficients_by_limit(const SpectralData& s, const QuadGraph& q, const ZdLabeling& lab,
                                                   int f, double eps = 1e-6) {
    FaceCoefficients fc;
    fc.face = f;
    fc.frame = face_frame(q, lab, f);
    fc.x = fc.frame.x;
    fc.y = fc.frame.y;
    check_face_nondegenerate(s, f, fc.x, fc.y);
    const Lattice& n2 = lab.coords(fc.frame.p2);
    const Lattice& n3 = lab.coords(fc.frame.p3);
    const Lattice& n4 = lab.coords(fc.frame.p4);
    auto ratio = [&](const Lattice& num, const Lattice& den, Complex at, double h) {
        const Complex z = at * (1.0 + h);
        return psi_value(s, num, z) / psi_value(s, den, z);
    };
    auto limit = [&](const Lattice& num, const Lattice& den, Complex at) {
        return 2.0 * ratio(num, den, at, eps / 2) - ratio(num, den, at, eps);
    };
    fc.a1 = -limit(n4, n2, s.alpha(fc.x));
    fc.a2 = -limit(n4, n3, s.alpha(fc.y));
    fc.a3 = -1.0 - fc.a1 - fc.a2;
    return fc;
}

/// |Psi(p4) + a1 Psi(p2) + a2 Psi(p3) + a3 Psi(p1)| / max |Psi| at z.
inline double four_point_residual(const SpectralData& s, const ZdLabeling& lab, const FaceCoefficients& fc, Complex z) {
    const Complex v1 = psi_value(s, lab.coords(fc.frame.p1), z);
    const Complex v2 = psi_value(s, lab.coords(fc.frame.p2), z);
    const Complex v3 = psi_value(s, lab.coords(fc.frame.p3), z);
    const Complex v4 = psi_value(s, lab.coords(fc.frame.p4), z);
    const double scale = std::max({std::abs(v1), std::abs(v2), std::abs(v3), std::abs(v4)});
    return std::abs(v4 + fc.a1 * v2 + fc.a2 * v3 + fc.a3 * v1) / scale;
}

/// Weight function stored per face: nu on the primal diagonal (x0, x1) of
/// each face and its reciprocal on the dual diagonal (y0, y1).
class WeightFunction {
public:
    WeightFunction() = default;

    explicit WeightFunction(std::vector<Complex> primal) : primal_(std::move(primal)) {
        for (std::size_t f = 0; f < primal_.size(); ++f) {
            const Complex v = primal_[f];
            if (v == Complex{} || !std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw DegenerateDataError("weight on face " + std::to_string(f) + " is zero or not finite");
        }
        double mx = 0.0, mi = 0.0;
        for (Complex v : primal_) {
            mx = std::max(mx, std::abs(v));
            mi = std::max(mi, std::abs(v.imag()));
        }
        real_ = mi <= 1e-12 * mx;
    }

    int size() const noexcept { return static_cast<int>(primal_.size()); }
    Complex primal(int f) const { return primal_.at(f); }
    Complex dual(int f) const { return 1.0 / primal_.at(f); }
    const std::vector<Complex>& primal_values() const noexcept { return primal_; }

    /// nu of the diagonal of face f passing through v.
    Complex at(const QuadGraph& q, int f, int v) const { return q.part(v) == Part::Primal ? primal(f) : dual(f); }

    bool is_real() const noexcept { return real_; }

private:
    std::vector<Complex> primal_;
    bool real_ = false;
};

inline WeightFunction weight_function(const SpectralData& s, const QuadGraph& q, const ZdLabeling& lab) {
    std::vector<Complex> nu(q.num_faces());
    for (int f = 0; f < q.num_faces(); ++f) {
        const FaceCoefficients fc = face_coefficients(s, q, lab, f);
        const Complex nu14 = 1.0 / (kI * fc.a1);  // nu(p1, p4)
        nu[f] = q.part(fc.frame.p1) == Part::Primal ? nu14 : 1.0 / nu14;
    }
    return WeightFunction(std::move(nu));
}

/// P(p) = sum_j n_j(p) alpha_j.
inline std::vector<Complex> embed_quasicrystal(const SpectralData& s, const ZdLabeling& lab) {
    if (lab.dim() != s.dim()) throw ArgumentError("labeling and spectral data disagree on d");
    std::vector<Complex> p;
    p.reserve(lab.all_coords().size());
    for (const auto& n : lab.all_coords()) {
        Complex acc{};
        for (int j = 0; j < s.dim() && j < static_cast<int>(n.size()); ++j) acc += static_cast<double>(n[j]) * s.alpha()[j];
        p.push_back(acc);
    }
    return p;
}

/// (F(y1) - F(y0)) / (F(x1) - F(x0)) on face (x0, y0, x1, y1).
inline Complex diagonal_ratio(const QuadGraph& q, const std::vector<Complex>& F, int f) {
    const Face& c = q.face(f);
    return (F[c[3]] - F[c[1]]) / (F[c[2]] - F[c[0]]);
}

/// +1 / -1 for real weights, 0 when not real within tolerance.
inline int weight_sign(Complex v, double tol = 1e-12) {
    if (std::abs(v.imag()) > tol * std::abs(v)) return 0;
    return v.real() > 0 ? 1 : -1;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string weights_csv(const std::vector<FaceCoefficients>& fcs, const WeightFunction& w) {
    std::ostringstream out;
    out << "face,x,y,a1_re,a1_im,a2_re,a2_im,a3_re,a3_im,nu_re,nu_im,nu_dual_re,nu_dual_im,sign\n";
    for (const auto& fc : fcs) {
        const Complex nu = w.primal(fc.face), nd = w.dual(fc.face);
        const int sg = weight_sign(nu);
        out << fc.face << ',' << fc.x << ',' << fc.y;
        for (Complex v : {fc.a1, fc.a2, fc.a3, nu, nd}) out << ',' << format_double(v.real()) << ',' << format_double(v.imag());
        out << ',' << (sg > 0 ? "+" : sg < 0 ? "-" : "complex") << '\n';
    }
    return out.str();
}

}  // namespace quadgap
