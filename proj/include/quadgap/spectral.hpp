#pragma once

// Genus-0 spectral data on the Riemann sphere and the discrete exponential
//
//     Psi(n; z) = prod_j ((z + alpha_j) / (z - alpha_j))^{n_j}
//
// with distinguished points A+_j = alpha_j, A-_j = -alpha_j, normalization
// point R+ = infinity, sigma(z) = -z, Omega = -dz / 2z and, when every
// |alpha_j| equals C, tau(z) = C^2 / conj(z).

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"

namespace quadgap {

using Lattice = std::vector<int>;

inline long long lattice_norm(const Lattice& n) { return std::accumulate(n.begin(), n.end(), 0LL); }

inline double parity_sign(long long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

/// Relative tolerance for |alpha_j| == C.
inline constexpr double kTauModulusTol = 1e-12;

/// Positions of alpha_1..alpha_d in the linear order of the A+ block when the
/// points +-alpha_j on a circle split into d consecutive A+ followed by d
/// consecutive A- (equivalently all alpha_j in an open half-plane through 0).
/// Returns std::nullopt when the block structure fails.
inline std::optional<std::vector<int>> half_circle_positions(const std::vector<Complex>& alpha) {
    const int d = static_cast<int>(alpha.size());
    struct Pt {
        double arg;
        int j;
        bool plus;
    };
    std::vector<Pt> pts;
    for (int j = 0; j < d; ++j) {
        pts.push_back({std::arg(alpha[j]), j, true});
        pts.push_back({std::arg(-alpha[j]), j, false});
    }
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.arg < b.arg; });
    const int m = 2 * d;
    for (int i = 0; i + 1 < m; ++i)
        if (pts[i].arg == pts[i + 1].arg) return std::nullopt;
    // Find the start of the A+ block: an A+ whose cyclic predecessor is A-.
    int start = -1;
    for (int i = 0; i < m; ++i)
        if (pts[i].plus && !pts[(i + m - 1) % m].plus) {
            start = i;
            break;
        }
    if (start < 0) return std::nullopt;
    std::vector<int> pos(d, -1);
    for (int k = 0; k < d; ++k) {
        const Pt& p = pts[(start + k) % m];
        if (!p.plus) return std::nullopt;
        pos[p.j] = k;
    }
    return pos;
}

enum class Check { Strict, Lenient };

class SpectralData {
public:
    SpectralData() = default;

    /// Strict checking enforces pairwise real-linear independence of the
    /// alpha_j; Lenient defers degeneracy to face-level checks.
    explicit SpectralData(std::vector<Complex> alpha, std::optional<double> modulus = std::nullopt,
                          Check check = Check::Strict)
        : alpha_(std::move(alpha)), modulus_(modulus) {
        if (alpha_.empty()) throw ArgumentError("spectral data needs d >= 1 distinguished pairs");
        for (std::size_t j = 0; j < alpha_.size(); ++j) {
            const Complex a = alpha_[j];
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw ArgumentError("alpha_" + std::to_string(j + 1) + " is not finite");
            if (a == Complex{})
                throw DegenerateDataError("alpha_" + std::to_string(j + 1) + " = 0 coincides with R-");
        }
        if (modulus_ && !(*modulus_ > 0.0 && std::isfinite(*modulus_)))
            throw ArgumentError("C must be a positive finite number");
        independent_ = true;
        for (std::size_t j = 0; j < alpha_.size(); ++j)
            for (std::size_t k = j + 1; k < alpha_.size(); ++k) {
                const double cross = std::imag(alpha_[j] * std::conj(alpha_[k]));
                if (std::abs(cross) <= 1e-12 * std::abs(alpha_[j]) * std::abs(alpha_[k])) {
                    independent_ = false;
                    if (check == Check::Strict)
                        throw DegenerateDataError("alpha_" + std::to_string(j + 1) + " and alpha_" +
                                                  std::to_string(k + 1) + " are real-linearly dependent");
                }
            }
        if (modulus_) {
            tau_ = std::all_of(alpha_.begin(), alpha_.end(), [&](Complex a) {
                return std::abs(std::abs(a) - *modulus_) <= kTauModulusTol * *modulus_;
            });
        }
        if (independent_) {
            auto pos = half_circle_positions(alpha_);
            if (pos) {
                m_ordered_ = true;
                for (int j = 0; j < dim(); ++j) m_ordered_ = m_ordered_ && (*pos)[j] == j;
            }
        }
    }

    int dim() const noexcept { return static_cast<int>(alpha_.size()); }
    const std::vector<Complex>& alpha() const noexcept { return alpha_; }
    /// 1-based, matching axis labels.
    Complex alpha(int j) const { return alpha_.at(j - 1); }
    std::optional<double> modulus() const noexcept { return modulus_; }

    bool sigma_symmetric() const noexcept { return true; }
    bool tau_symmetric() const noexcept { return tau_; }
    bool m_curve_ordered() const noexcept { return m_ordered_; }
    bool pairwise_independent() const noexcept { return independent_; }

    double require_tau() const {
        if (!modulus_)
            throw PreconditionError("tau_symmetric: no oval modulus C given");
        if (!tau_)
            throw PreconditionError("tau_symmetric: |alpha_j| = C violated for some j");
        return *modulus_;
    }

    /// Scale used for closeness tests between distinguished points.
    double scale() const {
        double m = 0.0;
        for (Complex a : alpha_) m = std::max(m, std::abs(a));
        return modulus_.value_or(m);
    }

private:
    std::vector<Complex> alpha_;
    std::optional<double> modulus_;
    bool independent_ = false;
    bool tau_ = false;
    bool m_ordered_ = false;
};

inline void check_lattice(const SpectralData& s, const Lattice& n) {
    if (static_cast<int>(n.size()) != s.dim())
        throw ArgumentError("lattice vector has " + std::to_string(n.size()) + " entries, expected " +
                            std::to_string(s.dim()));
}

/// Factor (z + a) / (z - a) of the discrete exponential, evaluated as
/// (w + 1) / (w - 1) with w = z / a so that z = 0 gives exactly -1.
inline Complex mobius_step(Complex z, Complex a) {
    const Complex w = z / a;
    return (w + 1.0) / (w - 1.0);
}

/// Laurent jet of Psi(n; .) at a sphere point.
inline Jet psi_jet(const SpectralData& s, const Lattice& n, const SpherePoint& at) {
    check_lattice(s, n);
    Jet out;
    if (at.is_infinity()) return out;
    const Complex z = at.value();
    for (int j = 0; j < s.dim(); ++j) {
        if (n[j] == 0) continue;
        const Complex a = s.alpha()[j];
        if (z == a) {
            out.order -= n[j];
            out.lead *= ipow(2.0 * a, n[j]);
        } else if (z == -a) {
            out.order += n[j];
            out.lead *= ipow(-2.0 * a, -n[j]);
        } else {
            out.lead *= ipow(mobius_step(z, a), n[j]);
        }
    }
    return out;
}

enum class EvalMode { Strict, OrderAware };

/// Psi(n; z). Strict mode throws PoleError at a pole; OrderAware returns
/// infinity with the pole order (and 0 at zeros in both modes).
inline WaveValue psi(const SpectralData& s, const Lattice& n, const SpherePoint& z,
                     EvalMode mode = EvalMode::Strict) {
    const Jet jet = psi_jet(s, n, z);
    if (jet.order < 0) {
        if (mode == EvalMode::Strict) throw PoleError(-jet.order);
        return WaveValue::pole(-jet.order);
    }
    if (jet.order > 0) return WaveValue::finite(Complex{});
    return WaveValue::finite(jet.lead);
}

inline Complex psi_value(const SpectralData& s, const Lattice& n, Complex z) { return psi(s, n, z).value; }

/// Psi+(n; z) = Psi(n; sigma z).
inline Complex psi_plus_value(const SpectralData& s, const Lattice& n, Complex z) { return psi_value(s, n, -z); }

inline SpherePoint sigma(const SpherePoint& z) {
    return z.is_infinity() ? z : SpherePoint(-z.value());
}

inline SpherePoint tau(const SpectralData& s, const SpherePoint& z) {
    const double c = s.require_tau();
    if (z.is_infinity()) return SpherePoint(Complex{});
    if (z.value() == Complex{}) return SpherePoint::infinity();
    return SpherePoint(c * c / std::conj(z.value()));
}

/// Residue of Omega = -dz / 2z: +1/2 at R+ = infinity, -1/2 at R- = 0.
inline Complex omega_residue(const SpherePoint& at) {
    if (at.is_infinity()) return 0.5;
    if (at.value() == Complex{}) return -0.5;
    return 0.0;
}

struct SymmetryReport {
    double max_deviation = 0.0;
    bool pass = true;
    std::vector<std::pair<std::string, double>> checks;

    void add(std::string name, double dev, double tol) {
        max_deviation = std::max(max_deviation, dev);
        pass = pass && dev <= tol;
        checks.emplace_back(std::move(name), dev);
    }
};

// Forward declaration; defined below.
inline Complex residue_pairing(const SpectralData& s, const Lattice& np, const Lattice& nq, const SpherePoint& at);

/// Consequences of the sigma symmetry at genus 0: Psi(n; 0) = (-1)^{|n|},
/// Psi(n; z) Psi(n; -z) = 1, and the residues of Omega and of
/// Psi(n) Psi+(n) Omega at R+ / R- equal +1/2 / -1/2.
inline SymmetryReport check_sigma_symmetry(const SpectralData& s, const Lattice& n, Complex z, double tol = 1e-12) {
    SymmetryReport r;
    const Complex at_zero = psi_value(s, n, Complex{});
    r.add("psi_at_R_minus", std::abs(at_zero - parity_sign(lattice_norm(n))), tol);
    r.add("psi_times_sigma_psi", std::abs(psi_value(s, n, z) * psi_plus_value(s, n, z) - 1.0), tol);
    r.add("omega_residue_R_plus", std::abs(omega_residue(SpherePoint::infinity()) - 0.5), tol);
    r.add("omega_residue_R_minus", std::abs(omega_residue(SpherePoint(Complex{})) + 0.5), tol);
    r.add("pairing_residue_R_plus", std::abs(residue_pairing(s, n, n, SpherePoint::infinity()) - 0.5), tol);
    r.add("pairing_residue_R_minus", std::abs(residue_pairing(s, n, n, SpherePoint(Complex{})) + 0.5), tol);
    return r;
}

/// Psi(n; tau z) = (-1)^{|n|} conj(Psi(n; z)), as a relative deviation.
inline SymmetryReport check_tau_symmetry(const SpectralData& s, const Lattice& n, Complex z, double tol = 1e-12) {
    s.require_tau();
    SymmetryReport r;
    const Complex lhs = psi(s, n, tau(s, SpherePoint(z))).value;
    const Complex rhs = parity_sign(lattice_norm(n)) * std::conj(psi_value(s, n, z));
    r.add("tau_reality", rel_diff(lhs, rhs), tol);
    return r;
}

/// Local parameter at A+_j, real on the oval |z| = C:
/// z_j(z) = -iC (z - alpha_j) / (z + alpha_j).
inline Complex local_parameter(const SpectralData& s, int j, const SpherePoint& z) {
    const double c = s.require_tau();
    const Complex a = s.alpha(j);
    if (z.is_infinity()) return -kI * c;
    if (z.value() == -a) throw PoleError(1);
    return -kI * c * (z.value() - a) / (z.value() + a);
}

/// Local parameter at A-_j: z_j(sigma z).
inline Complex local_parameter_minus(const SpectralData& s, int j, const SpherePoint& z) {
    return local_parameter(s, j, sigma(z));
}

/// r_j(n): Psi(n; z) = r_j z_j^{-n_j} (1 + O(z_j)) near A+_j.
inline Complex leading_coeff(const SpectralData& s, const Lattice& n, int j) {
    check_lattice(s, n);
    const double c = s.require_tau();
    const Complex aj = s.alpha(j);
    Complex r = ipow(-kI * c, n[j - 1]);
    for (int k = 0; k < s.dim(); ++k) {
        if (k == j - 1 || n[k] == 0) continue;
        const Complex ak = s.alpha()[k];
        r *= ipow((aj + ak) / (aj - ak), n[k]);
    }
    return r;
}

/// r+_j(n): Psi+(n; z) = r+_j z_j^{n_j} (1 + O(z_j)) near A+_j.
inline Complex leading_coeff_dual(const SpectralData& s, const Lattice& n, int j) {
    check_lattice(s, n);
    const double c = s.require_tau();
    const Complex aj = s.alpha(j);
    Complex r = ipow(-kI * c, -n[j - 1]);
    for (int k = 0; k < s.dim(); ++k) {
        if (k == j - 1 || n[k] == 0) continue;
        const Complex ak = s.alpha()[k];
        r *= ipow((-aj + ak) / (-aj - ak), n[k]);
    }
    return r;
}

/// Omega(A+_j): the density f(0) of Omega = f(z_j) dz_j at A+_j.
inline Complex omega_density(const SpectralData& s, int j) {
    const double c = s.require_tau();
    const Complex a = s.alpha(j);
    // dz_j/dz at z = alpha_j is -iC * 2a / (2a)^2.
    const Complex dzj_dz = -kI * c * (2.0 * a) / ((2.0 * a) * (2.0 * a));
    const Complex omega_dz = -1.0 / (2.0 * a);
    return omega_dz / dzj_dz;
}

inline bool near_point(Complex z, Complex p, double scale) { return std::abs(z - p) <= 1e-12 * scale; }

/// Residue of Psi(n_p; z) Psi+(n_q; z) Omega at `at`, in closed form. The
/// product equals prod_k ((z + a_k)/(z - a_k))^{m_k} with m = n_p - n_q.
inline Complex residue_pairing(const SpectralData& s, const Lattice& np, const Lattice& nq, const SpherePoint& at) {
    check_lattice(s, np);
    check_lattice(s, nq);
    const int d = s.dim();
    Lattice m(d);
    for (int k = 0; k < d; ++k) m[k] = np[k] - nq[k];
    if (at.is_infinity()) return 0.5;
    const Complex z = at.value();
    const double sc = s.scale();
    if (std::abs(z) <= 1e-12 * sc) return -0.5 * parity_sign(lattice_norm(m));
    auto others = [&](int skip, Complex w) {
        Complex p{1.0, 0.0};
        for (int k = 0; k < d; ++k)
            if (k != skip && m[k] != 0) p *= ipow(mobius_step(w, s.alpha()[k]), m[k]);
        return p;
    };
    for (int j = 0; j < d; ++j) {
        const Complex a = s.alpha()[j];
        if (near_point(z, a, sc)) {
            if (m[j] <= 0) return 0.0;
            if (m[j] >= 2) throw PoleOrderError(m[j]);
            return -others(j, a);
        }
        if (near_point(z, -a, sc)) {
            if (m[j] >= 0) return 0.0;
            if (m[j] <= -2) throw PoleOrderError(-m[j]);
            return -others(j, -a);
        }
    }
    return 0.0;
}

inline Lattice unit(int d, int j) {
    Lattice e(d, 0);
    e.at(j - 1) = 1;
    return e;
}

inline Lattice add(Lattice a, const Lattice& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b.at(k);
    return a;
}

}  // namespace quadgap
