#pragma once

// Sign-uniformity of nu decided combinatorially. Adjacent faces sharing an
// edge with axis y, flanked at a common endpoint by edges with axes x and z,
// carry weights of the same sign exactly when
//
//     (flanking edges share their head or their tail)  <=>  A+_y lies between A+_x and A+_z
//
// on the oval. The labeling is positively consistent when this holds for
// every adjacent pair.

#include <string>
#include <vector>

#include "errors.hpp"
#include "quadgraph.hpp"
#include "spectral.hpp"
#include "weights.hpp"

namespace quadgap {

/// Linearized order of the A+ block on the oval |z| = C.
struct OvalOrder {
    std::vector<int> position;     // position[j-1]: slot of A+_j, 0-based
    std::vector<int> permutation;  // permutation[k]: axis (1-based) in slot k
    int dim() const noexcept { return static_cast<int>(position.size()); }
};

inline OvalOrder oval_order(const SpectralData& s) {
    s.require_tau();
    auto pos = half_circle_positions(s.alpha());
    if (!pos)
        throw NotMOrderedError("distinguished points do not split into an A+ block followed by an A- block");
    OvalOrder o;
    o.position = *pos;
    o.permutation.assign(s.dim(), 0);
    for (int j = 0; j < s.dim(); ++j) o.permutation[(*pos)[j]] = j + 1;
    return o;
}

/// True iff A+_y lies strictly between A+_x and A+_z in the A+ block.
/// x == z is allowed (nothing lies between a point and itself).
inline bool between(const OvalOrder& o, int y, int x, int z) {
    const int d = o.dim();
    for (int a : {x, y, z})
        if (a < 1 || a > d) throw ArgumentError("axis " + std::to_string(a) + " out of range");
    if (y == x || y == z) throw ArgumentError("between: y must differ from x and z");
    const int py = o.position[y - 1], px = o.position[x - 1], pz = o.position[z - 1];
    return std::min(px, pz) < py && py < std::max(px, pz);
}

enum class Direction { Same, Opposite };

inline const char* to_string(Direction d) { return d == Direction::Same ? "same" : "opposite"; }

struct AdjacencyCase {
    int face1 = -1, face2 = -1;
    int shared_edge = -1;
    int pivot = -1;               // endpoint of the shared edge where flanks are read
    int flank1 = -1, flank2 = -1; // edges of face1 / face2 at the pivot
    int y = 0, x = 0, z = 0;      // axes of shared, flank1, flank2
    Direction direction = Direction::Same;
};

inline AdjacencyCase classify_adjacent_faces(const QuadGraph& q, const ZdLabeling& lab, int f1, int f2) {
    const auto shared = q.shared_edges(f1, f2);
    if (f1 == f2 || shared.size() != 1)
        throw AdjacencyError("faces " + std::to_string(f1) + " and " + std::to_string(f2) + " share " +
                             std::to_string(f1 == f2 ? 4 : shared.size()) + " edges, expected exactly one");
    AdjacencyCase c;
    c.face1 = f1;
    c.face2 = f2;
    c.shared_edge = shared.front();
    c.pivot = q.edge(c.shared_edge).a;
    auto flank = [&](int f) {
        const int k = q.corner_of(f, c.pivot);
        const int e1 = q.face_edge(f, k), e2 = q.face_edge(f, (k + 3) & 3);
        return e1 == c.shared_edge ? e2 : e1;
    };
    c.flank1 = flank(f1);
    c.flank2 = flank(f2);
    c.y = lab.label(c.shared_edge).axis;
    c.x = lab.label(c.flank1).axis;
    c.z = lab.label(c.flank2).axis;
    const bool out1 = lab.label(c.flank1).from == c.pivot;
    const bool out2 = lab.label(c.flank2).from == c.pivot;
    c.direction = out1 == out2 ? Direction::Opposite : Direction::Same;
    return c;
}

struct ConsistencyViolation {
    AdjacencyCase adjacency;
    bool y_between = false;        // what the oval order says
    Direction expected = Direction::Same;
    Direction found = Direction::Same;
};

struct ConsistencyVerdict {
    bool consistent = true;
    int pairs_checked = 0;
    std::vector<ConsistencyViolation> violations;
};

/// Checks every adjacent face pair and reports all violations.
inline ConsistencyVerdict check_positive_consistency(const QuadGraph& q, const ZdLabeling& lab, const OvalOrder& o) {
    if (lab.dim() != o.dim()) throw ArgumentError("labeling and oval order disagree on d");
    ConsistencyVerdict v;
    for (auto [f1, f2] : q.adjacent_face_pairs()) {
        const AdjacencyCase c = classify_adjacent_faces(q, lab, f1, f2);
        const bool btw = between(o, c.y, c.x, c.z);
        const Direction expected = btw ? Direction::Opposite : Direction::Same;
        ++v.pairs_checked;
        if (expected != c.direction) v.violations.push_back({c, btw, expected, c.direction});
    }
    v.consistent = v.violations.empty();
    return v;
}

// ---------------------------------------------------------------------------
// Leading-coefficient identities on a single face

struct FaceIdentityReport {
    double max_identity_error = 0.0;  // residue / product identities, absolute on unit-scale quantities
    bool proportions_hold = true;     // both sign proportions
    std::vector<std::pair<std::string, double>> errors;
};

/// Ratio a/b is a positive real within tol.
inline bool same_sign(Complex a, Complex b, double tol = 1e-10) {
    if (b == Complex{}) return false;
    const Complex r = a / b;
    return r.real() > 0 && std::abs(r.imag()) <= tol * std::abs(r);
}

/// Residue and leading-coefficient relations on the face
/// (p1, p2 = p1 + e_x, p4 = p1 + e_x + e_y, p3 = p1 + e_y).
inline FaceIdentityReport check_face_identities(const SpectralData& s, const Lattice& p1, int x, int y) {
    if (x == y) throw ArgumentError("face axes must differ");
    const int d = s.dim();
    const Lattice p2 = add(p1, unit(d, x)), p3 = add(p1, unit(d, y)), p4 = add(p2, unit(d, y));
    const SpherePoint ax(s.alpha(x)), ay(s.alpha(y));
    const Complex om_x = omega_density(s, x), om_y = omega_density(s, y);
    auto r = [&](const Lattice& n, int j) { return leading_coeff(s, n, j); };
    auto rp = [&](const Lattice& n, int j) { return leading_coeff_dual(s, n, j); };

    FaceIdentityReport rep;
    auto add_err = [&](const char* name, Complex a, Complex b) {
        const double e = rel_diff(a, b);
        rep.max_identity_error = std::max(rep.max_identity_error, e);
        rep.errors.emplace_back(name, e);
    };
    const Complex res31 = residue_pairing(s, p3, p1, ay);
    const Complex res41y = residue_pairing(s, p4, p1, ay);
    const Complex res41x = residue_pairing(s, p4, p1, ax);
    const Complex res32 = residue_pairing(s, p3, p2, ay);
    const Complex res23 = residue_pairing(s, p2, p3, ax);
    add_err("res_Ay psi(p3) psi+(p1) omega = -1", res31, -1.0);
    add_err("res_R+ psi(p3) psi+(p1) omega = 1/2", residue_pairing(s, p3, p1, SpherePoint::infinity()), 0.5);
    add_err("res_R- psi(p3) psi+(p1) omega = 1/2", residue_pairing(s, p3, p1, SpherePoint(Complex{})), 0.5);
    add_err("res_Ay psi(p4) psi+(p1) omega = -r_y(p4)/r_y(p3)", res41y, -r(p4, y) / r(p3, y));
    add_err("res_Ay psi(p4) psi+(p1) omega = r_y(p4) r+_y(p1) omega(Ay)", res41y, r(p4, y) * rp(p1, y) * om_y);
    add_err("-1/omega(Ay) = r_y(p3) r+_y(p1)", -1.0 / om_y, r(p3, y) * rp(p1, y));
    add_err("res_Ax psi(p4) psi+(p1) omega = -r_x(p4)/r_x(p2)", res41x, -r(p4, x) / r(p2, x));
    add_err("res_Ax psi(p4) psi+(p1) omega = r_x(p4) r+_x(p1) omega(Ax)", res41x, r(p4, x) * rp(p1, x) * om_x);
    add_err("-1/omega(Ax) = r_x(p2) r+_x(p1)", -1.0 / om_x, r(p2, x) * rp(p1, x));
    add_err("res_Ay psi(p3) psi+(p2) omega = -r_y(p3)/r_y(p4)", res32, -r(p3, y) / r(p4, y));
    add_err("res_Ay psi(p3) psi+(p2) omega = r_y(p3) r+_y(p2) omega(Ay)", res32, r(p3, y) * rp(p2, y) * om_y);
    add_err("-1/omega(Ay) = r_y(p4) r+_y(p2)", -1.0 / om_y, r(p4, y) * rp(p2, y));
    add_err("res_Ax psi(p2) psi+(p3) omega = -r_x(p2)/r_x(p4)", res23, -r(p2, x) / r(p4, x));
    add_err("res_Ax psi(p2) psi+(p3) omega = r_x(p2) r+_x(p3) omega(Ax)", res23, r(p2, x) * rp(p3, x) * om_x);
    add_err("-1/omega(Ax) = r_x(p4) r+_x(p3)", -1.0 / om_x, r(p4, x) * rp(p3, x));
    add_err("r_y(p3)/r_y(p4) = r+_y(p2)/r+_y(p1)", r(p3, y) / r(p4, y), rp(p2, y) / rp(p1, y));
    add_err("r_x(p2)/r_x(p4) = r+_x(p3)/r+_x(p1)", r(p2, x) / r(p4, x), rp(p3, x) / rp(p1, x));
    // CR relation through leading coefficients: i nu(p1,p4) = r_y(p3)/r_y(p4) = -r_x(p2)/r_x(p4).
    const Complex ax_ = s.alpha(x), ay_ = s.alpha(y);
    const Complex inu = kI * (kI * (ax_ - ay_) / (ax_ + ay_));
    add_err("i nu(p1,p4) = r_y(p3)/r_y(p4)", inu, r(p3, y) / r(p4, y));
    add_err("i nu(p1,p4) = -r_x(p2)/r_x(p4)", inu, -r(p2, x) / r(p4, x));

    rep.proportions_hold = same_sign(r(p2, x) / r(p4, x), r(p1, x) / r(p3, x)) &&
                           same_sign(r(p3, y) / r(p4, y), r(p1, y) / r(p2, y));
    return rep;
}

// ---------------------------------------------------------------------------
// Theorem check: direct sign computation against the combinatorial verdict

struct TheoremReport {
    ConsistencyVerdict combinatorial;
    std::vector<int> face_signs;   // +1 / -1 per face (0: not real)
    int direct_sign = 0;           // +1, -1, or 0 for mixed / not real
    bool sign_uniform = false;
    bool agree = false;
    double max_identity_error = 0.0;
    bool proportions_hold = true;
};

inline int uniform_sign(const std::vector<int>& signs) {
    if (signs.empty()) return 1;
    const int first = signs.front();
    if (first == 0) return 0;
    for (int s : signs)
        if (s != first) return 0;
    return first;
}

inline TheoremReport check_theorem(const SpectralData& s, const QuadGraph& q, const ZdLabeling& lab) {
    const OvalOrder o = oval_order(s);
    TheoremReport rep;
    const WeightFunction w = weight_function(s, q, lab);
    for (int f = 0; f < q.num_faces(); ++f) rep.face_signs.push_back(weight_sign(w.primal(f)));
    rep.direct_sign = uniform_sign(rep.face_signs);
    rep.sign_uniform = rep.direct_sign != 0;
    rep.combinatorial = check_positive_consistency(q, lab, o);
    rep.agree = rep.sign_uniform == rep.combinatorial.consistent;
    for (int f = 0; f < q.num_faces(); ++f) {
        const FaceFrame fr = face_frame(q, lab, f);
        const FaceIdentityReport fi = check_face_identities(s, lab.coords(fr.p1), fr.x, fr.y);
        rep.max_identity_error = std::max(rep.max_identity_error, fi.max_identity_error);
        rep.proportions_hold = rep.proportions_hold && fi.proportions_hold;
    }
    return rep;
}

}  // namespace quadgap
