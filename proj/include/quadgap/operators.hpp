#pragma once

// Weighted Laplacians on G and G*, discrete Cauchy-Riemann residuals on the
// faces of D, and the extension of a harmonic function on G to a discrete
// holomorphic function on D.

#include <cmath>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "complex.hpp"
#include "quadgraph.hpp"
#include "weights.hpp"

namespace quadgap {

/// Partial function V(D) -> C. Reading an absent vertex is a DomainError.
class VertexField {
public:
    VertexField() = default;
    explicit VertexField(int num_vertices) : values_(num_vertices) {}

    int size() const noexcept { return static_cast<int>(values_.size()); }
    bool has(int v) const { return v >= 0 && v < size() && values_[v].has_value(); }

    Complex get(int v) const {
        if (!has(v)) throw DomainError("vertex " + std::to_string(v) + " is outside the field's domain");
        return *values_[v];
    }

    void set(int v, Complex value) { values_.at(v) = value; }
    void erase(int v) { values_.at(v).reset(); }

    std::vector<int> domain() const {
        std::vector<int> out;
        for (int v = 0; v < size(); ++v)
            if (values_[v]) out.push_back(v);
        return out;
    }

    /// Field restricted to the vertices of one part.
    VertexField restricted(const QuadGraph& q, Part p) const {
        VertexField out(size());
        for (int v = 0; v < size(); ++v)
            if (values_[v] && q.part(v) == p) out.values_[v] = values_[v];
        return out;
    }

private:
    std::vector<std::optional<Complex>> values_;
};

/// Any function of the vertex coordinates, sampled on all of V(D).
template <class Fn>
VertexField sample_field(const QuadGraph& q, Fn&& fn) {
    VertexField out(q.num_vertices());
    for (int v = 0; v < q.num_vertices(); ++v) out.set(v, fn(v));
    return out;
}

/// (Delta f)(v) = sum over neighbors u of v in G (or G*) of nu(v,u)(f(u) - f(v)).
inline Complex apply_laplacian(const QuadGraph& q, const WeightFunction& w, const VertexField& f, int v) {
    if (!q.is_interior(v))
        throw DomainError("vertex '" + q.vertex(v).id + "' is not interior; its Laplacian is undefined");
    const Complex fv = f.get(v);
    Complex acc{};
    for (auto [u, face] : q.diagonal_neighbors(v)) acc += w.at(q, face, v) * (f.get(u) - fv);
    return acc;
}

/// Sum of |nu(v,u)| (|f(u)| + |f(v)|): the scale a Laplacian residual is measured against.
inline double laplacian_scale(const QuadGraph& q, const WeightFunction& w, const VertexField& f, int v) {
    double s = 0.0;
    const double fv = std::abs(f.get(v));
    for (auto [u, face] : q.diagonal_neighbors(v)) s += std::abs(w.at(q, face, v)) * (std::abs(f.get(u)) + fv);
    return s;
}

/// (f(y1) - f(y0)) - i nu(x0, x1) (f(x1) - f(x0)) on face (x0, y0, x1, y1).
inline Complex cr_residual(const QuadGraph& q, const WeightFunction& w, const VertexField& f, int face) {
    const Face& c = q.face(face);
    return (f.get(c[3]) - f.get(c[1])) - kI * w.primal(face) * (f.get(c[2]) - f.get(c[0]));
}

inline double cr_scale(const QuadGraph& q, const WeightFunction& w, const VertexField& f, int face) {
    const Face& c = q.face(face);
    return std::abs(f.get(c[3])) + std::abs(f.get(c[1])) +
           std::abs(w.primal(face)) * (std::abs(f.get(c[2])) + std::abs(f.get(c[0])));
}

inline double cr_relative_residual(const QuadGraph& q, const WeightFunction& w, const VertexField& f, int face) {
    const double sc = cr_scale(q, w, f, face);
    const double r = std::abs(cr_residual(q, w, f, face));
    return sc == 0.0 ? r : r / sc;
}

/// Integrates the CR equations from `anchor` (a dual vertex with a prescribed
/// value) over a breadth-first spanning tree of G*, then verifies every
/// remaining face. The restriction of the result to V(G) equals f.
inline VertexField extend_harmonic_to_holomorphic(const QuadGraph& q, const WeightFunction& w, const VertexField& f,
                                                  int anchor, Complex anchor_value, double tol = 1e-10) {
    if (q.part(anchor) != Part::Dual) throw ArgumentError("anchor must be a dual vertex");
    VertexField out(q.num_vertices());
    for (int v : q.vertices_of(Part::Primal)) out.set(v, f.get(v));
    out.set(anchor, anchor_value);

    std::vector<bool> tree_face(q.num_faces(), false);
    std::queue<int> todo;
    todo.push(anchor);
    while (!todo.empty()) {
        const int y = todo.front();
        todo.pop();
        for (int face : q.vertex_faces(y)) {
            const Face& c = q.face(face);
            const int other = q.opposite(face, y);
            if (out.has(other)) continue;
            const Complex jump = kI * w.primal(face) * (out.get(c[2]) - out.get(c[0]));
            // jump = f(c[3]) - f(c[1])
            out.set(other, c[1] == y ? out.get(y) + jump : out.get(y) - jump);
            tree_face[face] = true;
            todo.push(other);
        }
    }
    for (int y : q.vertices_of(Part::Dual))
        if (!out.has(y) && !q.vertex_faces(y).empty())
            throw StructuralError("dual graph is disconnected; '" + q.vertex(y).id + "' unreachable from anchor");
    for (int face = 0; face < q.num_faces(); ++face) {
        if (tree_face[face]) continue;
        const double r = cr_relative_residual(q, w, out, face);
        if (r > tol) throw IntegrationError(face, r);
    }
    return out;
}

}  // namespace quadgap
