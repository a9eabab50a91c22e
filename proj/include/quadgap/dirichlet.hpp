#pragma once

// Dirichlet problem for the weighted Laplacian on G inside (or outside) a
// simple cycle, solved as a sparse system with one row per interior vertex.

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <Eigen/SparseQR>

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "operators.hpp"
#include "quadgraph.hpp"
#include "weights.hpp"

namespace quadgap {

enum class Side { Inside, Outside };
enum class VertexRole { Exterior, Boundary, Interior };

struct DirichletProblem {
    std::vector<int> cycle;
    Side side = Side::Inside;
    std::vector<int> interior;        // sorted vertex indices
    std::vector<int> boundary;        // cycle vertices, sorted
    std::vector<VertexRole> role;     // per vertex of D; dual vertices are Exterior
    VertexField data;                 // boundary values
};

namespace detail {

inline bool on_segment(Vec2 p, Vec2 a, Vec2 b, double eps) {
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (std::abs(cross) > eps * std::max(1.0, len)) return false;
    const double dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
    return dot >= -eps && dot <= len * len + eps;
}

/// Even-odd crossing test; the caller handles points on the polyline.
inline bool inside_polygon(Vec2 p, const std::vector<Vec2>& poly) {
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Vec2 a = poly[i], b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xc) in = !in;
        }
    }
    return in;
}

}  // namespace detail

/// Classifies every primal vertex as interior, boundary or exterior with a
/// point-in-polygon test on the drawing positions.
inline DirichletProblem region_from_cycle(const QuadGraph& q, const std::vector<int>& cycle, Side side) {
    if (cycle.size() < 3) throw ArgumentError("cycle needs at least three vertices");
    std::set<int> uniq(cycle.begin(), cycle.end());
    if (uniq.size() != cycle.size()) throw ArgumentError("cycle is not simple (repeated vertex)");
    for (int v : cycle) {
        if (v < 0 || v >= q.num_vertices()) throw ArgumentError("cycle vertex out of range");
        if (q.part(v) != Part::Primal) throw ArgumentError("cycle vertex '" + q.vertex(v).id + "' is not in G");
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const int u = cycle[i], v = cycle[(i + 1) % cycle.size()];
        bool found = false;
        for (auto [nb, face] : q.diagonal_neighbors(u)) found = found || nb == v;
        if (!found) throw ArgumentError("'" + q.vertex(u).id + "'-'" + q.vertex(v).id + "' is not an edge of G");
    }
    std::vector<Vec2> poly;
    for (int v : cycle) {
        if (!q.vertex(v).pos) throw ArgumentError("cycle vertex '" + q.vertex(v).id + "' has no position");
        poly.push_back(*q.vertex(v).pos);
    }

    DirichletProblem p;
    p.cycle = cycle;
    p.side = side;
    p.role.assign(q.num_vertices(), VertexRole::Exterior);
    p.data = VertexField(q.num_vertices());
    for (int v : q.vertices_of(Part::Primal)) {
        if (uniq.count(v)) {
            p.role[v] = VertexRole::Boundary;
            p.boundary.push_back(v);
            continue;
        }
        if (!q.vertex(v).pos) throw ArgumentError("vertex '" + q.vertex(v).id + "' has no position");
        const Vec2 x = *q.vertex(v).pos;
        for (std::size_t i = 0; i < poly.size(); ++i)
            if (detail::on_segment(x, poly[i], poly[(i + 1) % poly.size()], 1e-12))
                throw ArgumentError("vertex '" + q.vertex(v).id + "' lies on the cycle but is not a cycle vertex");
        const bool in = detail::inside_polygon(x, poly);
        if (in == (side == Side::Inside)) {
            p.role[v] = VertexRole::Interior;
            p.interior.push_back(v);
        }
    }
    for (int v : p.interior) {
        if (!q.is_interior(v))
            throw ArgumentError("interior vertex '" + q.vertex(v).id + "' has an incomplete neighborhood in D");
        for (auto [u, face] : q.diagonal_neighbors(v))
            if (p.role[u] == VertexRole::Exterior)
                throw ArgumentError("interior vertex '" + q.vertex(v).id + "' has exterior neighbor '" +
                                    q.vertex(u).id + "'");
    }
    return p;
}

inline void set_boundary_data(DirichletProblem& p, const VertexField& values) {
    for (int v : p.boundary) p.data.set(v, values.get(v));
}

enum class SolveMethod { Direct, Iterative, Dense };
enum class SolveStatus { Solved, Singular };

struct SolveOptions {
    SolveMethod method = SolveMethod::Direct;
    double tol = 1e-12;
    /// Starting interior values for the iterative method (by interior order).
    std::optional<Eigen::VectorXcd> initial_guess;
    /// Largest system for which a dense null vector is produced.
    int dense_witness_limit = 2000;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Solved;
    SolveMethod method_used = SolveMethod::Direct;
    VertexField solution;         // interior + boundary
    int unknowns = 0;
    int rank = 0;
    double residual = 0.0;        // max relative Laplacian residual over interior
    std::vector<Complex> null_vector;  // by interior order, when singular
};

struct LinearSystem {
    Eigen::SparseMatrix<Complex> matrix;
    Eigen::VectorXcd rhs;
    std::vector<int> index;  // vertex -> row, -1 when not interior
};

inline LinearSystem assemble(const QuadGraph& q, const WeightFunction& w, const DirichletProblem& p) {
    LinearSystem sys;
    const int m = static_cast<int>(p.interior.size());
    sys.index.assign(q.num_vertices(), -1);
    for (int i = 0; i < m; ++i) sys.index[p.interior[i]] = i;
    std::vector<Eigen::Triplet<Complex>> trip;
    sys.rhs = Eigen::VectorXcd::Zero(m);
    for (int i = 0; i < m; ++i) {
        const int x0 = p.interior[i];
        Complex diag{};
        for (auto [x, face] : q.diagonal_neighbors(x0)) {
            const Complex nu = w.at(q, face, x0);
            diag -= nu;
            if (sys.index[x] >= 0) {
                trip.emplace_back(i, sys.index[x], nu);
            } else if (p.role[x] == VertexRole::Boundary) {
                sys.rhs[i] -= nu * p.data.get(x);
            } else {
                throw ArgumentError("interior vertex has an exterior neighbor");
            }
        }
        trip.emplace_back(i, i, diag);
    }
    sys.matrix.resize(m, m);
    sys.matrix.setFromTriplets(trip.begin(), trip.end());
    sys.matrix.makeCompressed();
    return sys;
}

/// Rank and (for small systems) a unit null vector of A.
inline std::pair<int, std::vector<Complex>> rank_report(const Eigen::SparseMatrix<Complex>& a, int dense_limit) {
    const int m = static_cast<int>(a.rows());
    if (m <= dense_limit) {
        Eigen::MatrixXcd dense(a);
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(dense);
        lu.setThreshold(1e-12);
        const int r = static_cast<int>(lu.rank());
        std::vector<Complex> nv;
        if (r < m) {
            Eigen::VectorXcd k = lu.kernel().col(0);
            k.normalize();
            nv.assign(k.data(), k.data() + k.size());
        }
        return {r, nv};
    }
    Eigen::SparseQR<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>> qr;
    qr.compute(a);
    return {static_cast<int>(qr.rank()), {}};
}

inline double max_relative_residual(const QuadGraph& q, const WeightFunction& w, const DirichletProblem& p,
                                    const VertexField& f) {
    double worst = 0.0;
    for (int v : p.interior) {
        const double sc = laplacian_scale(q, w, f, v);
        const double r = std::abs(apply_laplacian(q, w, f, v));
        worst = std::max(worst, sc == 0.0 ? r : r / sc);
    }
    return worst;
}

/// Solves Delta f = 0 on the interior with f = data on the boundary.
/// Rank-deficient systems come back with status Singular, never an exception.
inline SolveResult solve(const QuadGraph& q, const WeightFunction& w, const DirichletProblem& p,
                         const SolveOptions& opt = {}) {
    for (int v : p.boundary)
        if (!p.data.has(v)) throw DomainError("boundary vertex '" + q.vertex(v).id + "' has no data");
    const LinearSystem sys = assemble(q, w, p);
    const int m = static_cast<int>(p.interior.size());
    SolveResult res;
    res.unknowns = m;
    res.method_used = opt.method;
    res.solution = VertexField(q.num_vertices());
    for (int v : p.boundary) res.solution.set(v, p.data.get(v));
    if (m == 0) return res;

    Eigen::VectorXcd x;
    bool ok = false;
    auto singular = [&]() {
        auto [r, nv] = rank_report(sys.matrix, opt.dense_witness_limit);
        res.status = SolveStatus::Singular;
        res.rank = r;
        res.null_vector = std::move(nv);
        return res;
    };
    switch (opt.method) {
        case SolveMethod::Direct: {
            Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>> lu;
            lu.analyzePattern(sys.matrix);
            lu.factorize(sys.matrix);
            if (lu.info() == Eigen::Success) {
                x = lu.solve(sys.rhs);
                ok = lu.info() == Eigen::Success && x.allFinite();
            }
            if (!ok) {
                if (rank_report(sys.matrix, opt.dense_witness_limit).first < m) return singular();
                res.method_used = SolveMethod::Iterative;  // factorization failed on a full-rank system
            }
            if (ok) break;
            [[fallthrough]];
        }
        case SolveMethod::Iterative: {
            Eigen::BiCGSTAB<Eigen::SparseMatrix<Complex>, Eigen::IncompleteLUT<Complex>> it;
            it.setTolerance(opt.tol);
            it.setMaxIterations(std::max(1000, 20 * m));
            it.compute(sys.matrix);
            if (it.info() == Eigen::Success) {
                x = opt.initial_guess ? Eigen::VectorXcd(it.solveWithGuess(sys.rhs, *opt.initial_guess))
                                      : Eigen::VectorXcd(it.solve(sys.rhs));
                ok = it.info() == Eigen::Success && x.allFinite();
            }
            res.method_used = SolveMethod::Iterative;
            break;
        }
        case SolveMethod::Dense: {
            Eigen::MatrixXcd dense(sys.matrix);
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(dense);
            lu.setThreshold(1e-12);
            if (lu.rank() < m) return singular();
            x = lu.solve(sys.rhs);
            ok = x.allFinite();
            break;
        }
    }
    if (!ok) return singular();
    for (int i = 0; i < m; ++i) res.solution.set(p.interior[i], x[i]);
    res.rank = m;
    res.residual = max_relative_residual(q, w, p, res.solution);
    return res;
}

struct MaxPrincipleReport {
    bool one_sign = false;
    bool pass = true;
    double worst_margin = -INFINITY;  // max over interior of |f(x0)| - max_nbr |f(x)|
    std::vector<int> violations;
};

/// Checks |f(x0)| <= max over neighbors |f(x)| at every interior vertex.
inline MaxPrincipleReport check_max_principle(const QuadGraph& q, const WeightFunction& w, const DirichletProblem& p,
                                              const VertexField& f, double tol = 1e-12) {
    MaxPrincipleReport r;
    int pos = 0, neg = 0;
    for (int v : p.interior)
        for (auto [u, face] : q.diagonal_neighbors(v)) {
            const int s = weight_sign(w.at(q, face, v));
            pos += s > 0;
            neg += s <= 0;
        }
    r.one_sign = pos == 0 || neg == 0;
    for (int v : p.interior) {
        double mx = 0.0;
        for (auto [u, face] : q.diagonal_neighbors(v)) mx = std::max(mx, std::abs(f.get(u)));
        const double margin = std::abs(f.get(v)) - mx;
        r.worst_margin = std::max(r.worst_margin, margin);
        if (margin > tol * std::max(1.0, mx)) r.violations.push_back(v);
    }
    r.pass = r.violations.empty();
    return r;
}

}  // namespace quadgap
