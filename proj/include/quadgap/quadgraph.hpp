#pragma once

// Quad-graphs: bipartite planar graphs whose bounded faces are quadrilaterals,
// the primal/dual diagonal graphs G and G*, and Z^d edge labelings.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace quadgap {

enum class Part { Primal, Dual };

inline const char* to_string(Part p) { return p == Part::Primal ? "primal" : "dual"; }

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Vertex {
    std::string id;
    Part part = Part::Primal;
    std::optional<Vec2> pos;
};

/// Edge of D. `a` is always the primal endpoint, `b` the dual one.
struct Edge {
    int a = -1;
    int b = -1;
};

using Face = std::array<int, 4>;

/// Immutable quad-graph D. Faces are stored positively oriented and rotated
/// so that slot 0 (and 2) hold primal vertices: (x0, y0, x1, y1).
class QuadGraph {
public:
    QuadGraph() = default;

    QuadGraph(std::vector<Vertex> vertices, const std::vector<Face>& faces)
        : vertices_(std::move(vertices)) {
        for (int v = 0; v < num_vertices(); ++v) {
            auto [it, inserted] = index_.emplace(vertices_[v].id, v);
            if (!inserted) throw StructuralError("duplicate vertex id '" + vertices_[v].id + "'");
        }
        vertex_faces_.resize(vertices_.size());
        vertex_edges_.resize(vertices_.size());
        std::map<std::pair<int, int>, int> directed_side;
        for (std::size_t f = 0; f < faces.size(); ++f) add_face(static_cast<int>(f), faces[f], directed_side);
        for (int v = 0; v < num_vertices(); ++v) std::sort(vertex_faces_[v].begin(), vertex_faces_[v].end());
        build_adjacency();
    }

    int num_vertices() const noexcept { return static_cast<int>(vertices_.size()); }
    int num_faces() const noexcept { return static_cast<int>(faces_.size()); }
    int num_edges() const noexcept { return static_cast<int>(edges_.size()); }

    const Vertex& vertex(int v) const { return vertices_.at(v); }
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    Part part(int v) const { return vertices_.at(v).part; }

    std::optional<int> find_vertex(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int vertex_index(const std::string& id) const {
        auto v = find_vertex(id);
        if (!v) throw StructuralError("unknown vertex id '" + id + "'");
        return *v;
    }

    const Face& face(int f) const { return faces_.at(f); }
    const std::vector<Face>& faces() const noexcept { return faces_; }

    /// Edge index of side k, joining face[k] and face[(k+1)%4].
    int face_edge(int f, int k) const { return face_edges_.at(f)[k & 3]; }

    const Edge& edge(int e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::optional<int> find_edge(int u, int v) const {
        auto it = edge_index_.find(key(u, v));
        if (it == edge_index_.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<int>& edge_faces(int e) const { return edge_faces_.at(e); }
    const std::vector<int>& vertex_faces(int v) const { return vertex_faces_.at(v); }
    const std::vector<int>& vertex_edges(int v) const { return vertex_edges_.at(v); }

    /// Diagonal of face f through vertex v: the opposite corner.
    int opposite(int f, int v) const {
        const Face& q = faces_.at(f);
        for (int k = 0; k < 4; ++k)
            if (q[k] == v) return q[(k + 2) & 3];
        throw ArgumentError("vertex is not a corner of face " + std::to_string(f));
    }

    int corner_of(int f, int v) const {
        const Face& q = faces_.at(f);
        for (int k = 0; k < 4; ++k)
            if (q[k] == v) return k;
        return -1;
    }

    std::pair<int, int> primal_diagonal(int f) const { return {faces_.at(f)[0], faces_.at(f)[2]}; }
    std::pair<int, int> dual_diagonal(int f) const { return {faces_.at(f)[1], faces_.at(f)[3]}; }

    /// Neighbors of v in G (v primal) or G* (v dual), one entry per incident
    /// face as (neighbor, face). Parallel diagonals stay distinct.
    std::vector<std::pair<int, int>> diagonal_neighbors(int v) const {
        std::vector<std::pair<int, int>> out;
        for (int f : vertex_faces_.at(v)) out.emplace_back(opposite(f, v), f);
        return out;
    }

    /// True when the faces around v close up into one full cycle.
    bool is_interior(int v) const { return interior_.at(v); }

    std::vector<int> vertices_of(Part p) const {
        std::vector<int> out;
        for (int v = 0; v < num_vertices(); ++v)
            if (vertices_[v].part == p) out.push_back(v);
        return out;
    }

    /// Pairs of faces sharing exactly one edge, ordered (f1 < f2), sorted.
    const std::vector<std::pair<int, int>>& adjacent_face_pairs() const noexcept { return adjacent_pairs_; }

    /// Edges shared by two faces.
    std::vector<int> shared_edges(int f1, int f2) const {
        std::vector<int> out;
        for (int k = 0; k < 4; ++k) {
            const int e = face_edges_.at(f1)[k];
            for (int k2 = 0; k2 < 4; ++k2)
                if (face_edges_.at(f2)[k2] == e) out.push_back(e);
        }
        return out;
    }

    bool has_positions() const {
        return std::all_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.pos.has_value(); });
    }

private:
    static std::pair<int, int> key(int u, int v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

    void add_face(int f, Face q, std::map<std::pair<int, int>, int>& directed_side) {
        for (int v : q)
            if (v < 0 || v >= num_vertices())
                throw StructuralError("face " + std::to_string(f) + " references a missing vertex");
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (q[i] == q[j]) throw StructuralError("face " + std::to_string(f) + " repeats a vertex");
        if (vertices_[q[0]].part == Part::Dual) std::rotate(q.begin(), q.begin() + 1, q.end());
        for (int k = 0; k < 4; ++k) {
            const Part expected = (k % 2 == 0) ? Part::Primal : Part::Dual;
            if (vertices_[q[k]].part != expected)
                throw StructuralError("face " + std::to_string(f) + " does not alternate primal/dual");
        }
        std::array<int, 4> fe{};
        for (int k = 0; k < 4; ++k) {
            const int u = q[k], w = q[(k + 1) & 3];
            if (!directed_side.emplace(std::pair{u, w}, f).second)
                throw StructuralError("face " + std::to_string(f) + " repeats a directed side of face " +
                                      std::to_string(directed_side[{u, w}]) + " (inconsistent orientation)");
            auto [it, inserted] = edge_index_.emplace(key(u, w), num_edges());
            if (inserted) {
                const int a = vertices_[u].part == Part::Primal ? u : w;
                const int b = a == u ? w : u;
                edges_.push_back(Edge{a, b});
                edge_faces_.emplace_back();
                vertex_edges_[u].push_back(it->second);
                vertex_edges_[w].push_back(it->second);
            }
            auto& ef = edge_faces_[it->second];
            if (ef.size() == 2)
                throw StructuralError("edge used by more than two faces (face " + std::to_string(f) + ")");
            ef.push_back(f);
            fe[k] = it->second;
            vertex_faces_[u].push_back(f);
        }
        faces_.push_back(q);
        face_edges_.push_back(fe);
    }

    void build_adjacency() {
        interior_.assign(vertices_.size(), false);
        for (int v = 0; v < num_vertices(); ++v) {
            const auto& inc = vertex_faces_[v];
            if (inc.empty()) continue;
            bool closed = std::all_of(vertex_edges_[v].begin(), vertex_edges_[v].end(),
                                      [&](int e) { return edge_faces_[e].size() == 2; });
            if (!closed || vertex_edges_[v].size() != inc.size()) continue;
            // Walk around v through shared edges and require a single cycle.
            int start = inc.front(), cur = start, seen = 0, entry_edge = -1;
            do {
                const int k = corner_of(cur, v);
                const int e1 = face_edges_[cur][k], e2 = face_edges_[cur][(k + 3) & 3];
                const int exit_edge = (e1 == entry_edge) ? e2 : e1;
                const auto& ef = edge_faces_[exit_edge];
                const int next = ef[0] == cur ? ef[1] : ef[0];
                entry_edge = exit_edge;
                cur = next;
                ++seen;
            } while (cur != start && seen <= static_cast<int>(inc.size()));
            interior_[v] = (cur == start && seen == static_cast<int>(inc.size()));
        }
        for (int e = 0; e < num_edges(); ++e) {
            const auto& ef = edge_faces_[e];
            if (ef.size() != 2) continue;
            const int f1 = std::min(ef[0], ef[1]), f2 = std::max(ef[0], ef[1]);
            if (shared_edges(f1, f2).size() == 1) adjacent_pairs_.emplace_back(f1, f2);
        }
        std::sort(adjacent_pairs_.begin(), adjacent_pairs_.end());
    }

    std::vector<Vertex> vertices_;
    std::map<std::string, int> index_;
    std::vector<Face> faces_;
    std::vector<std::array<int, 4>> face_edges_;
    std::vector<Edge> edges_;
    std::map<std::pair<int, int>, int> edge_index_;
    std::vector<std::vector<int>> edge_faces_;
    std::vector<std::vector<int>> vertex_faces_;
    std::vector<std::vector<int>> vertex_edges_;
    std::vector<bool> interior_;
    std::vector<std::pair<int, int>> adjacent_pairs_;
};

// ---------------------------------------------------------------------------
// Planar graph -> double graph D

/// Planar graph with an explicit face list. Faces are cyclic vertex index
/// sequences, all traversed with the same orientation (bounded faces
/// counterclockwise, so the outer face comes out clockwise).
struct PlanarGraph {
    std::vector<std::string> ids;
    std::vector<std::optional<Vec2>> pos;
    std::vector<std::vector<int>> faces;
    std::vector<std::string> face_ids;  // optional; defaults to "f<k>"
};

inline double signed_area(const std::vector<Vec2>& poly) {
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % poly.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

/// Double graph D of g: primal vertices are V(g), dual vertices are the faces
/// of g, and every edge of g bounded by two distinct faces yields the quad
/// (u, right face, v, left face).
inline QuadGraph double_from_planar(const PlanarGraph& g) {
    const int n = static_cast<int>(g.ids.size());
    const int nf = static_cast<int>(g.faces.size());
    if (n == 0 || nf == 0) throw StructuralError("planar graph needs vertices and faces");
    std::map<std::pair<int, int>, int> left;  // directed edge -> face on its left
    for (int f = 0; f < nf; ++f) {
        const auto& cyc = g.faces[f];
        if (cyc.size() < 2) throw StructuralError("face " + std::to_string(f) + " has fewer than two vertices");
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const int u = cyc[i], v = cyc[(i + 1) % cyc.size()];
            if (u < 0 || u >= n || v < 0 || v >= n || u == v)
                throw StructuralError("face " + std::to_string(f) + " has an invalid side");
            if (!left.emplace(std::pair{u, v}, f).second)
                throw StructuralError("directed edge " + g.ids[u] + "->" + g.ids[v] +
                                      " appears twice: face list is not a consistent planar map");
        }
    }
    std::vector<Vertex> verts;
    for (int v = 0; v < n; ++v)
        verts.push_back(Vertex{g.ids[v], Part::Primal, v < static_cast<int>(g.pos.size()) ? g.pos[v] : std::nullopt});
    const bool have_pos = static_cast<int>(g.pos.size()) == n &&
                          std::all_of(g.pos.begin(), g.pos.end(), [](const auto& p) { return p.has_value(); });
    for (int f = 0; f < nf; ++f) {
        std::string id = f < static_cast<int>(g.face_ids.size()) ? g.face_ids[f] : "f" + std::to_string(f);
        std::optional<Vec2> pos;
        if (have_pos) {
            std::vector<Vec2> poly;
            Vec2 c{};
            for (int v : g.faces[f]) {
                poly.push_back(*g.pos[v]);
                c.x += g.pos[v]->x;
                c.y += g.pos[v]->y;
            }
            // Clockwise faces are the outer face; it gets no position.
            if (signed_area(poly) > 0.0) pos = Vec2{c.x / poly.size(), c.y / poly.size()};
        }
        verts.push_back(Vertex{std::move(id), Part::Dual, pos});
    }
    std::vector<Face> quads;
    for (const auto& [uv, f_left] : left) {
        const auto [u, v] = uv;
        auto back = left.find({v, u});
        if (back == left.end())
            throw StructuralError("edge " + g.ids[u] + "-" + g.ids[v] + " is bounded by only one face side");
        if (u > v) continue;
        const int f_right = back->second;
        if (f_right == f_left)
            throw StructuralError("edge " + g.ids[u] + "-" + g.ids[v] +
                                  " has the same face on both sides; its dual edge is undefined");
        quads.push_back(Face{u, n + f_right, v, n + f_left});
    }
    return QuadGraph(std::move(verts), quads);
}

/// Edges of G (primal diagonals) as id pairs, sorted canonically.
inline std::vector<std::pair<std::string, std::string>> primal_edge_list(const QuadGraph& q) {
    std::vector<std::pair<std::string, std::string>> out;
    for (int f = 0; f < q.num_faces(); ++f) {
        auto [a, b] = q.primal_diagonal(f);
        std::string s = q.vertex(a).id, t = q.vertex(b).id;
        if (t < s) std::swap(s, t);
        out.emplace_back(std::move(s), std::move(t));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Z^d labelings

struct EdgeLabel {
    int axis = 0;  // 1-based coordinate index
    int from = -1; // tail vertex; head has coordinate +1 along axis
};

class ZdLabeling {
public:
    ZdLabeling() = default;
    ZdLabeling(int d, std::vector<EdgeLabel> labels, std::vector<std::vector<int>> coords, int base)
        : d_(d), labels_(std::move(labels)), coords_(std::move(coords)), base_(base) {}

    int dim() const noexcept { return d_; }
    int base() const noexcept { return base_; }
    const EdgeLabel& label(int e) const { return labels_.at(e); }
    const std::vector<EdgeLabel>& labels() const noexcept { return labels_; }
    const std::vector<int>& coords(int v) const { return coords_.at(v); }
    const std::vector<std::vector<int>>& all_coords() const noexcept { return coords_; }

private:
    int d_ = 0;
    std::vector<EdgeLabel> labels_;
    std::vector<std::vector<int>> coords_;
    int base_ = -1;
};

inline int head_of(const QuadGraph& q, int e, const EdgeLabel& l) {
    const Edge& ed = q.edge(e);
    return l.from == ed.a ? ed.b : ed.a;
}

/// +1 when side k of face f is traversed tail-to-head in the face's cyclic order.
inline int side_sign(const QuadGraph& q, const std::vector<EdgeLabel>& labels, int f, int k) {
    return labels[q.face_edge(f, k)].from == q.face(f)[k] ? 1 : -1;
}

inline void check_face_coherent(const QuadGraph& q, const std::vector<EdgeLabel>& labels, int d, int f) {
    std::array<int, 4> ax{}, sg{};
    for (int k = 0; k < 4; ++k) {
        const int e = q.face_edge(f, k);
        const EdgeLabel& l = labels[e];
        if (l.axis < 1 || l.axis > d)
            throw IncoherentFaceError(f, "axis " + std::to_string(l.axis) + " out of range 1.." + std::to_string(d));
        if (l.from != q.edge(e).a && l.from != q.edge(e).b)
            throw IncoherentFaceError(f, "label tail is not an endpoint of its edge");
        ax[k] = l.axis;
        sg[k] = side_sign(q, labels, f, k);
    }
    if (ax[0] != ax[2] || ax[1] != ax[3]) throw IncoherentFaceError(f, "opposite sides carry different axes");
    if (ax[0] == ax[1]) throw IncoherentFaceError(f, "both side pairs carry the same axis");
    if (sg[0] + sg[2] != 0 || sg[1] + sg[3] != 0)
        throw IncoherentFaceError(f, "signed unit vectors around the face do not sum to zero");
}

/// Lexicographically smallest vertex id.
inline int default_base(const QuadGraph& q) {
    int best = 0;
    for (int v = 1; v < q.num_vertices(); ++v)
        if (q.vertex(v).id < q.vertex(best).id) best = v;
    return best;
}

/// Checks every face for parallelogram coherence, then integrates coordinates
/// breadth-first from `base` (pinned to the origin).
inline ZdLabeling integrate_labeling(const QuadGraph& q, int d, std::vector<EdgeLabel> labels,
                                     std::optional<int> base = std::nullopt) {
    if (d < 1) throw ArgumentError("labeling dimension must be positive");
    if (static_cast<int>(labels.size()) != q.num_edges())
        throw ArgumentError("expected one label per edge (" + std::to_string(q.num_edges()) + ")");
    for (int e = 0; e < q.num_edges(); ++e)
        if (labels[e].axis == 0) throw ArgumentError("edge " + std::to_string(e) + " is unlabeled");
    for (int f = 0; f < q.num_faces(); ++f) check_face_coherent(q, labels, d, f);

    const int root = base.value_or(q.num_vertices() > 0 ? default_base(q) : -1);
    std::vector<std::vector<int>> coords(q.num_vertices());
    std::vector<bool> seen(q.num_vertices(), false);
    if (root >= 0) {
        coords[root].assign(d, 0);
        seen[root] = true;
        std::queue<int> todo;
        todo.push(root);
        while (!todo.empty()) {
            const int v = todo.front();
            todo.pop();
            for (int e : q.vertex_edges(v)) {
                const EdgeLabel& l = labels[e];
                const int w = q.edge(e).a == v ? q.edge(e).b : q.edge(e).a;
                const int step = (l.from == v) ? 1 : -1;
                std::vector<int> c = coords[v];
                c[l.axis - 1] += step;
                if (!seen[w]) {
                    seen[w] = true;
                    coords[w] = std::move(c);
                    todo.push(w);
                } else if (coords[w] != c) {
                    const int f = q.edge_faces(e).empty() ? -1 : q.edge_faces(e).front();
                    throw IncoherentFaceError(f, "labels do not integrate (loop around a non-face cycle)");
                }
            }
        }
    }
    for (int v = 0; v < q.num_vertices(); ++v)
        if (!seen[v] && !q.vertex_edges(v).empty())
            throw StructuralError("quad-graph is disconnected; vertex '" + q.vertex(v).id + "' unreachable");
    return ZdLabeling(d, std::move(labels), std::move(coords), root);
}

/// Face read in the frame (p1, p2, p4, p3): p1 is the corner both of whose
/// sides point away, p2 follows p1 in positive order, edge p1->p2 has axis x
/// and edge p1->p3 has axis y.
struct FaceFrame {
    int p1 = -1, p2 = -1, p3 = -1, p4 = -1;
    int x = 0, y = 0;
    int corner = 0;  // slot of p1 in the stored face
};

inline FaceFrame face_frame(const QuadGraph& q, const ZdLabeling& lab, int f) {
    const Face& c = q.face(f);
    for (int k = 0; k < 4; ++k) {
        const int next = q.face_edge(f, k), prev = q.face_edge(f, (k + 3) & 3);
        if (lab.label(next).from == c[k] && lab.label(prev).from == c[k]) {
            FaceFrame fr;
            fr.corner = k;
            fr.p1 = c[k];
            fr.p2 = c[(k + 1) & 3];
            fr.p4 = c[(k + 2) & 3];
            fr.p3 = c[(k + 3) & 3];
            fr.x = lab.label(next).axis;
            fr.y = lab.label(prev).axis;
            return fr;
        }
    }
    throw IncoherentFaceError(f, "no corner with two outgoing sides");
}

}  // namespace quadgap
