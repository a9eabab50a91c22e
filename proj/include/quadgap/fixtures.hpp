#pragma once

// Lattice-patch quad-graphs with Z^d labelings: the square lattice, the
// staircase in Z^3, its flipped variants, and general column/row strips.

#include <string>
#include <utility>
#include <vector>

#include "quadgraph.hpp"

namespace quadgap {

enum class FixtureKind { SquareD2, StaircaseD3, FlippedStaircaseD3, FlippedStaircaseD5, StripCustom };

/// Axis with a direction: +1 means the edge points towards increasing
/// drawing coordinate (right for columns, up for rows).
struct SignedAxis {
    int axis = 1;
    int sign = 1;
};

/// W x H grid of faces. Horizontal edges in column c carry columns[c];
/// vertical edges in row r carry rows[r].
struct StripSpec {
    int d = 2;
    std::vector<SignedAxis> columns;
    std::vector<SignedAxis> rows;
};

struct Fixture {
    QuadGraph graph;
    ZdLabeling labeling;
};

inline std::string grid_id(int i, int j) { return "v" + std::to_string(i) + "_" + std::to_string(j); }

inline Fixture make_strip(const StripSpec& spec) {
    const int w = static_cast<int>(spec.columns.size());
    const int h = static_cast<int>(spec.rows.size());
    if (w < 1 || h < 1) throw ArgumentError("strip needs at least one column and one row");
    for (const auto& a : spec.columns)
        if (a.axis < 1 || a.axis > spec.d || (a.sign != 1 && a.sign != -1)) throw ArgumentError("bad column axis");
    for (const auto& a : spec.rows)
        if (a.axis < 1 || a.axis > spec.d || (a.sign != 1 && a.sign != -1)) throw ArgumentError("bad row axis");

    auto vid = [h](int i, int j) { return i * (h + 1) + j; };
    std::vector<Vertex> verts;
    std::vector<std::vector<int>> coords;
    for (int i = 0; i <= w; ++i) {
        for (int j = 0; j <= h; ++j) {
            verts.push_back(Vertex{grid_id(i, j), (i + j) % 2 == 0 ? Part::Primal : Part::Dual,
                                   Vec2{static_cast<double>(i), static_cast<double>(j)}});
            std::vector<int> n(spec.d, 0);
            for (int c = 0; c < i; ++c) n[spec.columns[c].axis - 1] += spec.columns[c].sign;
            for (int r = 0; r < j; ++r) n[spec.rows[r].axis - 1] += spec.rows[r].sign;
            coords.push_back(std::move(n));
        }
    }
    std::vector<Face> faces;
    for (int i = 0; i < w; ++i)
        for (int j = 0; j < h; ++j)
            faces.push_back(Face{vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    QuadGraph q(std::move(verts), faces);

    std::vector<EdgeLabel> labels(q.num_edges());
    for (int i = 0; i <= w; ++i) {
        for (int j = 0; j <= h; ++j) {
            if (i < w) {
                const auto& c = spec.columns[i];
                const int e = *q.find_edge(vid(i, j), vid(i + 1, j));
                labels[e] = EdgeLabel{c.axis, c.sign > 0 ? vid(i, j) : vid(i + 1, j)};
            }
            if (j < h) {
                const auto& r = spec.rows[j];
                const int e = *q.find_edge(vid(i, j), vid(i, j + 1));
                labels[e] = EdgeLabel{r.axis, r.sign > 0 ? vid(i, j) : vid(i, j + 1)};
            }
        }
    }
    ZdLabeling lab(spec.d, std::move(labels), std::move(coords), vid(0, 0));
    return Fixture{std::move(q), std::move(lab)};
}

/// Default custom strip: columns cycle through axes 1..4, rows use axis 5.
inline StripSpec default_custom_strip(int size) {
    StripSpec s;
    s.d = 5;
    for (int c = 0; c < size; ++c) s.columns.push_back({c % 4 + 1, 1});
    s.rows.assign(size, {5, 1});
    return s;
}

inline StripSpec fixture_spec(FixtureKind kind, int size) {
    if (size < 1) throw ArgumentError("fixture size must be at least 1");
    StripSpec s;
    switch (kind) {
        case FixtureKind::SquareD2:
            s.d = 2;
            s.columns.assign(size, {1, 1});
            s.rows.assign(size, {2, 1});
            return s;
        case FixtureKind::StaircaseD3:
            s.d = 3;
            for (int c = 0; c < size; ++c) s.columns.push_back({c % 2 == 0 ? 1 : 2, 1});
            s.rows.assign(size, {3, 1});
            return s;
        case FixtureKind::FlippedStaircaseD3:
        case FixtureKind::FlippedStaircaseD5: {
            // 2*size columns; the cut runs between columns size-1 and size.
            const bool lift = kind == FixtureKind::FlippedStaircaseD5;
            s.d = lift ? 5 : 3;
            for (int c = 0; c < 2 * size; ++c) {
                int axis = c % 2 == 0 ? 1 : 2;
                int sign = 1;
                if (c < size) {
                    sign = -1;
                    if (lift) axis += 3;
                }
                s.columns.push_back({axis, sign});
            }
            s.rows.assign(size, {3, 1});
            return s;
        }
        case FixtureKind::StripCustom:
            return default_custom_strip(size);
    }
    throw ArgumentError("unknown fixture kind");
}

inline Fixture generate_fixture(FixtureKind kind, int size) { return make_strip(fixture_spec(kind, size)); }

inline FixtureKind parse_fixture_kind(const std::string& name) {
    if (name == "square" || name == "SQUARE_D2") return FixtureKind::SquareD2;
    if (name == "staircase" || name == "STAIRCASE_D3") return FixtureKind::StaircaseD3;
    if (name == "flipped" || name == "FLIPPED_STAIRCASE_D5") return FixtureKind::FlippedStaircaseD5;
    if (name == "flipped-d3" || name == "FLIPPED_STAIRCASE_D3") return FixtureKind::FlippedStaircaseD3;
    if (name == "strip" || name == "STRIP_CUSTOM") return FixtureKind::StripCustom;
    throw ArgumentError("unknown fixture kind '" + name + "'");
}

/// Planar square grid graph with (cols+1) x (rows+1) vertices, bounded faces
/// counterclockwise and the outer face listed last (clockwise).
inline PlanarGraph grid_planar_graph(int cols, int rows) {
    PlanarGraph g;
    auto vid = [rows](int i, int j) { return i * (rows + 1) + j; };
    for (int i = 0; i <= cols; ++i)
        for (int j = 0; j <= rows; ++j) {
            g.ids.push_back(grid_id(i, j));
            g.pos.push_back(Vec2{static_cast<double>(i), static_cast<double>(j)});
        }
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < rows; ++j) g.faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    std::vector<int> outer;
    for (int j = 0; j <= rows; ++j) outer.push_back(vid(0, j));
    for (int i = 1; i <= cols; ++i) outer.push_back(vid(i, rows));
    for (int j = rows - 1; j >= 0; --j) outer.push_back(vid(cols, j));
    for (int i = cols - 1; i >= 1; --i) outer.push_back(vid(i, 0));
    g.faces.push_back(std::move(outer));
    return g;
}

}  // namespace quadgap
