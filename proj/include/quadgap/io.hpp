#pragma once

// JSON documents: graph + labeling (optionally with embedded spectral data
// and weight overrides), spectral data, and vertex fields. Every document
// carries a "format" tag; unknown keys are rejected.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "operators.hpp"
#include "quadgraph.hpp"
#include "spectral.hpp"
#include "weights.hpp"

namespace quadgap {

using Json = nlohmann::ordered_json;

inline constexpr const char* kGraphFormat = "quadgap.graph/1";
inline constexpr const char* kSpectralFormat = "quadgap.spectral/1";
inline constexpr const char* kFieldFormat = "quadgap.field/1";

namespace io_detail {

inline void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw SchemaError(where + ": unknown field '" + it.key() + "'");
    }
}

inline const Json& need(const Json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline void check_format(const Json& j, const char* expected, const std::string& where, bool required = true) {
    if (!j.contains("format")) {
        if (required) throw SchemaError(where + ": missing field 'format'");
        return;
    }
    if (!j.at("format").is_string() || j.at("format").get<std::string>() != expected)
        throw SchemaError(where + ": format must be \"" + std::string(expected) + "\"");
}

inline double number(const Json& j, const std::string& where) {
    if (!j.is_number()) throw SchemaError(where + ": expected a number");
    return j.get<double>();
}

inline int integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
    return j.get<int>();
}

inline std::string string(const Json& j, const std::string& where) {
    if (!j.is_string()) throw SchemaError(where + ": expected a string");
    return j.get<std::string>();
}

inline Complex complex(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(where + ": expected [re, im]");
    return {number(j[0], where), number(j[1], where)};
}

inline std::pair<std::string, std::string> id_pair(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(where + ": expected [id, id]");
    return {string(j[0], where), string(j[1], where)};
}

}  // namespace io_detail

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write to '" + path + "' failed");
}

inline Json parse_json(const std::string& text, const std::string& where) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(where + ": " + e.what());
    }
}

/// Canonical text form: two-space indent, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Spectral data

/// Parses {format?, d, alpha: [[re, im], ...], C?}. `embedded` documents may
/// omit the format tag.
inline SpectralData spectral_from_json(const Json& j, Check check = Check::Strict, bool embedded = false) {
    using namespace io_detail;
    const std::string where = "spectral";
    only_keys(j, {"format", "d", "alpha", "C"}, where);
    check_format(j, kSpectralFormat, where, !embedded);
    const int d = integer(need(j, "d", where), where + ".d");
    const Json& a = need(j, "alpha", where);
    if (!a.is_array() || static_cast<int>(a.size()) != d)
        throw SchemaError(where + ".alpha: expected " + std::to_string(d) + " entries");
    std::vector<Complex> alpha;
    for (std::size_t k = 0; k < a.size(); ++k) alpha.push_back(complex(a[k], where + ".alpha[" + std::to_string(k) + "]"));
    std::optional<double> C;
    if (j.contains("C")) C = number(j.at("C"), where + ".C");
    return SpectralData(std::move(alpha), C, check);
}

inline Json spectral_to_json(const SpectralData& s, bool embedded = false) {
    Json j;
    if (!embedded) j["format"] = kSpectralFormat;
    j["d"] = s.dim();
    Json a = Json::array();
    for (Complex z : s.alpha()) a.push_back(complex_json(z));
    j["alpha"] = a;
    if (s.modulus()) j["C"] = *s.modulus();
    return j;
}

// ---------------------------------------------------------------------------
// Graph documents

struct GraphDocument {
    QuadGraph graph;
    int d = 0;
    std::vector<EdgeLabel> labels;  // indexed by edge
    std::optional<int> base;
    std::optional<Json> spectral;   // unparsed so callers choose the check level
    std::optional<std::vector<Complex>> weights;  // primal nu per face
};

inline GraphDocument graph_from_json(const Json& j) {
    using namespace io_detail;
    const std::string where = "graph";
    only_keys(j, {"format", "d", "vertices", "faces", "labels", "base", "spectral", "weights"}, where);
    check_format(j, kGraphFormat, where);
    GraphDocument doc;
    doc.d = integer(need(j, "d", where), "graph.d");
    if (doc.d < 1) throw SchemaError("graph.d must be positive");

    std::vector<Vertex> verts;
    const Json& jv = need(j, "vertices", where);
    if (!jv.is_array()) throw SchemaError("graph.vertices: expected an array");
    for (std::size_t k = 0; k < jv.size(); ++k) {
        const std::string w = "graph.vertices[" + std::to_string(k) + "]";
        only_keys(jv[k], {"id", "part", "pos"}, w);
        Vertex v;
        v.id = string(need(jv[k], "id", w), w + ".id");
        const std::string part = string(need(jv[k], "part", w), w + ".part");
        if (part == "primal") v.part = Part::Primal;
        else if (part == "dual") v.part = Part::Dual;
        else throw SchemaError(w + ".part: expected \"primal\" or \"dual\"");
        if (jv[k].contains("pos")) {
            const Json& p = jv[k].at("pos");
            if (!p.is_array() || p.size() != 2) throw SchemaError(w + ".pos: expected [x, y]");
            v.pos = Vec2{number(p[0], w + ".pos"), number(p[1], w + ".pos")};
        }
        verts.push_back(std::move(v));
    }
    std::map<std::string, int> index;
    for (std::size_t k = 0; k < verts.size(); ++k) index.emplace(verts[k].id, static_cast<int>(k));
    auto lookup = [&](const std::string& id, const std::string& w) {
        auto it = index.find(id);
        if (it == index.end()) throw SchemaError(w + ": unknown vertex id '" + id + "'");
        return it->second;
    };

    std::vector<Face> faces;
    const Json& jf = need(j, "faces", where);
    if (!jf.is_array()) throw SchemaError("graph.faces: expected an array");
    for (std::size_t k = 0; k < jf.size(); ++k) {
        const std::string w = "graph.faces[" + std::to_string(k) + "]";
        if (!jf[k].is_array() || jf[k].size() != 4) throw SchemaError(w + ": expected 4 vertex ids");
        Face f{};
        for (int c = 0; c < 4; ++c) f[c] = lookup(string(jf[k][c], w), w);
        faces.push_back(f);
    }
    doc.graph = QuadGraph(std::move(verts), faces);
    const QuadGraph& q = doc.graph;

    doc.labels.assign(q.num_edges(), EdgeLabel{});
    const Json& jl = need(j, "labels", where);
    if (!jl.is_array()) throw SchemaError("graph.labels: expected an array");
    for (std::size_t k = 0; k < jl.size(); ++k) {
        const std::string w = "graph.labels[" + std::to_string(k) + "]";
        only_keys(jl[k], {"edge", "axis", "from"}, w);
        const auto [a, b] = id_pair(need(jl[k], "edge", w), w + ".edge");
        const int u = lookup(a, w), v = lookup(b, w);
        const auto e = q.find_edge(u, v);
        if (!e) throw SchemaError(w + ": '" + a + "'-'" + b + "' is not an edge of any face");
        if (doc.labels[*e].axis != 0) throw SchemaError(w + ": edge labeled twice");
        EdgeLabel l;
        l.axis = integer(need(jl[k], "axis", w), w + ".axis");
        if (l.axis < 1 || l.axis > doc.d) throw SchemaError(w + ".axis: out of range 1.." + std::to_string(doc.d));
        l.from = lookup(string(need(jl[k], "from", w), w + ".from"), w);
        if (l.from != u && l.from != v) throw SchemaError(w + ".from: not an endpoint of the edge");
        doc.labels[*e] = l;
    }
    for (int e = 0; e < q.num_edges(); ++e)
        if (doc.labels[e].axis == 0)
            throw SchemaError("graph.labels: edge '" + q.vertex(q.edge(e).a).id + "'-'" + q.vertex(q.edge(e).b).id +
                              "' has no label");

    if (j.contains("base")) doc.base = lookup(string(j.at("base"), "graph.base"), "graph.base");
    if (j.contains("spectral")) doc.spectral = j.at("spectral");

    if (j.contains("weights")) {
        const Json& jw = j.at("weights");
        if (!jw.is_array()) throw SchemaError("graph.weights: expected an array");
        std::vector<std::optional<Complex>> nu(q.num_faces());
        for (std::size_t k = 0; k < jw.size(); ++k) {
            const std::string w = "graph.weights[" + std::to_string(k) + "]";
            only_keys(jw[k], {"edge", "face", "nu"}, w);
            int face = -1;
            if (jw[k].contains("face")) {
                face = integer(jw[k].at("face"), w + ".face");
                if (face < 0 || face >= q.num_faces()) throw SchemaError(w + ".face: out of range");
            }
            if (jw[k].contains("edge")) {
                const auto [a, b] = id_pair(jw[k].at("edge"), w + ".edge");
                const int u = lookup(a, w), v = lookup(b, w);
                std::vector<int> hits;
                for (int f = 0; f < q.num_faces(); ++f) {
                    auto [x0, x1] = q.primal_diagonal(f);
                    if ((x0 == u && x1 == v) || (x0 == v && x1 == u)) hits.push_back(f);
                }
                if (hits.empty()) throw SchemaError(w + ": '" + a + "'-'" + b + "' is not an edge of G");
                if (face < 0) {
                    if (hits.size() > 1) throw SchemaError(w + ": parallel edges; give \"face\" as well");
                    face = hits.front();
                } else if (std::find(hits.begin(), hits.end(), face) == hits.end()) {
                    throw SchemaError(w + ": face does not carry this edge");
                }
            }
            if (face < 0) throw SchemaError(w + ": needs \"edge\" or \"face\"");
            if (nu[face]) throw SchemaError(w + ": face " + std::to_string(face) + " given twice");
            nu[face] = complex(need(jw[k], "nu", w), w + ".nu");
        }
        std::vector<Complex> out;
        for (int f = 0; f < q.num_faces(); ++f) {
            if (!nu[f]) throw SchemaError("graph.weights: face " + std::to_string(f) + " has no weight");
            out.push_back(*nu[f]);
        }
        doc.weights = std::move(out);
    }
    return doc;
}

/// Serializes graph + labeling. Edges are listed in edge order; faces as stored.
inline Json graph_to_json(const QuadGraph& q, const ZdLabeling& lab, const SpectralData* spectral = nullptr,
                          const WeightFunction* weights = nullptr) {
    Json j;
    j["format"] = kGraphFormat;
    j["d"] = lab.dim();
    Json verts = Json::array();
    for (const Vertex& v : q.vertices()) {
        Json jv;
        jv["id"] = v.id;
        jv["part"] = to_string(v.part);
        if (v.pos) jv["pos"] = Json::array({v.pos->x, v.pos->y});
        verts.push_back(jv);
    }
    j["vertices"] = verts;
    Json faces = Json::array();
    for (int f = 0; f < q.num_faces(); ++f) {
        Json jf = Json::array();
        for (int v : q.face(f)) jf.push_back(q.vertex(v).id);
        faces.push_back(jf);
    }
    j["faces"] = faces;
    Json labels = Json::array();
    for (int e = 0; e < q.num_edges(); ++e) {
        const Edge& ed = q.edge(e);
        const EdgeLabel& l = lab.label(e);
        labels.push_back(Json{{"edge", Json::array({q.vertex(ed.a).id, q.vertex(ed.b).id})},
                              {"axis", l.axis},
                              {"from", q.vertex(l.from).id}});
    }
    j["labels"] = labels;
    if (lab.base() >= 0) j["base"] = q.vertex(lab.base()).id;
    if (spectral) j["spectral"] = spectral_to_json(*spectral, true);
    if (weights) {
        Json jw = Json::array();
        for (int f = 0; f < q.num_faces(); ++f) {
            auto [x0, x1] = q.primal_diagonal(f);
            jw.push_back(Json{{"face", f},
                              {"edge", Json::array({q.vertex(x0).id, q.vertex(x1).id})},
                              {"nu", complex_json(weights->primal(f))}});
        }
        j["weights"] = jw;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Vertex fields

inline VertexField field_from_json(const Json& j, const QuadGraph& q) {
    using namespace io_detail;
    only_keys(j, {"format", "values"}, "field");
    check_format(j, kFieldFormat, "field");
    const Json& vals = need(j, "values", "field");
    if (!vals.is_object()) throw SchemaError("field.values: expected an object of id -> [re, im]");
    VertexField f(q.num_vertices());
    for (auto it = vals.begin(); it != vals.end(); ++it) {
        const auto v = q.find_vertex(it.key());
        if (!v) throw SchemaError("field.values: unknown vertex id '" + it.key() + "'");
        f.set(*v, complex(it.value(), "field.values." + it.key()));
    }
    return f;
}

/// Values keyed by vertex id in vertex order.
inline Json field_to_json(const QuadGraph& q, const VertexField& f) {
    Json vals = Json::object();
    for (int v : f.domain()) vals[q.vertex(v).id] = complex_json(f.get(v));
    return Json{{"format", kFieldFormat}, {"values", vals}};
}

}  // namespace quadgap
