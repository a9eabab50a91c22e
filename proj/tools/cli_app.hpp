#pragma once

// quadgap command-line front end. run_cli() is the whole program; main() only
// forwards to it so tests can drive commands in-process.

#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quadgap/quadgap.hpp"

namespace quadgap::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kIo = 2, kDegenerate = 3, kSingular = 4 };

struct Options {
    std::string graph, spectral, boundary, out;
    std::optional<double> tol;
    std::string suite = "all";
    std::string kind = "square";
    int size = 4;
    std::string cycle;
    std::string side = "inside";
    std::string what = "embedding";
    std::uint64_t seed = 1;
    int samples = 16;
};

struct Defaults {
    static constexpr double cr = 1e-11;
    static constexpr double sigma = 1e-12;
    static constexpr double tau = 1e-12;
    static constexpr double sign = 1e-12;
    static constexpr double identities = 1e-10;
};

/// alpha_j = exp(i pi (j-1) / d), C = 1: d points spread over a half-circle
/// in axis order.
inline SpectralData default_spectral(int d) {
    std::vector<Complex> alpha;
    for (int j = 0; j < d; ++j) alpha.push_back(std::polar(1.0, std::numbers::pi * j / d));
    return SpectralData(std::move(alpha), 1.0);
}

struct Workspace {
    GraphDocument doc;
    ZdLabeling labeling;
    std::optional<SpectralData> spectral;

    const QuadGraph& graph() const { return doc.graph; }

    const SpectralData& need_spectral() const {
        if (!spectral) throw SchemaError("no spectral data: pass --spectral or embed \"spectral\" in the graph document");
        return *spectral;
    }

    WeightFunction weights() const {
        if (doc.weights) return WeightFunction(*doc.weights);
        return weight_function(need_spectral(), graph(), labeling);
    }

    const char* weights_source() const { return doc.weights ? "document" : "spectral"; }

    std::vector<std::optional<Vec2>> positions() const {
        const auto pts = drawing_positions(graph());
        for (const auto& p : pts)
            if (p) return pts;
        if (spectral) return embedding_positions(*spectral, labeling);
        return pts;
    }
};

inline Workspace load_workspace(const Options& o) {
    if (o.graph.empty()) throw SchemaError("--graph is required");
    Workspace ws;
    ws.doc = graph_from_json(parse_json(read_file(o.graph), o.graph));
    ws.labeling = integrate_labeling(ws.doc.graph, ws.doc.d, ws.doc.labels, ws.doc.base);
    if (!o.spectral.empty())
        ws.spectral = spectral_from_json(parse_json(read_file(o.spectral), o.spectral), Check::Lenient);
    else if (ws.doc.spectral)
        ws.spectral = spectral_from_json(*ws.doc.spectral, Check::Lenient, true);
    if (ws.spectral && ws.spectral->dim() != ws.doc.d)
        throw SchemaError("spectral data has d = " + std::to_string(ws.spectral->dim()) + " but the labeling has d = " +
                          std::to_string(ws.doc.d));
    return ws;
}

inline void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.out.empty()) out << text;
    else write_file(o.out, text);
}

inline std::vector<int> parse_cycle(const QuadGraph& q, const std::string& spec) {
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string id;
    while (std::getline(ss, id, ',')) {
        if (id.empty()) continue;
        const auto v = q.find_vertex(id);
        if (!v) throw ArgumentError("--cycle: unknown vertex id '" + id + "'");
        out.push_back(*v);
    }
    return out;
}

inline Side parse_side(const std::string& s) {
    if (s == "inside") return Side::Inside;
    if (s == "outside") return Side::Outside;
    throw ArgumentError("--side must be 'inside' or 'outside'");
}

// ---------------------------------------------------------------------------
// verify suites

struct SuiteResult {
    bool pass = true;
    Json detail;
};

inline Json sign_json(int s) { return s == 0 ? Json("mixed") : Json(s); }

inline SuiteResult suite_cr(const Workspace& ws, double tol, std::uint64_t seed, int samples) {
    const QuadGraph& q = ws.graph();
    const SpectralData& s = ws.need_spectral();
    const WeightFunction w = ws.weights();
    Rng rng(seed);
    double worst = 0.0;
    int worst_face = -1;
    for (int k = 0; k < samples; ++k) {
        const Complex z = random_point(rng, s);
        const VertexField f = sample_field(q, [&](int v) { return psi_value(s, ws.labeling.coords(v), z); });
        for (int face = 0; face < q.num_faces(); ++face) {
            const double r = cr_relative_residual(q, w, f, face);
            if (r > worst || worst_face < 0) worst = r, worst_face = face;
        }
    }
    const std::vector<Complex> P = embed_quasicrystal(s, ws.labeling);
    VertexField pf(q.num_vertices());
    for (int v = 0; v < q.num_vertices(); ++v) pf.set(v, P[v]);
    double worst_p = 0.0;
    int worst_p_face = -1;
    for (int face = 0; face < q.num_faces(); ++face) {
        const double r = cr_relative_residual(q, w, pf, face);
        if (r > worst_p || worst_p_face < 0) worst_p = r, worst_p_face = face;
    }
    SuiteResult res;
    res.pass = worst <= tol && worst_p <= tol;
    res.detail = Json{{"pass", res.pass},
                      {"tolerance", tol},
                      {"weights_source", ws.weights_source()},
                      {"faces", q.num_faces()},
                      {"samples_per_face", samples},
                      {"wave_function", {{"max_relative_residual", worst}, {"worst_face", worst_face}}},
                      {"embedding", {{"max_relative_residual", worst_p}, {"worst_face", worst_p_face}}}};
    return res;
}

inline std::vector<Lattice> distinct_lattices(const ZdLabeling& lab) {
    std::set<Lattice> seen(lab.all_coords().begin(), lab.all_coords().end());
    return {seen.begin(), seen.end()};
}

inline SuiteResult suite_sigma(const Workspace& ws, double tol, std::uint64_t seed, int samples) {
    const SpectralData& s = ws.need_spectral();
    Rng rng(seed);
    double worst = 0.0;
    std::string worst_check = "none";
    int points = 0;
    for (const Lattice& n : distinct_lattices(ws.labeling))
        for (int k = 0; k < samples; ++k) {
            const SymmetryReport r = check_sigma_symmetry(s, n, random_point(rng, s), tol);
            ++points;
            for (const auto& [name, dev] : r.checks)
                if (dev > worst) worst = dev, worst_check = name;
        }
    SuiteResult res;
    res.pass = worst <= tol;
    res.detail = Json{{"pass", res.pass},
                      {"tolerance", tol},
                      {"points", points},
                      {"max_deviation", worst},
                      {"worst_check", worst_check}};
    return res;
}

inline SuiteResult suite_tau(const Workspace& ws, double tol, std::uint64_t seed, int samples) {
    const SpectralData& s = ws.need_spectral();
    SuiteResult res;
    try {
        s.require_tau();
    } catch (const PreconditionError& e) {
        res.pass = false;
        res.detail = Json{{"pass", false}, {"tolerance", tol}, {"precondition", e.what()}};
        return res;
    }
    Rng rng(seed);
    double worst = 0.0;
    int points = 0;
    for (const Lattice& n : distinct_lattices(ws.labeling))
        for (int k = 0; k < samples; ++k) {
            worst = std::max(worst, check_tau_symmetry(s, n, random_point(rng, s), tol).max_deviation);
            ++points;
        }
    const WeightFunction w = weight_function(s, ws.graph(), ws.labeling);
    double mx = 0.0, mi = 0.0;
    for (Complex v : w.primal_values()) {
        mx = std::max(mx, std::abs(v));
        mi = std::max(mi, std::abs(v.imag()));
    }
    const double im_ratio = mx > 0 ? mi / mx : 0.0;
    res.pass = worst <= tol && im_ratio <= tol;
    res.detail = Json{{"pass", res.pass},
                      {"tolerance", tol},
                      {"points", points},
                      {"max_relative_deviation", worst},
                      {"weights_max_imag_ratio", im_ratio}};
    return res;
}

inline Json violations_json(const QuadGraph& q, const ConsistencyVerdict& v) {
    Json arr = Json::array();
    for (const auto& viol : v.violations) {
        const AdjacencyCase& c = viol.adjacency;
        const Edge& e = q.edge(c.shared_edge);
        arr.push_back(Json{{"faces", {c.face1, c.face2}},
                           {"edge", {q.vertex(e.a).id, q.vertex(e.b).id}},
                           {"axes", {{"y", c.y}, {"x", c.x}, {"z", c.z}}},
                           {"expected", to_string(viol.expected)},
                           {"found", to_string(viol.found)}});
    }
    return arr;
}

inline SuiteResult suite_positivity(const Workspace& ws, double sign_tol) {
    const SpectralData& s = ws.need_spectral();
    SuiteResult res;
    OvalOrder o;
    try {
        o = oval_order(s);
    } catch (const Error& e) {
        if (!dynamic_cast<const PreconditionError*>(&e) && !dynamic_cast<const NotMOrderedError*>(&e)) throw;
        res.pass = false;
        res.detail = Json{{"pass", false}, {"precondition", e.what()}};
        return res;
    }
    const ConsistencyVerdict v = check_positive_consistency(ws.graph(), ws.labeling, o);
    const WeightFunction w = ws.weights();
    std::vector<int> signs;
    for (Complex nu : w.primal_values()) signs.push_back(weight_sign(nu, sign_tol));
    res.pass = v.consistent;
    res.detail = Json{{"pass", res.pass},
                      {"sign_tolerance", sign_tol},
                      {"oval_order", o.permutation},
                      {"pairs_checked", v.pairs_checked},
                      {"consistent", v.consistent},
                      {"sign", sign_json(uniform_sign(signs))},
                      {"violations", violations_json(ws.graph(), v)}};
    return res;
}

inline SuiteResult suite_theorem(const Workspace& ws, double tol) {
    const SpectralData& s = ws.need_spectral();
    SuiteResult res;
    TheoremReport r;
    try {
        r = check_theorem(s, ws.graph(), ws.labeling);
    } catch (const Error& e) {
        if (!dynamic_cast<const PreconditionError*>(&e) && !dynamic_cast<const NotMOrderedError*>(&e)) throw;
        res.pass = false;
        res.detail = Json{{"pass", false}, {"precondition", e.what()}};
        return res;
    }
    res.pass = r.agree && r.max_identity_error <= tol && r.proportions_hold;
    res.detail = Json{{"pass", res.pass},
                      {"identity_tolerance", tol},
                      {"consistent", r.combinatorial.consistent},
                      {"sign_uniform", r.sign_uniform},
                      {"sign", sign_json(r.direct_sign)},
                      {"agree", r.agree},
                      {"max_identity_error", r.max_identity_error},
                      {"sign_proportions_hold", r.proportions_hold},
                      {"violations", r.combinatorial.violations.size()}};
    return res;
}

// ---------------------------------------------------------------------------
// commands

inline int cmd_generate(const Options& o, std::ostream& out) {
    const Fixture fx = generate_fixture(parse_fixture_kind(o.kind), o.size);
    const SpectralData s = default_spectral(fx.labeling.dim());
    emit(o, out, dump(graph_to_json(fx.graph, fx.labeling, &s)));
    return kPass;
}

inline int cmd_weights(const Options& o, std::ostream& out) {
    const Workspace ws = load_workspace(o);
    const SpectralData& s = ws.need_spectral();
    std::vector<FaceCoefficients> fcs;
    for (int f = 0; f < ws.graph().num_faces(); ++f) fcs.push_back(face_coefficients(s, ws.graph(), ws.labeling, f));
    const WeightFunction w = weight_function(s, ws.graph(), ws.labeling);
    emit(o, out, weights_csv(fcs, w));
    return kPass;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
    static const std::vector<std::string> kSuites = {"cr", "sigma", "tau", "positivity", "theorem"};
    if (o.suite != "all" && std::find(kSuites.begin(), kSuites.end(), o.suite) == kSuites.end())
        throw ArgumentError("--suite must be one of cr, sigma, tau, positivity, theorem, all");
    const Workspace ws = load_workspace(o);
    auto tol_or = [&](double d) { return o.tol.value_or(d); };

    Json suites = Json::object();
    bool pass = true;
    for (const std::string& name : kSuites) {
        if (o.suite != "all" && o.suite != name) continue;
        SuiteResult r;
        if (name == "cr") r = suite_cr(ws, tol_or(Defaults::cr), o.seed, o.samples);
        else if (name == "sigma") r = suite_sigma(ws, tol_or(Defaults::sigma), o.seed, o.samples);
        else if (name == "tau") r = suite_tau(ws, tol_or(Defaults::tau), o.seed, o.samples);
        else if (name == "positivity") r = suite_positivity(ws, tol_or(Defaults::sign));
        else r = suite_theorem(ws, tol_or(Defaults::identities));
        pass = pass && r.pass;
        suites[name] = r.detail;
    }
    Json report = Json{{"command", "verify"},
                       {"suite", o.suite},
                       {"pass", pass},
                       {"seed", o.seed},
                       {"tolerances",
                        {{"cr", tol_or(Defaults::cr)},
                         {"sigma", tol_or(Defaults::sigma)},
                         {"tau", tol_or(Defaults::tau)},
                         {"sign", tol_or(Defaults::sign)},
                         {"identities", tol_or(Defaults::identities)}}},
                       {"suites", suites}};
    emit(o, out, dump(report));
    return pass ? kPass : kFail;
}

struct SolveOutcome {
    SolveResult result;
    DirichletProblem problem;
};

inline SolveOutcome run_solve(const Workspace& ws, const Options& o) {
    if (o.cycle.empty()) throw ArgumentError("--cycle is required");
    if (o.boundary.empty()) throw SchemaError("--boundary is required");
    const QuadGraph& q = ws.graph();
    SolveOutcome so;
    so.problem = region_from_cycle(q, parse_cycle(q, o.cycle), parse_side(o.side));
    const VertexField data = field_from_json(parse_json(read_file(o.boundary), o.boundary), q);
    for (int v : so.problem.boundary)
        if (!data.has(v)) throw SchemaError("boundary data misses cycle vertex '" + q.vertex(v).id + "'");
    set_boundary_data(so.problem, data);
    so.result = solve(q, ws.weights(), so.problem);
    return so;
}

inline Json singular_json(const QuadGraph& q, const SolveOutcome& so) {
    Json nv = Json::object();
    for (std::size_t i = 0; i < so.result.null_vector.size(); ++i)
        nv[q.vertex(so.problem.interior[i]).id] = complex_json(so.result.null_vector[i]);
    return Json{{"status", "singular"},
                {"unknowns", so.result.unknowns},
                {"rank", so.result.rank},
                {"null_vector", nv}};
}

inline int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    const Workspace ws = load_workspace(o);
    const SolveOutcome so = run_solve(ws, o);
    if (so.result.status == SolveStatus::Singular) {
        err << "error: Laplacian on the region is singular (rank " << so.result.rank << " of " << so.result.unknowns
            << ")\n";
        emit(o, out, dump(singular_json(ws.graph(), so)));
        return kSingular;
    }
    emit(o, out, dump(field_to_json(ws.graph(), so.result.solution)));
    return kPass;
}

inline int cmd_render(const Options& o, std::ostream& out, std::ostream& err) {
    const Workspace ws = load_workspace(o);
    const QuadGraph& q = ws.graph();
    std::string svg;
    if (o.what == "embedding") {
        svg = render_embedding(q, embedding_positions(ws.need_spectral(), ws.labeling));
    } else if (o.what == "weights") {
        svg = render_weights(q, ws.weights(), ws.positions());
    } else if (o.what == "violations") {
        const ConsistencyVerdict v = check_positive_consistency(q, ws.labeling, oval_order(ws.need_spectral()));
        svg = render_violations(q, v, ws.positions());
    } else if (o.what == "solution") {
        VertexField f;
        if (!o.cycle.empty()) {
            const SolveOutcome so = run_solve(ws, o);
            if (so.result.status == SolveStatus::Singular) {
                err << "error: Laplacian on the region is singular (rank " << so.result.rank << " of "
                    << so.result.unknowns << ")\n";
                return kSingular;
            }
            f = so.result.solution;
        } else {
            if (o.boundary.empty()) throw SchemaError("--what solution needs --boundary (and optionally --cycle)");
            f = field_from_json(parse_json(read_file(o.boundary), o.boundary), q);
        }
        svg = render_solution(q, f, ws.positions());
    } else {
        throw ArgumentError("--what must be one of embedding, weights, violations, solution");
    }
    emit(o, out, svg);
    return kPass;
}

// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"quadgap: quad-graph weights, discrete operators and positivity checks"};
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("generate", "write a fixture graph document with default spectral data");
    gen->add_option("--kind", o.kind, "square | staircase | flipped | flipped-d3 | strip")->capture_default_str();
    gen->add_option("--size", o.size, "fixture size")->capture_default_str();
    gen->add_option("--out", o.out, "output path (default stdout)");

    auto add_common = [&](CLI::App* c) {
        c->add_option("--graph", o.graph, "graph document")->required();
        c->add_option("--spectral", o.spectral, "spectral document (overrides the embedded one)");
        c->add_option("--out", o.out, "output path (default stdout)");
    };
    auto* wts = app.add_subcommand("weights", "export face coefficients and weights as CSV");
    add_common(wts);

    auto* ver = app.add_subcommand("verify", "run verification suites and print a JSON verdict");
    add_common(ver);
    ver->add_option("--suite", o.suite, "cr | sigma | tau | positivity | theorem | all")->capture_default_str();
    ver->add_option("--tol", o.tol, "override every suite tolerance");
    ver->add_option("--seed", o.seed, "seed for randomized sample points")->capture_default_str();
    ver->add_option("--samples", o.samples, "random points per face or lattice point")->capture_default_str();

    auto* sol = app.add_subcommand("solve", "solve the Dirichlet problem inside or outside a cycle of G");
    add_common(sol);
    sol->add_option("--boundary", o.boundary, "field document with boundary values")->required();
    sol->add_option("--cycle", o.cycle, "comma-separated primal vertex ids")->required();
    sol->add_option("--side", o.side, "inside | outside")->capture_default_str();

    auto* ren = app.add_subcommand("render", "draw the graph as SVG");
    add_common(ren);
    ren->add_option("--what", o.what, "embedding | weights | violations | solution")->capture_default_str();
    ren->add_option("--boundary", o.boundary, "field document (boundary data or a solution)");
    ren->add_option("--cycle", o.cycle, "solve on this cycle before drawing");
    ren->add_option("--side", o.side, "inside | outside")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kPass : kIo;
    }

    try {
        if (gen->parsed()) return cmd_generate(o, out);
        if (wts->parsed()) return cmd_weights(o, out);
        if (ver->parsed()) return cmd_verify(o, out);
        if (sol->parsed()) return cmd_solve(o, out, err);
        if (ren->parsed()) return cmd_render(o, out, err);
    } catch (const DegenerateFaceError& e) {
        err << "error: " << e.what() << "\n";
        return kDegenerate;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const PreconditionError& e) {
        err << "error: precondition failed: " << e.what() << "\n";
        return kFail;
    } catch (const NotMOrderedError& e) {
        err << "error: precondition failed: " << e.what() << "\n";
        return kFail;
    } catch (const Error& e) {
        // structural, incoherent, degenerate, pole and domain errors
        err << "error: " << e.what() << "\n";
        return kDegenerate;
    }
    return kIo;
}

}  // namespace quadgap::cli
