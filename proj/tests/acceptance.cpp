// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "cli_app.hpp"
#include "oracles.hpp"
#include "quadgap/quadgap.hpp"

using namespace quadgap;
namespace fs = std::filesystem;

namespace {

namespace tol {
constexpr double kCr = 1e-11;
constexpr double kSigmaCoeff = 1e-12;
constexpr double kFourPoint = 1e-11;
constexpr double kReality = 1e-12;
constexpr double kLeading = 1e-12;
constexpr double kIdentities = 1e-10;
constexpr double kZeroSolve = 1e-10;
constexpr double kPsiSolve = 1e-9;
constexpr double kOracleSolve = 1e-12;
constexpr double kEmbedding = 1e-12;
}  // namespace tol

struct Verdict {
    bool pass = true;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

SpectralData ordered(int d) { return cli::default_spectral(d); }

/// tau-symmetric data with arbitrary arguments (not necessarily M-ordered).
SpectralData random_tau_data(Rng& rng, int d) {
    const double C = rng.uniform(0.5, 2.0);
    for (;;) {
        std::vector<Complex> a;
        for (int j = 0; j < d; ++j) a.push_back(std::polar(C, rng.uniform(0.0, 2 * std::numbers::pi)));
        bool ok = true;
        for (int j = 0; j < d && ok; ++j)
            for (int k = j + 1; k < d && ok; ++k) ok = std::abs(std::imag(a[j] * std::conj(a[k]))) > 1e-2 * C * C;
        if (ok) return SpectralData(a, C);
    }
}

std::pair<int, int> random_axes(Rng& rng, int d) {
    const int x = rng.integer(1, d);
    int y = rng.integer(1, d - 1);
    if (y >= x) ++y;
    return {x, y};
}

/// One face with the given axes and side directions.
Fixture single_face(int d, int x, int y, int sx, int sy) {
    StripSpec sp;
    sp.d = d;
    sp.columns = {{x, sx}};
    sp.rows = {{y, sy}};
    return make_strip(sp);
}

/// Diamond |i - c| + |j - c| = r in a strip fixture, a simple cycle of G.
std::vector<int> diamond(const QuadGraph& q, int c, int r) {
    std::vector<int> out;
    int i = c - r, j = c;
    const int steps[4][2] = {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
    for (const auto& st : steps)
        for (int k = 0; k < r; ++k) {
            out.push_back(q.vertex_index(grid_id(i, j)));
            i += st[0];
            j += st[1];
        }
    return out;
}

std::vector<int> outer_cycle(const QuadGraph& q, int cols, int rows) {
    std::vector<int> out;
    for (int i = 0; i < cols; ++i) out.push_back(q.vertex_index(grid_id(i, 0)));
    for (int j = 0; j < rows; ++j) out.push_back(q.vertex_index(grid_id(cols, j)));
    for (int i = cols; i > 0; --i) out.push_back(q.vertex_index(grid_id(i, rows)));
    for (int j = rows; j > 0; --j) out.push_back(q.vertex_index(grid_id(0, j)));
    return out;
}

// ---------------------------------------------------------------------------

Verdict criterion1() {
    Rng rng(101);
    double worst = 0.0;
    int faces = 0;
    for (auto kind : {FixtureKind::SquareD2, FixtureKind::StaircaseD3, FixtureKind::StripCustom}) {
        const Fixture fx = generate_fixture(kind, 6);
        const int d = fx.labeling.dim();
        for (const SpectralData& s : {ordered(d), random_sigma_data(rng, d)}) {
            const WeightFunction w = weight_function(s, fx.graph, fx.labeling);
            for (int f = 0; f < fx.graph.num_faces(); ++f) {
                const Face& c = fx.graph.face(f);
                ++faces;
                for (int t = 0; t < 100; ++t) {
                    const Complex z = random_point(rng, s);
                    VertexField v(fx.graph.num_vertices());
                    for (int x : c) v.set(x, psi_value(s, fx.labeling.coords(x), z));
                    worst = std::max(worst, cr_relative_residual(fx.graph, w, v, f));
                }
            }
        }
    }
    return {worst <= tol::kCr, std::to_string(faces) + " faces x 100 z, max residual " + sci(worst) + " (tol " +
                                   sci(tol::kCr) + ")"};
}

Verdict criterion2() {
    Rng rng(202);
    int exact_fail = 0;
    double worst_coeff = 0.0, worst_rel = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const int d = rng.integer(2, 6);
        const SpectralData s = random_sigma_data(rng, d);
        const Lattice n = random_lattice(rng, d, 5);
        if (psi_value(s, n, 0.0) != Complex(parity_sign(lattice_norm(n)))) ++exact_fail;
        const auto [x, y] = random_axes(rng, d);
        const Fixture fx = single_face(d, x, y, rng.integer(0, 1) ? 1 : -1, rng.integer(0, 1) ? 1 : -1);
        const FaceCoefficients fc = face_coefficients(s, fx.graph, fx.labeling, 0);
        worst_coeff = std::max({worst_coeff, std::abs(fc.a3 + 1.0), std::abs(fc.a1 + fc.a2)});
        for (int k = 0; k < 3; ++k)
            worst_rel = std::max(worst_rel, four_point_residual(s, fx.labeling, fc, random_point(rng, s)));
    }
    const bool pass = exact_fail == 0 && worst_coeff <= tol::kSigmaCoeff && worst_rel <= tol::kFourPoint;
    return {pass, "1000 data sets: Psi(n;0) exact misses " + std::to_string(exact_fail) + ", max |a3+1|,|a1+a2| " +
                      sci(worst_coeff) + " (tol " + sci(tol::kSigmaCoeff) + "), four-point residual " + sci(worst_rel) +
                      " (tol " + sci(tol::kFourPoint) + ")"};
}

Verdict criterion3() {
    Rng rng(303);
    double worst_im = 0.0, worst_tau = 0.0;
    const Fixture fx = generate_fixture(FixtureKind::StripCustom, 4);
    for (int t = 0; t < 1000; ++t) {
        const int d = 5;
        const SpectralData s = random_tau_data(rng, d);
        if (t % 10 == 0) {
            const WeightFunction w = weight_function(s, fx.graph, fx.labeling);
            double mx = 0.0, mi = 0.0;
            for (Complex v : w.primal_values()) {
                mx = std::max(mx, std::abs(v));
                mi = std::max(mi, std::abs(v.imag()));
            }
            worst_im = std::max(worst_im, mi / mx);
        }
        const Lattice n = random_lattice(rng, d, 4);
        worst_tau = std::max(worst_tau, check_tau_symmetry(s, n, random_point(rng, s)).max_deviation);
    }
    const bool pass = worst_im <= tol::kReality && worst_tau <= tol::kReality;
    return {pass, "max |Im nu|/max|nu| " + sci(worst_im) + ", tau identity at 1000 (n,z) " + sci(worst_tau) +
                      " (tol " + sci(tol::kReality) + ")"};
}

Verdict criterion4() {
    Rng rng(404);
    int sign_fail = 0, products = 0;
    double worst_parity = 0.0;
    for (int t = 0; t < 10000; ++t) {
        const int d = rng.integer(2, 6);
        const SpectralData s = random_m_ordered(rng, d, rng.uniform(0.3, 3.0), true);
        const Lattice n = random_lattice(rng, d, 4);
        const bool even = lattice_norm(n) % 2 == 0;
        for (int j = 1; j <= d; ++j) {
            const Complex r = leading_coeff(s, n, j), rp = leading_coeff_dual(s, n, j);
            if (n[j - 1] != 0) {
                ++products;
                const Complex p = r * rp;
                if (!(p.real() > 0.0 && std::abs(p.imag()) <= tol::kLeading * std::abs(p))) ++sign_fail;
            }
            for (Complex v : {r, rp}) worst_parity = std::max(worst_parity, std::abs(even ? v.imag() : v.real()) / std::abs(v));
        }
    }
    const bool pass = sign_fail == 0 && worst_parity <= tol::kLeading;
    return {pass, std::to_string(products) + " products r_j r+_j, " + std::to_string(sign_fail) +
                      " not positive; parity deviation " + sci(worst_parity) + " (tol " + sci(tol::kLeading) + ")"};
}

Verdict criterion5() {
    Rng rng(505);
    double worst = 0.0;
    int proportion_fail = 0;
    for (int t = 0; t < 1000; ++t) {
        const int d = rng.integer(2, 6);
        const SpectralData s = random_m_ordered(rng, d, rng.uniform(0.3, 3.0), true);
        const auto [x, y] = random_axes(rng, d);
        const FaceIdentityReport r = check_face_identities(s, random_lattice(rng, d, 3), x, y);
        worst = std::max(worst, r.max_identity_error);
        proportion_fail += !r.proportions_hold;
    }
    const bool pass = worst <= tol::kIdentities && proportion_fail == 0;
    return {pass, "1000 faces: max identity error " + sci(worst) + " (tol " + sci(tol::kIdentities) + "), " +
                      std::to_string(proportion_fail) + " sign-proportion failures"};
}

Verdict criterion6() {
    std::ostringstream detail;
    bool pass = true;
    struct Expect {
        FixtureKind kind;
        bool consistent;
        const char* name;
    };
    for (const Expect& e : {Expect{FixtureKind::SquareD2, true, "square"}, Expect{FixtureKind::StaircaseD3, true, "staircase"},
                            Expect{FixtureKind::FlippedStaircaseD3, false, "broken staircase"},
                            Expect{FixtureKind::FlippedStaircaseD5, true, "d=5 repair"}}) {
        const Fixture fx = generate_fixture(e.kind, 6);
        const TheoremReport r = check_theorem(ordered(fx.labeling.dim()), fx.graph, fx.labeling);
        const bool ok = r.agree && r.combinatorial.consistent == e.consistent;
        pass = pass && ok;
        detail << e.name << " " << (r.combinatorial.consistent ? "consistent" : "inconsistent") << "/"
               << (r.sign_uniform ? "one-sign" : "mixed") << (ok ? "" : " MISMATCH") << ", ";
    }
    Rng rng(606);
    int cases = 0, disagreements = 0, consistent = 0;
    std::vector<std::array<int, 4>> layouts;
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b)
            for (int c = 1; c <= 4; ++c)
                for (int e = 1; e <= 4; ++e)
                    if (a != c && a != e && b != c && b != e) layouts.push_back({a, b, c, e});
    for (int t = 0; t < 20; ++t) {
        const SpectralData s = random_m_ordered(rng, 4, rng.uniform(0.5, 2.0), true, 0.05);
        for (const auto& ax : layouts)
            for (int orient = 0; orient < 16; ++orient) {
                StripSpec sp;
                sp.d = 4;
                sp.columns = {{ax[0], (orient & 1) ? -1 : 1}, {ax[1], (orient & 2) ? -1 : 1}};
                sp.rows = {{ax[2], (orient & 4) ? -1 : 1}, {ax[3], (orient & 8) ? -1 : 1}};
                const Fixture fx = make_strip(sp);
                const TheoremReport r = check_theorem(s, fx.graph, fx.labeling);
                ++cases;
                consistent += r.combinatorial.consistent;
                disagreements += !r.agree;
            }
    }
    pass = pass && disagreements == 0;
    detail << "patch enumeration: 20 data sets x " << layouts.size() << " axis layouts x 16 orientations = " << cases
           << " cases (" << consistent << " consistent), " << disagreements << " disagreements";
    return {pass, detail.str()};
}

Verdict criterion7() {
    Rng rng(707);
    double zero = 0.0, psi_err = 0.0, oracle_err = 0.0;
    int mp_fail = 0, mp_runs = 0;
    // zero boundary and maximum principle on one-sign weights
    const Fixture st = generate_fixture(FixtureKind::StaircaseD3, 8);
    for (int t = 0; t < 10; ++t) {
        const WeightFunction w = weight_function(random_m_ordered(rng, 3, 1.0, true), st.graph, st.labeling);
        DirichletProblem p = region_from_cycle(st.graph, diamond(st.graph, 4, 4), Side::Inside);
        set_boundary_data(p, sample_field(st.graph, [](int) { return Complex{}; }));
        const SolveResult z = solve(st.graph, w, p);
        for (int v : p.interior) zero = std::max(zero, std::abs(z.solution.get(v)));
        set_boundary_data(p, sample_field(st.graph, [&](int) { return Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)); }));
        const SolveResult r = solve(st.graph, w, p);
        const MaxPrincipleReport mp = check_max_principle(st.graph, w, p, r.solution);
        ++mp_runs;
        mp_fail += !(mp.one_sign && mp.pass);
    }
    // Psi boundary data
    for (auto kind : {FixtureKind::SquareD2, FixtureKind::StaircaseD3, FixtureKind::FlippedStaircaseD5}) {
        const Fixture fx = generate_fixture(kind, 8);
        for (int t = 0; t < 5; ++t) {
            const SpectralData s = random_sigma_data(rng, fx.labeling.dim());
            const WeightFunction w = weight_function(s, fx.graph, fx.labeling);
            const Complex z = random_point(rng, s);
            const VertexField psi = sample_field(fx.graph, [&](int v) { return psi_value(s, fx.labeling.coords(v), z); });
            DirichletProblem p = region_from_cycle(fx.graph, diamond(fx.graph, 4, 4), Side::Inside);
            set_boundary_data(p, psi);
            const SolveResult r = solve(fx.graph, w, p);
            if (r.status != SolveStatus::Solved) {
                psi_err = INFINITY;
                continue;
            }
            for (int v : p.interior) psi_err = std::max(psi_err, rel_diff(r.solution.get(v), psi.get(v)));
        }
    }
    // sparse vs dense vs elimination oracle on small patches
    for (auto [cols, rows] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{4, 3}}) {
        const QuadGraph q = double_from_planar(grid_planar_graph(cols, rows));
        DirichletProblem p = region_from_cycle(q, outer_cycle(q, cols, rows), Side::Inside);
        for (int t = 0; t < 10; ++t) {
            std::vector<Complex> nu;
            for (int f = 0; f < q.num_faces(); ++f) nu.push_back(rng.uniform(0.2, 3.0));
            const WeightFunction w(nu);
            set_boundary_data(p, sample_field(q, [&](int) { return Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)); }));
            SolveOptions dense_opt;
            dense_opt.method = SolveMethod::Dense;
            const SolveResult sparse = solve(q, w, p), dense = solve(q, w, p, dense_opt);
            const std::size_t m = p.interior.size();
            std::vector<int> row(q.num_vertices(), -1);
            for (std::size_t i = 0; i < m; ++i) row[p.interior[i]] = static_cast<int>(i);
            std::vector<std::vector<oracle::C>> a(m, std::vector<oracle::C>(m, 0.0));
            std::vector<oracle::C> b(m, 0.0);
            for (std::size_t i = 0; i < m; ++i)
                for (int f : q.vertex_faces(p.interior[i])) {
                    const auto [u, v] = q.primal_diagonal(f);
                    if (u != p.interior[i] && v != p.interior[i]) continue;
                    const int x = u == p.interior[i] ? v : u;
                    a[i][i] -= nu[f];
                    if (row[x] >= 0) a[i][row[x]] += nu[f];
                    else b[i] -= nu[f] * p.data.get(x);
                }
            const auto ref = oracle::gauss_solve(a, b);
            for (std::size_t i = 0; i < m; ++i) {
                const int v = p.interior[i];
                oracle_err = std::max({oracle_err, rel_diff(sparse.solution.get(v), dense.solution.get(v)),
                                       rel_diff(sparse.solution.get(v), ref[i])});
            }
        }
    }
    const bool pass = zero <= tol::kZeroSolve && psi_err <= tol::kPsiSolve && mp_fail == 0 && oracle_err <= tol::kOracleSolve;
    return {pass, "zero boundary " + sci(zero) + ", Psi boundary " + sci(psi_err) + ", max principle " +
                      std::to_string(mp_runs - mp_fail) + "/" + std::to_string(mp_runs) + ", sparse/dense/oracle " +
                      sci(oracle_err)};
}

Verdict criterion8() {
    Rng rng(808);
    double worst_cr = 0.0, worst_ratio = 0.0;
    int faces = 0;
    for (auto kind : {FixtureKind::SquareD2, FixtureKind::StaircaseD3, FixtureKind::FlippedStaircaseD3,
                      FixtureKind::FlippedStaircaseD5, FixtureKind::StripCustom}) {
        const Fixture fx = generate_fixture(kind, 6);
        const int d = fx.labeling.dim();
        std::vector<SpectralData> data = {ordered(d)};
        for (int t = 0; t < 5; ++t) data.push_back(random_sigma_data(rng, d));
        for (const SpectralData& s : data) {
            const WeightFunction w = weight_function(s, fx.graph, fx.labeling);
            const std::vector<Complex> P = embed_quasicrystal(s, fx.labeling);
            VertexField pf(fx.graph.num_vertices());
            for (int v = 0; v < fx.graph.num_vertices(); ++v) pf.set(v, P[v]);
            for (int f = 0; f < fx.graph.num_faces(); ++f) {
                ++faces;
                worst_cr = std::max(worst_cr, cr_relative_residual(fx.graph, w, pf, f));
                worst_ratio = std::max(worst_ratio, rel_diff(diagonal_ratio(fx.graph, P, f), kI * w.primal(f)));
            }
        }
    }
    const bool pass = worst_cr <= tol::kEmbedding && worst_ratio <= tol::kEmbedding;
    return {pass, std::to_string(faces) + " faces: CR residual of P " + sci(worst_cr) + ", |diag ratio - i nu| " +
                      sci(worst_ratio) + " (tol " + sci(tol::kEmbedding) + ")"};
}

struct Proc {
    int code = -1;
    std::string out;
};

Proc shell(const std::string& cmd) {
    Proc p;
    FILE* f = ::popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!f) return p;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) p.out.append(buf, n);
    const int raw = ::pclose(f);
    p.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return p;
}

Verdict criterion9() {
    const fs::path dir = fs::temp_directory_path() / ("quadgap_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string bin = QUADGAP_CLI_PATH;
    auto file = [&](const std::string& name) { return (dir / name).string(); };
    auto put = [&](const std::string& name, const std::string& text) {
        std::ofstream(file(name)) << text;
        return file(name);
    };
    std::ostringstream detail;
    bool pass = true;

    int identical = 0, runs = 0;
    for (const char* kind : {"square", "staircase", "flipped", "flipped-d3", "strip"}) {
        const std::string g = file(std::string(kind) + ".json");
        shell(bin + " generate --kind " + kind + " --size 4 --out " + g);
        const Proc a = shell(bin + " verify --suite all --graph " + g);
        const Proc b = shell(bin + " verify --suite all --graph " + g);
        ++runs;
        identical += !a.out.empty() && a.out == b.out && a.code == b.code;
    }
    pass = pass && identical == runs;
    detail << identical << "/" << runs << " verify --suite all pairs byte-identical; exit codes";

    const Fixture sq = generate_fixture(FixtureKind::SquareD2, 4);
    std::vector<Complex> nu(sq.graph.num_faces(), 1.0);
    const int center = sq.graph.vertex_index("v2_2");
    int k = 0;
    for (int f = 0; f < sq.graph.num_faces(); ++f) {
        const auto [u, v] = sq.graph.primal_diagonal(f);
        if (u == center || v == center) nu[f] = k++ < 2 ? 1.0 : -1.0;
    }
    const WeightFunction mixed(nu);
    const SpectralData s2 = ordered(2);
    const std::string singular = put("singular.json", dump(graph_to_json(sq.graph, sq.labeling, &s2, &mixed)));
    const std::string ones =
        put("ones.json", dump(field_to_json(sq.graph, sample_field(sq.graph, [](int) { return Complex(1.0); }))));
    const std::string degenerate =
        put("degenerate.json", R"({"format": "quadgap.spectral/1", "d": 2, "alpha": [[1, 0], [1, 0]]})");
    const std::string cycle = "v0_2,v1_1,v2_0,v3_1,v4_2,v3_3,v2_4,v1_3";

    struct Case {
        const char* name;
        std::string cmd;
        int expected;
    };
    const std::vector<Case> cases = {
        {"pass", bin + " verify --graph " + file("staircase.json"), 0},
        {"fail", bin + " verify --suite positivity --graph " + file("flipped-d3.json"), 1},
        {"io", bin + " verify --graph " + file("missing.json"), 2},
        {"degenerate", bin + " weights --graph " + file("square.json") + " --spectral " + degenerate, 3},
        {"singular", bin + " solve --graph " + singular + " --boundary " + ones + " --cycle " + cycle, 4},
    };
    for (const Case& c : cases) {
        const int code = shell(c.cmd).code;
        const bool ok = code == c.expected;
        pass = pass && ok;
        detail << " " << c.name << "=" << code << (ok ? "" : "(expected " + std::to_string(c.expected) + ")");
    }
    fs::remove_all(dir);
    return {pass, detail.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"wave-function CR residual on fixtures", criterion1},
        {"sigma consequences: Psi(n;0), a3 = -1, a1 + a2 = 0", criterion2},
        {"tau reality of nu and of Psi", criterion3},
        {"leading-coefficient sign and parity", criterion4},
        {"residue identities and sign proportions", criterion5},
        {"positive consistency <=> one-sign weights", criterion6},
        {"Dirichlet solves and maximum principle", criterion7},
        {"quasicrystalline embedding is holomorphic", criterion8},
        {"CLI determinism and exit codes", criterion9},
    };
    int failures = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !v.pass;
        std::printf("[PRIMARY] criterion %zu %-52s %s  %s [%.2fs]\n", i + 1, criteria[i].first.c_str(),
                    v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
        std::fflush(stdout);
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d of %zu criteria passed in %.2fs\n", static_cast<int>(criteria.size()) - failures, criteria.size(),
                total);
    return failures == 0 ? 0 : 1;
}
