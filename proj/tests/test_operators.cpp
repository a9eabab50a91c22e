#include <gtest/gtest.h>

#include "oracles.hpp"
#include "quadgap/fixtures.hpp"
#include "quadgap/operators.hpp"
#include "quadgap/random.hpp"

using namespace quadgap;

namespace {

struct Bench {
    Fixture fx;
    SpectralData s;
    WeightFunction w;
};

Bench make(FixtureKind kind, int size, Rng& rng) {
    Fixture fx = generate_fixture(kind, size);
    SpectralData s = random_sigma_data(rng, fx.labeling.dim());
    WeightFunction w = weight_function(s, fx.graph, fx.labeling);
    return {std::move(fx), std::move(s), std::move(w)};
}

VertexField psi_field(const Bench& st, Complex z) {
    return sample_field(st.fx.graph, [&](int v) { return oracle::psi(st.s.alpha(), st.fx.labeling.coords(v), z); });
}

std::vector<int> interior_of(const QuadGraph& q, Part p) {
    std::vector<int> out;
    for (int v : q.vertices_of(p))
        if (q.is_interior(v)) out.push_back(v);
    return out;
}

}  // namespace

TEST(Laplacian, ConstantFieldGivesExactZero) {
    Rng rng(1);
    const Bench st = make(FixtureKind::StaircaseD3, 4, rng);
    const VertexField f = sample_field(st.fx.graph, [](int) { return Complex(2.5, -1.0); });
    for (int v = 0; v < st.fx.graph.num_vertices(); ++v) {
        if (st.fx.graph.is_interior(v)) {
            EXPECT_EQ(apply_laplacian(st.fx.graph, st.w, f, v), Complex{});
        }
    }
}

TEST(Laplacian, PsiIsHarmonicOnBothParts) {
    Rng rng(2);
    for (auto kind : {FixtureKind::SquareD2, FixtureKind::StaircaseD3, FixtureKind::FlippedStaircaseD5}) {
        const Bench st = make(kind, 4, rng);
        for (int t = 0; t < 20; ++t) {
            const VertexField f = psi_field(st, random_point(rng, st.s));
            for (Part p : {Part::Primal, Part::Dual}) {
                const auto inner = interior_of(st.fx.graph, p);
                ASSERT_FALSE(inner.empty());
                for (int v : inner)
                    EXPECT_LE(std::abs(apply_laplacian(st.fx.graph, st.w, f, v)),
                              1e-11 * laplacian_scale(st.fx.graph, st.w, f, v));
            }
        }
    }
}

TEST(Laplacian, EmbeddingIsHarmonic) {
    Rng rng(3);
    const Bench st = make(FixtureKind::StripCustom, 4, rng);
    const auto P = embed_quasicrystal(st.s, st.fx.labeling);
    const VertexField f = sample_field(st.fx.graph, [&](int v) { return P[v]; });
    for (int v = 0; v < st.fx.graph.num_vertices(); ++v) {
        if (st.fx.graph.is_interior(v)) {
            EXPECT_LE(std::abs(apply_laplacian(st.fx.graph, st.w, f, v)), 1e-11 * laplacian_scale(st.fx.graph, st.w, f, v));
        }
    }
}

TEST(Laplacian, Linear) {
    Rng rng(4);
    const Bench st = make(FixtureKind::SquareD2, 4, rng);
    const VertexField f = sample_field(st.fx.graph, [&](int) { return Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)); });
    const VertexField g = sample_field(st.fx.graph, [&](int) { return Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)); });
    const Complex a(0.7, -0.2), b(-1.3, 0.4);
    const VertexField h = sample_field(st.fx.graph, [&](int v) { return a * f.get(v) + b * g.get(v); });
    for (int v = 0; v < st.fx.graph.num_vertices(); ++v) {
        if (!st.fx.graph.is_interior(v)) continue;
        const Complex lhs = apply_laplacian(st.fx.graph, st.w, h, v);
        const Complex rhs = a * apply_laplacian(st.fx.graph, st.w, f, v) + b * apply_laplacian(st.fx.graph, st.w, g, v);
        EXPECT_LE(std::abs(lhs - rhs), 1e-13 * std::max(1.0, laplacian_scale(st.fx.graph, st.w, h, v)));
    }
}

TEST(Laplacian, DomainErrors) {
    Rng rng(5);
    const Bench st = make(FixtureKind::SquareD2, 3, rng);
    const QuadGraph& q = st.fx.graph;
    VertexField f = sample_field(q, [](int) { return Complex(1.0); });
    EXPECT_THROW(apply_laplacian(q, st.w, f, q.vertex_index("v0_0")), DomainError);
    const int center = q.vertex_index("v1_1");
    ASSERT_TRUE(q.is_interior(center));
    f.erase(q.vertex_index("v2_2"));
    EXPECT_THROW(apply_laplacian(q, st.w, f, center), DomainError);
}

TEST(CauchyRiemann, PsiSatisfiesOnEveryFace) {
    Rng rng(6);
    for (auto kind : {FixtureKind::SquareD2, FixtureKind::StaircaseD3, FixtureKind::FlippedStaircaseD3,
                      FixtureKind::FlippedStaircaseD5, FixtureKind::StripCustom}) {
        const Bench st = make(kind, 3, rng);
        for (int t = 0; t < 20; ++t) {
            const VertexField f = psi_field(st, random_point(rng, st.s));
            for (int face = 0; face < st.fx.graph.num_faces(); ++face)
                EXPECT_LE(cr_relative_residual(st.fx.graph, st.w, f, face), 1e-11);
        }
    }
}

TEST(CauchyRiemann, ConstantIsExactAndNoiseIsNot) {
    Rng rng(7);
    const Bench st = make(FixtureKind::SquareD2, 3, rng);
    const VertexField c = sample_field(st.fx.graph, [](int) { return Complex(-3.0, 2.0); });
    const VertexField n = sample_field(st.fx.graph, [&](int) { return Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)); });
    for (int face = 0; face < st.fx.graph.num_faces(); ++face) {
        EXPECT_EQ(cr_residual(st.fx.graph, st.w, c, face), Complex{});
        EXPECT_GT(std::abs(cr_residual(st.fx.graph, st.w, n, face)), 1e-6);
    }
}

TEST(CauchyRiemann, MissingValueIsDomainError) {
    Rng rng(8);
    const Bench st = make(FixtureKind::SquareD2, 2, rng);
    VertexField f = sample_field(st.fx.graph, [](int) { return Complex(1.0); });
    f.erase(st.fx.graph.face(0)[1]);
    EXPECT_THROW(cr_residual(st.fx.graph, st.w, f, 0), DomainError);
}

TEST(Extension, ReproducesPsi) {
    Rng rng(9);
    for (auto kind : {FixtureKind::SquareD2, FixtureKind::StaircaseD3, FixtureKind::FlippedStaircaseD5}) {
        const Bench st = make(kind, 4, rng);
        const QuadGraph& q = st.fx.graph;
        const VertexField psi = psi_field(st, random_point(rng, st.s));
        const int anchor = q.vertices_of(Part::Dual).front();
        const VertexField ext =
            extend_harmonic_to_holomorphic(q, st.w, psi.restricted(q, Part::Primal), anchor, psi.get(anchor));
        for (int v = 0; v < q.num_vertices(); ++v) EXPECT_LE(rel_diff(ext.get(v), psi.get(v)), 1e-10);
    }
}

TEST(Extension, ConstantInput) {
    Rng rng(10);
    const Bench st = make(FixtureKind::StaircaseD3, 3, rng);
    const QuadGraph& q = st.fx.graph;
    const VertexField f = sample_field(q, [](int) { return Complex(4.0); });
    const int anchor = q.vertices_of(Part::Dual).back();
    const VertexField ext = extend_harmonic_to_holomorphic(q, st.w, f.restricted(q, Part::Primal), anchor, Complex(0, 1));
    for (int v : q.vertices_of(Part::Primal)) EXPECT_EQ(ext.get(v), Complex(4.0));
    for (int v : q.vertices_of(Part::Dual)) EXPECT_LE(std::abs(ext.get(v) - Complex(0, 1)), 1e-15);
}

TEST(Extension, AnchorShiftsDualPartByConstant) {
    Rng rng(11);
    const Bench st = make(FixtureKind::SquareD2, 4, rng);
    const QuadGraph& q = st.fx.graph;
    const VertexField psi = psi_field(st, random_point(rng, st.s));
    const VertexField g = psi.restricted(q, Part::Primal);
    const auto duals = q.vertices_of(Part::Dual);
    const VertexField a = extend_harmonic_to_holomorphic(q, st.w, g, duals.front(), 0.0);
    const VertexField b = extend_harmonic_to_holomorphic(q, st.w, g, duals.back(), Complex(1.5, 2.0));
    const Complex shift = b.get(duals.front()) - a.get(duals.front());
    for (int v : duals) EXPECT_LE(std::abs((b.get(v) - a.get(v)) - shift), 1e-10 * std::max(1.0, std::abs(shift)));
    for (int v : q.vertices_of(Part::Primal)) EXPECT_EQ(a.get(v), b.get(v));
    // extend . restrict is the identity up to that constant on the dual part
    for (int v : duals) EXPECT_LE(std::abs((psi.get(v) - a.get(v)) - (psi.get(duals.front()) - a.get(duals.front()))), 1e-10);
}

TEST(Extension, NonHarmonicInputRejected) {
    Rng rng(12);
    const Bench st = make(FixtureKind::SquareD2, 4, rng);
    const QuadGraph& q = st.fx.graph;
    const VertexField noise = sample_field(q, [&](int) { return Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)); });
    try {
        extend_harmonic_to_holomorphic(q, st.w, noise.restricted(q, Part::Primal), q.vertices_of(Part::Dual).front(), 0.0);
        FAIL() << "expected IntegrationError";
    } catch (const IntegrationError& e) {
        EXPECT_GE(e.face(), 0);
        EXPECT_LT(e.face(), q.num_faces());
        EXPECT_GT(e.mismatch(), 1e-10);
    }
    EXPECT_THROW(extend_harmonic_to_holomorphic(q, st.w, noise, q.vertices_of(Part::Primal).front(), 0.0), ArgumentError);
}

TEST(VertexFieldType, DomainAndRestriction) {
    const Fixture fx = generate_fixture(FixtureKind::SquareD2, 1);
    VertexField f(fx.graph.num_vertices());
    EXPECT_FALSE(f.has(0));
    EXPECT_THROW(f.get(0), DomainError);
    EXPECT_THROW(f.get(99), DomainError);
    f.set(0, 1.0);
    f.set(1, 2.0);
    EXPECT_EQ(f.domain(), (std::vector<int>{0, 1}));
    const VertexField g = f.restricted(fx.graph, fx.graph.part(0));
    EXPECT_TRUE(g.has(0));
    EXPECT_FALSE(g.has(1));
}
