#pragma once

// SVG drawings of a quad-graph: the quasicrystalline embedding, weight signs,
// positive-consistency violations and scalar solutions. Output is a pure
// function of the inputs apart from the generator comment.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "operators.hpp"
#include "positivity.hpp"
#include "quadgraph.hpp"
#include "weights.hpp"

namespace quadgap {

inline constexpr const char* kSvgGenerator = "quadgap-render 1.0";

class SvgCanvas {
public:
    /// Points are in model coordinates (y up); the canvas flips and scales.
    explicit SvgCanvas(const std::vector<std::optional<Vec2>>& pts, double size = 640.0, double margin = 24.0)
        : size_(size), margin_(margin) {
        double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x, hi_x = -lo_x, hi_y = -lo_x;
        for (const auto& p : pts) {
            if (!p) continue;
            lo_x = std::min(lo_x, p->x);
            hi_x = std::max(hi_x, p->x);
            lo_y = std::min(lo_y, p->y);
            hi_y = std::max(hi_y, p->y);
        }
        if (!std::isfinite(lo_x)) lo_x = lo_y = 0.0, hi_x = hi_y = 1.0;
        const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
        scale_ = (size_ - 2 * margin_) / span;
        x0_ = lo_x;
        y1_ = hi_y;
        width_ = (hi_x - lo_x) * scale_ + 2 * margin_;
        height_ = (hi_y - lo_y) * scale_ + 2 * margin_;
    }

    double sx(double x) const { return margin_ + (x - x0_) * scale_; }
    double sy(double y) const { return margin_ + (y1_ - y) * scale_; }

    void line(Vec2 a, Vec2 b, const std::string& stroke, double w, const std::string& extra = "") {
        body_ << "  <line x1=\"" << num(sx(a.x)) << "\" y1=\"" << num(sy(a.y)) << "\" x2=\"" << num(sx(b.x))
              << "\" y2=\"" << num(sy(b.y)) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(w) << "\""
              << extra << "/>\n";
    }

    void polygon(const std::vector<Vec2>& ps, const std::string& fill, const std::string& stroke) {
        body_ << "  <polygon points=\"";
        for (std::size_t k = 0; k < ps.size(); ++k) body_ << (k ? " " : "") << num(sx(ps[k].x)) << ',' << num(sy(ps[k].y));
        body_ << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"0.5\"/>\n";
    }

    void circle(Vec2 c, double r, const std::string& fill, const std::string& stroke, const std::string& title = "") {
        body_ << "  <circle cx=\"" << num(sx(c.x)) << "\" cy=\"" << num(sy(c.y)) << "\" r=\"" << num(r) << "\" fill=\""
              << fill << "\" stroke=\"" << stroke << "\"";
        if (title.empty()) body_ << "/>\n";
        else body_ << "><title>" << escape(title) << "</title></circle>\n";
    }

    void text(Vec2 at, const std::string& s, double size = 10.0) {
        body_ << "  <text x=\"" << num(sx(at.x)) << "\" y=\"" << num(sy(at.y)) << "\" font-size=\"" << num(size)
              << "\" font-family=\"sans-serif\">" << escape(s) << "</text>\n";
    }

    std::string str(const std::string& title) const {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out << "<!-- generator: " << kSvgGenerator << " -->\n";
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_) << "\" height=\"" << num(height_)
            << "\" viewBox=\"0 0 " << num(width_) << ' ' << num(height_) << "\">\n";
        out << "  <title>" << escape(title) << "</title>\n";
        out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        out << body_.str() << "</svg>\n";
        return out.str();
    }

    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return buf;
    }

    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            switch (c) {
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                case '&': out += "&amp;"; break;
                case '"': out += "&quot;"; break;
                default: out += c;
            }
        }
        return out;
    }

private:
    double size_, margin_;
    double scale_ = 1.0, x0_ = 0.0, y1_ = 0.0, width_ = 0.0, height_ = 0.0;
    std::ostringstream body_;
};

/// Drawing positions from the graph document.
inline std::vector<std::optional<Vec2>> drawing_positions(const QuadGraph& q) {
    std::vector<std::optional<Vec2>> out;
    for (const Vertex& v : q.vertices()) out.push_back(v.pos);
    return out;
}

/// Positions P(p) = sum n_j alpha_j of the quasicrystalline embedding.
inline std::vector<std::optional<Vec2>> embedding_positions(const SpectralData& s, const ZdLabeling& lab) {
    std::vector<std::optional<Vec2>> out;
    for (Complex z : embed_quasicrystal(s, lab)) out.push_back(Vec2{z.real(), z.imag()});
    return out;
}

namespace svg_detail {

inline bool face_drawable(const QuadGraph& q, const std::vector<std::optional<Vec2>>& pts, int f) {
    for (int v : q.face(f))
        if (!pts[v]) return false;
    return true;
}

inline void draw_faces(SvgCanvas& c, const QuadGraph& q, const std::vector<std::optional<Vec2>>& pts,
                       const std::string& fill) {
    for (int f = 0; f < q.num_faces(); ++f) {
        if (!face_drawable(q, pts, f)) continue;
        std::vector<Vec2> ps;
        for (int v : q.face(f)) ps.push_back(*pts[v]);
        c.polygon(ps, fill, "#999999");
    }
}

inline void draw_vertices(SvgCanvas& c, const QuadGraph& q, const std::vector<std::optional<Vec2>>& pts) {
    for (int v = 0; v < q.num_vertices(); ++v) {
        if (!pts[v]) continue;
        if (q.part(v) == Part::Primal) c.circle(*pts[v], 3.0, "black", "black", q.vertex(v).id);
        else c.circle(*pts[v], 3.0, "white", "black", q.vertex(v).id);
    }
}

inline const char* sign_color(int sg) { return sg > 0 ? "#1f5fbf" : sg < 0 ? "#c62828" : "#888888"; }

}  // namespace svg_detail

/// Quad faces at their embedded positions, primal vertices filled.
inline std::string render_embedding(const QuadGraph& q, const std::vector<std::optional<Vec2>>& pts) {
    SvgCanvas c(pts);
    svg_detail::draw_faces(c, q, pts, "#f4f1e8");
    svg_detail::draw_vertices(c, q, pts);
    return c.str("quasicrystalline embedding");
}

/// Edges of G and G* colored by the sign of nu (blue +, red -, gray complex).
inline std::string render_weights(const QuadGraph& q, const WeightFunction& w, const std::vector<std::optional<Vec2>>& pts) {
    SvgCanvas c(pts);
    svg_detail::draw_faces(c, q, pts, "none");
    for (int f = 0; f < q.num_faces(); ++f) {
        const int sg = weight_sign(w.primal(f));
        auto [x0, x1] = q.primal_diagonal(f);
        auto [y0, y1] = q.dual_diagonal(f);
        if (pts[x0] && pts[x1]) c.line(*pts[x0], *pts[x1], svg_detail::sign_color(sg), 2.0);
        if (pts[y0] && pts[y1]) c.line(*pts[y0], *pts[y1], svg_detail::sign_color(sg), 1.0, " stroke-dasharray=\"4 3\"");
    }
    svg_detail::draw_vertices(c, q, pts);
    return c.str("weight signs");
}

/// Faces with shared edges of violating pairs drawn thick red.
inline std::string render_violations(const QuadGraph& q, const ConsistencyVerdict& v,
                                     const std::vector<std::optional<Vec2>>& pts) {
    SvgCanvas c(pts);
    svg_detail::draw_faces(c, q, pts, "#eef3ea");
    for (const auto& viol : v.violations) {
        const Edge& e = q.edge(viol.adjacency.shared_edge);
        if (pts[e.a] && pts[e.b]) c.line(*pts[e.a], *pts[e.b], "#d50000", 4.0);
    }
    svg_detail::draw_vertices(c, q, pts);
    return c.str(v.consistent ? "positively consistent" : std::to_string(v.violations.size()) + " violations");
}

/// Primal vertices shaded by Re f on a blue-white-red scale.
inline std::string render_solution(const QuadGraph& q, const VertexField& f, const std::vector<std::optional<Vec2>>& pts) {
    SvgCanvas c(pts);
    svg_detail::draw_faces(c, q, pts, "none");
    double m = 0.0;
    for (int v : f.domain()) m = std::max(m, std::abs(f.get(v).real()));
    for (int v : f.domain()) {
        if (!pts[v]) continue;
        const double t = m > 0 ? f.get(v).real() / m : 0.0;
        const int r = t > 0 ? 255 : static_cast<int>(std::lround(255 * (1 + t)));
        const int b = t < 0 ? 255 : static_cast<int>(std::lround(255 * (1 - t)));
        const int g = static_cast<int>(std::lround(255 * (1 - std::abs(t))));
        char fill[16];
        std::snprintf(fill, sizeof fill, "#%02x%02x%02x", r, g, b);
        char title[96];
        std::snprintf(title, sizeof title, "%s = %.6g%+.6gi", q.vertex(v).id.c_str(), f.get(v).real(), f.get(v).imag());
        c.circle(*pts[v], 5.0, fill, "black", title);
    }
    return c.str("solution (real part)");
}

}  // namespace quadgap
