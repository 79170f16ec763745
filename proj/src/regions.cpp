#include "ellk3/regions.hpp"

#include <sstream>

#include "ellk3/parallel.hpp"

namespace ellk3 {

namespace {

Side side_of(const Rat& value, bool strict_boundary_is_outside) {
    if (value > 0) return Side::Inside;
    if (value == 0) return Side::Boundary;
    (void)strict_boundary_is_outside;
    return Side::Outside;
}

}  // namespace

Side positivity_side(const RegionQuery& q) {
    // omega.alpha = R_omega (D + Da + e)
    return side_of(q.d + q.d_alpha + q.surface.e, true);
}

Side volume_side(const RegionQuery& q) {
    // omega^2 >= omega.alpha  <=>  4V(D + e/2) >= (D + Da + e)^2 on omega.alpha >= 0
    Rat lhs = 4 * q.v * (q.d + q.surface.half_e());
    Rat t = q.d + q.d_alpha + q.surface.e;
    return side_of(lhs - t * t, false);
}

Side twisted_ample_side(const RegionQuery& q) {
    // D (V - e/2) + Da (Da + e) > 0 under omega.alpha > 0
    return side_of(q.d * (q.v - q.surface.half_e()) + q.d_alpha * (q.d_alpha + q.surface.e),
                   true);
}

bool positivity(const RegionQuery& q) { return positivity_side(q) == Side::Inside; }

bool volume_ok(const RegionQuery& q) { return volume_side(q) != Side::Outside; }

bool twisted_ample(const RegionQuery& q) {
    return positivity(q) && twisted_ample_side(q) == Side::Inside;
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::None: return "none";
        case Provenance::NegativeDalpha: return "neg-dalpha";
        case Provenance::TransformCasesK3: return "transform-cases";
        case Provenance::FiberDegreeOneK3: return "fiber-deg-1";
    }
    return "?";
}

namespace {

// Stability of the transformed pair: the three conditions of the base
// criterion for (omega', dual transformed class), written in (D, V).
bool transformed_route(const RegionQuery& q) {
    const Rat& e = q.surface.e;
    Rat he = q.surface.half_e();
    Rat t = q.v - q.d_alpha - he;           // omega'.(transformed dual) > 0
    if (t <= 0) return false;
    Rat vol = 4 * q.d * (q.v + he) - t * t;  // transformed volume inequality
    if (vol < 0) return false;
    // transformed twisted ampleness: [(D+Da+e)/t](V+e) - (Da+e/2) > e([(D+Da+e)/t] + 1)
    Rat u = q.d + q.d_alpha + e;
    return u * (q.v + e) - (q.d_alpha + he) * t > e * (u + t);
}

Provenance provenance_of(const RegionQuery& q) {
    if (!is_integer(q.d_alpha)) return Provenance::None;
    if (q.d_alpha < -q.surface.e) return Provenance::NegativeDalpha;
    if (q.surface.is_k3()) {
        if (q.d_alpha == -1 || q.d_alpha == -2) return Provenance::TransformCasesK3;
        return Provenance::FiberDegreeOneK3;
    }
    return Provenance::None;
}

}  // namespace

RegionLabel classify(const RegionQuery& q) {
    RegionLabel r{};
    r.positive = positivity(q);
    r.volume_ok = volume_ok(q);
    r.twisted_ample = twisted_ample(q);
    r.thm1_stable = r.positive && r.volume_ok && r.twisted_ample;
    bool case_applicable =
        q.surface.is_k3() && (q.d_alpha == -1 || q.d_alpha == -2);
    r.transform_case_stable =
        case_applicable && (r.thm1_stable || transformed_route(q));
    r.provenance = provenance_of(q);
    r.theorem_region_stable = r.positive && r.provenance != Provenance::None;
    return r;
}

std::uint8_t RegionLabel::packed() const {
    std::uint8_t b = 0;
    b |= positive ? 1 : 0;
    b |= volume_ok ? 2 : 0;
    b |= twisted_ample ? 4 : 0;
    b |= thm1_stable ? 8 : 0;
    b |= transform_case_stable ? 16 : 0;
    b |= theorem_region_stable ? 32 : 0;
    return b;
}

RegionLabel RegionLabel::unpack(std::uint8_t bits, Provenance p) {
    RegionLabel r{};
    r.positive = bits & 1;
    r.volume_ok = bits & 2;
    r.twisted_ample = bits & 4;
    r.thm1_stable = bits & 8;
    r.transform_case_stable = bits & 16;
    r.theorem_region_stable = bits & 32;
    r.provenance = p;
    return r;
}

TangencyData tangency_data(const SurfaceParams& sp, const Rat& d_alpha) {
    if (!is_integer(d_alpha) || d_alpha >= -sp.e)
        fail(Err::HypothesisViolated, "tangency needs integer D_alpha < -e");
    TangencyData t{sp, d_alpha, -(d_alpha + sp.e),
                   (d_alpha + sp.e) * (d_alpha + sp.half_e()), false};
    t.neighborhood_ok = t.g_at_p > 0;
    return t;
}

Rat TangencyData::boundary_value_at(const Rat& d) const {
    Rat u = d + d_alpha + surface.e;
    return u * u / (4 * (d + surface.half_e()));
}

Rat TangencyData::derivative_at(const Rat& d) const {
    Rat u = d + d_alpha + surface.e;
    Rat w = d + surface.half_e();
    return u * (d - d_alpha) / (4 * w * w);
}

RegionLabel RasterGrid::at(int ix, int iy) const {
    std::size_t i = static_cast<std::size_t>(iy) * nx + ix;
    return RegionLabel::unpack(cells[i], provenance[i]);
}

Rat RasterGrid::cell_d(int ix) const {
    return window.d0 + (window.d1 - window.d0) * Rat(2 * ix + 1) / Rat(2 * nx);
}

Rat RasterGrid::cell_v(int iy) const {
    return window.v0 + (window.v1 - window.v0) * Rat(2 * iy + 1) / Rat(2 * ny);
}

namespace {

RasterGrid raster_impl(const RegionQuery& base, const RasterWindow& window, int nx, int ny,
                       bool parallel) {
    if (nx <= 0 || ny <= 0 || nx > 4096 || ny > 4096 || window.d1 <= window.d0 ||
        window.v1 <= window.v0)
        fail(Err::WindowEmpty, "raster window is empty or grid size out of range");
    RasterGrid g;
    g.window = window;
    g.nx = nx;
    g.ny = ny;
    g.cells.assign(static_cast<std::size_t>(nx) * ny, 0);
    g.provenance.assign(static_cast<std::size_t>(nx) * ny, Provenance::None);
    const long total = static_cast<long>(nx) * ny;

    auto work = [&](long i) {
        int ix = static_cast<int>(i % nx);
        int iy = static_cast<int>(i / nx);
        RegionQuery q(base.surface, base.d_alpha, g.cell_d(ix), g.cell_v(iy),
                      /*boundary=*/true);
        RegionLabel lbl = classify(q);
        g.cells[i] = lbl.packed();
        g.provenance[i] = lbl.provenance;
    };

    if (parallel) {
        ELLK3_PRAGMA_OMP(parallel for schedule(static) num_threads(thread_cap()))
        for (long i = 0; i < total; ++i) work(i);
    } else {
        for (long i = 0; i < total; ++i) work(i);
    }
    return g;
}

const char* cell_color(const RegionLabel& l) {
    // Fixed palette, precedence top to bottom (documented in the README):
    if (l.thm1_stable) return "#1a9850";
    if (l.transform_case_stable) return "#91cf60";
    if (l.theorem_region_stable) return "#d9ef8b";
    if (l.twisted_ample) return "#fee08b";
    if (l.positive) return "#fdae61";
    return "#d73027";
}

}  // namespace

RasterGrid raster(const RegionQuery& base, const RasterWindow& window, int nx, int ny) {
    return raster_impl(base, window, nx, ny, true);
}

RasterGrid raster_serial(const RegionQuery& base, const RasterWindow& window, int nx, int ny) {
    return raster_impl(base, window, nx, ny, false);
}

std::string render_raster(const RasterGrid& g, RasterFormat format) {
    std::ostringstream out;
    if (format == RasterFormat::Csv) {
        out << "D,V,positive,volume_ok,twisted_ample,thm1,case,theorem\n";
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                RegionLabel l = g.at(ix, iy);
                out << rat_str(g.cell_d(ix)) << ',' << rat_str(g.cell_v(iy)) << ','
                    << l.positive << ',' << l.volume_ok << ',' << l.twisted_ample << ','
                    << l.thm1_stable << ',' << l.transform_case_stable << ','
                    << provenance_name(l.provenance) << '\n';
            }
        return out.str();
    }
    // SVG: integer cell grid, 8 px per cell, V axis pointing up.
    const int cw = 8;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << g.nx * cw << "\" height=\""
        << g.ny * cw << "\" shape-rendering=\"crispEdges\">\n";
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            RegionLabel l = g.at(ix, iy);
            out << "<rect x=\"" << ix * cw << "\" y=\"" << (g.ny - 1 - iy) * cw << "\" width=\""
                << cw << "\" height=\"" << cw << "\" fill=\"" << cell_color(l) << "\"/>\n";
        }
    out << "</svg>\n";
    return out.str();
}

WitnessPoint witness_stable_not_twisted_ample(const SurfaceParams& sp, const Rat& d_alpha) {
    if (!sp.is_k3() || d_alpha < 0 || !is_integer(d_alpha))
        fail(Err::HypothesisViolated, "witness search needs e = 2 and integer D_alpha >= 0");
    // V below e/2 makes D(V - e/2) arbitrarily negative as D grows, so the
    // twisted-ample expression eventually turns <= 0 while positivity holds.
    Rat v = sp.half_e() / 2;
    Rat d(1);
    auto expr = [&](const Rat& D) -> Rat {
        return D * (v - sp.half_e()) + d_alpha * (d_alpha + sp.e);
    };
    while (expr(d) >= 0) d *= 2;
    return {d, v};
}

}  // namespace ellk3
