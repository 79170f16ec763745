#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ellk3/lattice.hpp"

namespace ellk3 {

// Query point on the (D_omega, V_omega) quadrant against the stability /
// twisted-ampleness regions for alpha = Theta + (Da + e) f (fiber degree 1).
struct RegionQuery {
    SurfaceParams surface;
    Rat d_alpha;
    Rat d;  // D_omega
    Rat v;  // V_omega
    bool allow_boundary = false;

    RegionQuery(SurfaceParams sp, Rat da, Rat D, Rat V, bool boundary = false)
        : surface(std::move(sp)), d_alpha(std::move(da)), d(std::move(D)), v(std::move(V)),
          allow_boundary(boundary) {
        if (!allow_boundary && (d <= 0 || v <= 0))
            fail(Err::HypothesisViolated, "interior queries need D > 0 and V > 0");
    }
};

enum class Side { Outside, Boundary, Inside };

// Strict / non-strict sides of the three defining inequalities: positivity
// and twisted ampleness are strict, the volume inequality is non-strict.
Side positivity_side(const RegionQuery& q);      // omega.alpha > 0
Side volume_side(const RegionQuery& q);          // omega^2 >= omega.alpha
Side twisted_ample_side(const RegionQuery& q);   // ample twisted class

bool positivity(const RegionQuery& q);     // Inside
bool volume_ok(const RegionQuery& q);      // Inside or Boundary
bool twisted_ample(const RegionQuery& q);  // positivity && Inside

// Which stability theorem covers the query's (e, D_alpha).
enum class Provenance : std::uint8_t {
    None = 0,
    NegativeDalpha,    // integer D_alpha < -e, stability on all of omega.alpha > 0
    TransformCasesK3,  // e = 2, D_alpha in {-1,-2}
    FiberDegreeOneK3,  // e = 2, integer D_alpha
};

const char* provenance_name(Provenance p);

struct RegionLabel {
    bool positive;
    bool volume_ok;
    bool twisted_ample;
    bool thm1_stable;              // positive && volume_ok && twisted_ample
    bool transform_case_stable;    // case logic for (e, Da) in {(2,-1),(2,-2)}
    bool theorem_region_stable;    // positivity alone where a main theorem applies
    Provenance provenance;

    std::uint8_t packed() const;
    static RegionLabel unpack(std::uint8_t bits, Provenance p);
};

RegionLabel classify(const RegionQuery& q);

// Tangency data of the volume boundary at P = (-(Da+e), 0); needs integer
// D_alpha < -e.
struct TangencyData {
    SurfaceParams surface;
    Rat d_alpha;
    Rat p_d;              // D-coordinate of P, V-coordinate is 0
    Rat g_at_p;           // boundary gap of the twisted-ample region at P
    bool neighborhood_ok; // g_at_p > 0

    Rat boundary_value_at(const Rat& d) const;  // V(D) on omega^2 = omega.alpha
    Rat derivative_at(const Rat& d) const;      // dV/dD of the boundary
};

TangencyData tangency_data(const SurfaceParams& sp, const Rat& d_alpha);

// Deterministic raster of classify over a window, cell centers sampled
// exactly.  The parallel kernel and the serial reference produce identical
// grids; tests compare them cell by cell.
struct RasterWindow {
    Rat d0, v0, d1, v1;
};

struct RasterGrid {
    RasterWindow window;
    int nx = 0, ny = 0;
    std::vector<std::uint8_t> cells;       // row-major, iy * nx + ix
    std::vector<Provenance> provenance;

    RegionLabel at(int ix, int iy) const;
    Rat cell_d(int ix) const;
    Rat cell_v(int iy) const;
};

RasterGrid raster(const RegionQuery& base, const RasterWindow& window, int nx, int ny);
RasterGrid raster_serial(const RegionQuery& base, const RasterWindow& window, int nx, int ny);

enum class RasterFormat { Csv, Svg };

std::string render_raster(const RasterGrid& grid, RasterFormat format);

// A rational point with positivity and not twisted ample; the fiber-degree-1
// theorem guarantees stability there.  Needs e = 2 and D_alpha >= 0.
struct WitnessPoint {
    Rat d;
    Rat v;
};

WitnessPoint witness_stable_not_twisted_ample(const SurfaceParams& sp, const Rat& d_alpha);

}  // namespace ellk3
