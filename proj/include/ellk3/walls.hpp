#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellk3/charges.hpp"
#include "ellk3/lattice.hpp"
#include "ellk3/rational.hpp"

namespace ellk3 {

// Stability-parameter frame for wall geometry: omega0 = Theta + (D0+e) f and
// H0 = Theta - D0 f, with omega0.H0 = 0 and omega0^2 = -H0^2 = 2 D0 + e.
// Scaled coordinates (x~, y~, z~) = sqrt(2 D0 + e) (x, y, z) keep every wall
// coefficient rational; the scaling is a positive diagonal map, so incidence
// and nesting are unchanged.
struct WallFrame {
    SurfaceParams surface;
    Rat d0;

    WallFrame(SurfaceParams sp, Rat d0_) : surface(std::move(sp)), d0(std::move(d0_)) {
        if (norm2() <= 0) fail(Err::HypothesisViolated, "frame needs 2 D0 + e > 0");
    }
    DivisorClass omega0() const { return {Rat(1), d0 + surface.e}; }
    DivisorClass h0() const { return {Rat(1), -d0}; }
    Rat norm2() const { return 2 * d0 + surface.e; }

    // Components of ch1 in the (omega, H) frame, scaled by sqrt(norm2):
    // E_omega~ = omega0.ch1  and  E_H~ = -H0.ch1.
    Rat e_omega(const ChernVector& v) const;
    Rat e_h(const ChernVector& v) const;
};

// General quadric in scaled coordinates:
//   c[0] x^2 + c[1] y^2 + c[2] z^2 + c[3] xy + c[4] xz + c[5] yz
//   + c[6] x + c[7] y + c[8] z + c[9] = 0.
// Wall quadrics always have c[3] = c[4] = c[6] = 0.
struct WallQuadric {
    std::array<Rat, 10> c;
    bool identically_zero;

    Rat eval(const Rat& x, const Rat& y, const Rat& z) const;
};

struct WallRecord {
    WallFrame frame;
    ChernVector vE;
    ChernVector vF;
    WallQuadric quadric;
};

// Coefficients derived from the defining relation
// Re Z(vE) Im Z(vF) = Re Z(vF) Im Z(vE), never transcribed from a display.
WallRecord wall_quadric(const WallFrame& frame, const ChernVector& vE, const ChernVector& vF);

// Exact value of N^2 (Re Z(vE) Im Z(vF) - Re Z(vF) Im Z(vE)) / x~ at a scaled
// point with x~ > 0; the independent route the quadric is checked against.
Rat wall_relation(const WallFrame& frame, const ChernVector& vE, const ChernVector& vF,
                  const Rat& x, const Rat& y, const Rat& z);

struct SliceCircle {
    Rat center_y;  // x-center is always 0
    Rat radius2;
};

// Circle cut by the plane z~ = z; nullopt when the slice is empty or the
// quadric has no circular part.
std::optional<SliceCircle> slice_circle(const WallRecord& rec, const Rat& z);

// Comparison of the derived coefficients against the two displayed
// expansions (the fiber-sheaf display and the rank-one display), which are
// treated as untrusted transcriptions.
struct DisplayDiagnostic {
    bool applicable;
    bool matches;
    std::string note;
};

DisplayDiagnostic display_diagnostic(const WallRecord& rec);

// Mini-walls on the volume ray t -> Z_{H,B,t}.
struct RayMiniWall {
    Rat t_root;
    ChernVector candidate;
    enum class Side { StableAbove, UnstableBelow } side;
};

// Root of g_A(t) = g_E(t) for one candidate; ParallelSlopes when the linear
// equation is degenerate.
Rat mini_wall_root(const SurfaceParams& sp, const DivisorClass& H, const DivisorClass& B,
                   const ChernVector& target, const ChernVector& candidate);

// Positive roots over a candidate list, sorted descending; degenerate or
// nonpositive crossings are excluded.  The outermost root carries
// StableAbove: a twisted-Gieseker stable target is stable for t above it.
std::vector<RayMiniWall> mini_walls_on_ray(const SurfaceParams& sp, const DivisorClass& H,
                                           const DivisorClass& B, const ChernVector& target,
                                           const std::vector<ChernVector>& candidates);

// Rank bound omega.alpha / (omega^2 (D + sqrt(D^2+1))) as an exact element
// q1 + q2 sqrt(m) of a quadratic extension, with a certified floor.
struct RankBound {
    Rat q1;
    Rat q2;  // > 0
    Rat m;   // radicand
    Rat enclosure_lo;
    Rat enclosure_hi;  // certified: lo <= value <= hi, hi - lo < width
    long floor_value;
    double approx;
};

RankBound rank_bound(const SurfaceParams& sp, const DivisorClass& alpha,
                     const DivisorClass& omega, const Rat& enclosure_width = Rat(1, 1000000000000L));

// Same bound with omega given by a (D, V) point.
RankBound rank_bound_dv(const SurfaceParams& sp, const DivisorClass& alpha, const Rat& d,
                        const Rat& v, const Rat& enclosure_width = Rat(1, 1000000000000L));

struct EnumBounds {
    long max_c_theta = 3;
    long max_c_f = 3;
    long max_points = 3;
    bool use_strong_bg = false;  // opt-in stricter filter on higher ranks
};

struct Destabilizer {
    ChernVector cls;
    DivisorClass curve;  // C for the rank-one ansatz
    long points;         // n for the rank-one ansatz, -1 for higher rank
    bool rank_one_ansatz;
    int phase_cmp;       // phase(A) vs phase(L): 0 or +1
};

// Numerical wall candidates A for the line-bundle class v_L under spec
// (VD family, or standard with B = 0 and exact omega).  Rank-one candidates
// are L(-C) (x) I_Z over the (p, q, n) grid; higher ranks up to the rank
// bound floor scan the ch1 box with BG and phase filters.
std::vector<Destabilizer> enumerate_destabilizers(const ChargeSpec& spec,
                                                  const ChernVector& v_L,
                                                  const EnumBounds& bounds);
std::vector<Destabilizer> enumerate_destabilizers_serial(const ChargeSpec& spec,
                                                         const ChernVector& v_L,
                                                         const EnumBounds& bounds);

enum class CertStatus { NoNumericalWall, CandidateFound, Inconclusive };

const char* cert_status_name(CertStatus s);

// NoNumericalWall = empty finite search AND the sign argument that excludes
// walls beyond the bounds (twisted class ample on the cone generators, plus
// the volume inequality).  Consistent-with-stability only; CandidateFound
// reports numerical walls that need not be realized by objects.
struct Certificate {
    CertStatus status;
    std::vector<Destabilizer> candidates;
    std::string reason;
};

Certificate stability_certificate(const ChargeSpec& spec, const ChernVector& v_L,
                                  const EnumBounds& bounds);

}  // namespace ellk3
