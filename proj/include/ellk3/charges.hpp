#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellk3/lattice.hpp"

namespace ellk3 {

// Central-charge families.  Standard and Todd take omega either as an exact
// divisor class or as a (D,V) point; in the latter case the positive scalar
// R_omega is factored out of Im, which leaves every sign and slope comparison
// exact (ChargeValue::scale records this).
enum class Family { Standard, Todd, VD, Ray, WeakH, WeakVH, WeakD, WeakSpecial };

const char* family_name(Family f);

struct ChargeSpec {
    Family family;
    SurfaceParams surface;

    ChargeSpec(Family f, SurfaceParams sp) : family(f), surface(std::move(sp)) {}

    // Standard/Todd
    std::optional<DivisorClass> omega;            // exact form
    std::optional<std::pair<Rat, Rat>> omega_dv;  // (D,V) form, R_omega factored
    DivisorClass b_field;

    // VD / WeakVH / WeakD
    Rat V = Rat(0);
    Rat D = Rat(0);

    // Ray
    DivisorClass H;
    Rat t = Rat(0);

    // WeakSpecial
    Rat d_alpha = Rat(0);

    // [V:D] for the origin family, [D:V] for the transformed one; only the
    // relative phases of mixed kernel sums depend on it.
    std::optional<Rat> kernel_phase_param;

    static ChargeSpec standard(DivisorClass omega, DivisorClass B, SurfaceParams sp);
    static ChargeSpec standard_dv(Rat D, Rat V, DivisorClass B, SurfaceParams sp);
    static ChargeSpec todd(DivisorClass omega, DivisorClass B, SurfaceParams sp);
    static ChargeSpec todd_dv(Rat D, Rat V, DivisorClass B, SurfaceParams sp);
    static ChargeSpec vd(Rat V, Rat D, SurfaceParams sp);
    static ChargeSpec ray(DivisorClass H, DivisorClass B, Rat t, SurfaceParams sp);
    static ChargeSpec weak_h(SurfaceParams sp, std::optional<Rat> b = std::nullopt);
    static ChargeSpec weak_vh(Rat V, SurfaceParams sp);
    static ChargeSpec weak_d(Rat D, SurfaceParams sp);
    static ChargeSpec weak_special(Rat d_alpha, std::optional<Rat> a = std::nullopt);

    bool is_weak() const {
        return family == Family::WeakH || family == Family::WeakVH ||
               family == Family::WeakD || family == Family::WeakSpecial;
    }

    // The special-point data omega'_0 = (Theta+3f)/2, B'_0 = (Theta+(-2Da-3)f)/2.
    DivisorClass special_omega() const;
    DivisorClass special_b_field() const;
};

enum class ScaleNote { Exact, ImFactoredPositive };

struct ChargeValue {
    Rat re;
    Rat im;             // true Im = im_scale * im with im_scale > 0
    ScaleNote scale = ScaleNote::Exact;
    double im_scale = 1.0;

    bool is_zero() const { return re == 0 && im == 0; }
    double re_f() const { return to_double(re); }
    double im_f() const { return im_scale * to_double(im); }
    ChargeValue operator+(const ChargeValue& o) const;  // requires same scale
};

ChargeValue eval(const ChargeSpec& spec, const ChernVector& v);

// Phase order on the closed upper half-plane mapped to (0,1], continued
// through (1,2] for Im < 0.  Band 0: Im>0, band 1: negative real axis,
// band 2: Im<0, band 3: positive real axis.  Within bands 0 and 2 the slope
// rho = -Re/Im is strictly increasing in the phase.
struct PhaseValue {
    enum class Kind { Interior, KernelTabulated } kind;
    int band = 0;
    Rat rho = Rat(0);              // valid for bands 0 and 2
    std::optional<Rat> phi;        // exact phase when tabulated (kernel classes)

    double phi_float() const;      // numeric phase in (0,2]
};

PhaseValue phase(const ChargeSpec& spec, const ChernVector& v);

struct PhaseOrdering {
    int cmp;                  // -1, 0, +1 : phase(v) vs phase(w)
    bool kernel_tiebreak;     // order decided by the kernel-last rule
};

PhaseOrdering compare_phase_detail(const ChargeSpec& spec, const ChernVector& v,
                                   const ChernVector& w);
int compare_phase(const ChargeSpec& spec, const ChernVector& v, const ChernVector& w);

struct KernelEntry {
    std::string name;
    ChernVector cls;
    Rat phi;
};

// Tabulated kernel generators with their limit phases; weak families only.
std::vector<KernelEntry> kernel_basis(const ChargeSpec& spec);

bool in_kernel(const ChargeSpec& spec, const ChernVector& v);

// Limit slope of a direct sum of kernel generators, m0/m1 copies of the
// first/second generator in kernel_basis order.  For the origin family this
// is b*m1/m0 (nullopt = vertical, phase 1); for the transformed family
// (m0*r - m1)/(m0*r + m1) with r the projective parameter.
std::optional<Rat> kernel_sum_slope(const ChargeSpec& spec, const Rat& m0, const Rat& m1);

enum class LimitPath { DVRatio, DToZero, VToZero };

// Closed-form limit phase of a named kernel class along a parameter path.
Rat limit_phase(LimitPath path, const ChernVector& v, const Rat& d_alpha,
                const SurfaceParams& sp);

// Exact Re/Im of the transformed charge at the image of (D,V), specialized to
// the kernel classes y = f.ch1 in {0,1}; the positive square-root scalar is
// factored out of Im.  Used to validate the limit phases numerically.
std::pair<double, double> transformed_kernel_charge(double D, double V, int y, bool shifted);

// Numerical phase in (0,2] of a ChargeValue.
double phase_float_of(const ChargeValue& z);

// Necessary (not sufficient) numerical test for membership in the tilted
// heart: Im >= 0 and (Im = 0 implies Re <= 0).
bool heart_necessary(const ChargeSpec& spec, const ChernVector& v);

// Brute-force solver for the transformed-kernel numerical constraints: the
// two linear/quadratic conditions on (x,y) = (Theta.ch1, f.ch1) plus the
// Hodge family (2a+1)y >= -a^2 over integer a in [-bound, bound].  Returns
// the surviving ch1 classes.
std::vector<DivisorClass> weak_special_kernel_solve(const Rat& d_alpha, long bound);

}  // namespace ellk3
