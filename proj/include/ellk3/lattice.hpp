#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "ellk3/errors.hpp"
#include "ellk3/rational.hpp"

namespace ellk3 {

// Intersection form on span<Theta, f>:  Theta^2 = -e,  Theta.f = 1,  f^2 = 0.

struct SurfaceParams {
    Rat e;  // e = -Theta^2 > 0

    explicit SurfaceParams(Rat e_) : e(std::move(e_)) {
        if (e <= 0) fail(Err::HypothesisViolated, "surface invariant e must be positive");
    }
    static SurfaceParams k3() { return SurfaceParams(Rat(2)); }
    bool is_k3() const { return e == 2; }
    // e is an integer for genuine Weierstrass surfaces; rational e is accepted
    // but flagged so callers can warn.
    bool integral_e() const { return is_integer(e); }
    Rat half_e() const { return e / 2; }
};

// a*Theta + b*f with exact rational coefficients.
struct DivisorClass {
    Rat a;  // Theta coefficient
    Rat b;  // fiber coefficient

    DivisorClass() : a(0), b(0) {}
    DivisorClass(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}

    static DivisorClass theta() { return {Rat(1), Rat(0)}; }
    static DivisorClass fiber() { return {Rat(0), Rat(1)}; }

    DivisorClass operator+(const DivisorClass& o) const { return {a + o.a, b + o.b}; }
    DivisorClass operator-(const DivisorClass& o) const { return {a - o.a, b - o.b}; }
    DivisorClass operator-() const { return {-a, -b}; }
    DivisorClass operator*(const Rat& t) const { return {a * t, b * t}; }
    bool operator==(const DivisorClass& o) const { return a == o.a && b == o.b; }
    bool is_zero() const { return a == 0 && b == 0; }

    Rat self_intersection(const SurfaceParams& sp) const { return -sp.e * a * a + 2 * a * b; }
};

Rat intersect(const DivisorClass& m, const DivisorClass& w, const SurfaceParams& sp);

// M = R(Theta + (D+e)f), V = M^2/2 = R^2 (D + e/2).  R is carried as
// (sign, R^2) so everything downstream stays exact; it is materialized as a
// float, or exactly when R^2 is a rational square.
struct RdvCoords {
    int sign;  // sign of R, +1 or -1
    Rat r2;    // R^2 > 0
    Rat d;
    Rat v;     // = r2 * (d + e/2)

    std::optional<Rat> r_exact() const {
        if (!is_rational_square(r2)) return std::nullopt;
        Rat r = sqrt_exact(r2);
        return sign < 0 ? -r : r;
    }
    double r_double() const {
        double r = std::sqrt(to_double(r2));
        return sign < 0 ? -r : r;
    }
};

// Requires a != 0; pure-fiber divisors carry no RDV view.
RdvCoords rdv_of(const DivisorClass& m, const SurfaceParams& sp);

// Inverse of rdv_of. R must be exactly representable (r2 a rational square).
DivisorClass divisor_of_rdv(const RdvCoords& r, const SurfaceParams& sp);

// Ample view of a (D,V) point in the first quadrant: R = +sqrt(V/(D+e/2)).
RdvCoords rdv_of_point(const Rat& d, const Rat& v, const SurfaceParams& sp);

bool is_ample(const DivisorClass& m, const SurfaceParams& sp);

// (ch0, ch1, ch2) with ch1 = a*Theta + b*f.
struct ChernVector {
    Rat n;  // ch0
    Rat a;  // Theta coefficient of ch1
    Rat b;  // fiber coefficient of ch1
    Rat s;  // ch2

    ChernVector() : n(0), a(0), b(0), s(0) {}
    ChernVector(Rat n_, Rat a_, Rat b_, Rat s_)
        : n(std::move(n_)), a(std::move(a_)), b(std::move(b_)), s(std::move(s_)) {}

    DivisorClass c1() const { return {a, b}; }
    Rat fiber_degree() const { return a; }                                    // f.ch1
    Rat section_degree(const SurfaceParams& sp) const { return -sp.e * a + b; }  // Theta.ch1

    ChernVector operator+(const ChernVector& o) const { return {n + o.n, a + o.a, b + o.b, s + o.s}; }
    ChernVector operator-(const ChernVector& o) const { return {n - o.n, a - o.a, b - o.b, s - o.s}; }
    ChernVector operator-() const { return {-n, -a, -b, -s}; }
    ChernVector operator*(const Rat& t) const { return {n * t, a * t, b * t, s * t}; }
    bool operator==(const ChernVector& o) const { return n == o.n && a == o.a && b == o.b && s == o.s; }
    bool is_zero() const { return n == 0 && a == 0 && b == 0 && s == 0; }

    // Genuine object classes have integral (n, a, b) and half-integral ch2.
    bool genuine() const { return is_integer(n) && is_integer(a) && is_integer(b) && is_half_integer(s); }

    std::array<Rat, 4> as_array() const { return {n, a, b, s}; }
};

// ch(O(M)) = (1, M, M^2/2).
ChernVector line_bundle_class(const DivisorClass& m, const SurfaceParams& sp);

// ch(E (x) O(M)) = ch(E) e^M.
ChernVector twist(const ChernVector& v, const DivisorClass& m, const SurfaceParams& sp);

// Derived dual at lattice level: (n, -c1, s).
ChernVector dual(const ChernVector& v);

// Shift [k] multiplies by (-1)^k.
ChernVector shift(const ChernVector& v, long k);

// Named classes used throughout.  OTheta(m) means the pushforward of O_P1(m)
// along the section; its ch2 = (m+1) pt comes from GRR on a K3 surface.
enum class Named {
    StructureSheaf,   // O_X
    FiberSheaf,       // O_f
    PointSheaf,       // O_x
    SectionTwist,     // O_Theta(m), needs e = 2
    LineBundle,       // O(a Theta + b f)
    L0,               // O(-(Da+1) f)
    L1,               // O(Theta - (Da+2) f)
};

struct NamedParams {
    long m = 0;              // twist for SectionTwist
    DivisorClass divisor;    // class for LineBundle
    Rat d_alpha = Rat(0);    // D_alpha for L0/L1
};

ChernVector chern_named(Named name, const NamedParams& p, const SurfaceParams& sp);

// Mukai vector (n, c1, n + s) and pairings, K3 only.
struct MukaiVector {
    Rat r;
    DivisorClass c;
    Rat m;  // n + s component
};

MukaiVector mukai_vector(const ChernVector& v, const SurfaceParams& sp);
Rat mukai_pairing(const ChernVector& v, const ChernVector& w, const SurfaceParams& sp);
Rat euler_pairing(const ChernVector& v, const ChernVector& w, const SurfaceParams& sp);

// Bogomolov-Gieseker predicates (n != 0) and the Hodge-index upper bound
// (omega.c1)^2 / omega^2 for c1^2; hodge_upper requires omega^2 > 0.
bool bg_classical(const ChernVector& v, const SurfaceParams& sp);
bool bg_k3_strong(const ChernVector& v, const SurfaceParams& sp);
Rat hodge_upper(const ChernVector& v, const DivisorClass& omega, const SurfaceParams& sp);

}  // namespace ellk3
