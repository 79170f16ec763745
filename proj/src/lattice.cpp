#include "ellk3/lattice.hpp"

namespace ellk3 {

Rat intersect(const DivisorClass& m, const DivisorClass& w, const SurfaceParams& sp) {
    // (a Theta + b f).(a' Theta + b' f) = -e a a' + a b' + a' b
    return -sp.e * m.a * w.a + m.a * w.b + w.a * m.b;
}

RdvCoords rdv_of(const DivisorClass& m, const SurfaceParams& sp) {
    if (m.a == 0)
        fail(Err::ZeroThetaComponent, "pure-fiber divisor carries no RDV view");
    RdvCoords r;
    r.sign = m.a > 0 ? 1 : -1;
    r.r2 = m.a * m.a;
    r.d = m.b / m.a - sp.e;
    r.v = m.self_intersection(sp) / 2;
    return r;
}

DivisorClass divisor_of_rdv(const RdvCoords& r, const SurfaceParams& sp) {
    if (!is_rational_square(r.r2))
        fail(Err::NonSquareScale, "R^2 is not a rational square; divisor has no exact view");
    Rat R = sqrt_exact(r.r2);
    if (r.sign < 0) R = -R;
    return {R, R * (r.d + sp.e)};
}

RdvCoords rdv_of_point(const Rat& d, const Rat& v, const SurfaceParams& sp) {
    Rat denom = d + sp.half_e();
    if (denom <= 0 || v <= 0)
        fail(Err::NotAmple, "(D,V) point must satisfy D + e/2 > 0 and V > 0");
    return {1, v / denom, d, v};
}

bool is_ample(const DivisorClass& m, const SurfaceParams& sp) {
    return m.a > 0 && m.b > sp.e * m.a;
}

ChernVector line_bundle_class(const DivisorClass& m, const SurfaceParams& sp) {
    return {Rat(1), m.a, m.b, m.self_intersection(sp) / 2};
}

ChernVector twist(const ChernVector& v, const DivisorClass& m, const SurfaceParams& sp) {
    ChernVector out;
    out.n = v.n;
    out.a = v.a + v.n * m.a;
    out.b = v.b + v.n * m.b;
    out.s = v.s + intersect(m, v.c1(), sp) + v.n * m.self_intersection(sp) / 2;
    return out;
}

ChernVector dual(const ChernVector& v) { return {v.n, -v.a, -v.b, v.s}; }

ChernVector shift(const ChernVector& v, long k) {
    return (k % 2 == 0) ? v : -v;
}

ChernVector chern_named(Named name, const NamedParams& p, const SurfaceParams& sp) {
    switch (name) {
        case Named::StructureSheaf:
            return {Rat(1), Rat(0), Rat(0), Rat(0)};
        case Named::FiberSheaf:
            return {Rat(0), Rat(0), Rat(1), Rat(0)};
        case Named::PointSheaf:
            return {Rat(0), Rat(0), Rat(0), Rat(1)};
        case Named::SectionTwist:
            // GRR on the section: ch(O_Theta(m)) = (0, Theta, (m+1) pt).
            if (!sp.is_k3())
                fail(Err::KThreeOnly, "O_Theta(m) Chern class is computed via GRR on e = 2");
            return {Rat(0), Rat(1), Rat(0), Rat(p.m + 1)};
        case Named::LineBundle:
            return line_bundle_class(p.divisor, sp);
        case Named::L0:
            // O(-(Da+1) f)
            return line_bundle_class({Rat(0), -(p.d_alpha + 1)}, sp);
        case Named::L1:
            // O(Theta - (Da+2) f)
            return line_bundle_class({Rat(1), -(p.d_alpha + 2)}, sp);
    }
    fail(Err::UnsupportedName, "unknown named class");
}

MukaiVector mukai_vector(const ChernVector& v, const SurfaceParams& sp) {
    if (!sp.is_k3()) fail(Err::KThreeOnly, "Mukai vectors require e = 2");
    return {v.n, v.c1(), v.n + v.s};
}

Rat mukai_pairing(const ChernVector& v, const ChernVector& w, const SurfaceParams& sp) {
    MukaiVector mv = mukai_vector(v, sp);
    MukaiVector mw = mukai_vector(w, sp);
    return intersect(mv.c, mw.c, sp) - mv.r * mw.m - mw.r * mv.m;
}

Rat euler_pairing(const ChernVector& v, const ChernVector& w, const SurfaceParams& sp) {
    return -mukai_pairing(v, w, sp);
}

bool bg_classical(const ChernVector& v, const SurfaceParams& sp) {
    if (v.n == 0) fail(Err::ZeroRank, "Bogomolov-Gieseker predicate needs nonzero rank");
    return v.s <= v.c1().self_intersection(sp) / (2 * v.n);
}

bool bg_k3_strong(const ChernVector& v, const SurfaceParams& sp) {
    if (!sp.is_k3()) fail(Err::KThreeOnly, "strong Bogomolov-Gieseker form holds on e = 2");
    if (v.n == 0) fail(Err::ZeroRank, "Bogomolov-Gieseker predicate needs nonzero rank");
    return v.s <= v.c1().self_intersection(sp) / (2 * v.n) - v.n + Rat(1) / v.n;
}

Rat hodge_upper(const ChernVector& v, const DivisorClass& omega, const SurfaceParams& sp) {
    Rat w2 = omega.self_intersection(sp);
    if (w2 <= 0) fail(Err::HypothesisViolated, "hodge_upper needs omega^2 > 0");
    Rat wc = intersect(omega, v.c1(), sp);
    return wc * wc / w2;
}

}  // namespace ellk3
