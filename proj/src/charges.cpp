#include "ellk3/charges.hpp"
#include <algorithm>

#include <cmath>

namespace ellk3 {

const char* family_name(Family f) {
    switch (f) {
        case Family::Standard: return "standard";
        case Family::Todd: return "todd";
        case Family::VD: return "vd";
        case Family::Ray: return "ray";
        case Family::WeakH: return "weak-h";
        case Family::WeakVH: return "weak-vh";
        case Family::WeakD: return "weak-d";
        case Family::WeakSpecial: return "weak-special";
    }
    return "?";
}

ChargeSpec ChargeSpec::standard(DivisorClass omega, DivisorClass B, SurfaceParams sp) {
    if (!is_ample(omega, sp)) fail(Err::NotAmple, "standard family needs omega ample");
    ChargeSpec s{Family::Standard, sp};
    s.omega = omega;
    s.b_field = B;
    return s;
}

ChargeSpec ChargeSpec::standard_dv(Rat D, Rat V, DivisorClass B, SurfaceParams sp) {
    if (D <= 0 || V <= 0) fail(Err::NotAmple, "standard family needs D > 0 and V > 0");
    ChargeSpec s{Family::Standard, sp};
    s.omega_dv = std::make_pair(D, V);
    s.b_field = B;
    return s;
}

ChargeSpec ChargeSpec::todd(DivisorClass omega, DivisorClass B, SurfaceParams sp) {
    ChargeSpec s = standard(omega, B, sp);
    s.family = Family::Todd;
    return s;
}

ChargeSpec ChargeSpec::todd_dv(Rat D, Rat V, DivisorClass B, SurfaceParams sp) {
    ChargeSpec s = standard_dv(D, V, B, sp);
    s.family = Family::Todd;
    return s;
}

ChargeSpec ChargeSpec::vd(Rat V, Rat D, SurfaceParams sp) {
    if (V <= 0 || D <= 0) fail(Err::InvalidSpec, "VD family needs V > 0 and D > 0");
    ChargeSpec s{Family::VD, sp};
    s.V = V;
    s.D = D;
    return s;
}

ChargeSpec ChargeSpec::ray(DivisorClass H, DivisorClass B, Rat t, SurfaceParams sp) {
    if (!is_ample(H, sp)) fail(Err::NotAmple, "ray family needs H ample");
    if (t <= 0) fail(Err::InvalidSpec, "ray family needs t > 0");
    ChargeSpec s{Family::Ray, sp};
    s.H = H;
    s.b_field = B;
    s.t = t;
    return s;
}

ChargeSpec ChargeSpec::weak_h(SurfaceParams sp, std::optional<Rat> b) {
    ChargeSpec s{Family::WeakH, sp};
    if (b && *b < 0) fail(Err::InvalidSpec, "projective parameter must be >= 0");
    s.kernel_phase_param = std::move(b);
    return s;
}

ChargeSpec ChargeSpec::weak_vh(Rat V, SurfaceParams sp) {
    if (V <= 0) fail(Err::InvalidSpec, "weak-vh family needs V > 0");
    ChargeSpec s{Family::WeakVH, sp};
    s.V = V;
    return s;
}

ChargeSpec ChargeSpec::weak_d(Rat D, SurfaceParams sp) {
    if (D <= 0) fail(Err::InvalidSpec, "weak-d family needs D > 0");
    ChargeSpec s{Family::WeakD, sp};
    s.D = D;
    return s;
}

ChargeSpec ChargeSpec::weak_special(Rat d_alpha, std::optional<Rat> a) {
    ChargeSpec s{Family::WeakSpecial, SurfaceParams::k3()};
    s.d_alpha = std::move(d_alpha);
    if (a && *a < 0) fail(Err::InvalidSpec, "projective parameter must be >= 0");
    s.kernel_phase_param = std::move(a);
    return s;
}

DivisorClass ChargeSpec::special_omega() const {
    return {Rat(1, 2), Rat(3, 2)};
}

DivisorClass ChargeSpec::special_b_field() const {
    return {Rat(1, 2), (-2 * d_alpha - 3) / 2};
}

ChargeValue ChargeValue::operator+(const ChargeValue& o) const {
    ChargeValue r{re + o.re, im + o.im, scale, im_scale};
    return r;
}

namespace {

struct TwistedPieces {
    Rat n;        // ch0^B
    DivisorClass c1b;  // ch1^B
    Rat s;        // ch2^B
};

TwistedPieces b_twist(const ChernVector& v, const DivisorClass& B, const SurfaceParams& sp) {
    // ch^B = ch . e^{-B}
    TwistedPieces p;
    p.n = v.n;
    p.c1b = v.c1() - B * v.n;
    p.s = v.s - intersect(B, v.c1(), sp) + v.n * B.self_intersection(sp) / 2;
    return p;
}

// Z_{omega,B} with omega exact: Re = -ch2^B + (omega^2/2) ch0, Im = omega.ch1^B.
ChargeValue standard_eval(const ChernVector& v, const DivisorClass& omega,
                          const DivisorClass& B, const SurfaceParams& sp, bool todd) {
    TwistedPieces p = b_twist(v, B, sp);
    ChargeValue z;
    z.re = -p.s + omega.self_intersection(sp) / 2 * p.n;
    z.im = intersect(omega, p.c1b, sp);
    if (todd) {
        // sqrt(td) = (1, -((e-2)/2) f, (e/2) pt); on e = 2 this is the usual
        // "omega^2/2 - 1" replacement.
        Rat k = (sp.e - 2) / 2;
        z.re += k * p.c1b.a - sp.half_e() * p.n;
        z.im -= p.n * k * intersect(omega, DivisorClass::fiber(), sp);
    }
    return z;
}

// Z with omega given by a (D,V) point: Im carries the factored R_omega.
ChargeValue standard_dv_eval(const ChernVector& v, const Rat& D, const Rat& V,
                             const DivisorClass& B, const SurfaceParams& sp, bool todd) {
    TwistedPieces p = b_twist(v, B, sp);
    DivisorClass h{Rat(1), D + sp.e};  // omega = R_omega * h
    ChargeValue z;
    z.re = -p.s + V * p.n;
    z.im = intersect(h, p.c1b, sp);
    z.scale = ScaleNote::ImFactoredPositive;
    z.im_scale = std::sqrt(to_double(V / (D + sp.half_e())));
    if (todd) {
        Rat k = (sp.e - 2) / 2;
        z.re += k * p.c1b.a - sp.half_e() * p.n;
        z.im -= p.n * k * intersect(h, DivisorClass::fiber(), sp);
    }
    return z;
}

}  // namespace

ChargeValue eval(const ChargeSpec& spec, const ChernVector& v) {
    const SurfaceParams& sp = spec.surface;
    switch (spec.family) {
        case Family::Standard:
        case Family::Todd: {
            bool todd = spec.family == Family::Todd;
            if (spec.omega) return standard_eval(v, *spec.omega, spec.b_field, sp, todd);
            return standard_dv_eval(v, spec.omega_dv->first, spec.omega_dv->second,
                                    spec.b_field, sp, todd);
        }
        case Family::VD: {
            DivisorClass w{Rat(1), spec.D + sp.e};
            return {-v.s + spec.V * v.n, intersect(w, v.c1(), sp)};
        }
        case Family::Ray: {
            TwistedPieces p = b_twist(v, spec.b_field, sp);
            return {-p.s + spec.t * p.n, intersect(spec.H, p.c1b, sp)};
        }
        case Family::WeakH: {
            DivisorClass h{Rat(1), sp.e};
            return {-v.s, intersect(h, v.c1(), sp)};
        }
        case Family::WeakVH: {
            DivisorClass h{Rat(1), sp.e};
            return {-v.s + spec.V * v.n, intersect(h, v.c1(), sp)};
        }
        case Family::WeakD: {
            DivisorClass w{Rat(1), spec.D + sp.e};
            return {-v.s, intersect(w, v.c1(), sp)};
        }
        case Family::WeakSpecial:
            return standard_eval(v, spec.special_omega(), spec.special_b_field(), sp, true);
    }
    fail(Err::InvalidSpec, "unhandled family");
}

double PhaseValue::phi_float() const {
    if (phi) return to_double(*phi);
    // band 0: phi = (1/pi) arccot(-rho) in (0,1); band 2 shifts by 1.
    double r = to_double(rho);
    double base = std::atan2(1.0, -r) / M_PI;  // in (0,1)
    return band == 0 ? base : base + 1.0;
}

namespace {

PhaseValue interior_phase(const ChargeValue& z) {
    PhaseValue p;
    p.kind = PhaseValue::Kind::Interior;
    if (z.im > 0) {
        p.band = 0;
        p.rho = -z.re / z.im;
    } else if (z.im < 0) {
        p.band = 2;
        p.rho = -z.re / z.im;
    } else {
        p.band = z.re < 0 ? 1 : 3;
        p.phi = z.re < 0 ? Rat(1) : Rat(2);
    }
    return p;
}

// (band, rho) comparator key of an exact quarter-multiple phase in (0,2].
std::pair<int, Rat> quarter_phase_key(const Rat& phi) {
    if (phi == Rat(1, 4)) return {0, Rat(-1)};
    if (phi == Rat(1, 2)) return {0, Rat(0)};
    if (phi == Rat(3, 4)) return {0, Rat(1)};
    if (phi == 1) return {1, Rat(0)};
    if (phi == Rat(5, 4)) return {2, Rat(-1)};
    if (phi == Rat(3, 2)) return {2, Rat(0)};
    if (phi == Rat(7, 4)) return {2, Rat(1)};
    if (phi == 2) return {3, Rat(0)};
    fail(Err::KernelWithoutTable, "tabulated phase is not a quarter multiple");
}

struct KernelDecomp {
    Rat m0;
    Rat m1;
};

// Writes a lattice kernel class as m0 * first-generator + m1 * second (when
// the family has two generators); nullopt when v is not a nonnegative
// combination.
std::optional<KernelDecomp> kernel_decompose(const ChargeSpec& spec, const ChernVector& v) {
    switch (spec.family) {
        case Family::WeakH: {
            // generators: O_Theta(-1) = (0,1,0,0), O_X[1] = (-1,0,0,0)
            if (v.b != 0 || v.s != 0) return std::nullopt;
            Rat m0 = v.a, m1 = -v.n;
            if (m0 < 0 || m1 < 0 || (m0 == 0 && m1 == 0)) return std::nullopt;
            return KernelDecomp{m0, m1};
        }
        case Family::WeakVH: {
            // tabulated span: O_Theta(-1) only
            if (v.n != 0 || v.b != 0 || v.s != 0 || v.a <= 0) return std::nullopt;
            return KernelDecomp{v.a, Rat(0)};
        }
        case Family::WeakD: {
            if (v.a != 0 || v.b != 0 || v.s != 0 || v.n >= 0) return std::nullopt;
            return KernelDecomp{-v.n, Rat(0)};
        }
        case Family::WeakSpecial: {
            // generators: L0[1] = (-1, 0, Da+1, 0), L1 = (1, 1, -(Da+2), -Da-3)
            Rat m1 = v.a;
            Rat m0 = v.a - v.n;
            if (m0 < 0 || m1 < 0 || (m0 == 0 && m1 == 0)) return std::nullopt;
            NamedParams np;
            np.d_alpha = spec.d_alpha;
            ChernVector l0 = chern_named(Named::L0, np, spec.surface);
            ChernVector l1 = chern_named(Named::L1, np, spec.surface);
            if (!((-l0) * m0 + l1 * m1 == v)) return std::nullopt;
            return KernelDecomp{m0, m1};
        }
        default:
            return std::nullopt;
    }
}

}  // namespace

std::vector<KernelEntry> kernel_basis(const ChargeSpec& spec) {
    const SurfaceParams& sp = spec.surface;
    NamedParams np;
    np.m = -1;
    np.d_alpha = spec.d_alpha;
    switch (spec.family) {
        case Family::WeakH:
            return {{"O_Theta(-1)", chern_named(Named::SectionTwist, np, sp), Rat(1, 2)},
                    {"O_X[1]", -chern_named(Named::StructureSheaf, np, sp), Rat(1)}};
        case Family::WeakVH:
            return {{"O_Theta(-1)", chern_named(Named::SectionTwist, np, sp), Rat(1, 2)}};
        case Family::WeakD:
            return {{"O_X[1]", -chern_named(Named::StructureSheaf, np, sp), Rat(1)}};
        case Family::WeakSpecial:
            return {{"L0[1]", -chern_named(Named::L0, np, sp), Rat(3, 4)},
                    {"L1", chern_named(Named::L1, np, sp), Rat(1, 4)}};
        default:
            fail(Err::NotWeakFamily, "kernel tables exist for weak families only");
    }
}

bool in_kernel(const ChargeSpec& spec, const ChernVector& v) {
    return eval(spec, v).is_zero();
}

std::optional<Rat> kernel_sum_slope(const ChargeSpec& spec, const Rat& m0, const Rat& m1) {
    if (!spec.is_weak()) fail(Err::NotWeakFamily, "kernel sums exist for weak families only");
    if (m0 < 0 || m1 < 0 || (m0 == 0 && m1 == 0))
        fail(Err::HypothesisViolated, "multiplicities must be nonnegative, not both zero");
    if (spec.family == Family::WeakH) {
        if (m0 == 0) return std::nullopt;  // pure O_X[1], phase 1
        Rat b = spec.kernel_phase_param.value_or(Rat(1));
        return b * m1 / m0;
    }
    if (spec.family == Family::WeakSpecial) {
        Rat r = spec.kernel_phase_param.value_or(Rat(1));
        Rat den = m0 * r + m1;
        if (den == 0) return std::nullopt;
        return (m0 * r - m1) / den;
    }
    // single-generator families: slope of the lone generator
    return spec.family == Family::WeakVH ? std::optional<Rat>(Rat(0)) : std::nullopt;
}

PhaseValue phase(const ChargeSpec& spec, const ChernVector& v) {
    if (v.is_zero()) fail(Err::HypothesisViolated, "the zero class has no phase");
    ChargeValue z = eval(spec, v);
    if (!z.is_zero()) return interior_phase(z);
    if (!spec.is_weak())
        fail(Err::KernelWithoutTable, "Z(v) = 0 and the family carries no phase table");
    auto dec = kernel_decompose(spec, v);
    if (!dec)
        fail(Err::KernelWithoutTable,
             "kernel class is not a nonnegative sum of tabulated generators");
    auto basis = kernel_basis(spec);
    PhaseValue p;
    p.kind = PhaseValue::Kind::KernelTabulated;
    // Pure multiples take the tabulated phase.
    if (dec->m1 == 0 || basis.size() == 1) {
        p.phi = basis[0].phi;
    } else if (dec->m0 == 0) {
        p.phi = basis[1].phi;
    } else {
        if (!spec.kernel_phase_param)
            fail(Err::KernelWithoutTable,
                 "mixed kernel sum needs the projective phase parameter");
        auto slope = kernel_sum_slope(spec, dec->m0, dec->m1);
        if (!slope) {
            p.phi = Rat(1);
        } else {
            p.band = 0;
            p.rho = *slope;
            return p;
        }
    }
    auto key = quarter_phase_key(*p.phi);
    p.band = key.first;
    p.rho = key.second;
    return p;
}

PhaseOrdering compare_phase_detail(const ChargeSpec& spec, const ChernVector& v,
                                   const ChernVector& w) {
    PhaseValue pv = phase(spec, v);
    PhaseValue pw = phase(spec, w);
    auto key_cmp = [](const PhaseValue& x, const PhaseValue& y) {
        if (x.band != y.band) return x.band < y.band ? -1 : 1;
        if (x.band == 1 || x.band == 3) return 0;
        if (x.rho != y.rho) return x.rho < y.rho ? -1 : 1;
        return 0;
    };
    int c = key_cmp(pv, pw);
    if (c != 0) return {c, false};
    bool vk = pv.kind == PhaseValue::Kind::KernelTabulated;
    bool wk = pw.kind == PhaseValue::Kind::KernelTabulated;
    if (vk != wk) return {vk ? 1 : -1, true};  // kernel sorts last on equal rays
    return {0, false};
}

int compare_phase(const ChargeSpec& spec, const ChernVector& v, const ChernVector& w) {
    return compare_phase_detail(spec, v, w).cmp;
}

Rat limit_phase(LimitPath path, const ChernVector& v, const Rat& d_alpha,
                const SurfaceParams& sp) {
    NamedParams np;
    np.m = -1;
    np.d_alpha = d_alpha;
    ChernVector l0 = chern_named(Named::L0, np, sp);
    ChernVector l1 = chern_named(Named::L1, np, sp);
    ChernVector ox = chern_named(Named::StructureSheaf, np, sp);
    ChernVector ot = chern_named(Named::SectionTwist, np, sp);
    if (path == LimitPath::DVRatio) {
        if (v == -l0) return Rat(3, 4);
        if (v == l1) return Rat(1, 4);
        if (v == -l1) return Rat(5, 4);
        if (v == -ox) return Rat(1);
        if (v == ot) return Rat(1, 2);
    } else if (path == LimitPath::DToZero) {
        if (v == ot) return Rat(1, 2);
    } else if (path == LimitPath::VToZero) {
        if (v == -ox) return Rat(1);
    }
    fail(Err::UnknownLimit, "no closed-form limit for this class along this path");
}

std::pair<double, double> transformed_kernel_charge(double D, double V, int y, bool shifted) {
    double den = D + V + 2.0;
    double scal = std::sqrt((D + 1.0) * (V + 1.0));
    double im = scal * (y * (D + V) - D) / den;
    double re = ((V - D) * y + D * V + D) / den;
    if (shifted) {
        re = -re;
        im = -im;
    }
    return {re, im};
}

double phase_float_of(const ChargeValue& z) {
    double re = z.re_f(), im = z.im_f();
    double phi = std::atan2(im, re) / M_PI;  // (-1, 1]
    if (phi <= 0) phi += 2.0;                // map to (0, 2]
    return phi;
}

bool heart_necessary(const ChargeSpec& spec, const ChernVector& v) {
    ChargeValue z = eval(spec, v);
    if (z.im < 0) return false;
    if (z.im == 0 && z.re > 0) return false;
    return true;
}

std::vector<DivisorClass> weak_special_kernel_solve(const Rat& d_alpha, long bound) {
    // (x, y) = (Theta.ch1, f.ch1) of a rank-one kernel class must satisfy
    //   x + 3y = -Da - 1   and   ch1^2 = -(2Da + 6) y,
    // with ch1^2 = 2y(x + y) on e = 2, plus the Hodge family
    //   (2a+1) y >= -a^2  for all integers a.
    std::vector<DivisorClass> out;
    for (long x = -bound; x <= bound; ++x) {
        for (long y = -bound; y <= bound; ++y) {
            if (Rat(x) + 3 * Rat(y) != -d_alpha - 1) continue;
            Rat ch1sq = 2 * Rat(y) * (Rat(x) + Rat(y));
            if (ch1sq != -(2 * d_alpha + 6) * Rat(y)) continue;
            bool hodge_ok = true;
            for (long a = -bound; a <= bound && hodge_ok; ++a)
                if (Rat(2 * a + 1) * Rat(y) < -Rat(a) * Rat(a)) hodge_ok = false;
            if (!hodge_ok) continue;
            // back to ch1 = a Theta + b f: a = y, b = x + 2y (e = 2)
            out.push_back({Rat(y), Rat(x + 2 * y)});
        }
    }
    std::sort(out.begin(), out.end(), [](const DivisorClass& l, const DivisorClass& r) {
        return l.a != r.a ? l.a < r.a : l.b < r.b;
    });
    return out;
}

}  // namespace ellk3
