#include "ellk3/walls.hpp"

#include <algorithm>
#include <tuple>

#include "ellk3/parallel.hpp"

namespace ellk3 {

Rat WallFrame::e_omega(const ChernVector& v) const {
    return intersect(omega0(), v.c1(), surface);
}

Rat WallFrame::e_h(const ChernVector& v) const {
    return -intersect(h0(), v.c1(), surface);
}

Rat WallQuadric::eval(const Rat& x, const Rat& y, const Rat& z) const {
    return c[0] * x * x + c[1] * y * y + c[2] * z * z + c[3] * x * y + c[4] * x * z +
           c[5] * y * z + c[6] * x + c[7] * y + c[8] * z + c[9];
}

Rat wall_relation(const WallFrame& f, const ChernVector& vE, const ChernVector& vF,
                  const Rat& x, const Rat& y, const Rat& z) {
    if (x <= 0) fail(Err::HypothesisViolated, "wall relation is stated on x~ > 0");
    // N Re Z = -s N + eomega y - eh z + (n/2)(x^2 - y^2 + z^2),
    // N Im Z / x = eomega - n y.
    auto re = [&](const ChernVector& v) -> Rat {
        return -v.s * f.norm2() + f.e_omega(v) * y - f.e_h(v) * z +
               v.n * (x * x - y * y + z * z) / 2;
    };
    auto im_over_x = [&](const ChernVector& v) -> Rat { return f.e_omega(v) - v.n * y; };
    return re(vE) * im_over_x(vF) - re(vF) * im_over_x(vE);
}

WallRecord wall_quadric(const WallFrame& frame, const ChernVector& vE, const ChernVector& vF) {
    // P_v = -s N + eomega y - eh z + (n/2)(x^2 - y^2 + z^2),
    // Q_v = eomega - n y; the wall is P_E Q_F - P_F Q_E = 0.  Cubic terms
    // cancel pairwise, leaving a quadric with no x y, x z or x terms.
    auto build = [&](const ChernVector& v) {
        struct {
            Rat c0, cy, cz, cyy, czz, cxx, q0, qy;
        } t;
        t.c0 = -v.s * frame.norm2();
        t.cy = frame.e_omega(v);
        t.cz = -frame.e_h(v);
        t.cyy = -v.n / 2;
        t.czz = v.n / 2;
        t.cxx = v.n / 2;
        t.q0 = frame.e_omega(v);
        t.qy = -v.n;
        return t;
    };
    auto E = build(vE);
    auto F = build(vF);

    WallQuadric q;
    q.c.fill(Rat(0));
    // x^2, y^2, z^2
    q.c[0] = E.cxx * F.q0 - F.cxx * E.q0;
    q.c[1] = E.cy * F.qy + E.cyy * F.q0 - (F.cy * E.qy + F.cyy * E.q0);
    q.c[2] = E.czz * F.q0 - F.czz * E.q0;
    // yz
    q.c[5] = E.cz * F.qy - F.cz * E.qy;
    // y, z, 1
    q.c[7] = E.c0 * F.qy + E.cy * F.q0 - (F.c0 * E.qy + F.cy * E.q0);
    q.c[8] = E.cz * F.q0 - F.cz * E.q0;
    q.c[9] = E.c0 * F.q0 - F.c0 * E.q0;
    // cubic monomials vanish identically: y^3, y z^2, x^2 y
    Rat y3 = E.cyy * F.qy - F.cyy * E.qy;
    Rat yz2 = E.czz * F.qy - F.czz * E.qy;
    Rat x2y = E.cxx * F.qy - F.cxx * E.qy;
    if (y3 != 0 || yz2 != 0 || x2y != 0)
        fail(Err::HypothesisViolated, "wall expansion lost a cubic cancellation");

    q.identically_zero = true;
    for (const auto& cc : q.c) q.identically_zero = q.identically_zero && cc == 0;
    return {frame, vE, vF, q};
}

std::optional<SliceCircle> slice_circle(const WallRecord& rec, const Rat& z) {
    const auto& c = rec.quadric.c;
    if (rec.quadric.identically_zero) return std::nullopt;
    if (c[0] == 0 || c[0] != c[1]) return std::nullopt;  // no circular part
    // c0 (x^2 + y^2) + (c5 z + c7) y + (c2 z^2 + c8 z + c9) = 0
    Rat b = (c[5] * z + c[7]) / c[0];
    Rat k = (c[2] * z * z + c[8] * z + c[9]) / c[0];
    SliceCircle s;
    s.center_y = -b / 2;
    s.radius2 = s.center_y * s.center_y - k;
    if (s.radius2 < 0) return std::nullopt;
    return s;
}

DisplayDiagnostic display_diagnostic(const WallRecord& rec) {
    const WallFrame& f = rec.frame;
    const ChernVector& vE = rec.vE;
    const ChernVector& vF = rec.vF;
    WallQuadric t;
    t.c.fill(Rat(0));
    std::string which;
    if (vF == ChernVector{Rat(0), Rat(0), Rat(1), Rat(0)}) {
        // fiber-sheaf display: (r/2)(x^2+y^2+z^2) + r yz - (Eomega+EH) z - d N
        which = "fiber-sheaf display";
        Rat r = vE.n;
        t.c[0] = t.c[1] = t.c[2] = r / 2;
        t.c[5] = r;
        t.c[8] = -(f.e_omega(vE) + f.e_h(vE));
        t.c[9] = -vE.s * f.norm2();
    } else if (vF.n == 1) {
        // rank-one display, scaled by N^(3/2) to clear the normalization
        which = "rank-one display";
        Rat r = vE.n, d = vE.s, eL = vF.s;
        Rat Ew = f.e_omega(vE), Eh = f.e_h(vE);
        Rat lw = f.e_omega(vF), lh = f.e_h(vF);
        t.c[0] = t.c[1] = t.c[2] = (r * lw - Ew) / 2;
        t.c[5] = -(r * lh - Eh);
        t.c[7] = f.norm2() * (d - eL * r);
        t.c[8] = -(Eh * lw - lh * Ew);
        t.c[9] = -f.norm2() * (d * lw - eL * Ew);
    } else {
        return {false, false, "no displayed expansion covers this second argument"};
    }
    bool ok = t.c == rec.quadric.c;
    return {true, ok,
            ok ? which + " agrees with the derived coefficients"
               : which + " DISAGREES with the derived coefficients"};
}

namespace {

struct RayData {
    Rat n;   // ch0^B
    Rat im;  // H.ch1^B
    Rat s;   // ch2^B
};

RayData ray_data(const SurfaceParams& sp, const DivisorClass& H, const DivisorClass& B,
                 const ChernVector& v) {
    ChernVector tb = twist(v, -B, sp);
    return {tb.n, intersect(H, tb.c1(), sp), tb.s};
}

}  // namespace

Rat mini_wall_root(const SurfaceParams& sp, const DivisorClass& H, const DivisorClass& B,
                   const ChernVector& target, const ChernVector& candidate) {
    if (!is_ample(H, sp)) fail(Err::NotAmple, "mini-walls need H ample");
    RayData e = ray_data(sp, H, B, target);
    RayData a = ray_data(sp, H, B, candidate);
    if (e.im == 0 || a.im == 0)
        fail(Err::HypothesisViolated, "Im parts must be nonzero on the ray");
    // g_M(t) = (s_M - t n_M) / im_M; root of g_A = g_E:
    Rat denom = e.n * a.im - a.n * e.im;
    if (denom == 0) fail(Err::ParallelSlopes, "g-lines are parallel or identical");
    return (e.s * a.im - a.s * e.im) / denom;
}

std::vector<RayMiniWall> mini_walls_on_ray(const SurfaceParams& sp, const DivisorClass& H,
                                           const DivisorClass& B, const ChernVector& target,
                                           const std::vector<ChernVector>& candidates) {
    std::vector<RayMiniWall> out;
    for (const auto& cand : candidates) {
        Rat root;
        try {
            root = mini_wall_root(sp, H, B, target, cand);
        } catch (const DomainError& e) {
            if (e.code() == Err::ParallelSlopes) continue;  // no crossing
            throw;
        }
        if (root <= 0) continue;
        out.push_back({root, cand, RayMiniWall::Side::UnstableBelow});
    }
    std::sort(out.begin(), out.end(),
              [](const RayMiniWall& a, const RayMiniWall& b) { return a.t_root > b.t_root; });
    if (!out.empty()) out.front().side = RayMiniWall::Side::StableAbove;
    return out;
}

namespace {

RankBound rank_bound_core(const Rat& q1, const Rat& q2, const Rat& m, const Rat& width) {
    RankBound rb;
    rb.q1 = q1;
    rb.q2 = q2;
    rb.m = m;
    if (is_rational_square(m)) {
        Rat exact = q1 + q2 * sqrt_exact(m);
        rb.enclosure_lo = rb.enclosure_hi = exact;
        rb.floor_value = to_long(floor_rat(exact));
        rb.approx = to_double(exact);
        return rb;
    }
    Rat w = width / q2;  // value enclosure width is q2 * sqrt-enclosure width
    for (;;) {
        RatInterval s = sqrt_enclosure(m, w);
        rb.enclosure_lo = q1 + q2 * s.lo;
        rb.enclosure_hi = q1 + q2 * s.hi;
        if (floor_rat(rb.enclosure_lo) == floor_rat(rb.enclosure_hi)) break;
        w /= 1024;  // value straddles an integer; tighten
    }
    rb.floor_value = to_long(floor_rat(rb.enclosure_lo));
    rb.approx = to_double((rb.enclosure_lo + rb.enclosure_hi) / 2);
    return rb;
}

}  // namespace

RankBound rank_bound(const SurfaceParams& sp, const DivisorClass& alpha,
                     const DivisorClass& omega, const Rat& enclosure_width) {
    if (!is_ample(omega, sp)) fail(Err::HypothesisViolated, "rank bound needs omega ample");
    Rat w2 = omega.self_intersection(sp);
    Rat wa = intersect(omega, alpha, sp);
    if (wa <= 0) fail(Err::HypothesisViolated, "rank bound needs omega.alpha > 0");
    Rat dslope = (alpha.self_intersection(sp) - w2) / (2 * wa);
    // omega.alpha / (omega^2 (D + sqrt(D^2+1))) = (omega.alpha/omega^2)(sqrt(D^2+1) - D)
    Rat q2 = wa / w2;
    return rank_bound_core(-dslope * q2, q2, dslope * dslope + 1, enclosure_width);
}

RankBound rank_bound_dv(const SurfaceParams& sp, const DivisorClass& alpha, const Rat& d,
                        const Rat& v, const Rat& enclosure_width) {
    if (d <= 0 || v <= 0) fail(Err::HypothesisViolated, "rank bound needs D > 0 and V > 0");
    DivisorClass h{Rat(1), d + sp.e};
    Rat u = intersect(h, alpha, sp);  // omega.alpha / R_omega
    if (u <= 0) fail(Err::HypothesisViolated, "rank bound needs omega.alpha > 0");
    // With R^2 = V/(D + e/2):  bound = (u / 2V)(sqrt(k^2 + R^2) - k),
    // k = (alpha^2 - 2V) / (2u).
    Rat k = (alpha.self_intersection(sp) - 2 * v) / (2 * u);
    Rat r2 = v / (d + sp.half_e());
    Rat q2 = u / (2 * v);
    return rank_bound_core(-k * q2, q2, k * k + r2, enclosure_width);
}

namespace {

struct EnumContext {
    SurfaceParams sp;
    Rat d, v;  // (D_omega, V_omega)
    ChargeSpec spec;
    ChernVector vL;
    DivisorClass alpha;
    Rat im_L;
};

EnumContext make_context(const ChargeSpec& spec, const ChernVector& v_L) {
    if (!(v_L.n == 1) || !v_L.genuine() ||
        v_L.s != v_L.c1().self_intersection(spec.surface) / 2)
        fail(Err::HypothesisViolated, "destabilizer search needs a line-bundle class");
    Rat d, v;
    if (spec.family == Family::VD) {
        d = spec.D;
        v = spec.V;
    } else if (spec.family == Family::Standard && spec.b_field.is_zero()) {
        if (spec.omega) {
            RdvCoords r = rdv_of(*spec.omega, spec.surface);
            d = r.d;
            v = r.v;
        } else {
            d = spec.omega_dv->first;
            v = spec.omega_dv->second;
        }
    } else {
        fail(Err::InvalidSpec, "destabilizer search expects the VD family or standard B = 0");
    }
    EnumContext ctx{spec.surface, d, v, ChargeSpec::vd(v, d, spec.surface), v_L,
                    v_L.c1(), Rat(0)};
    ctx.im_L = eval(ctx.spec, v_L).im;
    return ctx;
}

// Candidate admission shared by both scans.
bool admit(const EnumContext& ctx, const ChernVector& A) {
    ChargeValue z = eval(ctx.spec, A);
    if (!(z.im > 0) || !(z.im < ctx.im_L)) return false;
    if (!heart_necessary(ctx.spec, A)) return false;
    return compare_phase(ctx.spec, A, ctx.vL) >= 0;
}

bool total_less(const Destabilizer& x, const Destabilizer& y) {
    auto key = [](const Destabilizer& t) {
        return std::make_tuple(t.cls.n, t.curve.a, t.curve.b, Rat(t.points), t.cls.s,
                               t.cls.a, t.cls.b);
    };
    return key(x) < key(y);
}

std::vector<Destabilizer> enumerate_impl(const ChargeSpec& spec, const ChernVector& v_L,
                                         const EnumBounds& bounds, bool parallel) {
    EnumContext ctx = make_context(spec, v_L);
    std::vector<Destabilizer> out;

    // Rank-one ansatz A = L(-C) (x) I_Z over the (p, q, n) grid.
    const long np = bounds.max_c_theta + 1, nq = bounds.max_c_f + 1,
               nn = bounds.max_points + 1;
    const long total = np * nq * nn;
    std::vector<char> keep(static_cast<std::size_t>(total), 0);
    auto probe = [&](long idx) {
        long p = idx / (nq * nn);
        long q = (idx / nn) % nq;
        long n = idx % nn;
        if (p == 0 && q == 0) return;  // C = 0 with any n is L itself or a quotient twist
        DivisorClass C{Rat(p), Rat(q)};
        ChernVector A = twist(ctx.vL, -C, ctx.sp);
        A.s -= n;
        keep[idx] = admit(ctx, A) ? 1 : 0;
    };
    if (parallel) {
        ELLK3_PRAGMA_OMP(parallel for schedule(static) num_threads(thread_cap()))
        for (long i = 0; i < total; ++i) probe(i);
    } else {
        for (long i = 0; i < total; ++i) probe(i);
    }
    for (long i = 0; i < total; ++i) {
        if (!keep[i]) continue;
        long p = i / (nq * nn), q = (i / nn) % nq, n = i % nn;
        DivisorClass C{Rat(p), Rat(q)};
        ChernVector A = twist(ctx.vL, -C, ctx.sp);
        A.s -= n;
        out.push_back({A, C, n, true, compare_phase(ctx.spec, A, ctx.vL)});
    }

    // Higher ranks up to the rank-bound floor: scan the ch1 box, ch2 runs
    // over the residue class c1^2/2 + Z between the phase and BG cutoffs.
    long rmax = rank_bound_dv(ctx.sp, ctx.alpha, ctx.d, ctx.v).floor_value;
    ChargeValue zL = eval(ctx.spec, ctx.vL);
    Rat rho_L = -zL.re / zL.im;
    for (long r = 2; r <= rmax; ++r) {
        for (long p = -bounds.max_c_theta; p <= bounds.max_c_theta; ++p) {
            for (long q = -bounds.max_c_f; q <= bounds.max_c_f; ++q) {
                DivisorClass c1{Rat(p), Rat(q)};
                ChernVector base{Rat(r), Rat(p), Rat(q), Rat(0)};
                Rat im_A = eval(ctx.spec, base).im;
                if (!(im_A > 0) || !(im_A < ctx.im_L)) continue;
                Rat c1sq = c1.self_intersection(ctx.sp);
                Rat s_hi = c1sq / (2 * r);
                if (bounds.use_strong_bg && ctx.sp.is_k3()) s_hi += -Rat(r) + Rat(1, r);
                Rat s_lo = ctx.v * r + rho_L * im_A;  // phase(A) >= phase(L)
                // step through s = c1^2/2 - c2, c2 integer
                Rat s = c1sq / 2 - floor_rat(c1sq / 2 - s_hi);
                while (s > s_hi) s -= 1;
                for (; s >= s_lo; s -= 1) {
                    ChernVector A{Rat(r), Rat(p), Rat(q), s};
                    if (!admit(ctx, A)) continue;
                    out.push_back({A, DivisorClass(), -1, false,
                                   compare_phase(ctx.spec, A, ctx.vL)});
                }
            }
        }
    }

    std::sort(out.begin(), out.end(), total_less);
    return out;
}

}  // namespace

std::vector<Destabilizer> enumerate_destabilizers(const ChargeSpec& spec,
                                                  const ChernVector& v_L,
                                                  const EnumBounds& bounds) {
    return enumerate_impl(spec, v_L, bounds, true);
}

std::vector<Destabilizer> enumerate_destabilizers_serial(const ChargeSpec& spec,
                                                         const ChernVector& v_L,
                                                         const EnumBounds& bounds) {
    return enumerate_impl(spec, v_L, bounds, false);
}

const char* cert_status_name(CertStatus s) {
    switch (s) {
        case CertStatus::NoNumericalWall: return "no-numerical-wall";
        case CertStatus::CandidateFound: return "candidate-found";
        case CertStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

Certificate stability_certificate(const ChargeSpec& spec, const ChernVector& v_L,
                                  const EnumBounds& bounds) {
    EnumContext ctx = make_context(spec, v_L);
    if (!(ctx.im_L > 0))
        return {CertStatus::Inconclusive, {}, "Im Z(L) <= 0: L not in heart"};

    std::vector<Destabilizer> found = enumerate_destabilizers(spec, v_L, bounds);
    if (!found.empty()) return {CertStatus::CandidateFound, std::move(found), ""};

    // Beyond-bounds exclusion: with beta = ((omega^2 - alpha^2)/(2 omega.alpha))
    // omega + alpha ample and the volume inequality, the defining relation of a
    // wall has positive left side and negative right side for every effective
    // negative curve, point length and quotient rank.  beta ample reduces to
    // beta.f > 0 and beta.Theta > 0 on this lattice.
    // omega.alpha / R = h.alpha with h = Theta + (D+e) f
    DivisorClass h{Rat(1), ctx.d + ctx.sp.e};
    Rat ha = intersect(h, ctx.alpha, ctx.sp);
    if (!(ha > 0))
        return {CertStatus::Inconclusive, {}, "omega.alpha <= 0: exclusion argument unavailable"};
    // beta.f = (2V - alpha^2)/(2 h.alpha) + alpha.f ; beta.Theta likewise.
    Rat k = (2 * ctx.v - ctx.alpha.self_intersection(ctx.sp)) / (2 * ha);
    Rat beta_f = k + ctx.alpha.a;
    Rat beta_theta = k * ctx.d + intersect(DivisorClass::theta(), ctx.alpha, ctx.sp);
    Rat vol = 4 * ctx.v * (ctx.d + ctx.sp.half_e()) - ha * ha;
    if (!(beta_f > 0))
        return {CertStatus::Inconclusive, {}, "twisted class not positive on f"};
    if (!(beta_theta > 0))
        return {CertStatus::Inconclusive, {}, "twisted class not positive on Theta"};
    if (vol < 0)
        return {CertStatus::Inconclusive, {}, "volume inequality fails beyond bounds"};
    return {CertStatus::NoNumericalWall, {}, ""};
}

}  // namespace ellk3
