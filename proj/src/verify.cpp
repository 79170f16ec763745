#include "ellk3/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "ellk3/cce.hpp"
#include "ellk3/charges.hpp"
#include "ellk3/fmt.hpp"
#include "ellk3/regions.hpp"
#include "ellk3/walls.hpp"

namespace ellk3 {

namespace {

using Clock = std::chrono::steady_clock;

struct Runner {
    std::string want_suite;
    unsigned seed;
    std::vector<CheckResult> results;

    bool wanted(const std::string& suite) const {
        return want_suite == "all" || want_suite == suite;
    }

    template <typename F>
    void run(int number, const std::string& suite, const std::string& name,
             double budget_seconds, F&& body) {
        if (!wanted(suite)) return;
        CheckResult r{number, suite, name, false, 0.0, budget_seconds, ""};
        auto t0 = Clock::now();
        std::ostringstream detail;
        try {
            r.pass = body(detail);
        } catch (const std::exception& e) {
            r.pass = false;
            detail << "exception: " << e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (budget_seconds > 0 && r.seconds > budget_seconds) {
            r.pass = false;
            detail << " [exceeded " << budget_seconds << "s budget]";
        }
        r.detail = detail.str();
        results.push_back(std::move(r));
    }
};

Rat rnd_rat(std::mt19937_64& rng, long lo, long hi, long dmax) {
    std::uniform_int_distribution<long> num(lo, hi), den(1, dmax);
    return rat(num(rng), den(rng));
}

Rat rnd_pos(std::mt19937_64& rng, long hi = 10, long dmax = 6) {
    return rnd_rat(rng, 1, hi, dmax);
}

const SurfaceParams kK3 = SurfaceParams::k3();

bool criterion_fmt_identities(std::ostringstream& why) {
    ChernVector ox{Rat(1), Rat(0), Rat(0), Rat(0)};
    if (!(phi(kK3, ox) == ChernVector{Rat(0), Rat(-1), Rat(0), Rat(1)})) {
        why << "phi(O_X) mismatch";
        return false;
    }
    ChernVector omt = line_bundle_class({Rat(-1), Rat(0)}, kK3);
    if (!(phi(kK3, omt) == ChernVector{Rat(-1), Rat(-1), Rat(0), Rat(1)})) {
        why << "phi(O(-Theta)) mismatch";
        return false;
    }
    for (long da = 0; da <= 3; ++da) {
        NamedParams np;
        np.d_alpha = Rat(da);
        np.m = -1;
        ChernVector otm1 = chern_named(Named::SectionTwist, np, kK3);
        ChernVector l0 = chern_named(Named::L0, np, kK3);
        ChernVector l1 = chern_named(Named::L1, np, kK3);
        if (!(psi(kK3, Rat(da), -otm1) == -l0) || !(psi(kK3, Rat(da), -ox) == l1)) {
            why << "psi correspondence failed at Da=" << da;
            return false;
        }
        if (!(upsilon(kK3, otm1) == ox)) {
            why << "upsilon(O_Theta(-1)) mismatch";
            return false;
        }
        if (!named_object_checks(kK3, Rat(da)).all_pass) {
            why << "named object report failed at Da=" << da;
            return false;
        }
    }
    return true;
}

bool criterion_quasi_inverse(std::ostringstream& why) {
    LatticeMap minus_id = LatticeMap::identity().negated();
    for (Rat e : {Rat(2), Rat(3)}) {
        SurfaceParams sp(e);
        if (!(phi_hat_map(sp).after(phi_map(sp)) == minus_id) ||
            !(phi_map(sp).after(phi_hat_map(sp)) == minus_id)) {
            why << "quasi-inverse relation failed at e=" << rat_str(e);
            return false;
        }
    }
    return true;
}

bool criterion_euler_invariance(std::ostringstream& why, unsigned seed) {
    std::array<ChernVector, 4> basis = {
        ChernVector{Rat(1), Rat(0), Rat(0), Rat(0)}, ChernVector{Rat(0), Rat(1), Rat(0), Rat(0)},
        ChernVector{Rat(0), Rat(0), Rat(1), Rat(0)}, ChernVector{Rat(0), Rat(0), Rat(0), Rat(1)}};
    // discover the sign on the basis first (recorded: +1), then assert globally
    for (const auto& v : basis)
        for (const auto& w : basis)
            if (euler_pairing(phi(kK3, v), phi(kK3, w), kK3) != euler_pairing(v, w, kK3)) {
                why << "basis pair changed the pairing";
                return false;
            }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 1000; ++i) {
        ChernVector v{rnd_rat(rng, -8, 8, 5), rnd_rat(rng, -8, 8, 5), rnd_rat(rng, -8, 8, 5),
                      rnd_rat(rng, -8, 8, 5)};
        ChernVector w{rnd_rat(rng, -8, 8, 5), rnd_rat(rng, -8, 8, 5), rnd_rat(rng, -8, 8, 5),
                      rnd_rat(rng, -8, 8, 5)};
        if (euler_pairing(phi(kK3, v), phi(kK3, w), kK3) != euler_pairing(v, w, kK3)) {
            why << "random pair " << i << " changed the pairing";
            return false;
        }
    }
    return true;
}

bool criterion_special_point(std::ostringstream& why) {
    for (long da = 0; da <= 5; ++da) {
        PsiZImage img = psi_z(Rat(0), Rat(0), Rat(da));
        bool ok = img.d_omega_prime == 1 && img.r_b_prime == rat(1, 2) &&
                  img.v_omega_prime == rat(1, 2) && img.rb_db_prime == -Rat(da) - rat(5, 2);
        // reconstruct omega'_0 = (Theta+3f)/2 and B'_0 = (Theta+(-2Da-3)f)/2
        Rat d_bp = img.rb_db_prime / img.r_b_prime;
        DivisorClass b_prime{img.r_b_prime, img.r_b_prime * (d_bp + 2)};
        RdvCoords op{1, img.v_omega_prime / (img.d_omega_prime + 1), img.d_omega_prime,
                     img.v_omega_prime};
        ok = ok && divisor_of_rdv(op, kK3) == DivisorClass{rat(1, 2), rat(3, 2)} &&
             b_prime == DivisorClass{rat(1, 2), (-2 * Rat(da) - 3) / 2};
        if (!ok) {
            why << "special point mismatch at Da=" << da;
            return false;
        }
    }
    return true;
}

bool criterion_solver_residuals(std::ostringstream& why, unsigned seed) {
    std::mt19937_64 rng(seed + 1);
    int done = 0;
    for (int i = 0; done < 50 && i < 200; ++i) {
        Rat d = rnd_pos(rng), v = rnd_pos(rng), l = rnd_rat(rng, -5, 5, 4);
        TransitionData t = solve_simple(kK3, d, v, l);
        if (t.exact_residual != 0 || t.residual > 1e-9 || !(t.det_T > 0)) {
            why << "solve_simple residual failure";
            return false;
        }
        ++done;
    }
    done = 0;
    for (int i = 0; done < 50 && i < 400; ++i) {
        Rat d = rnd_pos(rng), v = rnd_pos(rng);
        Rat rb = rnd_rat(rng, -3, 3, 4), db = rnd_rat(rng, -5, 5, 4);
        DivisorClass b = rb == 0 ? DivisorClass{Rat(0), db} : DivisorClass{rb, rb * (db + 2)};
        TransitionData t;
        try {
            t = solve_todd(kK3, d, v, b);
        } catch (const DomainError&) {
            continue;  // degenerate target volume
        }
        if (t.exact_residual != 0 || t.residual > 1e-9 || !(t.det_T > 0)) {
            why << "solve_todd residual failure";
            return false;
        }
        ++done;
    }
    if (done < 50) {
        why << "insufficient admissible random inputs";
        return false;
    }
    return true;
}

bool criterion_gh(std::ostringstream& why) {
    Rat tol(1, 1000000000000L);
    for (long da = 0; da <= 3; ++da)
        if (check_g(Rat(da)) > tol) {
            why << "check_g residual at Da=" << da;
            return false;
        }
    for (Rat v : {rat(1, 4), Rat(1), rat(7, 2)})
        if (check_h(v) > tol) {
            why << "check_h residual at V=" << rat_str(v);
            return false;
        }
    return true;
}

bool criterion_charge_fixtures(std::ostringstream& why) {
    ChargeSpec vd = ChargeSpec::vd(rat(7, 3), rat(5, 4), kK3);
    ChargeValue z1 = eval(vd, {Rat(-1), Rat(0), Rat(0), Rat(0)});
    if (z1.re != -rat(7, 3) || z1.im != 0) {
        why << "Z(O_X[1]) != -V";
        return false;
    }
    ChargeValue z2 = eval(vd, {Rat(0), Rat(1), Rat(0), Rat(0)});
    if (z2.re != 0 || z2.im != rat(5, 4)) {
        why << "Z(O_Theta(-1)) != iD";
        return false;
    }
    for (long da = 0; da <= 3; ++da) {
        ChargeValue z3 = eval(ChargeSpec::weak_special(Rat(da)), {Rat(0), Rat(1), Rat(0), Rat(-1)});
        if (z3.re != -Rat(da) - rat(3, 2) || z3.im != rat(1, 2)) {
            why << "Z'_0(O_Theta(-2)) mismatch at Da=" << da;
            return false;
        }
    }
    return true;
}

bool criterion_kernel_solver(std::ostringstream& why) {
    for (long da = 0; da <= 2; ++da) {
        auto sols = weak_special_kernel_solve(Rat(da), 20);
        bool ok = sols.size() == 2 && sols[0] == DivisorClass{Rat(0), -Rat(da) - 1} &&
                  sols[1] == DivisorClass{Rat(1), -Rat(da) - 2};
        if (!ok) {
            why << "kernel solve did not find exactly {L0, L1} at Da=" << da;
            return false;
        }
    }
    return true;
}

bool criterion_limit_phases(std::ostringstream& why) {
    double t = 1e-6;
    auto [re0, im0] = transformed_kernel_charge(t, t, 0, true);
    double phi0 = std::atan2(im0, re0) / M_PI;
    auto [re1, im1] = transformed_kernel_charge(t, t, 1, false);
    double phi1 = std::atan2(im1, re1) / M_PI;
    if (std::abs(phi0 - 0.75) > 1e-3 || std::abs(phi1 - 0.25) > 1e-3) {
        why << "numeric limit phases off: " << phi0 << ", " << phi1;
        return false;
    }
    for (const auto& spec :
         {ChargeSpec::weak_h(kK3), ChargeSpec::weak_vh(Rat(1), kK3),
          ChargeSpec::weak_d(Rat(1), kK3), ChargeSpec::weak_special(Rat(1))}) {
        for (const auto& entry : kernel_basis(spec)) {
            PhaseValue p = phase(spec, entry.cls);
            if (p.kind != PhaseValue::Kind::KernelTabulated || *p.phi != entry.phi) {
                why << "tabulated phase mismatch for " << entry.name;
                return false;
            }
        }
    }
    return true;
}

bool criterion_region_reductions(std::ostringstream& why, unsigned seed) {
    std::mt19937_64 rng(seed + 2);
    for (int i = 0; i < 1000; ++i) {
        Rat d = rnd_pos(rng, 20, 8), v = rnd_pos(rng, 20, 8);
        RegionQuery q1(kK3, Rat(-1), d, v);
        if (twisted_ample(q1) != (v > 1 + Rat(1) / d)) {
            why << "Da=-1 reduction failed at " << rat_str(d) << "," << rat_str(v);
            return false;
        }
        RegionQuery q2(kK3, Rat(-2), d, v);
        if (twisted_ample(q2) != (v > 1)) {
            why << "Da=-2 reduction failed at " << rat_str(d) << "," << rat_str(v);
            return false;
        }
    }
    return true;
}

bool criterion_tangency(std::ostringstream& why) {
    for (long da : {-3L, -4L, -5L}) {
        TangencyData t = tangency_data(kK3, Rat(da));
        bool ok = t.p_d == -(Rat(da) + 2) && t.derivative_at(t.p_d) == 0 &&
                  t.g_at_p == (Rat(da) + 2) * (Rat(da) + 1) && t.neighborhood_ok;
        if (!ok) {
            why << "tangency data failed at Da=" << da;
            return false;
        }
    }
    return true;
}

bool criterion_wall_geometry(std::ostringstream& why, unsigned seed) {
    std::mt19937_64 rng(seed + 3);
    WallFrame frame(kK3, Rat(1));
    ChernVector of{Rat(0), Rat(0), Rat(1), Rat(0)};
    std::vector<WallRecord> records;
    for (int i = 0; i < 10; ++i) {
        ChernVector v{rnd_rat(rng, -6, 6, 4), rnd_rat(rng, -6, 6, 4), rnd_rat(rng, -6, 6, 4),
                      rnd_rat(rng, -6, 6, 4)};
        if (v.n == 0) v.n = 1;
        records.push_back(wall_quadric(frame, v, of));
    }
    for (int j = 0; j < 5; ++j) {
        Rat z = rnd_rat(rng, -4, 4, 3);
        std::vector<SliceCircle> circles;
        for (const auto& r : records) {
            auto c = slice_circle(r, z);
            if (!c) continue;
            if (c->center_y != -z) {
                why << "slice center moved off (0, -z)";
                return false;
            }
            circles.push_back(*c);
        }
        // concentric circles are nested or equal; check radii are comparable
        for (std::size_t a = 0; a < circles.size(); ++a)
            for (std::size_t b = a + 1; b < circles.size(); ++b) {
                bool comparable = circles[a].radius2 <= circles[b].radius2 ||
                                  circles[b].radius2 <= circles[a].radius2;
                if (!comparable) {
                    why << "radii incomparable";
                    return false;
                }
            }
    }
    // random-point agreement with the defining relation
    for (int i = 0; i < 20; ++i) {
        ChernVector vE{rnd_rat(rng, -6, 6, 4), rnd_rat(rng, -6, 6, 4), rnd_rat(rng, -6, 6, 4),
                       rnd_rat(rng, -6, 6, 4)};
        ChernVector vF{rnd_rat(rng, -6, 6, 4), rnd_rat(rng, -6, 6, 4), rnd_rat(rng, -6, 6, 4),
                       rnd_rat(rng, -6, 6, 4)};
        WallRecord r = wall_quadric(frame, vE, vF);
        Rat x = rnd_pos(rng), y = rnd_rat(rng, -5, 5, 4), z = rnd_rat(rng, -5, 5, 4);
        if (r.quadric.eval(x, y, z) != wall_relation(frame, vE, vF, x, y, z)) {
            why << "quadric disagrees with the defining relation";
            return false;
        }
    }
    return true;
}

bool criterion_rank_bound(std::ostringstream& why) {
    RankBound rb = rank_bound(kK3, {Rat(1), Rat(1)}, {Rat(1), Rat(4)});
    if (rb.floor_value != 1) {
        why << "floor != 1";
        return false;
    }
    if (rb.enclosure_hi - rb.enclosure_lo >= rat(1, 1000000000000L)) {
        why << "enclosure too wide";
        return false;
    }
    // value is (sqrt(2)+1)/2
    double expect = (std::sqrt(2.0) + 1.0) / 2.0;
    if (std::abs(rb.approx - expect) > 1e-9) {
        why << "approximation off";
        return false;
    }
    return true;
}

bool criterion_certificates(std::ostringstream& why) {
    EnumBounds bounds;
    bounds.max_c_theta = bounds.max_c_f = bounds.max_points = 5;
    ChernVector l_m1 = line_bundle_class({Rat(1), Rat(1)}, kK3);  // Da = -1
    Certificate c1 = stability_certificate(ChargeSpec::vd(Rat(2), Rat(2), kK3), l_m1, bounds);
    if (c1.status != CertStatus::NoNumericalWall) {
        why << "(2,2) expected NoNumericalWall, got " << cert_status_name(c1.status);
        return false;
    }
    // frozen regression fixture from the first oracle run: Da = 0 at (1, 1/2)
    // has an empty finite search, but the beyond-bounds sign argument fails
    // on the Theta generator (the point is not twisted ample), so the
    // verdict is Inconclusive with that premise named.
    ChernVector l_0 = line_bundle_class({Rat(1), Rat(2)}, kK3);  // Da = 0
    Certificate c2 =
        stability_certificate(ChargeSpec::vd(rat(1, 2), Rat(1), kK3), l_0, bounds);
    if (c2.status != CertStatus::Inconclusive || !c2.candidates.empty() ||
        c2.reason.find("Theta") == std::string::npos) {
        why << "(1,1/2) fixture changed: " << cert_status_name(c2.status) << " '"
            << c2.reason << "' with " << c2.candidates.size() << " candidates";
        return false;
    }
    return true;
}

bool criterion_witness(std::ostringstream& why) {
    WitnessPoint p = witness_stable_not_twisted_ample(kK3, Rat(0));
    RegionQuery q(kK3, Rat(0), p.d, p.v);
    if (!positivity(q) || twisted_ample(q)) {
        why << "witness point not in the claimed region";
        return false;
    }
    return true;
}

}  // namespace

std::vector<CheckResult> run_acceptance(const std::string& suite, unsigned seed) {
    if (suite != "all" && suite != "fmt" && suite != "cce" && suite != "charges" &&
        suite != "regions" && suite != "walls")
        throw std::invalid_argument("unknown suite: " + suite);
    Runner r{suite, seed, {}};
    r.run(1, "fmt", "transform identities on named objects", 1.0,
          [](std::ostringstream& w) { return criterion_fmt_identities(w); });
    r.run(2, "fmt", "quasi-inverse relations", 1.0,
          [](std::ostringstream& w) { return criterion_quasi_inverse(w); });
    r.run(3, "fmt", "euler pairing invariance", 1.0,
          [&](std::ostringstream& w) { return criterion_euler_invariance(w, seed); });
    r.run(4, "cce", "special point image", 1.0,
          [](std::ostringstream& w) { return criterion_special_point(w); });
    r.run(5, "cce", "charge-equation residuals", 5.0,
          [&](std::ostringstream& w) { return criterion_solver_residuals(w, seed); });
    r.run(6, "cce", "g and h rotation identities", 1.0,
          [](std::ostringstream& w) { return criterion_gh(w); });
    r.run(7, "charges", "charge value fixtures", 1.0,
          [](std::ostringstream& w) { return criterion_charge_fixtures(w); });
    r.run(8, "charges", "kernel class solver", 1.0,
          [](std::ostringstream& w) { return criterion_kernel_solver(w); });
    r.run(9, "charges", "limit phases", 1.0,
          [](std::ostringstream& w) { return criterion_limit_phases(w); });
    r.run(10, "regions", "twisted-ample reductions", 1.0,
          [&](std::ostringstream& w) { return criterion_region_reductions(w, seed); });
    r.run(11, "regions", "boundary tangency", 1.0,
          [](std::ostringstream& w) { return criterion_tangency(w); });
    r.run(12, "walls", "slice centers and nesting", 2.0,
          [&](std::ostringstream& w) { return criterion_wall_geometry(w, seed); });
    r.run(13, "walls", "rank bound interval", 1.0,
          [](std::ostringstream& w) { return criterion_rank_bound(w); });
    r.run(14, "walls", "stability certificates", 10.0,
          [](std::ostringstream& w) { return criterion_certificates(w); });
    r.run(15, "regions", "stable but not twisted ample witness", 1.0,
          [](std::ostringstream& w) { return criterion_witness(w); });
    return r.results;
}

}  // namespace ellk3
