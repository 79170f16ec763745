// Command-line front end: exact stability-region arithmetic for fiber-degree-
// one line bundles on Weierstrass elliptic surfaces.  Exit codes: 0 success,
// 2 domain error, 3 parse/usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "ellk3/cce.hpp"
#include "ellk3/charges.hpp"
#include "ellk3/fmt.hpp"
#include "ellk3/json_io.hpp"
#include "ellk3/regions.hpp"
#include "ellk3/verify.hpp"
#include "ellk3/walls.hpp"

using namespace ellk3;
using nlohmann::json;

namespace {

struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rat need_rat(const std::string& s, const std::string& what) {
    auto r = parse_rat(s);
    if (!r) throw ParseFailure("malformed rational for " + what + ": '" + s + "'");
    return *r;
}

DivisorClass need_divisor(const std::string& s, const std::string& what) {
    try {
        return divisor_from_string(s);
    } catch (const std::exception& e) {
        throw ParseFailure("bad divisor for " + what + ": " + e.what());
    }
}

ChernVector need_chern(const std::string& s) {
    try {
        return chern_from_string(s);
    } catch (const std::exception& e) {
        throw ParseFailure(std::string("bad chern vector: ") + e.what());
    }
}

json charge_value_json(const ChargeValue& z) {
    json j{{"re", rat_str(z.re)}, {"im", rat_str(z.im)}};
    if (z.scale == ScaleNote::ImFactoredPositive) {
        j["im_scale_note"] = "positive scalar factored from im";
        j["im_scale_approx"] = z.im_scale;
    }
    return j;
}

json destabilizer_json(const Destabilizer& d) {
    json j{{"chern", chern_to_json(d.cls)},
           {"rank_one_ansatz", d.rank_one_ansatz},
           {"phase_relation", d.phase_cmp == 0 ? "equal" : "greater"}};
    if (d.rank_one_ansatz) {
        j["curve"] = divisor_to_string(d.curve);
        j["points"] = d.points;
    }
    return j;
}

struct ChargeArgs {
    std::string family;
    std::string omega, b_field = "0,0", H;
    std::string V, D, t, dalpha, param;
    std::string domega, vomega;
    std::string chern;
};

ChargeSpec build_spec(const ChargeArgs& a, const SurfaceParams& sp) {
    auto opt_param = [&]() -> std::optional<Rat> {
        if (a.param.empty()) return std::nullopt;
        return need_rat(a.param, "--param");
    };
    if (a.family == "standard" || a.family == "todd") {
        bool todd = a.family == "todd";
        DivisorClass B = need_divisor(a.b_field, "--B");
        if (!a.omega.empty()) {
            DivisorClass w = need_divisor(a.omega, "--omega");
            return todd ? ChargeSpec::todd(w, B, sp) : ChargeSpec::standard(w, B, sp);
        }
        if (a.domega.empty() || a.vomega.empty())
            throw ParseFailure("standard/todd need --omega or --domega/--vomega");
        Rat d = need_rat(a.domega, "--domega"), v = need_rat(a.vomega, "--vomega");
        return todd ? ChargeSpec::todd_dv(d, v, B, sp) : ChargeSpec::standard_dv(d, v, B, sp);
    }
    if (a.family == "vd")
        return ChargeSpec::vd(need_rat(a.V, "--V"), need_rat(a.D, "--D"), sp);
    if (a.family == "ray")
        return ChargeSpec::ray(need_divisor(a.H, "--H"), need_divisor(a.b_field, "--B"),
                               need_rat(a.t, "--t"), sp);
    if (a.family == "weak-h") return ChargeSpec::weak_h(sp, opt_param());
    if (a.family == "weak-vh") return ChargeSpec::weak_vh(need_rat(a.V, "--V"), sp);
    if (a.family == "weak-d") return ChargeSpec::weak_d(need_rat(a.D, "--D"), sp);
    if (a.family == "weak-special")
        return ChargeSpec::weak_special(need_rat(a.dalpha, "--dalpha"), opt_param());
    throw ParseFailure("unknown family: " + a.family);
}

int run(int argc, char** argv) {
    CLI::App app{"exact stability-region toolkit for elliptic-surface line bundles"};
    app.require_subcommand(1);

    std::string e_str = "2";
    double tol = 1e-9;
    unsigned seed = 0xe11c353;
    std::string format = "json";
    app.add_option("--e", e_str, "surface invariant e = -Theta^2")->capture_default_str();
    app.add_option("--tol", tol, "float-residual tolerance")->capture_default_str();
    app.add_option("--seed", seed, "seed for sampled suites")->capture_default_str();
    app.add_option("--format", format, "output format: json|csv|svg")->capture_default_str();

    // charge eval
    auto* charge = app.add_subcommand("charge", "central charge evaluation");
    auto* charge_eval = charge->add_subcommand("eval", "evaluate a charge on a class");
    ChargeArgs ca;
    charge_eval->add_option("--family", ca.family,
                            "standard|todd|vd|ray|weak-h|weak-vh|weak-d|weak-special")
        ->required();
    charge_eval->add_option("--omega", ca.omega, "omega as 'a,b'");
    charge_eval->add_option("--domega", ca.domega, "D_omega (scalar-factored form)");
    charge_eval->add_option("--vomega", ca.vomega, "V_omega (scalar-factored form)");
    charge_eval->add_option("--B", ca.b_field, "B-field as 'a,b'");
    charge_eval->add_option("--H", ca.H, "ray divisor as 'a,b'");
    charge_eval->add_option("--V", ca.V, "V parameter");
    charge_eval->add_option("--D", ca.D, "D parameter");
    charge_eval->add_option("--t", ca.t, "ray parameter t");
    charge_eval->add_option("--dalpha", ca.dalpha, "D_alpha for weak-special");
    charge_eval->add_option("--param", ca.param, "projective kernel-phase parameter");
    charge_eval->add_option("--chern", ca.chern, "chern vector JSON")->required();

    // fmt apply
    auto* fmtc = app.add_subcommand("fmt", "cohomological transform");
    auto* fmt_apply = fmtc->add_subcommand("apply", "apply a lattice map");
    std::string map_name, fmt_chern, fmt_dalpha = "0";
    fmt_apply->add_option("--map", map_name, "phi|phi-hat|psi|psi-prime|upsilon|upsilon-prime")
        ->required();
    fmt_apply->add_option("--dalpha", fmt_dalpha, "D_alpha for psi/psi-prime");
    fmt_apply->add_option("--chern", fmt_chern, "chern vector JSON")->required();

    // cce solve / verify
    auto* cce = app.add_subcommand("cce", "central charge equation");
    auto* cce_solve = cce->add_subcommand("solve", "solve for (omega', B', T)");
    std::string cce_d, cce_v, cce_b = "0,0";
    bool cce_todd = true;
    cce_solve->add_option("--domega", cce_d, "D_omega")->required();
    cce_solve->add_option("--vomega", cce_v, "V_omega")->required();
    cce_solve->add_option("--b", cce_b, "B as 'a,b'");
    cce_solve->add_flag("--todd,!--no-todd", cce_todd, "target charge carries the Todd twist");
    auto* cce_verify = cce->add_subcommand("verify", "run the cce identity suite");
    std::string cce_suite = "cce";
    cce_verify->add_option("--suite", cce_suite, "suite to run")->capture_default_str();

    // region classify / raster
    auto* region = app.add_subcommand("region", "stability-region queries");
    auto* rc = region->add_subcommand("classify", "classify one (D, V) point");
    std::string r_dalpha, r_d, r_v;
    rc->add_option("--dalpha", r_dalpha)->required();
    rc->add_option("--d", r_d)->required();
    rc->add_option("--v", r_v)->required();
    auto* rr = region->add_subcommand("raster", "raster a window of the (D, V) plane");
    std::string rr_dalpha, rr_window, rr_out;
    int rr_nx = 64, rr_ny = 64;
    rr->add_option("--dalpha", rr_dalpha)->required();
    rr->add_option("--window", rr_window, "d0,v0,d1,v1")->required();
    rr->add_option("--nx", rr_nx);
    rr->add_option("--ny", rr_ny);
    rr->add_option("--out", rr_out, "output file (stdout when absent)");

    // wall subcommands
    auto* wall = app.add_subcommand("wall", "potential-wall geometry");
    auto* wq = wall->add_subcommand("quadric", "wall quadric of two classes");
    std::string wq_d0 = "1", wq_vE, wq_vF;
    wq->add_option("--d0", wq_d0, "frame base D0");
    wq->add_option("--vE", wq_vE, "first chern vector JSON")->required();
    wq->add_option("--vF", wq_vF, "second chern vector JSON")->required();
    auto* ws = wall->add_subcommand("slice", "slice circle at fixed z");
    std::string ws_d0 = "1", ws_vE, ws_vF, ws_z;
    ws->add_option("--d0", ws_d0);
    ws->add_option("--vE", ws_vE)->required();
    ws->add_option("--vF", ws_vF)->required();
    ws->add_option("--z", ws_z)->required();
    auto* wr = wall->add_subcommand("ray", "mini-walls on a volume ray");
    std::string wr_H, wr_B = "0,0", wr_target;
    std::vector<std::string> wr_cands;
    wr->add_option("--H", wr_H, "ample divisor 'a,b'")->required();
    wr->add_option("--B", wr_B, "B-field 'a,b'");
    wr->add_option("--target", wr_target, "target chern JSON")->required();
    wr->add_option("--candidate", wr_cands, "candidate chern JSON (repeatable)");

    // certify (also reachable as `wall certify`)
    std::string ct_spec, ct_alpha, ct_bounds = "3,3,3";
    bool ct_strong = false;
    auto add_certify = [&](CLI::App* parent) {
        auto* c = parent->add_subcommand("certify", "numerical-wall certificate");
        c->add_option("--spec", ct_spec, "charge spec, e.g. vd:2,2")->required();
        c->add_option("--alpha", ct_alpha, "D_alpha of the line bundle")->required();
        c->add_option("--bounds", ct_bounds, "maxC_theta,maxC_f,maxPoints");
        c->add_flag("--strong-bg", ct_strong, "filter higher ranks by the strong BG form");
        return c;
    };
    auto* certify_top = add_certify(&app);
    auto* certify_wall = add_certify(wall);

    // verify
    auto* verify = app.add_subcommand("verify", "re-derive the acceptance identities");
    std::string v_suite = "all";
    verify->add_option("--suite", v_suite, "all|fmt|cce|charges|regions|walls");

    // Allow the global flags (--e, --tol, ...) to appear after a subcommand.
    auto enable_fallthrough = [](CLI::App* a, auto&& self) -> void {
        for (CLI::App* sub : a->get_subcommands({})) {
            sub->fallthrough();
            self(sub, self);
        }
    };
    enable_fallthrough(&app, enable_fallthrough);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;  // usage errors exit 3, --help exits 0
    }

    SurfaceParams sp{need_rat(e_str, "--e")};
    if (!sp.integral_e())
        std::cerr << "warning: e = " << rat_str(sp.e) << " is not an integer\n";
    std::ostream& out = std::cout;

    if (charge_eval->parsed()) {
        ChargeSpec spec = build_spec(ca, sp);
        ChernVector v = need_chern(ca.chern);
        ChargeValue z = eval(spec, v);
        json j = charge_value_json(z);
        if (z.is_zero() && !spec.is_weak()) {
            j["phase"] = nullptr;
        } else {
            PhaseValue p = phase(spec, v);
            j["phase"] = p.phi ? json(rat_str(*p.phi)) : json(p.phi_float());
        }
        out << j.dump() << "\n";
        return 0;
    }

    if (fmt_apply->parsed()) {
        ChernVector v = need_chern(fmt_chern);
        Rat da = need_rat(fmt_dalpha, "--dalpha");
        LatticeMap m = [&] {
            if (map_name == "phi") return phi_map(sp);
            if (map_name == "phi-hat") return phi_hat_map(sp);
            if (map_name == "psi") return psi_map(sp, da);
            if (map_name == "psi-prime") return psi_prime_map(sp, da);
            if (map_name == "upsilon") return upsilon_map(sp);
            if (map_name == "upsilon-prime") return upsilon_prime_map(sp);
            throw ParseFailure("unknown map: " + map_name);
        }();
        out << chern_to_json(m.apply(v)).dump() << "\n";
        return 0;
    }

    if (cce_solve->parsed()) {
        Rat d = need_rat(cce_d, "--domega"), v = need_rat(cce_v, "--vomega");
        DivisorClass b = need_divisor(cce_b, "--b");
        TransitionData t;
        if (cce_todd) {
            t = solve_todd(sp, d, v, b);
        } else {
            if (b.a != 0) throw ParseFailure("--no-todd requires a pure-fiber B");
            t = solve_simple(sp, d, v, b.b);
        }
        json j{{"d_omega_prime", rat_str(t.omega_prime.d)},
               {"v_omega_prime", rat_str(t.omega_prime.v)},
               {"b_prime", divisor_to_string(t.b_prime)},
               {"a_prime", rat_str(t.a_prime)},
               {"T", {{t.T[0][0], t.T[0][1]}, {t.T[1][0], t.T[1][1]}}},
               {"det_T", t.det_T},
               {"det_T_squared", rat_str(t.det_T_squared)},
               {"residual", t.residual},
               {"exact_residual", rat_str(t.exact_residual)}};
        if (t.residual > tol) j["warning"] = "residual exceeds --tol";
        out << j.dump() << "\n";
        return 0;
    }

    if (cce_verify->parsed()) v_suite = cce_suite;  // printed below

    if (rc->parsed()) {
        RegionQuery q(sp, need_rat(r_dalpha, "--dalpha"), need_rat(r_d, "--d"),
                      need_rat(r_v, "--v"), true);
        RegionLabel l = classify(q);
        json j{{"positive", l.positive},
               {"volume_ok", l.volume_ok},
               {"twisted_ample", l.twisted_ample},
               {"thm1_stable", l.thm1_stable},
               {"transform_case_stable", l.transform_case_stable},
               {"theorem_region_stable", l.theorem_region_stable},
               {"theorem", provenance_name(l.provenance)}};
        out << j.dump() << "\n";
        return 0;
    }

    if (rr->parsed()) {
        auto nums = rr_window;
        std::vector<Rat> parts;
        std::size_t pos = 0;
        for (int i = 0; i < 4; ++i) {
            auto comma = nums.find(',', pos);
            std::string piece = comma == std::string::npos ? nums.substr(pos)
                                                           : nums.substr(pos, comma - pos);
            parts.push_back(need_rat(piece, "--window"));
            pos = comma == std::string::npos ? nums.size() : comma + 1;
        }
        RegionQuery base(sp, need_rat(rr_dalpha, "--dalpha"), Rat(1), Rat(1));
        RasterGrid g = raster(base, {parts[0], parts[1], parts[2], parts[3]}, rr_nx, rr_ny);
        RasterFormat fmt_kind = RasterFormat::Csv;
        if (format == "svg" || (!rr_out.empty() && rr_out.size() > 4 &&
                                rr_out.substr(rr_out.size() - 4) == ".svg"))
            fmt_kind = RasterFormat::Svg;
        std::string payload = render_raster(g, fmt_kind);
        if (rr_out.empty()) {
            out << payload;
        } else {
            std::ofstream f(rr_out, std::ios::binary);
            f << payload;
        }
        return 0;
    }

    if (wq->parsed() || ws->parsed()) {
        bool slice_mode = ws->parsed();
        WallFrame frame(sp, need_rat(slice_mode ? ws_d0 : wq_d0, "--d0"));
        ChernVector vE = need_chern(slice_mode ? ws_vE : wq_vE);
        ChernVector vF = need_chern(slice_mode ? ws_vF : wq_vF);
        WallRecord rec = wall_quadric(frame, vE, vF);
        if (!slice_mode) {
            DisplayDiagnostic diag = display_diagnostic(rec);
            json coeffs = json::array();
            for (const auto& c : rec.quadric.c) coeffs.push_back(rat_str(c));
            json j{{"coefficients", coeffs},
                   {"monomials", {"x2", "y2", "z2", "xy", "xz", "yz", "x", "y", "z", "1"}},
                   {"identically_zero", rec.quadric.identically_zero},
                   {"display_check",
                    diag.applicable ? json(diag.note) : json(nullptr)}};
            out << j.dump() << "\n";
            return 0;
        }
        auto circle = slice_circle(rec, need_rat(ws_z, "--z"));
        json j;
        if (circle) {
            j = {{"center_y", rat_str(circle->center_y)},
                 {"radius_squared", rat_str(circle->radius2)}};
        } else {
            j = {{"empty", true}};
        }
        out << j.dump() << "\n";
        return 0;
    }

    if (wr->parsed()) {
        DivisorClass H = need_divisor(wr_H, "--H"), B = need_divisor(wr_B, "--B");
        ChernVector target = need_chern(wr_target);
        std::vector<ChernVector> cands;
        for (const auto& c : wr_cands) cands.push_back(need_chern(c));
        auto walls = mini_walls_on_ray(sp, H, B, target, cands);
        json arr = json::array();
        for (const auto& w : walls)
            arr.push_back({{"t", rat_str(w.t_root)},
                           {"candidate", chern_to_json(w.candidate)},
                           {"side", w.side == RayMiniWall::Side::StableAbove
                                        ? "stable-above"
                                        : "unstable-below"}});
        out << arr.dump() << "\n";
        return 0;
    }

    if (certify_top->parsed() || certify_wall->parsed()) {
        // spec string: vd:V,D
        auto colon = ct_spec.find(':');
        if (colon == std::string::npos || ct_spec.substr(0, colon) != "vd")
            throw ParseFailure("certify --spec expects vd:V,D");
        auto comma = ct_spec.find(',', colon);
        if (comma == std::string::npos) throw ParseFailure("certify --spec expects vd:V,D");
        Rat V = need_rat(ct_spec.substr(colon + 1, comma - colon - 1), "--spec V");
        Rat D = need_rat(ct_spec.substr(comma + 1), "--spec D");
        Rat da = need_rat(ct_alpha, "--alpha");
        EnumBounds bounds;
        bounds.use_strong_bg = ct_strong;
        {
            std::vector<long> b;
            std::size_t pos = 0;
            for (int i = 0; i < 3; ++i) {
                auto comma2 = ct_bounds.find(',', pos);
                std::string piece = comma2 == std::string::npos
                                        ? ct_bounds.substr(pos)
                                        : ct_bounds.substr(pos, comma2 - pos);
                Rat r = need_rat(piece, "--bounds");
                if (!is_integer(r) || r < 0) throw ParseFailure("--bounds wants integers");
                b.push_back(to_long(r));
                pos = comma2 == std::string::npos ? ct_bounds.size() : comma2 + 1;
            }
            bounds.max_c_theta = b[0];
            bounds.max_c_f = b[1];
            bounds.max_points = b[2];
        }
        ChernVector L = line_bundle_class({Rat(1), da + sp.e}, sp);
        Certificate cert = stability_certificate(ChargeSpec::vd(V, D, sp), L, bounds);
        json arr = json::array();
        for (const auto& d : cert.candidates) arr.push_back(destabilizer_json(d));
        json j{{"status", cert_status_name(cert.status)},
               {"candidates", arr}};
        if (!cert.reason.empty()) j["reason"] = cert.reason;
        out << j.dump() << "\n";
        return 0;
    }

    if (verify->parsed() || cce_verify->parsed()) {
        std::vector<CheckResult> results;
        try {
            results = run_acceptance(v_suite, seed);
        } catch (const std::invalid_argument& e) {
            throw ParseFailure(e.what());
        }
        bool all = true;
        for (const auto& r : results) {
            all = all && r.pass;
            out << (r.pass ? "ok   " : "FAIL ") << "[" << r.suite << "] " << r.number << ". "
                << r.name;
            if (!r.pass && !r.detail.empty()) out << " -- " << r.detail;
            out << "\n";
        }
        out << (all ? "all checks passed" : "CHECKS FAILED") << " ("
            << results.size() << " run)\n";
        return all ? 0 : 1;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
