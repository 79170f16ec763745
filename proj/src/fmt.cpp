#include "ellk3/fmt.hpp"

namespace ellk3 {

ChernVector LatticeMap::apply(const ChernVector& v) const {
    std::array<Rat, 4> in = v.as_array();
    std::array<Rat, 4> out{Rat(0), Rat(0), Rat(0), Rat(0)};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += m[i][j] * in[j];
    return {out[0], out[1], out[2], out[3]};
}

LatticeMap LatticeMap::after(const LatticeMap& inner) const {
    LatticeMap r;
    r.name = name + "." + inner.name;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            r.m[i][j] = 0;
            for (int k = 0; k < 4; ++k) r.m[i][j] += m[i][k] * inner.m[k][j];
        }
    return r;
}

LatticeMap LatticeMap::negated() const {
    LatticeMap r = *this;
    r.name = "-" + name;
    for (auto& row : r.m)
        for (auto& x : row) x = -x;
    return r;
}

LatticeMap LatticeMap::inverse() const {
    // Gauss-Jordan over the rationals.
    std::array<std::array<Rat, 8>, 4> aug;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) aug[i][j] = m[i][j];
        for (int j = 4; j < 8; ++j) aug[i][j] = (j - 4 == i) ? Rat(1) : Rat(0);
    }
    for (int col = 0; col < 4; ++col) {
        int pivot = -1;
        for (int r = col; r < 4; ++r)
            if (aug[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) fail(Err::HypothesisViolated, "lattice map is singular");
        std::swap(aug[col], aug[pivot]);
        Rat p = aug[col][col];
        for (int j = 0; j < 8; ++j) aug[col][j] /= p;
        for (int r = 0; r < 4; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            Rat f = aug[r][col];
            for (int j = 0; j < 8; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    LatticeMap inv;
    inv.name = name + "^-1";
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv.m[i][j] = aug[i][j + 4];
    return inv;
}

Rat LatticeMap::det() const {
    std::array<std::array<Rat, 4>, 4> a = m;
    Rat d(1);
    for (int col = 0; col < 4; ++col) {
        int pivot = -1;
        for (int r = col; r < 4; ++r)
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Rat(0);
        if (pivot != col) {
            std::swap(a[col], a[pivot]);
            d = -d;
        }
        d *= a[col][col];
        for (int r = col + 1; r < 4; ++r) {
            if (a[r][col] == 0) continue;
            Rat f = a[r][col] / a[col][col];
            for (int j = col; j < 4; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return d;
}

LatticeMap LatticeMap::identity() {
    LatticeMap r;
    r.name = "id";
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = (i == j) ? Rat(1) : Rat(0);
    return r;
}

LatticeMap phi_map(const SurfaceParams& sp) {
    Rat h = sp.half_e();
    LatticeMap r;
    r.name = "phi";
    r.m = {{{Rat(0), Rat(1), Rat(0), Rat(0)},
            {Rat(-1), Rat(0), Rat(0), Rat(0)},
            {Rat(0), -h, Rat(0), Rat(1)},
            {h, Rat(0), Rat(-1), Rat(0)}}};
    return r;
}

LatticeMap phi_hat_map(const SurfaceParams& sp) {
    LatticeMap r = phi_map(sp).inverse().negated();
    r.name = "phi-hat";
    return r;
}

LatticeMap twist_map(const DivisorClass& m, const SurfaceParams& sp) {
    Rat theta_m = -sp.e * m.a + m.b;  // Theta.M
    LatticeMap r;
    r.name = "twist";
    r.m = {{{Rat(1), Rat(0), Rat(0), Rat(0)},
            {m.a, Rat(1), Rat(0), Rat(0)},
            {m.b, Rat(0), Rat(1), Rat(0)},
            {m.self_intersection(sp) / 2, theta_m, m.a, Rat(1)}}};
    return r;
}

static DivisorClass alpha_class(const SurfaceParams& sp, const Rat& d_alpha) {
    return {Rat(1), d_alpha + sp.e};
}

LatticeMap psi_map(const SurfaceParams& sp, const Rat& d_alpha) {
    LatticeMap r = phi_map(sp).after(twist_map(-alpha_class(sp, d_alpha), sp));
    r.name = "psi";
    return r;
}

LatticeMap psi_prime_map(const SurfaceParams& sp, const Rat& d_alpha) {
    LatticeMap r = twist_map(alpha_class(sp, d_alpha), sp).after(phi_hat_map(sp));
    r.name = "psi-prime";
    return r;
}

LatticeMap upsilon_map(const SurfaceParams& sp) {
    LatticeMap r = twist_map(DivisorClass::fiber(), sp).after(phi_map(sp));
    r.name = "upsilon";
    return r;
}

LatticeMap upsilon_prime_map(const SurfaceParams& sp) {
    LatticeMap r = phi_hat_map(sp).after(twist_map(-DivisorClass::fiber(), sp));
    r.name = "upsilon-prime";
    return r;
}

ChernVector phi(const SurfaceParams& sp, const ChernVector& v) { return phi_map(sp).apply(v); }
ChernVector phi_hat(const SurfaceParams& sp, const ChernVector& v) { return phi_hat_map(sp).apply(v); }
ChernVector psi(const SurfaceParams& sp, const Rat& d_alpha, const ChernVector& v) {
    return psi_map(sp, d_alpha).apply(v);
}
ChernVector psi_prime(const SurfaceParams& sp, const Rat& d_alpha, const ChernVector& v) {
    return psi_prime_map(sp, d_alpha).apply(v);
}
ChernVector upsilon(const SurfaceParams& sp, const ChernVector& v) {
    return upsilon_map(sp).apply(v);
}
ChernVector upsilon_prime(const SurfaceParams& sp, const ChernVector& v) {
    return upsilon_prime_map(sp).apply(v);
}

TransformReport named_object_checks(const SurfaceParams& sp, const Rat& d_alpha) {
    if (!sp.is_k3()) fail(Err::KThreeOnly, "named transform identities are stated on e = 2");
    TransformReport rep;
    auto add = [&rep](const std::string& name, const ChernVector& expected,
                      const ChernVector& actual) {
        rep.checks.push_back({name, expected, actual, expected == actual});
    };
    NamedParams np;
    np.d_alpha = d_alpha;
    np.m = -2;
    ChernVector o_theta_m2 = chern_named(Named::SectionTwist, np, sp);
    np.m = -1;
    ChernVector o_theta_m1 = chern_named(Named::SectionTwist, np, sp);
    ChernVector o_x = chern_named(Named::StructureSheaf, np, sp);
    ChernVector l0 = chern_named(Named::L0, np, sp);
    ChernVector l1 = chern_named(Named::L1, np, sp);
    ChernVector o_alpha = line_bundle_class(alpha_class(sp, d_alpha), sp);
    ChernVector o_minus_theta = line_bundle_class({Rat(-1), Rat(0)}, sp);
    ChernVector o_theta_lb = line_bundle_class({Rat(1), Rat(0)}, sp);

    add("phi(O_X) = O_Theta(-2)[-1]", -o_theta_m2, phi(sp, o_x));
    add("phi(O(-Theta)) = O(Theta)[-1]", -o_theta_lb, phi(sp, o_minus_theta));
    add("psi(O_Theta(-1)[1]) = L0[1]", -l0, psi(sp, d_alpha, -o_theta_m1));
    add("psi(O_X[1]) = L1", l1, psi(sp, d_alpha, -o_x));
    add("psi-prime(O_Theta(-2)) = O(alpha)", o_alpha, psi_prime(sp, d_alpha, o_theta_m2));
    add("upsilon(O_Theta(-1)) = O_X", o_x, upsilon(sp, o_theta_m1));

    auto add_map = [&rep](const std::string& name, const LatticeMap& got,
                          const LatticeMap& want) {
        rep.checks.push_back({name, ChernVector(), ChernVector(), got == want});
    };
    LatticeMap minus_id = LatticeMap::identity().negated();
    add_map("phi-hat.phi = -id", phi_hat_map(sp).after(phi_map(sp)), minus_id);
    add_map("phi.phi-hat = -id", phi_map(sp).after(phi_hat_map(sp)), minus_id);
    add_map("psi.psi-prime = -id",
            psi_map(sp, d_alpha).after(psi_prime_map(sp, d_alpha)), minus_id);
    add_map("psi-prime.psi = -id",
            psi_prime_map(sp, d_alpha).after(psi_map(sp, d_alpha)), minus_id);
    add_map("upsilon.upsilon-prime = -id",
            upsilon_map(sp).after(upsilon_prime_map(sp)), minus_id);

    rep.all_pass = true;
    for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

}  // namespace ellk3
