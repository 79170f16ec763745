#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ellk3/lattice.hpp"
#include "test_util.hpp"

using namespace ellk3;
using testutil::make_rng;
using testutil::rnd_chern;
using testutil::rnd_divisor;
using testutil::rnd_rat;

// Independent expansion of (a Theta + b f).(a' Theta + b' f) from the three
// generator products; the oracle the intersect implementation is checked
// against.
static Rat intersect_oracle(const DivisorClass& m, const DivisorClass& w, const Rat& e) {
    Rat theta_theta = -e, theta_f = 1, f_f = 0;
    return m.a * w.a * theta_theta + (m.a * w.b + m.b * w.a) * theta_f + m.b * w.b * f_f;
}

TEST_CASE("surface params") {
    SurfaceParams k3 = SurfaceParams::k3();
    CHECK(k3.is_k3());
    CHECK(SurfaceParams(Rat(3)).is_k3() == false);
    CHECK_THROWS_AS(SurfaceParams(Rat(0)), DomainError);
    CHECK_THROWS_AS(SurfaceParams(Rat(-1)), DomainError);
    CHECK(SurfaceParams(rat(5, 2)).integral_e() == false);
}

TEST_CASE("intersection fixtures") {
    SurfaceParams k3 = SurfaceParams::k3();
    CHECK(intersect(DivisorClass::theta(), DivisorClass::theta(), k3) == -2);
    CHECK(intersect({Rat(1), Rat(4)}, {Rat(1), Rat(1)}, k3) == 3);  // -2 + 1 + 4
    CHECK(intersect(DivisorClass::fiber(), DivisorClass::fiber(), k3) == 0);
    CHECK(intersect(DivisorClass::theta(), DivisorClass::fiber(), k3) == 1);
}

TEST_CASE("intersect is bilinear, symmetric, and matches the oracle") {
    auto rng = make_rng();
    SurfaceParams sp(rat(3));
    for (int i = 0; i < 200; ++i) {
        DivisorClass m = rnd_divisor(rng), w = rnd_divisor(rng), u = rnd_divisor(rng);
        Rat t = rnd_rat(rng);
        CHECK(intersect(m, w, sp) == intersect(w, m, sp));
        CHECK(intersect(m, w, sp) == intersect_oracle(m, w, sp.e));
        CHECK(intersect(m + u * t, w, sp) == intersect(m, w, sp) + t * intersect(u, w, sp));
    }
}

TEST_CASE("rdv round trip and product law") {
    SurfaceParams k3 = SurfaceParams::k3();
    // Theta + 3f: R = 1, D = 1, V = M^2/2 = (-2+6)/2 = 2
    RdvCoords r = rdv_of({Rat(1), Rat(3)}, k3);
    CHECK(*r.r_exact() == 1);
    CHECK(r.d == 1);
    CHECK(r.v == 2);
    // (Theta + 3f)/2: R = 1/2, D = 1, V = R^2 (D + 1) = 1/2
    RdvCoords rh = rdv_of({rat(1, 2), rat(3, 2)}, k3);
    CHECK(*rh.r_exact() == rat(1, 2));
    CHECK(rh.d == 1);
    CHECK(rh.v == rat(1, 2));
    CHECK_THROWS_AS(rdv_of(DivisorClass::fiber(), k3), DomainError);
    // non-square R^2 has no exact divisor view
    RdvCoords irr{1, Rat(2), Rat(1), Rat(4)};
    CHECK_FALSE(irr.r_exact().has_value());
    CHECK_THROWS_AS(divisor_of_rdv(irr, k3), DomainError);
    CHECK(irr.r_double() == doctest::Approx(std::sqrt(2.0)));

    auto rng = make_rng(7);
    for (int i = 0; i < 200; ++i) {
        DivisorClass m = rnd_divisor(rng);
        if (m.a == 0) continue;
        RdvCoords rv = rdv_of(m, k3);
        CHECK(rv.v == rv.r2 * (rv.d + k3.half_e()));
        CHECK(divisor_of_rdv(rv, k3) == m);
        DivisorClass w = rnd_divisor(rng);
        if (w.a == 0) continue;
        RdvCoords rw = rdv_of(w, k3);
        // product law needs signed R's: R_M R_W (D_M + D_W + e)
        Rat rm = *rv.r_exact(), rwx = *rw.r_exact();
        CHECK(intersect(m, w, k3) == rm * rwx * (rv.d + rw.d + k3.e));
    }
}

TEST_CASE("ampleness criterion") {
    SurfaceParams k3 = SurfaceParams::k3();
    CHECK(is_ample({Rat(1), Rat(3)}, k3));
    CHECK_FALSE(is_ample({Rat(1), Rat(2)}, k3));  // boundary a = -Theta^2
    CHECK_FALSE(is_ample({Rat(-1), Rat(-3)}, k3));
    CHECK_FALSE(is_ample(DivisorClass::fiber(), k3));

    auto rng = make_rng(11);
    for (int i = 0; i < 200; ++i) {
        DivisorClass m = rnd_divisor(rng);
        if (m.a == 0) continue;
        bool expect = m.a > 0 && rdv_of(m, k3).d > 0;
        CHECK(is_ample(m, k3) == expect);
    }
}

TEST_CASE("twist fixtures and group action") {
    SurfaceParams k3 = SurfaceParams::k3();
    // (1, Theta+f, 0) twisted by -Theta: s' = 0 + (-Theta).(Theta+f) + (-Theta)^2/2
    //                                       = (2 - 1) + (-2)/2 = 0
    ChernVector v{Rat(1), Rat(1), Rat(1), Rat(0)};
    ChernVector tv = twist(v, {Rat(-1), Rat(0)}, k3);
    CHECK(tv == ChernVector{Rat(1), Rat(0), Rat(1), Rat(0)});
    // rank-0 twist by k f adds k to ch2 for ch1 = Theta
    ChernVector w{Rat(0), Rat(1), Rat(0), Rat(0)};
    CHECK(twist(w, {Rat(0), Rat(5)}, k3) == ChernVector{Rat(0), Rat(1), Rat(0), Rat(5)});
    CHECK(twist(v, DivisorClass(), k3) == v);

    auto rng = make_rng(13);
    for (int i = 0; i < 100; ++i) {
        ChernVector x = rnd_chern(rng);
        DivisorClass m = rnd_divisor(rng), n = rnd_divisor(rng);
        CHECK(twist(twist(x, m, k3), n, k3) == twist(x, m + n, k3));
    }
}

TEST_CASE("dual and shift") {
    ChernVector v{Rat(1), Rat(1), Rat(1), Rat(0)};
    CHECK(dual(v) == ChernVector{Rat(1), Rat(-1), Rat(-1), Rat(0)});
    CHECK(shift({Rat(0), Rat(1), Rat(0), Rat(-1)}, 1) ==
          ChernVector{Rat(0), Rat(-1), Rat(0), Rat(1)});
    auto rng = make_rng(17);
    for (int i = 0; i < 50; ++i) {
        ChernVector x = rnd_chern(rng);
        CHECK(dual(dual(x)) == x);
        CHECK(shift(x, 2) == x);
        CHECK(shift(x, -1) == shift(x, 1));
    }
    // dual-then-shift of a line-bundle class flips ch1 and keeps ch2
    SurfaceParams k3 = SurfaceParams::k3();
    ChernVector lt = line_bundle_class({Rat(-1), Rat(3)}, k3);
    CHECK(shift(dual(lt), 1) == ChernVector{Rat(-1), Rat(-1), Rat(3), -lt.s});
}

TEST_CASE("line bundle classes carry s = c1^2/2") {
    auto rng = make_rng(19);
    SurfaceParams sp(Rat(2));
    for (int i = 0; i < 100; ++i) {
        DivisorClass m = rnd_divisor(rng);
        ChernVector v = line_bundle_class(m, sp);
        CHECK(v.n == 1);
        CHECK(2 * v.s == m.self_intersection(sp));
    }
}

TEST_CASE("named classes") {
    SurfaceParams k3 = SurfaceParams::k3();
    NamedParams p;
    p.m = -2;
    CHECK(chern_named(Named::SectionTwist, p, k3) == ChernVector{Rat(0), Rat(1), Rat(0), Rat(-1)});
    CHECK(chern_named(Named::FiberSheaf, p, k3) == ChernVector{Rat(0), Rat(0), Rat(1), Rat(0)});
    p.d_alpha = Rat(0);
    CHECK(chern_named(Named::L1, p, k3) == ChernVector{Rat(1), Rat(1), Rat(-2), Rat(-3)});
    CHECK(chern_named(Named::L0, p, k3) == ChernVector{Rat(1), Rat(0), Rat(-1), Rat(0)});
    SurfaceParams e3(Rat(3));
    CHECK_THROWS_AS(chern_named(Named::SectionTwist, p, e3), DomainError);
}

TEST_CASE("mukai and euler pairings") {
    SurfaceParams k3 = SurfaceParams::k3();
    ChernVector ox{Rat(1), Rat(0), Rat(0), Rat(0)};      // v(O_X) = (1,0,1)
    ChernVector otheta{Rat(0), Rat(1), Rat(0), Rat(0)};  // v(O_Theta(-1)) = (0,Theta,0)
    CHECK(mukai_pairing(ox, otheta, k3) == 0);
    // v(O_Theta(i)) self-pairing is Theta^2 = -2, so chi = 2
    for (long m : {-3L, -1L, 0L, 2L}) {
        NamedParams p;
        p.m = m;
        ChernVector ot = chern_named(Named::SectionTwist, p, k3);
        CHECK(mukai_pairing(ot, ot, k3) == -2);
        CHECK(euler_pairing(ot, ot, k3) == 2);
    }
    CHECK(euler_pairing(ox, ox, k3) == 2);

    SurfaceParams e3(Rat(3));
    CHECK_THROWS_AS(mukai_pairing(ox, ox, e3), DomainError);

    auto rng = make_rng(23);
    for (int i = 0; i < 100; ++i) {
        ChernVector v = rnd_chern(rng), w = rnd_chern(rng);
        CHECK(euler_pairing(v, w, k3) == -mukai_pairing(v, w, k3));
        CHECK(mukai_pairing(v, w, k3) == mukai_pairing(w, v, k3));
    }
}

TEST_CASE("bogomolov-gieseker predicates and hodge bound") {
    SurfaceParams k3 = SurfaceParams::k3();
    ChernVector triv{Rat(1), Rat(0), Rat(0), Rat(0)};
    CHECK(bg_classical(triv, k3));
    CHECK(bg_k3_strong(triv, k3));
    CHECK_FALSE(bg_classical({Rat(1), Rat(0), Rat(0), Rat(1)}, k3));
    // (2, Theta+f, -2): strong bound is 0/4 - 2 + 1/2 = -3/2 >= -2
    CHECK(bg_k3_strong({Rat(2), Rat(1), Rat(1), Rat(-2)}, k3));
    CHECK_THROWS_AS(bg_classical({Rat(0), Rat(1), Rat(0), Rat(0)}, k3), DomainError);
    CHECK_THROWS_AS(bg_k3_strong(triv, SurfaceParams(Rat(3))), DomainError);

    DivisorClass omega{Rat(1), Rat(4)};
    // (omega.c1)^2/omega^2 for c1 = Theta+f: (3)^2/6 = 3/2
    CHECK(hodge_upper({Rat(1), Rat(1), Rat(1), Rat(0)}, omega, k3) == rat(3, 2));
    CHECK_THROWS_AS(hodge_upper(triv, DivisorClass::fiber(), k3), DomainError);
    // Hodge: c1^2 <= bound for every class when omega is ample
    auto rng = make_rng(29);
    for (int i = 0; i < 100; ++i) {
        ChernVector v = rnd_chern(rng);
        CHECK(v.c1().self_intersection(k3) <= hodge_upper(v, omega, k3));
    }
}

TEST_CASE("genuine class flag") {
    CHECK(ChernVector{Rat(1), Rat(2), Rat(-3), rat(7, 2)}.genuine());
    CHECK_FALSE(ChernVector{Rat(1), Rat(2), Rat(-3), rat(1, 3)}.genuine());
    CHECK_FALSE(ChernVector{rat(1, 2), Rat(0), Rat(0), Rat(0)}.genuine());
}
