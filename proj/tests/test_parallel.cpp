#include <doctest.h>

#include <cstdlib>

#include "ellk3/parallel.hpp"
#include "ellk3/regions.hpp"
#include "ellk3/walls.hpp"

using namespace ellk3;

TEST_CASE("thread cap respects the environment") {
    setenv("ELLK3_STAB_THREADS", "1", 1);
    CHECK(thread_cap() == 1);
    setenv("ELLK3_STAB_THREADS", "garbage", 1);
    CHECK(thread_cap() >= 1);
    unsetenv("ELLK3_STAB_THREADS");
    CHECK(thread_cap() >= 1);
}

TEST_CASE("parallel raster equals the serial reference") {
    SurfaceParams k3 = SurfaceParams::k3();
    RegionQuery base(k3, Rat(-1), Rat(1), Rat(1));
    RasterWindow w{rat(1, 2), rat(1, 2), Rat(6), Rat(6)};
    RasterGrid a = raster(base, w, 48, 48);
    RasterGrid b = raster_serial(base, w, 48, 48);
    REQUIRE(a.cells.size() == b.cells.size());
    CHECK(a.cells == b.cells);
    CHECK(a.provenance == b.provenance);
    CHECK(render_raster(a, RasterFormat::Svg) == render_raster(b, RasterFormat::Svg));
    CHECK(render_raster(a, RasterFormat::Csv) == render_raster(b, RasterFormat::Csv));
}

TEST_CASE("parallel enumeration equals the serial reference") {
    SurfaceParams k3 = SurfaceParams::k3();
    EnumBounds bounds;
    bounds.max_c_theta = 4;
    bounds.max_c_f = 4;
    bounds.max_points = 4;
    // one empty case and one with surviving candidates
    struct Case {
        ChernVector L;
        ChargeSpec spec;
    };
    std::vector<Case> cases = {
        {line_bundle_class({Rat(1), Rat(3)}, k3), ChargeSpec::vd(rat(1, 8), rat(1, 8), k3)},
        {line_bundle_class({Rat(-1), Rat(4)}, k3), ChargeSpec::vd(Rat(1), Rat(1), k3)},
    };
    bool saw_nonempty = false;
    for (const auto& c : cases) {
        auto par = enumerate_destabilizers(c.spec, c.L, bounds);
        auto ser = enumerate_destabilizers_serial(c.spec, c.L, bounds);
        REQUIRE(par.size() == ser.size());
        saw_nonempty = saw_nonempty || !par.empty();
        for (std::size_t i = 0; i < par.size(); ++i) {
            CHECK(par[i].cls == ser[i].cls);
            CHECK(par[i].curve == ser[i].curve);
            CHECK(par[i].points == ser[i].points);
            CHECK(par[i].rank_one_ansatz == ser[i].rank_one_ansatz);
        }
    }
    CHECK(saw_nonempty);
}
