// Benchmark comparing the OpenMP kernels against their serial references:
// region rasterization and destabilizer enumeration.

#include <chrono>
#include <cstdio>

#include "ellk3/parallel.hpp"
#include "ellk3/regions.hpp"
#include "ellk3/walls.hpp"

using namespace ellk3;
using Clock = std::chrono::steady_clock;

template <typename F>
static double time_of(F&& f) {
    auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 512;
    SurfaceParams k3 = SurfaceParams::k3();

    std::printf("thread cap: %d\n", thread_cap());

    RegionQuery base(k3, Rat(-1), Rat(1), Rat(1));
    RasterWindow w{rat(1, 100), rat(1, 100), Rat(12), Rat(12)};
    RasterGrid gs, gp;
    double ts = time_of([&] { gs = raster_serial(base, w, n, n); });
    double tp = time_of([&] { gp = raster(base, w, n, n); });
    bool same = gs.cells == gp.cells;
    std::printf("raster %dx%d     serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n", n,
                n, ts, tp, ts / tp, same ? "identical" : "MISMATCH");

    // fiber degree -1 keeps the candidate list nonempty, so the merge path
    // is exercised too
    ChernVector L = line_bundle_class({Rat(-1), Rat(4)}, k3);
    EnumBounds bounds;
    bounds.max_c_theta = 48;
    bounds.max_c_f = 48;
    bounds.max_points = 48;
    ChargeSpec spec = ChargeSpec::vd(Rat(1), Rat(1), k3);
    std::vector<Destabilizer> ds, dp;
    double es = time_of([&] { ds = enumerate_destabilizers_serial(spec, L, bounds); });
    double ep = time_of([&] { dp = enumerate_destabilizers(spec, L, bounds); });
    bool esame = ds.size() == dp.size();
    for (std::size_t i = 0; esame && i < ds.size(); ++i)
        esame = ds[i].cls == dp[i].cls && ds[i].points == dp[i].points;
    std::printf("enumerate %ld^3   serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n",
                bounds.max_c_theta + 1, es, ep, es / ep, esame ? "identical" : "MISMATCH");
    std::printf("candidates found: %zu\n", dp.size());
    return same && esame ? 0 : 1;
}
