#pragma once

#include <random>

#include "ellk3/lattice.hpp"

namespace testutil {

using ellk3::Rat;

inline std::mt19937_64 make_rng(unsigned seed = 0xe11c353) { return std::mt19937_64(seed); }

inline Rat rnd_rat(std::mt19937_64& rng, long lo = -10, long hi = 10, long dmax = 6) {
    std::uniform_int_distribution<long> num(lo, hi), den(1, dmax);
    return ellk3::rat(num(rng), den(rng));
}

inline Rat rnd_pos_rat(std::mt19937_64& rng, long hi = 10, long dmax = 6) {
    std::uniform_int_distribution<long> num(1, hi), den(1, dmax);
    return ellk3::rat(num(rng), den(rng));
}

inline ellk3::DivisorClass rnd_divisor(std::mt19937_64& rng) {
    return {rnd_rat(rng), rnd_rat(rng)};
}

inline ellk3::ChernVector rnd_chern(std::mt19937_64& rng) {
    return {rnd_rat(rng), rnd_rat(rng), rnd_rat(rng), rnd_rat(rng)};
}

}  // namespace testutil
