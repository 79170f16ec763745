#pragma once

#include <array>
#include <string>
#include <vector>

#include "ellk3/lattice.hpp"

namespace ellk3 {

// Exact linear map on (n, a, b, s); composites of the transform, twists and
// shifts are materialized as matrices so identity checks reduce to matrix
// equality.
struct LatticeMap {
    std::string name;
    std::array<std::array<Rat, 4>, 4> m;

    ChernVector apply(const ChernVector& v) const;
    LatticeMap after(const LatticeMap& inner) const;  // this o inner
    LatticeMap negated() const;
    LatticeMap inverse() const;
    Rat det() const;
    bool operator==(const LatticeMap& o) const { return m == o.m; }

    static LatticeMap identity();
};

// Cohomological transform: (n, a, b, s) -> (a, -n, s - (e/2)a, (e/2)n - b).
LatticeMap phi_map(const SurfaceParams& sp);

// Quasi-inverse at lattice level, defined as -phi^{-1}.
LatticeMap phi_hat_map(const SurfaceParams& sp);

// Tensoring by O(M) as a lattice map.
LatticeMap twist_map(const DivisorClass& m, const SurfaceParams& sp);

// Psi = Phi((-) (x) O(-alpha)), Psi' = O(alpha) (x) Phi^{-1}(-)[-1],
// Upsilon = Phi(-) (x) O(f), Upsilon' = Phi^{-1}((-) (x) O(-f))[-1],
// with alpha = Theta + (Da + e) f.
LatticeMap psi_map(const SurfaceParams& sp, const Rat& d_alpha);
LatticeMap psi_prime_map(const SurfaceParams& sp, const Rat& d_alpha);
LatticeMap upsilon_map(const SurfaceParams& sp);
LatticeMap upsilon_prime_map(const SurfaceParams& sp);

ChernVector phi(const SurfaceParams& sp, const ChernVector& v);
ChernVector phi_hat(const SurfaceParams& sp, const ChernVector& v);
ChernVector psi(const SurfaceParams& sp, const Rat& d_alpha, const ChernVector& v);
ChernVector psi_prime(const SurfaceParams& sp, const Rat& d_alpha, const ChernVector& v);
ChernVector upsilon(const SurfaceParams& sp, const ChernVector& v);
ChernVector upsilon_prime(const SurfaceParams& sp, const ChernVector& v);

struct TransformCheck {
    std::string name;
    ChernVector expected;
    ChernVector actual;
    bool pass;
};

struct TransformReport {
    std::vector<TransformCheck> checks;
    bool all_pass;
};

// Evaluates every named transform identity at lattice level (e = 2).
TransformReport named_object_checks(const SurfaceParams& sp, const Rat& d_alpha);

}  // namespace ellk3
