#pragma once

#include <array>
#include <optional>

#include "ellk3/charges.hpp"
#include "ellk3/lattice.hpp"

namespace ellk3 {

// Solution data of the charge equation Z'(Phi(-)) = T Z(-).  T is assembled
// from the normalizer factorization; where R_omega is irrational its entries
// are floats and correctness is the basis residual, but the underlying
// relation also holds exactly in normalized coordinates, which
// exact_residual certifies (it is identically 0 when the solve is right).
struct TransitionData {
    RdvCoords omega_prime;
    DivisorClass b_prime;
    Rat a_prime;

    std::array<std::array<double, 2>, 2> T;
    std::optional<std::array<std::array<Rat, 2>, 2>> T_exact;  // when both scales are rational
    double det_T;
    Rat det_T_squared;  // exact: r2' / r2

    double residual;       // max basis residual of the float identity
    Rat exact_residual;    // max basis residual of the normalized exact identity
};

// B = l f case with the D <-> V swap (no Todd twist): D' = V, V' = D,
// B' = (l - e/2) f, a' = V'.
TransitionData solve_simple(const SurfaceParams& sp, const Rat& d_omega, const Rat& v_omega,
                            const Rat& l);

// General B with the unit Todd twist on the target charge.  B with nonzero
// Theta component uses the four RDV relations; pure-fiber B collapses to the
// simple relations with V' = D + 1.
TransitionData solve_todd(const SurfaceParams& sp, const Rat& d_omega, const Rat& v_omega,
                          const DivisorClass& B);

// Closed-form image of (D, V) for B = -alpha on e = 2.
struct PsiZImage {
    Rat d_omega_prime;
    Rat r_b_prime;
    Rat v_omega_prime;
    Rat rb_db_prime;  // R_{B'} D_{B'}
};

PsiZImage psi_z(const Rat& d_omega, const Rat& v_omega, const Rat& d_alpha);

// Exact basis residuals of the two rotation identities; both are 0 when the
// bookkeeping is right.
Rat check_g(const Rat& d_alpha);  // Z'_0(Psi e_i) = g Z_H(e_i), g = [[-1/2,1/2],[-1/2,-1/2]]
Rat check_h(const Rat& v);        // Z_D(Upsilon e_i) = h Z_{V,H}(e_i), h = [[0,1],[-1,0]], D = V

inline std::array<std::array<Rat, 2>, 2> g_matrix() {
    return {{{Rat(-1, 2), Rat(1, 2)}, {Rat(-1, 2), Rat(-1, 2)}}};
}
inline std::array<std::array<Rat, 2>, 2> h_matrix() {
    return {{{Rat(0), Rat(1)}, {Rat(-1), Rat(0)}}};
}

}  // namespace ellk3
