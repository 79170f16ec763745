#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace ellk3 {

// Exact arbitrary-precision rational. Always stored canonicalized.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rat& q) { return q.get_d(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// ch2 of a genuine class lives in (1/2)Z.
inline bool is_half_integer(const Rat& q) { return q.get_den() == 1 || q.get_den() == 2; }

inline long to_long(const Rat& q) { return mpz_get_si(mpq_numref(q.get_mpq_t())); }

// Floor as an exact integer rational.
Rat floor_rat(const Rat& q);

// Parses "p" or "p/q" with optional leading '-'. Decimal points, exponents and
// zero denominators are rejected; returns nullopt on any malformed input.
std::optional<Rat> parse_rat(const std::string& s);

// Canonical serialization: "p" when the denominator is 1, else "p/q".
std::string rat_str(const Rat& q);

// True iff q is the square of a rational (numerator and denominator both
// perfect squares; q >= 0).
bool is_rational_square(const Rat& q);

// Exact square root of a rational square. Precondition: is_rational_square(q).
Rat sqrt_exact(const Rat& q);

// Certified enclosure [lo, hi] of sqrt(q) with hi - lo <= width, q >= 0.
struct RatInterval {
    Rat lo;
    Rat hi;
};
RatInterval sqrt_enclosure(const Rat& q, const Rat& width);

}  // namespace ellk3
