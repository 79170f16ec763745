#include "ellk3/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ellk3 {

Rat floor_rat(const Rat& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return Rat(f);
}

std::optional<Rat> parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::string num, den;
    std::size_t i = 0;
    auto read_int = [&](std::string& out) -> bool {
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            if (s[i] == '-') out.push_back(s[i]);  // mpz_set_str rejects a leading '+'
            ++i;
        }
        std::size_t start = out.size();
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) out.push_back(s[i++]);
        return out.size() > start;
    };
    if (!read_int(num)) return std::nullopt;
    if (i < s.size()) {
        if (s[i] != '/') return std::nullopt;
        ++i;
        if (!read_int(den)) return std::nullopt;
        if (i != s.size()) return std::nullopt;
    } else {
        den = "1";
    }
    mpz_class n(num), d(den);
    if (d == 0) return std::nullopt;
    Rat q(n, d);
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_rational_square(const Rat& q) {
    if (q < 0) return false;
    return mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
           mpz_perfect_square_p(q.get_den().get_mpz_t());
}

Rat sqrt_exact(const Rat& q) {
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
    Rat r(n, d);
    r.canonicalize();
    return r;
}

RatInterval sqrt_enclosure(const Rat& q, const Rat& width) {
    if (q < 0) throw std::invalid_argument("sqrt_enclosure: negative argument");
    if (width <= 0) throw std::invalid_argument("sqrt_enclosure: width must be positive");
    if (q == 0) return {Rat(0), Rat(0)};
    // Scale so that q = n / 4^k with integer n, then take integer sqrt bounds.
    // Doubling k halves the enclosure width, so iterate until narrow enough.
    mpz_class four_k = 1;
    for (;;) {
        mpz_class scaled_num = q.get_num() * four_k * four_k;
        // lo^2 <= scaled_num/den < (lo+1)^2 after dividing by den exactly via
        // floor(sqrt(num*den)) / den trick: sqrt(a/b) = sqrt(a*b)/b.
        mpz_class ab = scaled_num * q.get_den();
        mpz_class root;
        mpz_sqrt(root.get_mpz_t(), ab.get_mpz_t());
        Rat lo(root, q.get_den() * four_k);
        Rat hi(root + 1, q.get_den() * four_k);
        lo.canonicalize();
        hi.canonicalize();
        if (hi - lo <= width) return {lo, hi};
        four_k *= 4;
    }
}

}  // namespace ellk3
