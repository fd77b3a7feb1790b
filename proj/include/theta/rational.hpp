#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace theta {

// Exact arbitrary-precision scalars. mpq_class keeps values canonical
// (gcd(num,den)=1, den>0) after every arithmetic operation, which makes
// equality structural; that property is relied on throughout.
using Int = mpz_class;
using Rat = mpq_class;

inline Int num(const Rat& q) { return q.get_num(); }
inline Int den(const Rat& q) { return q.get_den(); }

inline Rat make_rat(const Int& n, const Int& d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    Rat q(n, d);
    q.canonicalize();
    return q;
}

// Parses "p", "-p" or "p/q" (q > 0 after canonicalization). Rejects
// anything else: no whitespace, decimals, or empty fields.
Rat parse_rat(const std::string& text);

// "p" when the denominator is 1, otherwise "p/q"; exact and locale-free.
std::string format_rat(const Rat& q);

}  // namespace theta
