#pragma once

#include <optional>
#include <vector>

#include "theta/rational.hpp"

namespace theta {

// Nonnegative rational square root, present iff q is a square in Q.
// Negative input is a domain error.
std::optional<Rat> sqrt_exact(const Rat& q);

// Integer counterpart; present iff n is a perfect square (n >= 0).
std::optional<Int> sqrt_exact_int(const Int& n);

// |q| = part * (square) with part squarefree and positive; sign carries
// the sign of q. Zero input is a domain error.
struct SquarefreePart {
    Int part;
    int sign;
};
SquarefreePart squarefree_part(const Rat& q);

// Prime factorization of n > 0 as (prime, exponent) pairs, primes
// ascending. Trial division below 10^5, then Miller-Rabin plus Pollard
// rho (Brent variant) for what remains.
std::vector<std::pair<Int, unsigned>> factor(const Int& n);

// All divisors of n > 0, unsorted size guard: throws if the divisor
// count exceeds 1 << 22.
std::vector<Int> divisors(const Int& n);

}  // namespace theta
