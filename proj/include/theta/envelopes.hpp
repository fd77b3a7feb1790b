#pragma once

#include <array>
#include <optional>
#include <vector>

#include "theta/angle.hpp"
#include "theta/rational.hpp"

namespace theta {

// Parallelogram envelope (a,b,c,d,e) for an angle theta = (r,s):
//   a(b+d) = rn,  a^2+b^2-(2s/r)ab = c^2,  a^2+d^2+(2s/r)ad = e^2.
// All five components are positive.
struct Envelope {
    Angle angle;
    Rat a, b, c, d, e;
};

bool operator==(const Envelope& lhs, const Envelope& rhs);

// Triangle by side lengths. When the triangle carries a tau-relation
// first^2 + second^2 - (2p/q) first*second = third^2, the angle tau with
// cos tau = p/q is stored as context_angle = Angle(q, p).
struct Triangle {
    std::array<Rat, 3> sides;
    std::optional<Angle> context_angle;
};

// Exact test of the three defining equations for the given n.
bool verify(const Envelope& env, const Int& n);

// (ka,kb,kc,kd,ke); verifies for n k^2 whenever that is integral.
Envelope scale(const Envelope& env, const Rat& k);

// (a,d,e,b,c) under the reflected angle (r,-s); same n. Involution.
Envelope reflect_dual(const Envelope& env);

// m = d/b.
Rat ratio(const Envelope& env);

// (d, a, e, ma, mc) under the reflected angle: ratio m for m*n.
Envelope ratio_dual(const Envelope& env);

// cos tau = (a^2 - bd - s a (b-d)/r) / (ce).
Rat cos_tau(const Envelope& env);

// Triangle (c, e, b+d) with context angle tau; throws if |cos tau| >= 1.
Triangle tau_triangle(const Envelope& env);

// Constructs an envelope for angle tau from a tau-triangle (a,b,c) with
// ab = 4q n n'; requires (r^2-s^2)/(q^2-p^2) and its quotient by n' to be
// rational squares. Returns the envelope; the certified n is a(b+d)/q of
// the result.
Envelope envelope_from_tau_triangle(const Angle& theta, const Angle& tau,
                                    const Int& n_prime, const Triangle& tri);

// Step-1 construction for Pythagorean angles: triangle (c,e,f) of Heron
// area 2n sqrt(r^2-s^2) -> envelope for n, trying the side orderings until
// b and d come out positive.
Envelope envelope_from_triangle(const Angle& angle, const Int& n,
                                const Triangle& tri);

// Produces L distinct verified envelopes for n by walking multiples of a
// fixed infinite-order point; Pythagorean angles only.
std::vector<Envelope> generate_envelopes(const Angle& angle, const Int& n,
                                         std::size_t count);

// L distinct ratios m >= 1 with n in N_{theta,m}, from the same walk.
std::vector<Rat> infinitely_many_ratios(const Angle& angle, const Int& n,
                                        std::size_t count);

}  // namespace theta
