#pragma once

#include <optional>

#include "theta/numtheory.hpp"
#include "theta/rational.hpp"

namespace theta {

// An angle theta with rational cosine s/r, held as a coprime pair with
// r >= 1 and |s| < r. t is present exactly when r^2 - s^2 is a perfect
// square (the sine is then rational too: sin = t/r). Arbitrary precision
// so tau-angles recovered from cos_tau of large envelopes fit.
struct Angle {
    Int r = 1;
    Int s = 0;
    std::optional<Int> t;
};

inline Angle make_angle(const Int& r, const Int& s) {
    if (r < 1) throw std::domain_error("make_angle: r >= 1 violated");
    if (!(s < r && -s < r))
        throw std::domain_error("make_angle: |s| < r violated");
    if (gcd(r, s) != 1)
        throw std::domain_error("make_angle: gcd(r,s) = 1 violated");
    Angle a;
    a.r = r;
    a.s = s;
    a.t = sqrt_exact_int(r * r - s * s);
    return a;
}

// pi - theta: negates the cosine; involution, preserves t.
inline Angle reflect(const Angle& a) {
    Angle b = a;
    b.s = -b.s;
    return b;
}

inline bool pythagorean(const Angle& a) { return a.t.has_value(); }

// r^2 - s^2 > 0, ubiquitous in the curve coefficients.
inline Int rr_ss(const Angle& a) { return a.r * a.r - a.s * a.s; }

inline Rat cosine(const Angle& a) { return make_rat(a.s, a.r); }

inline bool operator==(const Angle& a, const Angle& b) {
    return a.r == b.r && a.s == b.s;
}

}  // namespace theta
