#pragma once

#include <utility>

#include "theta/angle.hpp"
#include "theta/elliptic.hpp"
#include "theta/envelopes.hpp"
#include "theta/rational.hpp"

namespace theta {

// Rational solution (u,v,w,x,y) of the coupled system for n:
//   y^2 = x^3 + 2swx^2 - (r^2-s^2)w^2 x        (curve in w)
//   v^2 = u^3 - 2sNu^2 - (r^2-s^2)N^2 u        (curve in N = 2n-w)
//   xv = uy, yv != 0, 0 < w < 2n.
struct SystemSolution {
    Rat u, v, w, x, y;
};

bool validate_solution(const Angle& angle, const Int& n,
                       const SystemSolution& sol);

// Quartic model z^2 = (x^2+2s(N+w)x-(r^2-s^2)w^2)^2 + 4(r^2-s^2)N^2x^2 at
// w = 2n/(m+1): point of the cubic Y^2 = X^3 + d2 X^2 + d1 X -> (x,z).
// Poles X = 0 and X = -(r^2-s^2) are rejected.
std::pair<Rat, Rat> cubic_to_quartic(const Angle& angle, const Rat& m,
                                     const Int& n, const CurvePoint& P);

// Inverse map; x = 0 corresponds to the point at infinity.
CurvePoint quartic_to_cubic(const Angle& angle, const Rat& m, const Int& n,
                            const Rat& x, const Rat& z);

// Roots u of x u^2 - (x^2+2xs(N+w)-(r^2-s^2)w^2) u - (r^2-s^2)N^2 x = 0,
// i.e. ((S+z)/2x, (S-z)/2x) with S the middle coefficient.
std::pair<Rat, Rat> solve_u(const Angle& angle, const Rat& w, const Rat& N,
                            const Rat& x, const Rat& z);

// a = |y/2x|, b = |rwx/y|, c = |(x^2+(r^2-s^2)w^2)/2y|,
// d = |rNu/v|, e = |(u^2+(r^2-s^2)N^2)/2v| with N = 2n-w.
Envelope solution_to_envelope(const Angle& angle, const Int& n,
                              const SystemSolution& sol);

// x = 2a(a+c-(s/r)b), y = 2ax, w = 2ab/r, u = 2a(a+e+(s/r)d), v = 2au.
SystemSolution envelope_to_solution(const Angle& angle, const Envelope& env);

// z^2 = T^2x^4 + T^2x^3 - x - 1  <->  Y^2 = X^3 + 3T^2 X - T^2(T^2-1):
// X = (T^2 x - 1)/(x+1); x = -1 maps to infinity.
CurvePoint ct_to_et(const Rat& T, const Rat& x, const Rat& y);

// x = (X+1)/(T^2-X); infinity -> (-1, 0); X = T^2 -> no affine image.
std::optional<std::pair<Rat, Rat>> et_to_ct(const Rat& T, const CurvePoint& P);

// (c,e,f) = (|y/x|, |(T^2x^2+1)/y|, |(T^2x^4+1)/(xy)|); Heron area is T.
Triangle triangle_from_ct_point(const Rat& T, const Rat& x, const Rat& y);

struct CertifiedN {
    Int n;
    Envelope env;
};

// From an infinite-order point on the cubic Y^2 = X^3 + d2 X^2 + d1 X,
// picks the sign of Y making the quartic-side product positive, takes n as
// the squarefree part, and builds the verified envelope with d = mb.
CertifiedN certified_n(const Angle& angle, const Rat& m, const CurvePoint& P);

}  // namespace theta
