#pragma once

#include <optional>
#include <vector>

#include "theta/angle.hpp"
#include "theta/elliptic.hpp"

namespace theta {

// z^2 = q4 x^4 + q3 x^3 + q2 x^2 + q1 x + q0.
struct QuarticCurve {
    Rat q4, q3, q2, q1, q0;
};

inline Rat quartic_rhs(const QuarticCurve& c, const Rat& x) {
    return (((c.q4 * x + c.q3) * x + c.q2) * x + c.q1) * x + c.q0;
}

inline bool on_quartic(const QuarticCurve& c, const Rat& x, const Rat& z) {
    return z * z == quartic_rhs(c, x);
}

// y^2 = x(x + (r+s)w)(x - (r-s)w), expanded. w > 0.
CubicCurve make_E_theta(const Angle& angle, const Rat& w);

// v^2 = u(u - (r+s)N)(u + (r-s)N), expanded; equals E for the reflected
// angle. N > 0.
CubicCurve make_F_theta(const Angle& angle, const Rat& N);

// z^2 = (x^2 + 2s(N+w)x - (r^2-s^2)w^2)^2 + 4(r^2-s^2)N^2x^2 with
// N = 2n - w. Requires 0 < w < 2n so that N > 0 (w may exceed n: the
// ratio form at m < 1 corresponds to w = 2n/(m+1) in (n, 2n)).
QuarticCurve make_G_quartic_w(const Angle& angle, const Rat& w, const Int& n);

// Monic quartic z^2 = x^4 + b1 x^3 + b2 x^2 + b3 x + b4 in the ratio
// parameter m; coincides with the w-form at w = 2n/(m+1).
QuarticCurve make_G_quartic_m(const Angle& angle, const Rat& m, const Int& n);

// Y^2 = X^3 + d2 X^2 + d1 X with d2 = r^2 m^2 + 2 s^2 m + r^2 and
// d1 = m^2 (r^2-s^2)^2. m > 0.
CubicCurve make_G_cubic(const Angle& angle, const Rat& m);

// The marked point (-(r^2-s^2)m^2, s(r^2-s^2)m^2(m+1)); order 2 when
// s = 0, generically of infinite order.
CurvePoint independent_point(const Angle& angle, const Rat& m);

// M0 = m(r^2-s^2); M1,2 = r(m+1)(r(m+1) +- 2 sqrt(M0)). When sqrt(M0)
// is irrational the individual M1, M2 are too; their sum and product
// stay rational and are always populated.
struct MQuantities {
    Rat M0;
    std::optional<Rat> sqrtM0;
    std::optional<Rat> M1, M2;          // present iff sqrtM0 is rational
    std::optional<Rat> sqrtM1, sqrtM2;  // present when rational
    Rat M1_plus_M2, M1_times_M2;
};

MQuantities m_quantities(const Angle& angle, const Rat& m);

enum class TorsionTag { Z4, Z8, Z2xZ4, Z2xZ8, Z4_or_Z2xZ4_unresolved };

struct TorsionClass {
    TorsionTag tag;
    std::vector<CurvePoint> order4;
    std::vector<CurvePoint> order8;
    MQuantities mq;
};

const char* torsion_tag_name(TorsionTag tag);
TorsionTag torsion_tag_from_name(const std::string& name);

// Torsion subgroup of make_G_cubic(angle, m): Z/8 or Z/2 x Z/8 when
// sqrt(M0) and one resp. both of sqrt(M1), sqrt(M2) are rational;
// otherwise Z/4 vs Z/2 x Z/4 is settled by whether x^2 + d2 x + d1
// splits rationally. Order-8 Y-coordinates come from the curve equation
// itself (exact square root of the right-hand side).
TorsionClass classify_torsion(const Angle& angle, const Rat& m);

// Y^2 = X^3 - 108 r^2 u^2 (r^2+3s^2) X + 432 r^4 u^3 (r^2-9s^2) with
// u = r^2 - s^2; splits completely over Q. Singular when s = 0.
CubicCurve make_E0(const Angle& angle);

struct E0Points {
    CurvePoint P0, P1, P2;  // the 2-torsion: X = -12r^2u, 6ru(r+-3s)
    CurvePoint Q;           // (-3u(r^2+3s^2), 27u^3), infinite order
};
E0Points e0_points(const Angle& angle);

// Right sides of the two quartics-in-m0 whose rational squareness at
// m = m0^2/(r^2-s^2) decides sqrt(M1), sqrt(M2) in Q:
//   m1^2 = r(m0^2+u)(r(m0^2+u) + 2 m0 u),  u = r^2 - s^2,
//   m2^2 = r(m0^2+u)(r(m0^2+u) - 2 m0 u).
struct FGResult {
    Rat m1_squared, m2_squared;
    std::optional<Rat> sqrt_m1, sqrt_m2;
    bool both_rational_squares;
};
FGResult verify_FG(const Angle& angle, const Rat& m0);

// X^3 + 3T^2 X - T^2(T^2-1) and z^2 = T^2 x^4 + T^2 x^3 - x - 1. T > 0.
CubicCurve make_E_T(const Rat& T);
QuarticCurve make_C_T(const Rat& T);

// The correspondence curve over make_G_cubic: a point (X, Y, Z) belongs
// when (X, Y) lies on the cubic, Y != 0, X avoids {0, -(r^2-s^2)}, and
// Z^2 equals the residual value A(X, Y) below.
struct CThetaMN {
    CubicCurve cubic;
    Angle angle;
    Rat m;
    Int n;
};
CThetaMN make_C_theta_mn(const Angle& angle, const Rat& m, const Int& n);

// A(X,Y) = 2n * phi(X,Y) / ((m+1) X (X + r^2 - s^2)) where phi is the
// product (Y + s(m+1)X)(X^2 + (r-s)(r-ms)X - (r-s)Y)(X^2 + (r+s)(r+ms)X + (r+s)Y).
Rat c_theta_mn_residual(const Angle& angle, const Rat& m, const Int& n,
                        const Rat& X, const Rat& Y);

bool on_C_theta_mn(const Angle& angle, const Rat& m, const Int& n,
                   const Rat& X, const Rat& Y, const Rat& Z);

}  // namespace theta
