#pragma once

#include <optional>
#include <vector>

#include "theta/rational.hpp"

namespace theta {

// y^2 = x^3 + a2 x^2 + a4 x + a6 over Q.
struct CubicCurve {
    Rat a2, a4, a6;
};

struct CurvePoint {
    bool infinite = true;
    Rat x, y;

    static CurvePoint infinity() { return CurvePoint{}; }
    static CurvePoint affine(const Rat& x, const Rat& y) {
        return CurvePoint{false, x, y};
    }
};

inline bool operator==(const CurvePoint& p, const CurvePoint& q) {
    if (p.infinite || q.infinite) return p.infinite == q.infinite;
    return p.x == q.x && p.y == q.y;
}

bool on_curve(const CubicCurve& e, const CurvePoint& p);

// Chord-tangent group law. Off-curve operands are a domain error.
CurvePoint add(const CubicCurve& e, const CurvePoint& p, const CurvePoint& q);
CurvePoint negate(const CubicCurve& e, const CurvePoint& p);
CurvePoint scalar_mul(const CubicCurve& e, long long k, const CurvePoint& p);

// Smallest k <= 12 with [k]P = infinity; absent means infinite order
// (sound over Q: rational torsion orders never exceed 12).
std::optional<int> point_order(const CubicCurve& e, const CurvePoint& p);

Rat discriminant(const CubicCurve& e);
Rat j_invariant(const CubicCurve& e);  // domain error when singular

// All rational points with y = 0, i.e. rational roots of the cubic,
// found by the rational-root theorem on the primitive integer model.
std::vector<CurvePoint> two_torsion(const CubicCurve& e);

// Right-hand side x^3 + a2 x^2 + a4 x + a6.
inline Rat curve_rhs(const CubicCurve& e, const Rat& x) {
    return ((x + e.a2) * x + e.a4) * x + e.a6;
}

}  // namespace theta
