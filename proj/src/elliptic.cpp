#include "theta/elliptic.hpp"

#include <algorithm>

#include "theta/numtheory.hpp"

namespace theta {

bool on_curve(const CubicCurve& e, const CurvePoint& p) {
    if (p.infinite) return true;
    return p.y * p.y == curve_rhs(e, p.x);
}

namespace {
void require_on_curve(const CubicCurve& e, const CurvePoint& p) {
    if (!on_curve(e, p))
        throw std::domain_error("elliptic: point is not on the curve");
}
}  // namespace

CurvePoint negate(const CubicCurve& e, const CurvePoint& p) {
    require_on_curve(e, p);
    if (p.infinite) return p;
    return CurvePoint::affine(p.x, -p.y);
}

CurvePoint add(const CubicCurve& e, const CurvePoint& p, const CurvePoint& q) {
    require_on_curve(e, p);
    require_on_curve(e, q);
    if (p.infinite) return q;
    if (q.infinite) return p;
    Rat lambda;
    if (p.x == q.x) {
        if (p.y == -q.y) return CurvePoint::infinity();
        // tangent: (3x^2 + 2 a2 x + a4) / 2y
        lambda = (3 * p.x * p.x + 2 * e.a2 * p.x + e.a4) / (2 * p.y);
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
    }
    Rat x3 = lambda * lambda - e.a2 - p.x - q.x;
    Rat y3 = lambda * (p.x - x3) - p.y;
    return CurvePoint::affine(x3, y3);
}

CurvePoint scalar_mul(const CubicCurve& e, long long k, const CurvePoint& p) {
    require_on_curve(e, p);
    CurvePoint base = p;
    if (k < 0) {
        base = negate(e, p);
        k = -k;
    }
    CurvePoint acc = CurvePoint::infinity();
    while (k > 0) {
        if (k & 1) acc = add(e, acc, base);
        k >>= 1;
        if (k > 0) base = add(e, base, base);
    }
    return acc;
}

std::optional<int> point_order(const CubicCurve& e, const CurvePoint& p) {
    require_on_curve(e, p);
    CurvePoint acc = CurvePoint::infinity();
    for (int k = 1; k <= 12; ++k) {
        acc = add(e, acc, p);
        if (acc.infinite) return k;
    }
    return std::nullopt;
}

Rat discriminant(const CubicCurve& e) {
    Rat b2 = 4 * e.a2;
    Rat b4 = 2 * e.a4;
    Rat b6 = 4 * e.a6;
    Rat b8 = 4 * e.a2 * e.a6 - e.a4 * e.a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

Rat j_invariant(const CubicCurve& e) {
    Rat delta = discriminant(e);
    if (delta == 0) throw std::domain_error("j_invariant: singular curve");
    Rat c4 = 16 * e.a2 * e.a2 - 48 * e.a4;
    return c4 * c4 * c4 / delta;
}

std::vector<CurvePoint> two_torsion(const CubicCurve& e) {
    // Clear denominators with x = X/L: monic integer cubic
    // X^3 + (a2 L) X^2 + (a4 L^2) X + (a6 L^3), whose rational roots are
    // integers dividing the constant term.
    Int L = lcm(lcm(den(e.a2), den(e.a4)), den(e.a6));
    Int A2 = num(e.a2 * L);
    Int A4 = num(e.a4 * L * L);
    Int A6 = num(e.a6 * L * L * L);
    auto eval = [&](const Int& X) -> Int {
        return ((X + A2) * X + A4) * X + A6;
    };

    std::vector<Rat> roots;
    Int first;
    bool found = false;
    if (A6 == 0) {
        first = 0;
        found = true;
    } else {
        for (const Int& d : divisors(abs(A6))) {
            if (eval(d) == 0) {
                first = d;
                found = true;
                break;
            }
            if (eval(-d) == 0) {
                first = -d;
                found = true;
                break;
            }
        }
    }
    if (found) {
        roots.push_back(make_rat(first, L));
        // Deflate: X^2 + (A2 + r) X + (A4 + r(A2 + r)) over the root r.
        Int p = A2 + first;
        Int q = A4 + first * p;
        Int disc = p * p - 4 * q;
        if (disc >= 0) {
            if (auto sq = sqrt_exact_int(disc)) {
                Int r1 = (-p + *sq), r2 = (-p - *sq);
                if (r1 % 2 == 0 && r2 % 2 == 0) {
                    roots.push_back(make_rat(r1 / 2, L));
                    if (r2 != r1) roots.push_back(make_rat(r2 / 2, L));
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    std::vector<CurvePoint> out;
    for (const Rat& r : roots) out.push_back(CurvePoint::affine(r, Rat(0)));
    return out;
}

}  // namespace theta
