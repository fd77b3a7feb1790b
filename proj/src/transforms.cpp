#include "theta/transforms.hpp"

#include <stdexcept>

#include "theta/families.hpp"
#include "theta/numtheory.hpp"

namespace theta {

bool validate_solution(const Angle& angle, const Int& n,
                       const SystemSolution& sol) {
    if (n < 1) return false;
    const Rat rU(rr_ss(angle)), rs(angle.s), rn(n);
    const Rat &u = sol.u, &v = sol.v, &w = sol.w, &x = sol.x, &y = sol.y;
    const Rat N = 2 * rn - w;
    if (!(w > 0 && w < 2 * rn)) return false;
    if (y == 0 || v == 0) return false;
    if (y * y != x * x * x + 2 * rs * w * x * x - rU * w * w * x) return false;
    if (v * v != u * u * u - 2 * rs * N * u * u - rU * N * N * u) return false;
    return x * v == u * y;
}

std::pair<Rat, Rat> cubic_to_quartic(const Angle& angle, const Rat& m,
                                     const Int& n, const CurvePoint& P) {
    const CubicCurve G = make_G_cubic(angle, m);
    if (P.infinite)
        throw std::domain_error("cubic_to_quartic: point at infinity");
    if (!on_curve(G, P))
        throw std::domain_error("cubic_to_quartic: point is not on the curve");
    const Rat rU(rr_ss(angle)), rs(angle.s), rn(n), M = m + 1;
    const Rat &X = P.x, &Y = P.y;
    if (X == 0 || X == -rU)
        throw std::domain_error(
            "cubic_to_quartic: pole (X = 0 or X = -(r^2-s^2))");
    const Rat &d2 = G.a2, &d1 = G.a4;
    const Rat x = -2 * rn * rU * (Y + rs * M * X) / (M * X * (X + rU));
    const Rat z = 4 * rn * rn * rU /
                  (M * M * X * (X + rU) * (X + rU)) *
                  (X * X * X + (2 * d2 - rU) * X * X +
                   (3 * d1 + 2 * rs * M * Y) * X + rU * d1);
    if (!on_quartic(make_G_quartic_m(angle, m, n), x, z))
        throw std::logic_error("cubic_to_quartic: image misses the quartic");
    return {x, z};
}

CurvePoint quartic_to_cubic(const Angle& angle, const Rat& m, const Int& n,
                            const Rat& x, const Rat& z) {
    if (!on_quartic(make_G_quartic_m(angle, m, n), x, z))
        throw std::domain_error(
            "quartic_to_cubic: (x,z) is not on the quartic");
    if (x == 0) return CurvePoint::infinity();
    const Rat rU(rr_ss(angle)), rs(angle.s), rn(n), M = m + 1;
    const Rat X = -rU *
                  (M * M * x * x + 4 * rs * rn * M * M * x - M * M * z -
                   4 * rn * rn * rU) /
                  (2 * M * M * x * x);
    const Rat Y = -M * X * (x * (X + rU) + 2 * rn * rs * rU) / (2 * rn * rU);
    const CurvePoint P = CurvePoint::affine(X, Y);
    if (!on_curve(make_G_cubic(angle, m), P))
        throw std::logic_error("quartic_to_cubic: image misses the cubic");
    return P;
}

std::pair<Rat, Rat> solve_u(const Angle& angle, const Rat& w, const Rat& N,
                            const Rat& x, const Rat& z) {
    if (x == 0) throw std::domain_error("solve_u: x = 0");
    const Rat rU(rr_ss(angle)), rs(angle.s);
    const Rat S = x * x + 2 * x * rs * (N + w) - rU * w * w;
    if (z * z != S * S + 4 * rU * N * N * x * x)
        throw std::domain_error("solve_u: z is not a valid quartic ordinate");
    return {(S + z) / (2 * x), (S - z) / (2 * x)};
}

Envelope solution_to_envelope(const Angle& angle, const Int& n,
                              const SystemSolution& sol) {
    if (!validate_solution(angle, n, sol))
        throw std::domain_error(
            "solution_to_envelope: solution invariants fail");
    const Rat rU(rr_ss(angle)), rr(angle.r), rn(n);
    const Rat &u = sol.u, &v = sol.v, &w = sol.w, &x = sol.x, &y = sol.y;
    const Rat N = 2 * rn - w;
    Envelope env{angle,
                 abs(y / (2 * x)),
                 abs(rr * w * x / y),
                 abs((x * x + rU * w * w) / (2 * y)),
                 abs(rr * N * u / v),
                 abs((u * u + rU * N * N) / (2 * v))};
    if (!verify(env, n))
        throw std::logic_error("solution_to_envelope: output fails verify");
    return env;
}

SystemSolution envelope_to_solution(const Angle& angle, const Envelope& env) {
    const Rat sr = cosine(angle);
    const Rat &a = env.a, &b = env.b, &c = env.c, &d = env.d, &e = env.e;
    if (a <= 0 || b <= 0 || c <= 0 || d <= 0 || e <= 0 ||
        !(env.angle == angle) ||
        a * a + b * b - 2 * sr * a * b != c * c ||
        a * a + d * d + 2 * sr * a * d != e * e)
        throw std::domain_error(
            "envelope_to_solution: envelope does not verify");
    SystemSolution sol;
    sol.x = 2 * a * (a + c - sr * b);
    sol.y = 2 * a * sol.x;
    sol.w = 2 * a * b / Rat(angle.r);
    sol.u = 2 * a * (a + e + sr * d);
    sol.v = 2 * a * sol.u;
    const Rat nr = a * (b + d) / angle.r;
    if (den(nr) == 1 && !validate_solution(angle, num(nr), sol))
        throw std::logic_error("envelope_to_solution: output invariants fail");
    return sol;
}

CurvePoint ct_to_et(const Rat& T, const Rat& x, const Rat& y) {
    if (!on_quartic(make_C_T(T), x, y))
        throw std::domain_error("ct_to_et: (x,y) is not on the quartic");
    if (x == -1) return CurvePoint::infinity();
    const Rat X = (T * T * x - 1) / (x + 1);
    const Rat Y = (T * T + 1) * y / ((x + 1) * (x + 1));
    const CurvePoint P = CurvePoint::affine(X, Y);
    if (!on_curve(make_E_T(T), P))
        throw std::logic_error("ct_to_et: image misses the cubic");
    return P;
}

std::optional<std::pair<Rat, Rat>> et_to_ct(const Rat& T,
                                            const CurvePoint& P) {
    if (P.infinite) return std::make_pair(Rat(-1), Rat(0));
    if (!on_curve(make_E_T(T), P))
        throw std::domain_error("et_to_ct: point is not on the curve");
    if (P.x == T * T) return std::nullopt;
    const Rat x = (P.x + 1) / (T * T - P.x);
    const Rat y = (T * T + 1) * P.y / ((T * T - P.x) * (T * T - P.x));
    if (!on_quartic(make_C_T(T), x, y))
        throw std::logic_error("et_to_ct: image misses the quartic");
    return std::make_pair(x, y);
}

Triangle triangle_from_ct_point(const Rat& T, const Rat& x, const Rat& y) {
    if (x == 0 || y == 0)
        throw std::domain_error("triangle_from_ct_point: x y = 0");
    if (!on_quartic(make_C_T(T), x, y))
        throw std::domain_error(
            "triangle_from_ct_point: (x,y) is not on the quartic");
    const Rat c = abs(y / x);
    const Rat e = abs((T * T * x * x + 1) / y);
    const Rat f = abs((T * T * x * x * x * x + 1) / (x * y));
    return {{c, e, f}, std::nullopt};
}

CertifiedN certified_n(const Angle& angle, const Rat& m, const CurvePoint& P) {
    const CubicCurve G = make_G_cubic(angle, m);
    if (P.infinite || !on_curve(G, P))
        throw std::domain_error("certified_n: point is not on the curve");
    if (point_order(G, P).has_value())
        throw std::domain_error(
            "certified_n: torsion point cannot certify an n");
    const Rat rU(rr_ss(angle)), rr(angle.r), rs(angle.s), M = m + 1;
    const Rat& X = P.x;
    if (X == 0 || X == -rU)
        throw std::domain_error(
            "certified_n: pole (X = 0 or X = -(r^2-s^2))");
    // Pick the sign of Y for which the quartic-side product is positive;
    // its squarefree part is the certified n.
    std::optional<Rat> Bprime;
    Rat Ysel;
    for (int eps : {1, -1}) {
        const Rat Ys = eps * P.y;
        const Rat x1 = -2 * rU * (Ys + rs * M * X) / (M * X * (X + rU));
        const Rat B =
            x1 * (x1 + 2 * (rr + rs) / M) * (x1 - 2 * (rr - rs) / M);
        if (B > 0) {
            Bprime = B;
            Ysel = Ys;
            break;
        }
    }
    if (!Bprime)
        throw std::domain_error("certified_n: no admissible sign of Y");
    const Int n = squarefree_part(*Bprime).part;
    const Rat rn(n);
    const Rat w = 2 * rn / M;
    const Rat N = w * m;
    const auto [x, z] =
        cubic_to_quartic(angle, m, n, CurvePoint::affine(X, Ysel));
    const auto y =
        sqrt_exact(x * x * x + 2 * rs * w * x * x - rU * w * w * x);
    if (!y) throw std::logic_error("certified_n: curve ordinate not rational");
    const Rat S = x * x + 2 * x * rs * (N + w) - rU * w * w;
    SystemSolution sol;
    sol.x = x;
    sol.y = *y;
    sol.w = w;
    sol.u = (S + z) / (2 * x);
    sol.v = sol.u * *y / x;
    Envelope env = solution_to_envelope(angle, n, sol);
    if (ratio(env) != m)
        throw std::logic_error("certified_n: ratio of the envelope is not m");
    return {n, env};
}

}  // namespace theta
