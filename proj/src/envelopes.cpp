#include "theta/envelopes.hpp"

#include <algorithm>
#include <stdexcept>

#include "theta/elliptic.hpp"
#include "theta/families.hpp"
#include "theta/numtheory.hpp"
#include "theta/transforms.hpp"

namespace theta {

bool operator==(const Envelope& lhs, const Envelope& rhs) {
    return lhs.angle == rhs.angle && lhs.a == rhs.a && lhs.b == rhs.b &&
           lhs.c == rhs.c && lhs.d == rhs.d && lhs.e == rhs.e;
}

bool verify(const Envelope& env, const Int& n) {
    const Rat sr = cosine(env.angle);
    const Rat &a = env.a, &b = env.b, &c = env.c, &d = env.d, &e = env.e;
    return a * (b + d) == Rat(env.angle.r) * n &&
           a * a + b * b - 2 * sr * a * b == c * c &&
           a * a + d * d + 2 * sr * a * d == e * e;
}

Envelope scale(const Envelope& env, const Rat& k) {
    if (k <= 0) throw std::domain_error("scale: k must be positive");
    return {env.angle, k * env.a, k * env.b, k * env.c, k * env.d, k * env.e};
}

Envelope reflect_dual(const Envelope& env) {
    return {reflect(env.angle), env.a, env.d, env.e, env.b, env.c};
}

Rat ratio(const Envelope& env) { return env.d / env.b; }

Envelope ratio_dual(const Envelope& env) {
    if (env.b == 0) throw std::domain_error("ratio_dual: b = 0");
    const Rat m = env.d / env.b;
    return {reflect(env.angle), env.d, env.a, env.e, m * env.a, m * env.c};
}

Rat cos_tau(const Envelope& env) {
    const Rat ce = env.c * env.e;
    if (ce == 0) throw std::domain_error("cos_tau: c e = 0");
    const Rat sr = cosine(env.angle);
    return (env.a * env.a - env.b * env.d - sr * env.a * (env.b - env.d)) /
           ce;
}

Triangle tau_triangle(const Envelope& env) {
    const Rat ct = cos_tau(env);
    if (abs(ct) >= 1)
        throw std::domain_error("tau_triangle: |cos tau| >= 1, degenerate");
    return {{env.c, env.e, env.b + env.d}, make_angle(den(ct), num(ct))};
}

Envelope envelope_from_tau_triangle(const Angle& theta, const Angle& tau,
                                    const Int& n_prime, const Triangle& tri) {
    if (n_prime < 1)
        throw std::domain_error("envelope_from_tau_triangle: n' must be positive");
    const Int &q = tau.r, &p = tau.s;
    // sin^2 theta / sin^2 tau = (r^2-s^2) q^2 / ((q^2-p^2) r^2); the square
    // classes match those of lam and lam/n'.
    const auto lam = sqrt_exact(make_rat(rr_ss(theta), q * q - p * p));
    if (!lam)
        throw std::domain_error(
            "envelope_from_tau_triangle: (r^2-s^2)/(q^2-p^2) is not a square");
    const auto vs = sqrt_exact(*lam / n_prime);
    if (!vs)
        throw std::domain_error(
            "envelope_from_tau_triangle: sin theta != n' sin tau mod squares");
    const Rat &a0 = tri.sides[0], &b0 = tri.sides[1], &c0 = tri.sides[2];
    if (a0 <= 0 || b0 <= 0 || c0 <= 0)
        throw std::domain_error("envelope_from_tau_triangle: sides must be positive");
    if (a0 * a0 + b0 * b0 - 2 * make_rat(p, q) * a0 * b0 != c0 * c0)
        throw std::domain_error(
            "envelope_from_tau_triangle: a^2+b^2-(2p/q)ab = c^2 fails");
    const Rat nn = a0 * b0 / (4 * Rat(q) * n_prime);
    if (nn <= 0 || den(nn) != 1)
        throw std::domain_error(
            "envelope_from_tau_triangle: ab = 4qnn' has no positive integer n");
    const Int n = num(nn);
    const Rat a1 = *vs * a0, b1 = *vs * b0, c1 = *vs * c0;
    const Rat shift = *lam * p - theta.s;
    for (int swapped = 0; swapped < 2; ++swapped) {
        const Rat& x = swapped ? b1 : a1;
        const Rat& y = swapped ? a1 : b1;
        const Rat cross = shift * x * y / (2 * Rat(q) * c1 * *lam);
        Envelope env{theta,
                     Rat(theta.r) * x * y / (2 * Rat(q) * c1 * *lam),
                     x * x / (2 * c1) - cross,
                     x / 2,
                     (c1 * c1 - x * x) / (2 * c1) + cross,
                     y / 2};
        if (env.a > 0 && env.b > 0 && env.c > 0 && env.d > 0 && env.e > 0 &&
            verify(env, n) && cos_tau(env) == make_rat(p, q))
            return env;
    }
    throw std::domain_error(
        "envelope_from_tau_triangle: no side ordering gives positive components");
}

Envelope envelope_from_triangle(const Angle& angle, const Int& n,
                                const Triangle& tri) {
    if (!pythagorean(angle))
        throw std::domain_error(
            "envelope_from_triangle: r^2 - s^2 must be a perfect square");
    if (n < 1) throw std::domain_error("envelope_from_triangle: n must be positive");
    std::array<Rat, 3> sides = tri.sides;
    for (const Rat& side : sides)
        if (side <= 0)
            throw std::domain_error("envelope_from_triangle: sides must be positive");
    std::sort(sides.begin(), sides.end());
    const Rat sum = sides[0] + sides[1] + sides[2];
    const Rat heron = sum * (sum - 2 * sides[0]) * (sum - 2 * sides[1]) *
                      (sum - 2 * sides[2]);
    const Int target = 64 * n * n * rr_ss(angle);
    if (heron != Rat(target))
        throw std::domain_error(
            "envelope_from_triangle: Heron area is not 2n sqrt(r^2-s^2)");
    const Rat sr = cosine(angle);
    for (int fi = 0; fi < 3; ++fi) {
        const Rat& f = sides[fi];
        const Rat& r0 = sides[fi == 0 ? 1 : 0];
        const Rat& r1 = sides[fi == 2 ? 1 : 2];
        for (int swapped = 0; swapped < 2; ++swapped) {
            const Rat& c = swapped ? r1 : r0;
            const Rat& e = swapped ? r0 : r1;
            const Rat a = 4 * Rat(angle.r) * n / f;
            const Rat b = (f * f + c * c - e * e) / (2 * f) + a * sr;
            const Rat d = (f * f + e * e - c * c) / (2 * f) - a * sr;
            if (b > 0 && d > 0) {
                Envelope env{angle, a / 2, b / 2, c / 2, d / 2, e / 2};
                if (!verify(env, n))
                    throw std::logic_error(
                        "envelope_from_triangle: constructed envelope fails");
                return env;
            }
        }
    }
    throw std::domain_error(
        "envelope_from_triangle: no side ordering gives positive b and d");
}

namespace {

// One multiple [l]Q1 of the walk behind generate_envelopes: map to the
// quartic model, read off the triangle, build the envelope. Degenerate
// stops (infinity, pole, zero coordinate, flat triangle, no positive side
// ordering) yield nothing.
std::optional<Envelope> envelope_at_multiple(const Angle& angle, const Int& n,
                                             const CubicCurve& E,
                                             const CurvePoint& Q1,
                                             const Rat& T, long l) {
    const CurvePoint P = scalar_mul(E, l, Q1);
    if (P.infinite) return std::nullopt;
    const auto xy = et_to_ct(T, P);
    if (!xy) return std::nullopt;
    const auto& [x, y] = *xy;
    if (x == 0 || y == 0) return std::nullopt;
    Triangle tri = triangle_from_ct_point(T, x, y);
    std::array<Rat, 3> sides = tri.sides;
    std::sort(sides.begin(), sides.end());
    if (sides[0] + sides[1] <= sides[2]) return std::nullopt;
    try {
        return envelope_from_triangle(angle, n, tri);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

// Drives the walk in blocks of multiples, building candidates in parallel
// and consuming them in multiple order so output is deterministic. sink
// returns true to stop.
template <typename Sink>
void walk_envelopes(const Angle& angle, const Int& n, long cap, Sink&& sink) {
    if (!pythagorean(angle))
        throw std::domain_error(
            "generate_envelopes: r^2 - s^2 must be a perfect square");
    if (n < 1) throw std::domain_error("generate_envelopes: n must be positive");
    const Int Tz = 2 * n * *angle.t;
    const Rat T(Tz);
    const CubicCurve E = make_E_T(T);
    const CurvePoint Q1 =
        CurvePoint::affine(T * T / 4, T * (T * T - 8) / 8);
    constexpr long kBlock = 8;
    std::vector<std::optional<Envelope>> built(kBlock);
    for (long base = 1; base <= cap; base += kBlock) {
        const long hi = std::min(base + kBlock - 1, cap);
#pragma omp parallel for schedule(dynamic)
        for (long l = base; l <= hi; ++l)
            built[l - base] = envelope_at_multiple(angle, n, E, Q1, T, l);
        for (long l = base; l <= hi; ++l) {
            if (!built[l - base]) continue;
            if (sink(std::move(*built[l - base]))) return;
        }
    }
    throw std::runtime_error(
        "generate_envelopes: multiple cap reached before the requested count");
}

}  // namespace

std::vector<Envelope> generate_envelopes(const Angle& angle, const Int& n,
                                         std::size_t count) {
    std::vector<Envelope> out;
    if (count == 0) return out;
    const long cap = std::max<long>(64, 16 * static_cast<long>(count));
    walk_envelopes(angle, n, cap, [&](Envelope&& env) {
        if (std::find(out.begin(), out.end(), env) == out.end())
            out.push_back(std::move(env));
        return out.size() >= count;
    });
    return out;
}

std::vector<Rat> infinitely_many_ratios(const Angle& angle, const Int& n,
                                        std::size_t count) {
    std::vector<Rat> out;
    if (count == 0) return out;
    const long cap = std::max<long>(64, 16 * static_cast<long>(count));
    walk_envelopes(angle, n, cap, [&](Envelope&& env) {
        Rat m = ratio(env);
        if (m < 1) m = 1 / m;
        if (std::find(out.begin(), out.end(), m) == out.end())
            out.push_back(std::move(m));
        return out.size() >= count;
    });
    return out;
}

}  // namespace theta
