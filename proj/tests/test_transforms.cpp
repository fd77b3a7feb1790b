#include <doctest.h>

#include <stdexcept>

#include "theta/angle.hpp"
#include "theta/elliptic.hpp"
#include "theta/envelopes.hpp"
#include "theta/families.hpp"
#include "theta/transforms.hpp"

using namespace theta;

namespace {

// Envelope (2, 5/4, 7/4, 7/4, 13/4) for (2,1), n = 3 and the system
// solution it maps to.
Envelope sample_env() {
    return Envelope{make_angle(2, 1), Rat(2), Rat(5, 4), Rat(7, 4), Rat(7, 4),
                    Rat(13, 4)};
}

SystemSolution sample_sol() {
    SystemSolution sol;
    sol.u = Rat(49, 2);
    sol.v = Rat(98);
    sol.w = Rat(5, 2);
    sol.x = Rat(25, 2);
    sol.y = Rat(50);
    return sol;
}

}  // namespace

TEST_CASE("validate_solution checks both curves and the coupling") {
    Angle a21 = make_angle(2, 1);
    SystemSolution sol = sample_sol();
    CHECK(validate_solution(a21, 3, sol));

    SystemSolution bad = sol;
    bad.w = Rat(7);  // outside (0, 2n)
    CHECK(!validate_solution(a21, 3, bad));

    bad = sol;
    bad.y = -bad.y;  // breaks xv = uy
    CHECK(!validate_solution(a21, 3, bad));

    bad = sol;
    bad.x += 1;
    CHECK(!validate_solution(a21, 3, bad));

    CHECK(!validate_solution(a21, 2, sol));  // wrong n
    CHECK(!validate_solution(a21, 0, sol));
}

TEST_CASE("envelope_to_solution and solution_to_envelope invert each other") {
    Angle a21 = make_angle(2, 1);
    Envelope env = sample_env();
    CHECK(verify(env, 3));

    SystemSolution sol = envelope_to_solution(a21, env);
    CHECK(sol.u == Rat(49, 2));
    CHECK(sol.v == Rat(98));
    CHECK(sol.w == Rat(5, 2));
    CHECK(sol.x == Rat(25, 2));
    CHECK(sol.y == Rat(50));

    CHECK(solution_to_envelope(a21, 3, sol) == env);

    // Sign flips in the solution wash out in the absolute values.
    SystemSolution neg = sol;
    neg.y = -neg.y;
    neg.v = -neg.v;
    CHECK(validate_solution(a21, 3, neg));
    CHECK(solution_to_envelope(a21, 3, neg) == env);

    Envelope broken = env;
    broken.c += 1;
    CHECK_THROWS_AS(envelope_to_solution(a21, broken), std::domain_error);
    CHECK_THROWS_AS(solution_to_envelope(a21, 2, sol), std::domain_error);
}

TEST_CASE("cubic/quartic pair of birational maps") {
    Angle a21 = make_angle(2, 1);
    Rat m(2);
    Int n(3);
    CubicCurve G = make_G_cubic(a21, m);
    QuarticCurve Q = make_G_quartic_m(a21, m, n);

    CurvePoint P2 = CurvePoint::affine(Rat(9, 4), Rat(-117, 8));
    REQUIRE(on_curve(G, P2));
    auto [x, z] = cubic_to_quartic(a21, m, n, P2);
    CHECK(x == 4);
    CHECK(z == 76);
    CHECK(on_quartic(Q, x, z));
    CHECK(quartic_to_cubic(a21, m, n, x, z) == P2);

    // x = 0 on the quartic corresponds to the point at infinity.
    CHECK(quartic_to_cubic(a21, m, n, Rat(0), Rat(12)) ==
          CurvePoint::infinity());
    CHECK_THROWS_AS(cubic_to_quartic(a21, m, n, CurvePoint::infinity()),
                    std::domain_error);

    // Poles X = 0 and X = -(r^2-s^2) are rejected.
    CHECK_THROWS_AS(cubic_to_quartic(a21, m, n, CurvePoint::affine(0, 0)),
                    std::domain_error);
    REQUIRE(on_curve(G, CurvePoint::affine(-3, 9)));
    CHECK_THROWS_AS(cubic_to_quartic(a21, m, n, CurvePoint::affine(-3, 9)),
                    std::domain_error);

    CHECK_THROWS_AS(cubic_to_quartic(a21, m, n, CurvePoint::affine(1, 1)),
                    std::domain_error);
    CHECK_THROWS_AS(quartic_to_cubic(a21, m, n, Rat(1), Rat(1)),
                    std::domain_error);

    // Roundtrip over several multiples of the marked point.
    CurvePoint P = independent_point(a21, m);
    for (int k = 2; k <= 6; ++k) {
        CurvePoint Pk = scalar_mul(G, k, P);
        if (Pk.infinite || Pk.x == 0 || Pk.x == -3) continue;
        if (Pk.y + 3 * Pk.x == 0) continue;  // image lands at x = 0
        auto [xk, zk] = cubic_to_quartic(a21, m, n, Pk);
        CHECK(quartic_to_cubic(a21, m, n, xk, zk) == Pk);
    }
}

TEST_CASE("solve_u returns both roots of the u-quadratic") {
    Angle a21 = make_angle(2, 1);
    Rat w(5, 2), N(7, 2), x(25, 2), z(325);
    auto [up, um] = solve_u(a21, w, N, x, z);
    CHECK(up == Rat(49, 2));
    CHECK(um == Rat(-3, 2));
    // Vieta: product -UN^2, sum S/x.
    CHECK(up * um == -3 * N * N);

    CHECK_THROWS_AS(solve_u(a21, w, N, Rat(0), z), std::domain_error);
    CHECK_THROWS_AS(solve_u(a21, w, N, x, z + 1), std::domain_error);
}

TEST_CASE("C_T <-> E_T maps") {
    Rat T(6);
    CubicCurve E = make_E_T(T);
    CurvePoint Q1 = CurvePoint::affine(9, 21);

    auto ct = et_to_ct(T, Q1);
    REQUIRE(ct.has_value());
    CHECK(ct->first == Rat(10, 27));
    CHECK(ct->second == Rat(259, 243));
    CHECK(ct_to_et(T, ct->first, ct->second) == Q1);

    // Infinity corresponds to (-1, 0); X = T^2 has no affine image.
    CHECK(et_to_ct(T, CurvePoint::infinity()) == std::make_pair(Rat(-1), Rat(0)));
    CHECK(ct_to_et(T, Rat(-1), Rat(0)) == CurvePoint::infinity());
    CurvePoint pole = CurvePoint::affine(36, 222);
    REQUIRE(on_curve(E, pole));
    CHECK(!et_to_ct(T, pole).has_value());

    CHECK_THROWS_AS(ct_to_et(T, Rat(1), Rat(1)), std::domain_error);
    CHECK_THROWS_AS(et_to_ct(T, CurvePoint::affine(1, 1)), std::domain_error);

    // Roundtrip along the first multiples of Q1.
    for (int k = 2; k <= 8; ++k) {
        CurvePoint Pk = scalar_mul(E, k, Q1);
        auto c = et_to_ct(T, Pk);
        if (!c) continue;
        CHECK(ct_to_et(T, c->first, c->second) == Pk);
    }
}

TEST_CASE("triangle_from_ct_point builds a Heron triangle of area T") {
    Rat T(6);
    Triangle tri = triangle_from_ct_point(T, Rat(10, 27), Rat(259, 243));
    CHECK(tri.sides[0] == Rat(259, 90));
    CHECK(tri.sides[1] == Rat(39, 7));
    // 16 Area^2 equals the Heron product, so the product must be 16 T^2.
    const Rat s0 = tri.sides[0], s1 = tri.sides[1], s2 = tri.sides[2];
    CHECK((s0 + s1 + s2) * (s0 + s1 - s2) * (s0 - s1 + s2) * (-s0 + s1 + s2) ==
          16 * T * T);

    CHECK_THROWS_AS(triangle_from_ct_point(T, Rat(0), Rat(1)),
                    std::domain_error);
    CHECK_THROWS_AS(triangle_from_ct_point(T, Rat(1), Rat(1)),
                    std::domain_error);
}

TEST_CASE("certified_n extracts n from infinite-order points") {
    Angle a21 = make_angle(2, 1);

    // m = 2: the marked point itself certifies n = 15.
    CurvePoint P = independent_point(a21, Rat(2));
    CertifiedN c = certified_n(a21, Rat(2), P);
    CHECK(c.n == 15);
    CHECK(verify(c.env, c.n));
    CHECK(ratio(c.env) == 2);

    // m = 5 at the doubled point: n = 828282.
    CubicCurve G5 = make_G_cubic(a21, Rat(5));
    CurvePoint P5 = scalar_mul(G5, 2, independent_point(a21, Rat(5)));
    CertifiedN c5 = certified_n(a21, Rat(5), P5);
    CHECK(c5.n == 828282);
    CHECK(verify(c5.env, c5.n));
    CHECK(ratio(c5.env) == 5);

    // m = 1/2 at the doubled point: n = 33915.
    CubicCurve Gh = make_G_cubic(a21, Rat(1, 2));
    CurvePoint Ph = scalar_mul(Gh, 2, independent_point(a21, Rat(1, 2)));
    CertifiedN ch = certified_n(a21, Rat(1, 2), Ph);
    CHECK(ch.n == 33915);
    CHECK(ratio(ch.env) == Rat(1, 2));

    // (5,4), m = 3/2: n = 3 at the marked point.
    Angle a54 = make_angle(5, 4);
    CertifiedN c54 = certified_n(a54, Rat(3, 2), independent_point(a54, Rat(3, 2)));
    CHECK(c54.n == 3);
    CHECK(verify(c54.env, c54.n));

    // (5,3), m = 2: n = 14 at the marked point.
    Angle a53 = make_angle(5, 3);
    CertifiedN c53 = certified_n(a53, Rat(2), independent_point(a53, Rat(2)));
    CHECK(c53.n == 14);

    // (3,1), m = 2/3 at the doubled point: n = 231.
    Angle a31 = make_angle(3, 1);
    CubicCurve G23 = make_G_cubic(a31, Rat(2, 3));
    CurvePoint P23 = scalar_mul(G23, 2, independent_point(a31, Rat(2, 3)));
    CHECK(certified_n(a31, Rat(2, 3), P23).n == 231);

    // Degenerate inputs: torsion points and points killed by the sign rule.
    CHECK_THROWS_AS(certified_n(a21, Rat(2), CurvePoint::affine(0, 0)),
                    std::domain_error);
    CHECK_THROWS_AS(certified_n(a21, Rat(2), CurvePoint::affine(6, 36)),
                    std::domain_error);
    // The marked point for m = 1/2 annihilates the sign product.
    CHECK_THROWS_AS(certified_n(a21, Rat(1, 2), independent_point(a21, Rat(1, 2))),
                    std::domain_error);
}
