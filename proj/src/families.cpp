#include "theta/families.hpp"

namespace theta {

CubicCurve make_E_theta(const Angle& angle, const Rat& w) {
    if (!(w > 0)) throw std::domain_error("make_E_theta: w > 0 violated");
    Rat U(rr_ss(angle));
    return {2 * angle.s * w, -U * w * w, Rat(0)};
}

CubicCurve make_F_theta(const Angle& angle, const Rat& N) {
    if (!(N > 0)) throw std::domain_error("make_F_theta: N > 0 violated");
    Rat U(rr_ss(angle));
    return {-2 * angle.s * N, -U * N * N, Rat(0)};
}

QuarticCurve make_G_quartic_w(const Angle& angle, const Rat& w, const Int& n) {
    if (!(w > 0 && w < 2 * n))
        throw std::domain_error("make_G_quartic_w: 0 < w < 2n violated");
    Rat U(rr_ss(angle));
    Rat N = 2 * n - w;
    Rat A = 2 * angle.s * (N + w);
    Rat B = -U * w * w;
    return {Rat(1), 2 * A, A * A + 2 * B + 4 * U * N * N, 2 * A * B, B * B};
}

QuarticCurve make_G_quartic_m(const Angle& angle, const Rat& m, const Int& n) {
    if (!(m > 0)) throw std::domain_error("make_G_quartic_m: m > 0 violated");
    if (n < 1) throw std::domain_error("make_G_quartic_m: n >= 1 violated");
    Rat U(rr_ss(angle));
    Rat M = m + 1, M2 = M * M;
    Int r = angle.r, s = angle.s;
    Rat b1 = 8 * n * s;
    Rat b2 = 8 * n * n * (2 * m * m * r * r + 4 * s * s * m + 3 * s * s - r * r) / M2;
    Int n3 = n * n * n;
    Rat b3 = -32 * n3 * s * U / M2;
    Int n4 = n * n * n * n;
    Rat b4 = 16 * n4 * U * U / (M2 * M2);
    return {Rat(1), b1, b2, b3, b4};
}

CubicCurve make_G_cubic(const Angle& angle, const Rat& m) {
    if (!(m > 0)) throw std::domain_error("make_G_cubic: m > 0 violated");
    // d2^2 - 4 d1 = (r^2(m-1)^2 + 4s^2m)(r^2(m+1)^2) vanishes only here:
    if (angle.s == 0 && m == 1)
        throw std::domain_error("make_G_cubic: singular at s = 0, m = 1");
    Int r = angle.r, s = angle.s;
    Rat d2 = r * r * m * m + 2 * s * s * m + r * r;
    Rat U(rr_ss(angle));
    Rat d1 = m * m * U * U;
    return {d2, d1, Rat(0)};
}

CurvePoint independent_point(const Angle& angle, const Rat& m) {
    if (!(m > 0)) throw std::domain_error("independent_point: m > 0 violated");
    Rat U(rr_ss(angle));
    return CurvePoint::affine(-U * m * m, angle.s * U * m * m * (m + 1));
}

MQuantities m_quantities(const Angle& angle, const Rat& m) {
    if (!(m > 0)) throw std::domain_error("m_quantities: m > 0 violated");
    MQuantities q;
    Rat U(rr_ss(angle));
    q.M0 = m * U;
    Rat rm = angle.r * (m + 1);
    q.M1_plus_M2 = 2 * rm * rm;
    q.M1_times_M2 = rm * rm * (rm * rm - 4 * q.M0);
    q.sqrtM0 = sqrt_exact(q.M0);
    if (q.sqrtM0) {
        q.M1 = rm * (rm + 2 * *q.sqrtM0);
        q.M2 = rm * (rm - 2 * *q.sqrtM0);
        q.sqrtM1 = sqrt_exact(*q.M1);
        q.sqrtM2 = sqrt_exact(*q.M2);
    }
    return q;
}

const char* torsion_tag_name(TorsionTag tag) {
    switch (tag) {
        case TorsionTag::Z4: return "Z4";
        case TorsionTag::Z8: return "Z8";
        case TorsionTag::Z2xZ4: return "Z2xZ4";
        case TorsionTag::Z2xZ8: return "Z2xZ8";
        case TorsionTag::Z4_or_Z2xZ4_unresolved: return "Z4_or_Z2xZ4_unresolved";
    }
    return "?";
}

TorsionTag torsion_tag_from_name(const std::string& name) {
    if (name == "Z4") return TorsionTag::Z4;
    if (name == "Z8") return TorsionTag::Z8;
    if (name == "Z2xZ4") return TorsionTag::Z2xZ4;
    if (name == "Z2xZ8") return TorsionTag::Z2xZ8;
    if (name == "Z4_or_Z2xZ4_unresolved")
        return TorsionTag::Z4_or_Z2xZ4_unresolved;
    throw std::domain_error("unknown torsion tag '" + name + "'");
}

TorsionClass classify_torsion(const Angle& angle, const Rat& m) {
    if (angle.s == 0 && m == 1)
        throw std::domain_error("classify_torsion: curve is singular at s=0, m=1");
    TorsionClass tc;
    tc.mq = m_quantities(angle, m);
    CubicCurve g = make_G_cubic(angle, m);
    const Rat& M0 = tc.mq.M0;
    Rat rm = angle.r * (m + 1);

    // Order-4 points: (M0, +-r(m+1)M0) always; (-M0, +-M0 y0) exactly when
    // d2 - 2M0 = r^2(m-1)^2 + 4ms^2 is a rational square.
    tc.order4.push_back(CurvePoint::affine(M0, rm * M0));
    tc.order4.push_back(CurvePoint::affine(M0, -rm * M0));
    if (auto y0 = sqrt_exact(g.a2 - 2 * M0)) {
        tc.order4.push_back(CurvePoint::affine(-M0, M0 * *y0));
        tc.order4.push_back(CurvePoint::affine(-M0, -M0 * *y0));
    }

    bool full_two = sqrt_exact(g.a2 * g.a2 - 4 * g.a4).has_value();
    if (tc.mq.sqrtM0) {
        const Rat& s0 = *tc.mq.sqrtM0;
        auto push8 = [&](const Rat& X) {
            Rat rhs = curve_rhs(g, X);
            auto Y = sqrt_exact(rhs);
            if (!Y)
                throw std::logic_error("classify_torsion: order-8 ordinate not rational");
            tc.order8.push_back(CurvePoint::affine(X, *Y));
            tc.order8.push_back(CurvePoint::affine(X, -*Y));
        };
        if (tc.mq.sqrtM1) {
            push8(M0 + (rm + *tc.mq.sqrtM1) * s0);
            push8(M0 + (rm - *tc.mq.sqrtM1) * s0);
        }
        if (tc.mq.sqrtM2) {
            push8(M0 - (rm + *tc.mq.sqrtM2) * s0);
            push8(M0 - (rm - *tc.mq.sqrtM2) * s0);
        }
        if (tc.mq.sqrtM1 && tc.mq.sqrtM2)
            tc.tag = TorsionTag::Z2xZ8;
        else if (tc.mq.sqrtM1 || tc.mq.sqrtM2)
            tc.tag = TorsionTag::Z8;
        else
            tc.tag = full_two ? TorsionTag::Z2xZ4 : TorsionTag::Z4;
    } else {
        tc.tag = full_two ? TorsionTag::Z2xZ4 : TorsionTag::Z4;
    }
    return tc;
}

CubicCurve make_E0(const Angle& angle) {
    if (angle.s == 0)
        throw std::domain_error("make_E0: singular for s = 0 (double root)");
    Int r = angle.r, s = angle.s;
    Rat U(rr_ss(angle));
    Rat a4 = -108 * r * r * U * U * (r * r + 3 * s * s);
    Rat a6 = 432 * r * r * r * r * U * U * U * (r * r - 9 * s * s);
    return {Rat(0), a4, a6};
}

E0Points e0_points(const Angle& angle) {
    CubicCurve e = make_E0(angle);
    Int r = angle.r, s = angle.s;
    Rat U(rr_ss(angle));
    E0Points pts;
    pts.P0 = CurvePoint::affine(-12 * r * r * U, Rat(0));
    pts.P1 = CurvePoint::affine(6 * r * U * (r + 3 * s), Rat(0));
    pts.P2 = CurvePoint::affine(6 * r * U * (r - 3 * s), Rat(0));
    pts.Q = CurvePoint::affine(-3 * U * (r * r + 3 * s * s), 27 * U * U * U);
    for (const CurvePoint* p : {&pts.P0, &pts.P1, &pts.P2, &pts.Q})
        if (!on_curve(e, *p))
            throw std::logic_error("e0_points: listed point fails the curve equation");
    return pts;
}

FGResult verify_FG(const Angle& angle, const Rat& m0) {
    if (m0 < 0) throw std::domain_error("verify_FG: m0 >= 0 violated");
    Rat U(rr_ss(angle));
    Rat base = angle.r * (m0 * m0 + U);
    FGResult res;
    res.m1_squared = base * (base + 2 * m0 * U);
    res.m2_squared = base * (base - 2 * m0 * U);
    res.sqrt_m1 = sqrt_exact(res.m1_squared);
    res.sqrt_m2 = sqrt_exact(res.m2_squared);
    res.both_rational_squares = res.sqrt_m1.has_value() && res.sqrt_m2.has_value();
    return res;
}

CubicCurve make_E_T(const Rat& T) {
    if (!(T > 0)) throw std::domain_error("make_E_T: T > 0 violated");
    return {Rat(0), 3 * T * T, -T * T * (T * T - 1)};
}

QuarticCurve make_C_T(const Rat& T) {
    if (!(T > 0)) throw std::domain_error("make_C_T: T > 0 violated");
    return {T * T, T * T, Rat(0), Rat(-1), Rat(-1)};
}

CThetaMN make_C_theta_mn(const Angle& angle, const Rat& m, const Int& n) {
    if (n < 1) throw std::domain_error("make_C_theta_mn: n >= 1 violated");
    return {make_G_cubic(angle, m), angle, m, n};
}

Rat c_theta_mn_residual(const Angle& angle, const Rat& m, const Int& n,
                        const Rat& X, const Rat& Y) {
    Rat U(rr_ss(angle));
    if (X == 0 || X == -U)
        throw std::domain_error("c_theta_mn_residual: X at a pole of the map");
    Int r = angle.r, s = angle.s;
    Rat M = m + 1;
    Rat phi = (Y + s * M * X) * (X * X + (r - s) * (r - m * s) * X - (r - s) * Y) *
              (X * X + (r + s) * (r + m * s) * X + (r + s) * Y);
    return 2 * n * phi / (M * X * (X + U));
}

bool on_C_theta_mn(const Angle& angle, const Rat& m, const Int& n,
                   const Rat& X, const Rat& Y, const Rat& Z) {
    CThetaMN c = make_C_theta_mn(angle, m, n);
    if (Y == 0) return false;
    Rat U(rr_ss(angle));
    if (X == 0 || X == -U) return false;
    if (!on_curve(c.cubic, CurvePoint::affine(X, Y))) return false;
    return Z * Z == c_theta_mn_residual(angle, m, n, X, Y);
}

}  // namespace theta
