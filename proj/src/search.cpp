#include "theta/search.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "theta/families.hpp"
#include "theta/numtheory.hpp"

namespace theta {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    std::optional<Clock::time_point> at;

    explicit Deadline(const SearchBudget& budget) {
        if (budget.time_limit)
            at = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(
                                        *budget.time_limit));
    }
    bool expired() const { return at && Clock::now() >= *at; }
};

Int x_height(const Rat& x) {
    Int h = abs(num(x));
    if (den(x) > h) h = den(x);
    return h;
}

bool point_less(const CurvePoint& lhs, const CurvePoint& rhs) {
    const Int hl = x_height(lhs.x), hr = x_height(rhs.x);
    if (hl != hr) return hl < hr;
    if (lhs.x != rhs.x) return lhs.x < rhs.x;
    return lhs.y < rhs.y;
}

// All points with abscissa p/e^2 for one numerator p: the y^2 value times
// e^6 is integral and must be a perfect square.
void scan_numerator(const Int& A2, const Int& A4, const Int& A6, long p,
                    long bound, std::vector<CurvePoint>& out) {
    for (long e = 1; e <= bound; ++e) {
        if (std::gcd(p < 0 ? -p : p, e) != 1) continue;
        const Int e2 = Int(e) * e;
        const Int e4 = e2 * e2;
        const Int val =
            ((Int(p) + A2 * e2) * p + A4 * e4) * p + A6 * e4 * e2;
        if (val < 0) continue;
        const auto root = sqrt_exact_int(val);
        if (!root) continue;
        const Rat x = make_rat(p, e2);
        if (*root == 0) {
            out.push_back(CurvePoint::affine(x, Rat(0)));
        } else {
            const Rat y = make_rat(*root, e2 * e);
            out.push_back(CurvePoint::affine(x, -y));
            out.push_back(CurvePoint::affine(x, y));
        }
    }
}

std::vector<CurvePoint> naive_core(const CubicCurve& curve,
                                   const SearchBudget& budget,
                                   bool parallel) {
    if (den(curve.a2) != 1 || den(curve.a4) != 1 || den(curve.a6) != 1)
        throw std::domain_error("naive_points: curve model must be integral");
    if (budget.height_bound < 1)
        throw std::domain_error("naive_points: height bound must be >= 1");
    const long bound = budget.height_bound;
    const Int A2 = num(curve.a2), A4 = num(curve.a4), A6 = num(curve.a6);
    const Deadline deadline(budget);
    std::vector<CurvePoint> found;
    if (parallel) {
#pragma omp parallel
        {
            std::vector<CurvePoint> local;
#pragma omp for schedule(dynamic, 4) nowait
            for (long p = -bound; p <= bound; ++p) {
                if (deadline.expired()) continue;
                scan_numerator(A2, A4, A6, p, bound, local);
            }
#pragma omp critical
            found.insert(found.end(), local.begin(), local.end());
        }
    } else {
        for (long p = -bound; p <= bound && !deadline.expired(); ++p)
            scan_numerator(A2, A4, A6, p, bound, found);
    }
    std::sort(found.begin(), found.end(), point_less);
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

}  // namespace

std::vector<CurvePoint> naive_points(const CubicCurve& curve,
                                     const SearchBudget& budget) {
    return naive_core(curve, budget, true);
}

std::vector<CurvePoint> naive_points_serial(const CubicCurve& curve,
                                            const SearchBudget& budget) {
    return naive_core(curve, budget, false);
}

std::optional<CurvePoint> heuristic_rank_positive(const Angle& angle,
                                                  const Rat& m,
                                                  const SearchBudget& budget) {
    const CubicCurve G = make_G_cubic(angle, m);
    const CurvePoint P = independent_point(angle, m);
    if (!point_order(G, P)) return P;
    // Integral model: (X, Y) = (t^2 x, t^3 y) clears the denominators of
    // d2 and d1.
    const Int t = lcm(den(G.a2), den(G.a4));
    const Int t2 = t * t;
    const CubicCurve scaled{Rat(t2) * G.a2, Rat(t2) * t2 * G.a4, Rat(0)};
    for (const CurvePoint& Q : naive_points(scaled, budget)) {
        if (Q.infinite) continue;
        const CurvePoint back =
            CurvePoint::affine(Q.x / t2, Q.y / (Rat(t2) * t));
        if (!point_order(G, back)) return back;
    }
    return std::nullopt;
}

std::optional<Envelope> find_envelope_adhoc(const Angle& angle, const Int& n,
                                            const SearchBudget& budget) {
    if (n < 1)
        throw std::domain_error("find_envelope_adhoc: n must be positive");
    if (budget.height_bound < 1)
        throw std::domain_error("find_envelope_adhoc: height bound must be >= 1");
    const Deadline deadline(budget);
    const Rat rr(angle.r), rs(angle.s), rn(n);
    const Rat sr = cosine(angle);
    std::vector<Rat> slots;
    for (long ha = 1; ha <= budget.height_bound; ++ha) {
        if (deadline.expired()) break;
        slots.clear();
        for (long q = 1; q <= ha; ++q)
            if (std::gcd(ha, q) == 1) slots.push_back(make_rat(ha, q));
        for (long p = 1; p < ha; ++p)
            if (std::gcd(p, ha) == 1) slots.push_back(make_rat(p, ha));
        for (const Rat& a : slots) {
            // b from the chord through (b,c) = (0,a) with slope lam:
            // c = a + lam b turns the first quadratic into a linear
            // condition on b.
            for (long v = 1; v <= 16; ++v) {
                for (long u = -(v - 1); u <= v - 1; ++u) {
                    if (std::gcd(u < 0 ? -u : u, v) != 1) continue;
                    const Rat lam = make_rat(u, v);
                    const Rat b =
                        2 * a * (rr * lam + rs) / (rr * (1 - lam * lam));
                    if (b <= 0) continue;
                    const Rat d = rr * rn / a - b;
                    if (d <= 0) continue;
                    const Rat c = a + lam * b;
                    if (c <= 0) continue;
                    const auto e =
                        sqrt_exact(a * a + d * d + 2 * sr * a * d);
                    if (!e) continue;
                    Envelope env{angle, a, b, c, d, *e};
                    if (!verify(env, n))
                        throw std::logic_error(
                            "find_envelope_adhoc: candidate fails verify");
                    return env;
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<CurvePoint> theta_congruent_heuristic(
    const Angle& angle, const Int& n, const SearchBudget& budget) {
    if (n < 1)
        throw std::domain_error(
            "theta_congruent_heuristic: n must be positive");
    const CubicCurve E = make_E_theta(angle, Rat(n));
    for (const CurvePoint& P : naive_points(E, budget))
        if (!P.infinite && P.y != 0) return P;
    return std::nullopt;
}

}  // namespace theta
