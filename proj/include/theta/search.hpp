#pragma once

#include <optional>
#include <vector>

#include "theta/angle.hpp"
#include "theta/elliptic.hpp"
#include "theta/envelopes.hpp"
#include "theta/rational.hpp"

namespace theta {

// Caps for the exhaustive scans: candidate numerators/denominators stay at
// or below height_bound; time_limit (seconds) stops a scan early.
struct SearchBudget {
    long height_bound = 1;
    std::optional<double> time_limit;
};

// Budget at which find_envelope_adhoc is known to succeed for the small
// cases (e.g. (2,1) with n = 3 or 7).
inline constexpr SearchBudget default_adhoc_budget{256, {}};

// All rational points with x = p/e^2, |p| <= bound, e <= bound on an
// integral model, y by exact square root; ordered by (height, x, y) with
// height = max(|p|, e^2); closed under negation. Parallel over p.
std::vector<CurvePoint> naive_points(const CubicCurve& curve,
                                     const SearchBudget& budget);

// Single-threaded reference with identical output.
std::vector<CurvePoint> naive_points_serial(const CubicCurve& curve,
                                            const SearchBudget& budget);

// An infinite-order point on the cubic for (angle, m) if the marked point
// or a bounded search yields one; nullopt means unknown, never rank 0.
std::optional<CurvePoint> heuristic_rank_positive(const Angle& angle,
                                                  const Rat& m,
                                                  const SearchBudget& budget);

// First verified envelope for n from the chord enumeration: a = p/q by
// increasing max(p,q), chord slope by increasing denominator; nullopt when
// the budget is exhausted (absence is normal).
std::optional<Envelope> find_envelope_adhoc(const Angle& angle, const Int& n,
                                            const SearchBudget& budget);

// A point with y != 0 on y^2 = x^3 + 2snx^2 - (r^2-s^2)n^2x within budget;
// nullopt means unknown.
std::optional<CurvePoint> theta_congruent_heuristic(const Angle& angle,
                                                    const Int& n,
                                                    const SearchBudget& budget);

}  // namespace theta
