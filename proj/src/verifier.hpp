#pragma once

#include <optional>
#include <vector>

#include "exact.hpp"
#include "pointset.hpp"

namespace linefree {

struct ProgressionWitness {
    Point base;
    Direction dir;  // canonical direction of step
    Point step;     // actual common difference; equals dir when k = p
    int k = 0;
    std::vector<PointIndex> points;
};

// Least witness by (base index, step index). For k = p the step ranges over
// canonical directions only, since a full line is its own reversal.
std::optional<ProgressionWitness> find_progression(const PointSet& s, int k, int threads = 1);

struct LineProfile {
    std::vector<long long> x;  // x[i] = lines meeting the set in exactly i points
};

LineProfile line_profile(const PointSet& s, int threads = 1);

struct PlaneProfile {
    std::vector<Direction> normals;
    std::vector<std::vector<long long>> sizes;  // ascending per class
};

PlaneProfile plane_profile(const PointSet& s);

// Exact rational LP over the line counts x_0..x_p of a plane holding m points
// of a line-free set (x_p = 0), optimizing the number of (p-1)-lines.
struct LineBounds {
    bool feasible = false;
    Rational min;
    Rational max;
    long long min_count = 0;  // ceil(min)
    long long max_count = 0;  // floor(max)
};

LineBounds lp_line_bounds(int p, long long m);

struct DegreeBound {
    long long value = 0;
    bool extrapolated = true;  // outside the p = 5, m in {14, 15} setting
};

// Each point of the plane lies on at most floor((m-1)/(p-2)) (p-1)-lines.
DegreeBound degree_line_bound(int p, long long m);

// From 3*(line total) - 2*(incidences) + (pairs): every coefficient
// (i-2)(i-3)/2 is nonnegative, so x_{p-1} is bounded by the right side over
// (p-3)(p-4)/2. Defined for p >= 5.
long long pair_combination_cap(int p, long long m);

struct IdentityReport {
    long long line_total = 0, line_total_expected = 0;
    long long incidences = 0, incidences_expected = 0;
    long long pairs = 0, pairs_expected = 0;
    LineProfile profile;

    bool holds() const
    {
        return line_total == line_total_expected && incidences == incidences_expected && pairs == pairs_expected;
    }
};

// Recomputes the three counting identities from the line profile; a mismatch
// is an internal error.
IdentityReport identity_check(const PointSet& s);

}  // namespace linefree
