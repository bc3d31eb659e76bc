#include "ccopt/hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace ccopt {

namespace {

bool lex_mu_var_less(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.mu != b.mu) return a.mu < b.mu;
    return a.var < b.var;
}

bool exact_int(double x) {
    return x == std::floor(x) && std::abs(x) <= 4.6e18;
}

// Orientation of (o -> a -> b): positive means b lies counterclockwise of a
// around o, which along a left-to-right scan is a convex corner of the lower
// envelope. Integer coordinates are compared exactly in 128-bit arithmetic.
int cross_sign(const ObjectiveVector& o, const ObjectiveVector& a, const ObjectiveVector& b) {
    const double d1x = a.mu - o.mu;
    const double d1y = a.var - o.var;
    const double d2x = b.mu - o.mu;
    const double d2y = b.var - o.var;
    if (exact_int(d1x) && exact_int(d1y) && exact_int(d2x) && exact_int(d2y)) {
        const __int128 c = static_cast<__int128>(static_cast<std::int64_t>(d1x)) *
                               static_cast<std::int64_t>(d2y) -
                           static_cast<__int128>(static_cast<std::int64_t>(d1y)) *
                               static_cast<std::int64_t>(d2x);
        return c > 0 ? 1 : (c < 0 ? -1 : 0);
    }
    const long double c = static_cast<long double>(d1x) * static_cast<long double>(d2y) -
                          static_cast<long double>(d1y) * static_cast<long double>(d2x);
    return c > 0 ? 1 : (c < 0 ? -1 : 0);
}

}  // namespace

std::vector<ObjectiveVector> lower_envelope(const std::vector<ObjectiveVector>& points) {
    if (points.empty()) throw DomainError("lower_envelope: empty point set");

    // Pareto staircase: strictly increasing mu, strictly decreasing var.
    // Everything dominated (or duplicated) drops out here.
    std::vector<ObjectiveVector> stair(points);
    std::sort(stair.begin(), stair.end(), lex_mu_var_less);
    std::vector<ObjectiveVector> front;
    for (const auto& p : stair) {
        if (front.empty() || p.var < front.back().var) {
            front.push_back(p);
        }
    }

    if (front.size() <= 2) return front;

    // Monotone chain over the staircase; collinear interior points pop.
    std::vector<ObjectiveVector> hull;
    for (const auto& p : front) {
        while (hull.size() >= 2 &&
               cross_sign(hull[hull.size() - 2], hull[hull.size() - 1], p) <= 0) {
            hull.pop_back();
        }
        hull.push_back(p);
    }
    return hull;
}

RankedPopulation convex_hull_rank(const std::vector<ObjectiveVector>& points) {
    if (points.empty()) throw DomainError("convex_hull_rank: empty point set");

    RankedPopulation out;
    out.ranks.assign(points.size(), 0);

    std::vector<std::size_t> remaining(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) remaining[i] = i;

    int rank = 0;
    std::vector<ObjectiveVector> level;
    std::vector<std::size_t> next;
    while (!remaining.empty()) {
        ++rank;
        level.clear();
        for (std::size_t idx : remaining) level.push_back(points[idx]);
        const auto hull = lower_envelope(level);
        next.clear();
        for (std::size_t idx : remaining) {
            const bool on_hull =
                std::find(hull.begin(), hull.end(), points[idx]) != hull.end();
            if (on_hull) {
                out.ranks[idx] = rank;
            } else {
                next.push_back(idx);
            }
        }
        remaining.swap(next);
    }
    out.max_rank = rank;
    return out;
}

bool is_on_envelope(const ObjectiveVector& candidate,
                    const std::vector<ObjectiveVector>& points) {
    for (const auto& p : points) {
        if (p == candidate) return false;
    }
    std::vector<ObjectiveVector> all(points);
    all.push_back(candidate);
    const auto hull = lower_envelope(all);
    return std::find(hull.begin(), hull.end(), candidate) != hull.end();
}

}  // namespace ccopt
