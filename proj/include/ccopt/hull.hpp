#pragma once

#include <vector>

#include "ccopt/core.hpp"

// Lower-left convex envelopes in objective space, iterative convex hull
// ranking, and the membership test used for archive acceptance.
//
// Convention used throughout: the envelope contains only strict vertices.
// Points on the open segment between two adjacent vertices are not part of
// the envelope (they are never the maximal-variance optimum of any
// weighting), and a candidate whose objective vector duplicates an existing
// point is not considered on the envelope either.

namespace ccopt {

// Vertices of the lower-left convex hull between the lexicographic-(mu,var)
// minimum and the lexicographic-(var,mu) minimum, ordered by increasing mu.
// Duplicate vectors collapse to one representative. Input must be non-empty.
std::vector<ObjectiveVector> lower_envelope(const std::vector<ObjectiveVector>& points);

struct RankedPopulation {
    // rank per input point, parallel to the input order; ranks are 1-based
    // and contiguous
    std::vector<int> ranks;
    int max_rank = 0;
};

// Iterative peeling: rank 1 is the envelope of all points, rank r+1 the
// envelope of what remains. Points sharing an objective vector share a rank.
RankedPopulation convex_hull_rank(const std::vector<ObjectiveVector>& points);

// True iff candidate is a vertex of lower_envelope(points + {candidate}).
// Exact duplicates of existing points return false (incumbent retained).
bool is_on_envelope(const ObjectiveVector& candidate,
                    const std::vector<ObjectiveVector>& points);

}  // namespace ccopt
