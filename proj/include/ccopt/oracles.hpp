#pragma once

#include <functional>
#include <vector>

#include "ccopt/core.hpp"
#include "ccopt/problems.hpp"

// Exact reference solvers used to verify the evolutionary algorithms:
// per-weighting greedy selection and Kruskal trees, full enumeration on
// desk-scale instances, extreme point construction, and the Mann-Whitney
// U test for result tables.

namespace ccopt {

// A k-element solution minimizing f_lambda. Interior weightings sort items
// by f_lambda with ties broken toward larger variance; lambda = 0 sorts by
// (var, mu) and lambda = 1 by (mu, var) lexicographically. The returned
// optimum therefore has maximal variance among f_lambda-optima.
Solution greedy_uniform(const UniformInstance& inst, double lambda);

// A spanning tree minimizing f_lambda, same edge ordering and tie rules.
// The graph must be connected.
Solution kruskal_lambda(const GraphInstance& inst, double lambda);

struct ExtremePoint {
    double lambda_witness = 0.0;
    ObjectiveVector obj;
    Solution sol;
};

struct ExtremePointSet {
    std::vector<ExtremePoint> points;  // sorted by increasing var
    std::size_t pair_count = 0;        // incomparable pairs of the instance
};

// All extreme points of the feasible objective space, obtained by running
// the per-weighting greedy (or Kruskal) at every order-switch value.
ExtremePointSet extreme_point_set(const UniformInstance& inst);
ExtremePointSet extreme_point_set(const GraphInstance& inst);

// Full enumeration over bitstrings of length n_bits (refused above 24).
struct FrontResult {
    std::vector<ObjectiveVector> front;     // non-dominated feasible vectors, mu ascending
    std::vector<ObjectiveVector> extremes;  // convex hull vertices of the front
};

FrontResult brute_force_front(std::size_t n_bits,
                              const std::function<bool(const Solution&)>& feasible,
                              const std::function<ObjectiveVector(const Solution&)>& eval_bi);

// Minimum of a scalar fitness over all bitstrings (refused above 24 bits).
double brute_force_min(std::size_t n_bits,
                       const std::function<double(const Solution&)>& fitness);

// Minimum penalized scalar fitness of a subset-selection instance.
double brute_force_optimum(const UniformInstance& inst, const Confidence& conf);

// Two-sided Mann-Whitney U p-value. Small tie-free samples (both sizes
// <= 8) use the exact U distribution; larger or tied samples use the
// tie-corrected normal approximation with continuity correction.
double mann_whitney_u(const std::vector<double>& sample_a,
                      const std::vector<double>& sample_b);

}  // namespace ccopt
