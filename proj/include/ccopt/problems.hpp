#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccopt/core.hpp"

// The three problem models: cardinality-constrained subset selection,
// spanning trees with stochastic edge weights, and dominating sets with
// stochastic node weights. All evaluators are pure; infeasibility is
// penalized so that every feasible solution beats every infeasible one in
// both the scalar and the bi-objective formulation.

namespace ccopt {

// A fixed-length bit vector over the instance ground set (items, edges,
// or nodes).
struct Solution {
    std::vector<std::uint8_t> bits;

    Solution() = default;
    explicit Solution(std::size_t n) : bits(n, 0) {}

    std::size_t size() const { return bits.size(); }
    std::size_t count() const;

    friend bool operator==(const Solution& a, const Solution& b) {
        return a.bits == b.bits;
    }
};

// Subset selection under the constraint |x| >= k.
struct UniformInstance {
    std::vector<StochItem> items;
    std::size_t k = 0;
    double sum_mu = 0.0;    // cached totals over all items
    double sum_var = 0.0;

    UniformInstance() = default;
    UniformInstance(std::vector<StochItem> its, std::size_t k_min);

    std::size_t n() const { return items.size(); }
    // Per-unit penalty for the scalar fitness; exceeds g of any feasible x.
    double penalty_unit(const Confidence& conf) const;
    double penalty_mu() const { return 1.0 + sum_mu; }
    double penalty_var() const { return 1.0 + sum_var; }
};

// An undirected graph whose edges (spanning tree problems) or nodes
// (dominating set problems) carry stochastic weights.
struct GraphInstance {
    struct Edge {
        int u = 0;
        int v = 0;
        StochItem w;
    };

    int n_vertices = 0;
    std::vector<Edge> edges;
    std::vector<StochItem> node_weights;  // non-empty for dominating set
    double w_ub = 0.0;                    // n^2 * max(mu_max, var_max) over edges

    // per-vertex adjacency bitsets, built by finalize()
    std::vector<std::uint64_t> adjacency;
    std::size_t blocks_per_vertex = 0;

    std::size_t m() const { return edges.size(); }

    // Validates endpoints, computes w_ub and the adjacency bitsets.
    // Requires endpoints in range and no self-loops.
    void finalize();

    bool connected_with_all_edges() const;
    double node_sum_mu() const;
    double node_sum_var() const;
};

// Builds an edge-weighted instance and validates connectivity (spanning
// tree evaluations assume a connected graph).
GraphInstance make_mst_instance(int n_vertices, std::vector<GraphInstance::Edge> edges);

// Builds a node-weighted instance; the graph may be arbitrary and simple.
GraphInstance make_domset_instance(int n_vertices,
                                   std::vector<std::pair<int, int>> edges,
                                   std::vector<StochItem> node_weights);

// --- subset selection -------------------------------------------------------

// Scalar fitness: g(x) when |x| >= k, else (k - |x|) * L.
double eval_uniform_single(const Solution& x, const UniformInstance& inst,
                           const Confidence& conf);

// Bi-objective value: component sums when feasible, else the violation
// count times (1 + sum mu, 1 + sum var).
ObjectiveVector eval_uniform_bi(const Solution& x, const UniformInstance& inst);

bool uniform_feasible(const Solution& x, const UniformInstance& inst);

// --- spanning trees ---------------------------------------------------------

// Number of connected components of the subgraph selecting exactly the
// edges with x_i = 1, over all n vertices.
int count_components(const GraphInstance& inst, const Solution& x);

ObjectiveVector eval_mst_bi(const Solution& x, const GraphInstance& inst);

// Scalar analogue of the subset penalty: g(x) when connected, else
// (c(x) - 1) * L with L = 1 + sum mu + K * sqrt(sum var) over all edges.
double eval_mst_single(const Solution& x, const GraphInstance& inst,
                       const Confidence& conf);

bool mst_feasible(const Solution& x, const GraphInstance& inst);

// --- dominating sets --------------------------------------------------------

// Number of vertices neither selected nor adjacent to a selected vertex.
int undominated_count(const GraphInstance& inst, const Solution& x);

double eval_domset_single(const Solution& x, const GraphInstance& inst,
                          const Confidence& conf);

ObjectiveVector eval_domset_bi(const Solution& x, const GraphInstance& inst);

bool domset_feasible(const Solution& x, const GraphInstance& inst);

}  // namespace ccopt
