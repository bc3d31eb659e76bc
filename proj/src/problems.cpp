#include "ccopt/problems.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace ccopt {

std::size_t Solution::count() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

UniformInstance::UniformInstance(std::vector<StochItem> its, std::size_t k_min)
    : items(std::move(its)), k(k_min) {
    if (items.empty()) throw DomainError("uniform instance: no items");
    if (k < 1 || k > items.size()) {
        throw DomainError("uniform instance: k must satisfy 1 <= k <= n");
    }
    for (const auto& it : items) validate_item(it);
    for (const auto& it : items) {
        sum_mu += it.mu;
        sum_var += it.var;
    }
}

double UniformInstance::penalty_unit(const Confidence& conf) const {
    return 1.0 + sum_mu + conf.k() * std::sqrt(sum_var);
}

namespace {

// Plain union-find with path halving and union by size.
struct UnionFind {
    std::vector<int> parent;
    std::vector<int> size;
    int components;

    explicit UnionFind(int n) : parent(n), size(n, 1), components(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        --components;
        return true;
    }
};

}  // namespace

void GraphInstance::finalize() {
    if (n_vertices <= 0) throw DomainError("graph instance: no vertices");
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= n_vertices || e.v < 0 || e.v >= n_vertices) {
            throw DomainError("graph instance: edge endpoint out of range");
        }
        if (e.u == e.v) throw DomainError("graph instance: self-loop");
    }
    double max_mu = 0.0;
    double max_var = 0.0;
    for (const auto& e : edges) {
        max_mu = std::max(max_mu, e.w.mu);
        max_var = std::max(max_var, e.w.var);
    }
    w_ub = static_cast<double>(n_vertices) * static_cast<double>(n_vertices) *
           std::max(max_mu, max_var);

    blocks_per_vertex = (static_cast<std::size_t>(n_vertices) + 63) / 64;
    adjacency.assign(blocks_per_vertex * static_cast<std::size_t>(n_vertices), 0);
    for (const auto& e : edges) {
        adjacency[static_cast<std::size_t>(e.u) * blocks_per_vertex + e.v / 64] |=
            1ull << (e.v % 64);
        adjacency[static_cast<std::size_t>(e.v) * blocks_per_vertex + e.u / 64] |=
            1ull << (e.u % 64);
    }
}

bool GraphInstance::connected_with_all_edges() const {
    UnionFind uf(n_vertices);
    for (const auto& e : edges) uf.unite(e.u, e.v);
    return uf.components == 1;
}

double GraphInstance::node_sum_mu() const {
    double s = 0.0;
    for (const auto& w : node_weights) s += w.mu;
    return s;
}

double GraphInstance::node_sum_var() const {
    double s = 0.0;
    for (const auto& w : node_weights) s += w.var;
    return s;
}

GraphInstance make_mst_instance(int n_vertices, std::vector<GraphInstance::Edge> edges) {
    GraphInstance g;
    g.n_vertices = n_vertices;
    g.edges = std::move(edges);
    for (const auto& e : g.edges) validate_item(e.w);
    g.finalize();
    if (!g.connected_with_all_edges()) {
        throw DomainError("spanning tree instance: graph must be connected");
    }
    return g;
}

GraphInstance make_domset_instance(int n_vertices,
                                   std::vector<std::pair<int, int>> edges,
                                   std::vector<StochItem> node_weights) {
    GraphInstance g;
    g.n_vertices = n_vertices;
    g.edges.reserve(edges.size());
    for (const auto& [u, v] : edges) g.edges.push_back({u, v, StochItem{1.0, 1.0}});
    if (static_cast<int>(node_weights.size()) != n_vertices) {
        throw DomainError("dominating set instance: one weight per vertex required");
    }
    // Node weights follow the benchmark generators, which may draw mu = 0 or
    // var = 0; only finiteness and non-negativity are required here.
    for (const auto& w : node_weights) {
        if (!std::isfinite(w.mu) || !std::isfinite(w.var) || w.mu < 0.0 || w.var < 0.0) {
            throw DomainError("dominating set instance: node weights must be finite and >= 0");
        }
    }
    g.node_weights = std::move(node_weights);
    g.finalize();
    return g;
}

double eval_uniform_single(const Solution& x, const UniformInstance& inst,
                           const Confidence& conf) {
    assert(x.size() == inst.n());
    std::size_t ones = 0;
    double mu = 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < inst.items.size(); ++i) {
        if (x.bits[i]) {
            ++ones;
            mu += inst.items[i].mu;
            var += inst.items[i].var;
        }
    }
    if (ones >= inst.k) return mu + conf.k() * std::sqrt(var);
    return static_cast<double>(inst.k - ones) * inst.penalty_unit(conf);
}

ObjectiveVector eval_uniform_bi(const Solution& x, const UniformInstance& inst) {
    assert(x.size() == inst.n());
    std::size_t ones = 0;
    double mu = 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < inst.items.size(); ++i) {
        if (x.bits[i]) {
            ++ones;
            mu += inst.items[i].mu;
            var += inst.items[i].var;
        }
    }
    if (ones >= inst.k) return {mu, var};
    const double missing = static_cast<double>(inst.k - ones);
    return {missing * inst.penalty_mu(), missing * inst.penalty_var()};
}

bool uniform_feasible(const Solution& x, const UniformInstance& inst) {
    return x.count() >= inst.k;
}

int count_components(const GraphInstance& inst, const Solution& x) {
    assert(x.size() == inst.m());
    UnionFind uf(inst.n_vertices);
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
        if (x.bits[i]) uf.unite(inst.edges[i].u, inst.edges[i].v);
    }
    return uf.components;
}

ObjectiveVector eval_mst_bi(const Solution& x, const GraphInstance& inst) {
    assert(x.size() == inst.m());
    const double penalty = static_cast<double>(count_components(inst, x) - 1) * inst.w_ub;
    double mu = 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
        if (x.bits[i]) {
            mu += inst.edges[i].w.mu;
            var += inst.edges[i].w.var;
        }
    }
    return {penalty + mu, penalty + var};
}

double eval_mst_single(const Solution& x, const GraphInstance& inst,
                       const Confidence& conf) {
    assert(x.size() == inst.m());
    const int c = count_components(inst, x);
    if (c > 1) {
        double sum_mu = 0.0;
        double sum_var = 0.0;
        for (const auto& e : inst.edges) {
            sum_mu += e.w.mu;
            sum_var += e.w.var;
        }
        const double unit = 1.0 + sum_mu + conf.k() * std::sqrt(sum_var);
        return static_cast<double>(c - 1) * unit;
    }
    double mu = 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
        if (x.bits[i]) {
            mu += inst.edges[i].w.mu;
            var += inst.edges[i].w.var;
        }
    }
    return mu + conf.k() * std::sqrt(var);
}

bool mst_feasible(const Solution& x, const GraphInstance& inst) {
    return count_components(inst, x) == 1;
}

int undominated_count(const GraphInstance& inst, const Solution& x) {
    assert(x.size() == static_cast<std::size_t>(inst.n_vertices));
    const std::size_t blocks = inst.blocks_per_vertex;
    // selected-vertex bitset, rebuilt per evaluation
    std::uint64_t stack_buf[16];
    std::vector<std::uint64_t> heap_buf;
    std::uint64_t* sel = stack_buf;
    if (blocks > 16) {
        heap_buf.assign(blocks, 0);
        sel = heap_buf.data();
    } else {
        std::fill(stack_buf, stack_buf + blocks, 0ull);
    }
    for (int v = 0; v < inst.n_vertices; ++v) {
        if (x.bits[v]) sel[v / 64] |= 1ull << (v % 64);
    }
    int undominated = 0;
    for (int v = 0; v < inst.n_vertices; ++v) {
        if (x.bits[v]) continue;
        const std::uint64_t* row = inst.adjacency.data() + static_cast<std::size_t>(v) * blocks;
        bool covered = false;
        for (std::size_t b = 0; b < blocks; ++b) {
            if (row[b] & sel[b]) {
                covered = true;
                break;
            }
        }
        if (!covered) ++undominated;
    }
    return undominated;
}

double eval_domset_single(const Solution& x, const GraphInstance& inst,
                          const Confidence& conf) {
    const int uncovered = undominated_count(inst, x);
    if (uncovered > 0) {
        const double unit =
            1.0 + inst.node_sum_mu() + conf.k() * std::sqrt(inst.node_sum_var());
        return static_cast<double>(uncovered) * unit;
    }
    double mu = 0.0;
    double var = 0.0;
    for (int v = 0; v < inst.n_vertices; ++v) {
        if (x.bits[v]) {
            mu += inst.node_weights[v].mu;
            var += inst.node_weights[v].var;
        }
    }
    return mu + conf.k() * std::sqrt(var);
}

ObjectiveVector eval_domset_bi(const Solution& x, const GraphInstance& inst) {
    const int uncovered = undominated_count(inst, x);
    if (uncovered > 0) {
        const double units = static_cast<double>(uncovered);
        return {units * (1.0 + inst.node_sum_mu()), units * (1.0 + inst.node_sum_var())};
    }
    double mu = 0.0;
    double var = 0.0;
    for (int v = 0; v < inst.n_vertices; ++v) {
        if (x.bits[v]) {
            mu += inst.node_weights[v].mu;
            var += inst.node_weights[v].var;
        }
    }
    return {mu, var};
}

bool domset_feasible(const Solution& x, const GraphInstance& inst) {
    return undominated_count(inst, x) == 0;
}

}  // namespace ccopt
