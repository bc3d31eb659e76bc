#include "ccopt/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace ccopt {

namespace {

// Selection order at a given weighting: f_lambda ascending with ties toward
// larger variance; the boundary weightings degenerate to lexicographic sorts.
std::vector<std::size_t> sorted_indices(const std::vector<StochItem>& items, double lambda) {
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (lambda == 0.0) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (items[a].var != items[b].var) return items[a].var < items[b].var;
            if (items[a].mu != items[b].mu) return items[a].mu < items[b].mu;
            return a < b;
        });
    } else if (lambda == 1.0) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (items[a].mu != items[b].mu) return items[a].mu < items[b].mu;
            if (items[a].var != items[b].var) return items[a].var < items[b].var;
            return a < b;
        });
    } else {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double fa = f_lambda(items[a], lambda);
            const double fb = f_lambda(items[b], lambda);
            if (fa != fb) return fa < fb;
            if (items[a].var != items[b].var) return items[a].var > items[b].var;
            return a < b;
        });
    }
    return order;
}

}  // namespace

Solution greedy_uniform(const UniformInstance& inst, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError("greedy_uniform: lambda must lie in [0, 1]");
    }
    if (inst.k > inst.n()) throw DomainError("greedy_uniform: k exceeds item count");
    const auto order = sorted_indices(inst.items, lambda);
    Solution x(inst.n());
    for (std::size_t i = 0; i < inst.k; ++i) x.bits[order[i]] = 1;
    return x;
}

Solution kruskal_lambda(const GraphInstance& inst, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError("kruskal_lambda: lambda must lie in [0, 1]");
    }
    std::vector<StochItem> edge_items;
    edge_items.reserve(inst.m());
    for (const auto& e : inst.edges) edge_items.push_back(e.w);
    const auto order = sorted_indices(edge_items, lambda);

    Solution x(inst.m());
    std::vector<int> parent(inst.n_vertices);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    int joined = 0;
    for (std::size_t idx : order) {
        const int a = find(inst.edges[idx].u);
        const int b = find(inst.edges[idx].v);
        if (a != b) {
            parent[a] = b;
            x.bits[idx] = 1;
            if (++joined == inst.n_vertices - 1) break;
        }
    }
    if (joined != inst.n_vertices - 1) {
        throw DomainError("kruskal_lambda: graph is not connected");
    }
    return x;
}

namespace {

bool exact_int_coord(double v) { return v == std::floor(v) && std::abs(v) <= 4.5e15; }

bool same_vector(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (exact_int_coord(a.mu) && exact_int_coord(a.var) && exact_int_coord(b.mu) &&
        exact_int_coord(b.var)) {
        return a == b;
    }
    const auto close = [](double x, double y) {
        return std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)});
    };
    return close(a.mu, b.mu) && close(a.var, b.var);
}

template <typename SolveFn, typename EvalFn>
ExtremePointSet sweep_extremes(const std::vector<StochItem>& items, SolveFn solve,
                               EvalFn eval) {
    const LambdaSet lambdas = lambda_set(items);
    ExtremePointSet out;
    out.pair_count = lambdas.pair_count;
    for (double lam : lambdas.values) {
        Solution sol = solve(lam);
        const ObjectiveVector obj = eval(sol);
        bool seen = false;
        for (const auto& p : out.points) {
            if (same_vector(p.obj, obj)) {
                seen = true;
                break;
            }
        }
        if (!seen) out.points.push_back({lam, obj, std::move(sol)});
    }
    std::stable_sort(out.points.begin(), out.points.end(),
                     [](const ExtremePoint& a, const ExtremePoint& b) {
                         return a.obj.var < b.obj.var;
                     });
    return out;
}

}  // namespace

ExtremePointSet extreme_point_set(const UniformInstance& inst) {
    return sweep_extremes(
        inst.items, [&](double lam) { return greedy_uniform(inst, lam); },
        [&](const Solution& s) { return eval_uniform_bi(s, inst); });
}

ExtremePointSet extreme_point_set(const GraphInstance& inst) {
    std::vector<StochItem> edge_items;
    edge_items.reserve(inst.m());
    for (const auto& e : inst.edges) edge_items.push_back(e.w);
    return sweep_extremes(
        edge_items, [&](double lam) { return kruskal_lambda(inst, lam); },
        [&](const Solution& s) { return eval_mst_bi(s, inst); });
}

namespace {

constexpr std::size_t kEnumerationLimit = 24;

void check_enumerable(std::size_t n_bits) {
    if (n_bits == 0 || n_bits > kEnumerationLimit) {
        throw DomainError("brute force: ground set must have 1..24 elements");
    }
}

// Definition-based extreme point extraction from a Pareto front sorted by
// increasing mu: evaluate f_lambda at the boundary weightings and at every
// slope between front points, keeping the maximal-variance optimum of each.
std::vector<ObjectiveVector> extremes_of_front(const std::vector<ObjectiveVector>& front) {
    std::vector<ObjectiveVector> extremes;
    if (front.empty()) return extremes;
    const auto add = [&](const ObjectiveVector& p) {
        if (std::find(extremes.begin(), extremes.end(), p) == extremes.end()) {
            extremes.push_back(p);
        }
    };
    // lambda = 1: lexicographic (mu, var) minimum; lambda = 0: (var, mu) minimum
    add(front.front());
    add(front.back());

    bool all_int = true;
    for (const auto& p : front) {
        if (!exact_int_coord(p.mu) || !exact_int_coord(p.var)) {
            all_int = false;
            break;
        }
    }

    for (std::size_t i = 0; i < front.size(); ++i) {
        for (std::size_t j = i + 1; j < front.size(); ++j) {
            // front is sorted by mu ascending with var strictly descending
            const double dmu = front[j].mu - front[i].mu;
            const double dvar = front[i].var - front[j].var;
            if (dmu <= 0.0 || dvar <= 0.0) continue;
            const ObjectiveVector* best = nullptr;
            if (all_int) {
                // exact scores p*mu + q*var with the rational weighting
                // lambda = dvar / (dmu + dvar)
                const auto p = static_cast<std::int64_t>(dvar);
                const auto q = static_cast<std::int64_t>(dmu);
                __int128 best_score = 0;
                for (const auto& pt : front) {
                    const __int128 score =
                        static_cast<__int128>(p) * static_cast<std::int64_t>(pt.mu) +
                        static_cast<__int128>(q) * static_cast<std::int64_t>(pt.var);
                    if (!best || score < best_score ||
                        (score == best_score && pt.var > best->var)) {
                        best = &pt;
                        best_score = score;
                    }
                }
            } else {
                const double lam = dvar / (dmu + dvar);
                double best_score = 0.0;
                for (const auto& pt : front) {
                    const double score = f_lambda(pt, lam);
                    if (!best || score < best_score ||
                        (score == best_score && pt.var > best->var)) {
                        best = &pt;
                        best_score = score;
                    }
                }
            }
            add(*best);
        }
    }
    std::sort(extremes.begin(), extremes.end(),
              [](const ObjectiveVector& a, const ObjectiveVector& b) { return a.mu < b.mu; });
    return extremes;
}

}  // namespace

FrontResult brute_force_front(std::size_t n_bits,
                              const std::function<bool(const Solution&)>& feasible,
                              const std::function<ObjectiveVector(const Solution&)>& eval_bi) {
    check_enumerable(n_bits);
    std::vector<ObjectiveVector> vectors;
    Solution x(n_bits);
    for (std::uint64_t mask = 0; mask < (1ull << n_bits); ++mask) {
        for (std::size_t i = 0; i < n_bits; ++i) x.bits[i] = (mask >> i) & 1u;
        if (feasible(x)) vectors.push_back(eval_bi(x));
    }

    FrontResult res;
    if (vectors.empty()) return res;
    std::sort(vectors.begin(), vectors.end(),
              [](const ObjectiveVector& a, const ObjectiveVector& b) {
                  if (a.mu != b.mu) return a.mu < b.mu;
                  return a.var < b.var;
              });
    for (const auto& p : vectors) {
        if (res.front.empty() || p.var < res.front.back().var) res.front.push_back(p);
    }
    res.extremes = extremes_of_front(res.front);
    return res;
}

double brute_force_min(std::size_t n_bits,
                       const std::function<double(const Solution&)>& fitness) {
    check_enumerable(n_bits);
    double best = std::numeric_limits<double>::infinity();
    Solution x(n_bits);
    for (std::uint64_t mask = 0; mask < (1ull << n_bits); ++mask) {
        for (std::size_t i = 0; i < n_bits; ++i) x.bits[i] = (mask >> i) & 1u;
        best = std::min(best, fitness(x));
    }
    return best;
}

double brute_force_optimum(const UniformInstance& inst, const Confidence& conf) {
    return brute_force_min(
        inst.n(), [&](const Solution& x) { return eval_uniform_single(x, inst, conf); });
}

namespace {

struct RankData {
    double u1 = 0.0;       // U statistic of the first sample
    double tie_sum = 0.0;  // sum of t^3 - t over tie groups
    bool has_ties = false;
};

RankData ranked_u(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<std::pair<double, int>> all;
    all.reserve(a.size() + b.size());
    for (double v : a) all.emplace_back(v, 0);
    for (double v : b) all.emplace_back(v, 1);
    std::sort(all.begin(), all.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    RankData rd;
    double rank_sum_a = 0.0;
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i;
        while (j < all.size() && all[j].first == all[i].first) ++j;
        const double midrank = 0.5 * static_cast<double>(i + j + 1);
        const auto t = static_cast<double>(j - i);
        if (t > 1.0) {
            rd.has_ties = true;
            rd.tie_sum += t * t * t - t;
        }
        for (std::size_t k = i; k < j; ++k) {
            if (all[k].second == 0) rank_sum_a += midrank;
        }
        i = j;
    }
    const auto n1 = static_cast<double>(a.size());
    rd.u1 = rank_sum_a - n1 * (n1 + 1.0) / 2.0;
    return rd;
}

// Exact two-sided tail by enumerating all assignments of ranks to the first
// sample; only used for small tie-free inputs.
double exact_two_sided(std::size_t n1, std::size_t n2, double u_observed) {
    const std::size_t n = n1 + n2;
    const double mean_u = 0.5 * static_cast<double>(n1) * static_cast<double>(n2);
    const double dev = std::abs(u_observed - mean_u);
    std::uint64_t total = 0;
    std::uint64_t as_extreme = 0;
    std::vector<std::size_t> comb(n1);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    for (;;) {
        // U = sum of chosen positions - n1(n1+1)/2, positions 0-based
        double rank_sum = 0.0;
        for (std::size_t pos : comb) rank_sum += static_cast<double>(pos + 1);
        const double u = rank_sum - static_cast<double>(n1) * (static_cast<double>(n1) + 1.0) / 2.0;
        ++total;
        if (std::abs(u - mean_u) >= dev - 1e-12) ++as_extreme;

        // next combination
        std::size_t k = n1;
        while (k > 0 && comb[k - 1] == n - n1 + k - 1) --k;
        if (k == 0) break;
        ++comb[k - 1];
        for (std::size_t t = k; t < n1; ++t) comb[t] = comb[t - 1] + 1;
    }
    return static_cast<double>(as_extreme) / static_cast<double>(total);
}

}  // namespace

double mann_whitney_u(const std::vector<double>& sample_a,
                      const std::vector<double>& sample_b) {
    if (sample_a.empty() || sample_b.empty()) {
        throw DomainError("mann_whitney_u: both samples must be non-empty");
    }
    const RankData rd = ranked_u(sample_a, sample_b);
    const auto n1 = static_cast<double>(sample_a.size());
    const auto n2 = static_cast<double>(sample_b.size());

    if (!rd.has_ties && sample_a.size() <= 8 && sample_b.size() <= 8) {
        return std::min(1.0, exact_two_sided(sample_a.size(), sample_b.size(), rd.u1));
    }

    const double n = n1 + n2;
    const double mean_u = 0.5 * n1 * n2;
    const double tie_correction = (n > 1.0) ? rd.tie_sum / (n * (n - 1.0)) : 0.0;
    const double var_u = n1 * n2 / 12.0 * ((n + 1.0) - tie_correction);
    if (var_u <= 0.0) return 1.0;
    const double z = std::max(std::abs(rd.u1 - mean_u) - 0.5, 0.0) / std::sqrt(var_u);
    return std::min(1.0, 2.0 * normal_upper_tail(z));
}

}  // namespace ccopt
