#include "ccopt/algorithms.hpp"

#include <algorithm>
#include <cmath>

#include "ccopt/hull.hpp"

namespace ccopt {

void RunConfig::validate() const {
    if (budget < 1) throw DomainError("run config: budget must be >= 1");
    if (p_ub && *p_ub < 1) throw DomainError("run config: p_ub must be >= 1");
    if (mu_pop && *mu_pop < 2) throw DomainError("run config: mu_pop must be >= 2");
}

std::vector<ObjectiveVector> Archive::objectives() const {
    std::vector<ObjectiveVector> objs;
    objs.reserve(members.size());
    for (const auto& m : members) objs.push_back(m.obj);
    return objs;
}

Solution standard_bit_mutation(const Solution& x, SplitMix64& rng) {
    Solution y = x;
    const double p = 1.0 / static_cast<double>(x.size());
    for (auto& bit : y.bits) {
        if (rng.next_double() < p) bit ^= 1;
    }
    return y;
}

Solution random_solution(std::size_t n, SplitMix64& rng) {
    Solution x(n);
    for (auto& bit : x.bits) bit = rng.next_bool() ? 1 : 0;
    return x;
}

RunResult run_one_one_ea(const ScalarProblem& problem, const RunConfig& cfg) {
    cfg.validate();
    SplitMix64 rng(cfg.seed);

    RunResult res;
    res.best = random_solution(problem.n_bits, rng);
    res.best_fitness = problem.fitness(res.best);
    res.evaluations_used = 1;
    res.max_pop = 1;
    res.trace.emplace_back(1, res.best_fitness);

    while (res.evaluations_used < cfg.budget) {
        Solution y = standard_bit_mutation(res.best, rng);
        const double fy = problem.fitness(y);
        ++res.evaluations_used;
        if (fy <= res.best_fitness) {
            if (fy < res.best_fitness) res.trace.emplace_back(res.evaluations_used, fy);
            res.best = std::move(y);
            res.best_fitness = fy;
        }
    }
    res.best_feasible = problem.feasible(res.best);
    return res;
}

namespace {

// Inserts y into a non-dominated archive: rejected when some member
// strongly dominates it, otherwise replaces everything it weakly dominates.
bool gsemo_insert(Archive& archive, ArchiveMember&& y) {
    for (const auto& m : archive.members) {
        if (strongly_dominates(m.obj, y.obj)) return false;
    }
    std::erase_if(archive.members,
                  [&](const ArchiveMember& m) { return dominates(y.obj, m.obj); });
    archive.members.push_back(std::move(y));
    return true;
}

}  // namespace

RunResult run_gsemo(const BiProblem& problem, const RunConfig& cfg,
                    const ArchiveObserver& observer) {
    cfg.validate();
    SplitMix64 rng(cfg.seed);

    RunResult res;
    Solution x0 = random_solution(problem.n_bits, rng);
    BiEval e0 = problem.evaluate(x0);
    res.evaluations_used = 1;
    res.archive.members.push_back({std::move(x0), e0.obj, e0.feasible, 1});
    res.archive.note_size();
    if (observer) observer(res.archive, res.evaluations_used);

    while (res.evaluations_used < cfg.budget) {
        const std::size_t pick = rng.next_below(res.archive.members.size());
        Solution y = standard_bit_mutation(res.archive.members[pick].sol, rng);
        BiEval ey = problem.evaluate(y);
        ++res.evaluations_used;
        gsemo_insert(res.archive, {std::move(y), ey.obj, ey.feasible, res.evaluations_used});
        res.archive.note_size();
        if (observer) observer(res.archive, res.evaluations_used);
    }
    res.max_pop = res.archive.max_size_seen;
    return res;
}

RunResult run_convex_gsemo(const BiProblem& problem, const RunConfig& cfg,
                           const ArchiveObserver& observer) {
    cfg.validate();
    if (!cfg.p_ub) throw DomainError("convex gsemo: config must set p_ub");
    SplitMix64 rng(cfg.seed);

    RunResult res;
    Solution x0 = random_solution(problem.n_bits, rng);
    BiEval e0 = problem.evaluate(x0);
    res.evaluations_used = 1;
    res.archive.members.push_back({std::move(x0), e0.obj, e0.feasible, 1});
    res.archive.note_size();
    if (observer) observer(res.archive, res.evaluations_used);

    while (res.evaluations_used < cfg.budget) {
        const std::size_t pick = rng.next_below(res.archive.members.size());
        Solution y = standard_bit_mutation(res.archive.members[pick].sol, rng);
        BiEval ey = problem.evaluate(y);
        ++res.evaluations_used;

        if (is_on_envelope(ey.obj, res.archive.objectives())) {
            std::erase_if(res.archive.members,
                          [&](const ArchiveMember& m) { return dominates(ey.obj, m.obj); });
            res.archive.members.push_back(
                {std::move(y), ey.obj, ey.feasible, res.evaluations_used});

            const auto hull = lower_envelope(res.archive.objectives());
            std::erase_if(res.archive.members, [&](const ArchiveMember& m) {
                return std::find(hull.begin(), hull.end(), m.obj) == hull.end();
            });

            if (res.archive.members.size() > *cfg.p_ub) {
                auto worst = std::max_element(
                    res.archive.members.begin(), res.archive.members.end(),
                    [](const ArchiveMember& a, const ArchiveMember& b) {
                        return a.obj.var < b.obj.var;
                    });
                res.archive.members.erase(worst);
            }
        }
        res.archive.note_size();
        if (observer) observer(res.archive, res.evaluations_used);
    }
    res.max_pop = res.archive.max_size_seen;
    return res;
}

RunResult run_convex_mu_ea(const BiProblem& problem, const RunConfig& cfg,
                           const ArchiveObserver& observer) {
    cfg.validate();
    if (!cfg.mu_pop) throw DomainError("convex (mu+1)-EA: config must set mu_pop");
    SplitMix64 rng(cfg.seed);

    RunResult res;
    const std::uint64_t init = std::min<std::uint64_t>(*cfg.mu_pop, cfg.budget);
    for (std::uint64_t i = 0; i < init; ++i) {
        Solution x = random_solution(problem.n_bits, rng);
        BiEval e = problem.evaluate(x);
        ++res.evaluations_used;
        res.archive.members.push_back({std::move(x), e.obj, e.feasible, res.evaluations_used});
    }
    res.archive.note_size();
    if (observer) observer(res.archive, res.evaluations_used);

    while (res.evaluations_used < cfg.budget) {
        const std::size_t pick = rng.next_below(res.archive.members.size());
        Solution y = standard_bit_mutation(res.archive.members[pick].sol, rng);
        BiEval ey = problem.evaluate(y);
        ++res.evaluations_used;
        res.archive.members.push_back({std::move(y), ey.obj, ey.feasible, res.evaluations_used});

        const auto ranking = convex_hull_rank(res.archive.objectives());
        // remove the lexicographic maximum of (rank, var); among ties the
        // oldest member goes first
        std::size_t victim = 0;
        for (std::size_t i = 1; i < res.archive.members.size(); ++i) {
            const auto& a = res.archive.members[victim];
            const auto& b = res.archive.members[i];
            const int ra = ranking.ranks[victim];
            const int rb = ranking.ranks[i];
            if (rb > ra || (rb == ra && b.obj.var > a.obj.var) ||
                (rb == ra && b.obj.var == a.obj.var && b.birth < a.birth)) {
                victim = i;
            }
        }
        res.archive.members.erase(res.archive.members.begin() +
                                  static_cast<std::ptrdiff_t>(victim));
        res.archive.note_size();
        if (observer) observer(res.archive, res.evaluations_used);
    }
    res.max_pop = res.archive.max_size_seen;
    return res;
}

std::optional<Decoded> decode_alpha(const Archive& archive, const Confidence& conf) {
    const ArchiveMember* best = nullptr;
    double best_value = 0.0;
    for (const auto& m : archive.members) {
        if (!m.feasible) continue;
        const double value = g_value(m.obj.mu, m.obj.var, conf);
        if (!best || value < best_value ||
            (value == best_value && m.obj.var < best->obj.var)) {
            best = &m;
            best_value = value;
        }
    }
    if (!best) return std::nullopt;
    return Decoded{best->sol, best_value};
}

}  // namespace ccopt
