#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "ccopt/core.hpp"
#include "ccopt/problems.hpp"
#include "ccopt/rng.hpp"

// The four evolutionary algorithms over a generic problem interface:
// (1+1) EA on a scalar fitness, GSEMO on a non-dominated archive, and the
// two convex-hull-restricted variants. Runs are deterministic in
// (problem, config): identical inputs give bit-identical results.

namespace ccopt {

struct RunConfig {
    std::uint64_t budget = 1;  // total fitness evaluations, including initialization
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> p_ub;    // Convex GSEMO population cap
    std::optional<std::uint64_t> mu_pop;  // Convex (mu+1)-EA population size

    void validate() const;
};

// Scalar problem: fitness to minimize plus a feasibility predicate used
// only when decoding results.
struct ScalarProblem {
    std::size_t n_bits = 0;
    std::function<double(const Solution&)> fitness;
    std::function<bool(const Solution&)> feasible;
};

struct BiEval {
    ObjectiveVector obj;
    bool feasible = false;
};

struct BiProblem {
    std::size_t n_bits = 0;
    std::function<BiEval(const Solution&)> evaluate;
};

struct ArchiveMember {
    Solution sol;
    ObjectiveVector obj;
    bool feasible = false;
    std::uint64_t birth = 0;  // evaluation index at insertion, breaks removal ties
};

struct Archive {
    std::vector<ArchiveMember> members;
    std::size_t max_size_seen = 0;

    void note_size() { max_size_seen = std::max(max_size_seen, members.size()); }
    std::vector<ObjectiveVector> objectives() const;
};

struct RunResult {
    Archive archive;  // empty for the (1+1) EA
    Solution best;    // incumbent of the (1+1) EA
    double best_fitness = std::numeric_limits<double>::quiet_NaN();
    bool best_feasible = false;
    std::uint64_t evaluations_used = 0;
    std::size_t max_pop = 0;
    // (evaluation index, best-so-far fitness) recorded at strict improvements
    std::vector<std::pair<std::uint64_t, double>> trace;
};

// Flip each bit independently with probability 1/n.
Solution standard_bit_mutation(const Solution& x, SplitMix64& rng);

Solution random_solution(std::size_t n, SplitMix64& rng);

// Observer hooks for instrumented test runs; called after every iteration.
using ArchiveObserver = std::function<void(const Archive&, std::uint64_t evals)>;

RunResult run_one_one_ea(const ScalarProblem& problem, const RunConfig& cfg);

RunResult run_gsemo(const BiProblem& problem, const RunConfig& cfg,
                    const ArchiveObserver& observer = nullptr);

RunResult run_convex_gsemo(const BiProblem& problem, const RunConfig& cfg,
                           const ArchiveObserver& observer = nullptr);

RunResult run_convex_mu_ea(const BiProblem& problem, const RunConfig& cfg,
                           const ArchiveObserver& observer = nullptr);

// The archive member minimizing g at the given confidence, skipping
// penalized (infeasible) members; ties go to smaller variance, then to the
// earlier member. Empty result when no feasible member exists.
struct Decoded {
    Solution sol;
    double value = 0.0;
};

std::optional<Decoded> decode_alpha(const Archive& archive, const Confidence& conf);

}  // namespace ccopt
