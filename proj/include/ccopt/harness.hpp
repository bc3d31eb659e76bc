#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccopt/algorithms.hpp"
#include "ccopt/core.hpp"
#include "ccopt/problems.hpp"

// Benchmark generators, graph and instance file handling, experiment
// orchestration over (algorithm x instance x alpha) grids, and result
// table emission.

namespace ccopt {

// --- benchmark generators ---------------------------------------------------

// The hard two-type subset instance: n/2 items with weights (n^2 + delta, 1)
// interleaved with n/2 items of (n^2, 2), constraint k = round(0.51 n),
// evaluated at the confidence whose fractile is 1. The last selected unit of
// the cheap-but-noisy type creates a fitness valley between the global
// optimum (all precise items) and a local optimum (all noisy items).
struct InstanceIBundle {
    UniformInstance instance;
    Confidence conf;
    double delta = 0.0;
    double optimum = 0.0;        // scalar fitness of the global optimum
    double local_optimum = 0.0;  // scalar fitness of the all-noisy local optimum
};

InstanceIBundle gen_instance_i(int n);

enum class InstanceIOutcome { global_opt, local_opt, other };

// Classifies a finished run on the two-type instance by the final solution's
// composition and fitness.
InstanceIOutcome classify_instance_i(const InstanceIBundle& bundle, const Solution& sol,
                                     double fitness);

enum class DomsetSetting { uniform_random, degree_based, neg_correlated };

DomsetSetting parse_domset_setting(const std::string& name);
std::string to_string(DomsetSetting setting);

// Draws node weights for a graph skeleton. uniform_random: mu in {n..2n},
// var in {n^2..2n^2}; degree_based: mu = (n + deg)^5 / n^4 with uniform var;
// neg_correlated: mu in {0..n^2} with var = (n^2 - mu) * n^2.
GraphInstance gen_domset_setting(const GraphInstance& skeleton, DomsetSetting setting,
                                 std::uint64_t seed);

// --- graph files -------------------------------------------------------------

enum class GraphFormat { edge_list, matrix_market };

GraphFormat guess_graph_format(const std::string& path);

struct LoadedGraph {
    GraphInstance skeleton;  // simple graph, no weights
    std::size_t dropped_duplicates = 0;
    std::size_t dropped_loops = 0;
};

LoadedGraph load_graph(const std::string& path, GraphFormat format);

// --- instance files ----------------------------------------------------------

// A problem read from or written to an instance file.
struct Instance {
    enum class Kind { uniform, mst, domset };
    Kind kind = Kind::uniform;
    UniformInstance uniform;
    GraphInstance graph;
    std::string label;
};

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// --- experiments --------------------------------------------------------------

struct AlgoSelection {
    bool one_one_ea = true;
    bool gsemo = true;
    bool convex_gsemo = true;
    bool convex_mu_ea = false;
    std::uint64_t p_ub = 0;    // 0: default to n^2
    std::uint64_t mu_pop = 16;
};

struct ExperimentConfig {
    // Either a concrete instance file, or a graph plus a stochastic setting
    // from which dominating set instances are generated.
    std::string instance_path;
    std::string graph_path;
    GraphFormat graph_format = GraphFormat::edge_list;
    DomsetSetting setting = DomsetSetting::uniform_random;
    bool fixed_weights = false;  // one weight assignment shared by all replicates

    std::uint64_t budget = 100000;
    std::uint32_t replicates = 1;
    std::uint64_t seed = 0;
    std::vector<double> betas;  // each in (0, 0.5]; alpha = 1 - beta
    AlgoSelection algorithms;
    std::string label;  // instance label for result rows; default from source

    void validate() const;
};

struct AlgoCell {
    std::string alg;
    double mean = 0.0;
    double stddev = 0.0;
    double max_pop_mean = 0.0;
    double max_pop_std = 0.0;
};

struct ResultRow {
    std::string instance;
    double beta = 0.0;
    std::vector<AlgoCell> cells;
    // pairwise Mann-Whitney p-values: (1+1) EA vs GSEMO, (1+1) EA vs
    // Convex GSEMO, GSEMO vs Convex GSEMO; NaN when a side is disabled
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
};

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

// --- tables --------------------------------------------------------------------

// Shortest round-trip decimal rendering, locale independent.
std::string double_to_string(double value);

std::string format_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(const std::string& text);
std::string format_markdown(const std::vector<ResultRow>& rows);

enum class TableFormat { csv, markdown };

void emit_tables(const std::vector<ResultRow>& rows, const std::string& path,
                 TableFormat format);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ccopt
