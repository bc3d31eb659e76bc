#include "ccopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "ccopt/oracles.hpp"
#include "ccopt/rng.hpp"

namespace ccopt {

InstanceIBundle gen_instance_i(int n) {
    if (n < 4 || n % 2 != 0) {
        throw DomainError("instance-i: n must be even and >= 4");
    }
    const auto k = static_cast<std::size_t>(std::llround(0.51 * n));
    const double delta = 1.0 / (2.0 * std::sqrt(static_cast<double>(k) * 1.48));
    const double n_sq = static_cast<double>(n) * static_cast<double>(n);

    std::vector<StochItem> items;
    items.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (i % 2 == 0) {
            items.push_back({n_sq + delta, 1.0});  // precise type at even indices
        } else {
            items.push_back({n_sq, 2.0});  // noisy type at odd indices
        }
    }

    InstanceIBundle bundle{UniformInstance(std::move(items), k), Confidence::from_k(1.0),
                           delta, 0.0, 0.0};
    // Fitness of a k-element solution with l noisy items:
    //   k*(n^2 + delta) - delta*l + sqrt(k + l)
    const auto fitness_at = [&](std::size_t l) {
        return static_cast<double>(k) * (n_sq + delta) - delta * static_cast<double>(l) +
               std::sqrt(static_cast<double>(k + l));
    };
    const std::size_t l_min = k - static_cast<std::size_t>(n) / 2;
    const std::size_t l_max = static_cast<std::size_t>(n) / 2;
    bundle.optimum = fitness_at(l_min);
    bundle.local_optimum = fitness_at(l_max);
    if (!(bundle.optimum < bundle.local_optimum)) {
        throw DomainError("instance-i: degenerate size, optimum does not separate");
    }
    return bundle;
}

InstanceIOutcome classify_instance_i(const InstanceIBundle& bundle, const Solution& sol,
                                     double fitness) {
    const std::size_t n = bundle.instance.n();
    std::size_t noisy = 0;
    for (std::size_t i = 1; i < n; i += 2) noisy += sol.bits[i];
    const std::size_t half = n / 2;
    const double tol = 1e-6 * std::max(1.0, std::abs(bundle.optimum));
    if (noisy < half && std::abs(fitness - bundle.optimum) <= tol) {
        return InstanceIOutcome::global_opt;
    }
    if (sol.count() == bundle.instance.k && noisy == half) {
        return InstanceIOutcome::local_opt;
    }
    return InstanceIOutcome::other;
}

DomsetSetting parse_domset_setting(const std::string& name) {
    std::string norm = name;
    std::replace(norm.begin(), norm.end(), '-', '_');
    if (norm == "uniform_random") return DomsetSetting::uniform_random;
    if (norm == "degree_based") return DomsetSetting::degree_based;
    if (norm == "neg_correlated") return DomsetSetting::neg_correlated;
    throw DomainError("unknown stochastic setting '" + name +
                      "' (uniform_random|degree_based|neg_correlated)");
}

std::string to_string(DomsetSetting setting) {
    switch (setting) {
        case DomsetSetting::uniform_random: return "uniform_random";
        case DomsetSetting::degree_based: return "degree_based";
        case DomsetSetting::neg_correlated: return "neg_correlated";
    }
    return "?";
}

GraphInstance gen_domset_setting(const GraphInstance& skeleton, DomsetSetting setting,
                                 std::uint64_t seed) {
    if (skeleton.n_vertices <= 0 || skeleton.edges.empty()) {
        throw DomainError("domset generator: graph must be non-empty");
    }
    const int n = skeleton.n_vertices;
    const auto nn = static_cast<std::uint64_t>(n);
    const std::uint64_t nn2 = nn * nn;

    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(skeleton.edges.size());
    for (const auto& e : skeleton.edges) {
        ++degree[static_cast<std::size_t>(e.u)];
        ++degree[static_cast<std::size_t>(e.v)];
        edges.emplace_back(e.u, e.v);
    }

    SplitMix64 rng(seed);
    std::vector<StochItem> weights(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        auto& w = weights[static_cast<std::size_t>(u)];
        switch (setting) {
            case DomsetSetting::uniform_random:
                w.mu = static_cast<double>(rng.next_in(nn, 2 * nn));
                w.var = static_cast<double>(rng.next_in(nn2, 2 * nn2));
                break;
            case DomsetSetting::degree_based:
                w.mu = std::pow(static_cast<double>(n + degree[static_cast<std::size_t>(u)]),
                                5.0) /
                       std::pow(static_cast<double>(n), 4.0);
                w.var = static_cast<double>(rng.next_in(nn2, 2 * nn2));
                break;
            case DomsetSetting::neg_correlated: {
                const std::uint64_t mu = rng.next_in(0, nn2);
                w.mu = static_cast<double>(mu);
                w.var = static_cast<double>(nn2 - mu) * static_cast<double>(nn2);
                break;
            }
        }
    }
    return make_domset_instance(n, std::move(edges), std::move(weights));
}

void ExperimentConfig::validate() const {
    if (replicates < 1) throw DomainError("experiment: replicates must be >= 1");
    if (budget < 1) throw DomainError("experiment: budget must be >= 1");
    if (betas.empty()) throw DomainError("experiment: at least one beta required");
    for (double b : betas) {
        if (!(b > 0.0 && b <= 0.5)) {
            throw DomainError("experiment: every beta must lie in (0, 0.5]");
        }
    }
    if (instance_path.empty() == graph_path.empty()) {
        throw DomainError("experiment: specify exactly one of instance or graph source");
    }
    if (!algorithms.one_one_ea && !algorithms.gsemo && !algorithms.convex_gsemo &&
        !algorithms.convex_mu_ea) {
        throw DomainError("experiment: no algorithm enabled");
    }
}

namespace {

constexpr const char* kAlgOneOne = "one_one_ea";
constexpr const char* kAlgGsemo = "gsemo";
constexpr const char* kAlgConvexGsemo = "convex_gsemo";
constexpr const char* kAlgConvexMu = "convex_mu_ea";

struct Problems {
    std::size_t n_bits = 0;
    BiProblem bi;
    std::function<ScalarProblem(const Confidence&)> scalar_for;
};

Problems problems_for(const std::shared_ptr<const Instance>& inst) {
    Problems p;
    switch (inst->kind) {
        case Instance::Kind::uniform: {
            p.n_bits = inst->uniform.n();
            p.bi.n_bits = p.n_bits;
            p.bi.evaluate = [inst](const Solution& x) {
                return BiEval{eval_uniform_bi(x, inst->uniform),
                              uniform_feasible(x, inst->uniform)};
            };
            p.scalar_for = [inst](const Confidence& conf) {
                ScalarProblem s;
                s.n_bits = inst->uniform.n();
                s.fitness = [inst, conf](const Solution& x) {
                    return eval_uniform_single(x, inst->uniform, conf);
                };
                s.feasible = [inst](const Solution& x) {
                    return uniform_feasible(x, inst->uniform);
                };
                return s;
            };
            break;
        }
        case Instance::Kind::mst: {
            p.n_bits = inst->graph.m();
            p.bi.n_bits = p.n_bits;
            p.bi.evaluate = [inst](const Solution& x) {
                return BiEval{eval_mst_bi(x, inst->graph), mst_feasible(x, inst->graph)};
            };
            p.scalar_for = [inst](const Confidence& conf) {
                ScalarProblem s;
                s.n_bits = inst->graph.m();
                s.fitness = [inst, conf](const Solution& x) {
                    return eval_mst_single(x, inst->graph, conf);
                };
                s.feasible = [inst](const Solution& x) {
                    return mst_feasible(x, inst->graph);
                };
                return s;
            };
            break;
        }
        case Instance::Kind::domset: {
            p.n_bits = static_cast<std::size_t>(inst->graph.n_vertices);
            p.bi.n_bits = p.n_bits;
            p.bi.evaluate = [inst](const Solution& x) {
                return BiEval{eval_domset_bi(x, inst->graph),
                              domset_feasible(x, inst->graph)};
            };
            p.scalar_for = [inst](const Confidence& conf) {
                ScalarProblem s;
                s.n_bits = static_cast<std::size_t>(inst->graph.n_vertices);
                s.fitness = [inst, conf](const Solution& x) {
                    return eval_domset_single(x, inst->graph, conf);
                };
                s.feasible = [inst](const Solution& x) {
                    return domset_feasible(x, inst->graph);
                };
                return s;
            };
            break;
        }
    }
    return p;
}

struct ReplicateOutcome {
    std::map<std::string, std::vector<double>> decoded;  // alg -> value per beta
    std::map<std::string, double> max_pop;
};

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

bool any_nan(const std::vector<double>& v) {
    return std::any_of(v.begin(), v.end(), [](double x) { return std::isnan(x); });
}

double paired_p(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty() || any_nan(a) || any_nan(b)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return mann_whitney_u(a, b);
}

// Fixed worker pool over replicate indices; results land at their index so
// aggregation order never depends on scheduling.
template <typename Fn>
std::vector<ReplicateOutcome> run_replicates(std::uint32_t count, Fn&& fn) {
    std::vector<ReplicateOutcome> out(count);
    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(), count));
    if (workers == 1) {
        for (std::uint32_t r = 0; r < count; ++r) out[r] = fn(r);
        return out;
    }
    std::atomic<std::uint32_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint32_t r = next.fetch_add(1);
                if (r >= count) return;
                try {
                    out[r] = fn(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();

    std::shared_ptr<const Instance> file_instance;
    std::shared_ptr<const GraphInstance> skeleton;
    std::string label = cfg.label;
    if (!cfg.instance_path.empty()) {
        file_instance = std::make_shared<Instance>(load_instance(cfg.instance_path));
        if (label.empty()) label = file_instance->label;
    } else {
        skeleton =
            std::make_shared<GraphInstance>(load_graph(cfg.graph_path, cfg.graph_format).skeleton);
        if (label.empty()) label = cfg.graph_path + "/" + to_string(cfg.setting);
    }

    std::vector<Confidence> confidences;
    confidences.reserve(cfg.betas.size());
    for (double beta : cfg.betas) confidences.push_back(Confidence::from_beta(beta));

    const auto run_replicate = [&](std::uint32_t r) -> ReplicateOutcome {
        const std::uint64_t rep_base = derive_seed(cfg.seed, r);

        std::shared_ptr<const Instance> inst = file_instance;
        if (!inst) {
            const std::uint64_t weights_base =
                cfg.fixed_weights ? derive_seed(cfg.seed, 0) : rep_base;
            auto generated = std::make_shared<Instance>();
            generated->kind = Instance::Kind::domset;
            generated->graph =
                gen_domset_setting(*skeleton, cfg.setting, derive_seed(weights_base, 90001));
            generated->label = label;
            inst = generated;
        }
        const Problems problems = problems_for(inst);

        ReplicateOutcome outcome;
        try {
            if (cfg.algorithms.one_one_ea) {
                auto& vals = outcome.decoded[kAlgOneOne];
                for (std::size_t bi = 0; bi < cfg.betas.size(); ++bi) {
                    RunConfig rc;
                    rc.budget = cfg.budget;
                    rc.seed = derive_seed(rep_base, 100 + bi);
                    const auto res =
                        run_one_one_ea(problems.scalar_for(confidences[bi]), rc);
                    vals.push_back(res.best_feasible
                                       ? res.best_fitness
                                       : std::numeric_limits<double>::quiet_NaN());
                }
                outcome.max_pop[kAlgOneOne] = 1.0;
            }
            const auto decode_all = [&](const RunResult& res, const char* alg) {
                auto& vals = outcome.decoded[alg];
                for (const auto& conf : confidences) {
                    const auto dec = decode_alpha(res.archive, conf);
                    vals.push_back(dec ? dec->value
                                       : std::numeric_limits<double>::quiet_NaN());
                }
                outcome.max_pop[alg] = static_cast<double>(res.max_pop);
            };
            if (cfg.algorithms.gsemo) {
                RunConfig rc;
                rc.budget = cfg.budget;
                rc.seed = derive_seed(rep_base, 1);
                decode_all(run_gsemo(problems.bi, rc), kAlgGsemo);
            }
            if (cfg.algorithms.convex_gsemo) {
                RunConfig rc;
                rc.budget = cfg.budget;
                rc.seed = derive_seed(rep_base, 2);
                rc.p_ub = cfg.algorithms.p_ub
                              ? cfg.algorithms.p_ub
                              : static_cast<std::uint64_t>(problems.n_bits) *
                                    static_cast<std::uint64_t>(problems.n_bits);
                decode_all(run_convex_gsemo(problems.bi, rc), kAlgConvexGsemo);
            }
            if (cfg.algorithms.convex_mu_ea) {
                RunConfig rc;
                rc.budget = cfg.budget;
                rc.seed = derive_seed(rep_base, 3);
                rc.mu_pop = cfg.algorithms.mu_pop;
                decode_all(run_convex_mu_ea(problems.bi, rc), kAlgConvexMu);
            }
        } catch (const std::exception& e) {
            throw DomainError("experiment failed at replicate " + std::to_string(r) +
                              " on " + label + ": " + e.what());
        }
        return outcome;
    };

    const auto outcomes = run_replicates(cfg.replicates, run_replicate);

    const std::vector<std::string> order = {kAlgOneOne, kAlgGsemo, kAlgConvexGsemo,
                                            kAlgConvexMu};
    std::vector<ResultRow> rows;
    for (std::size_t bi = 0; bi < cfg.betas.size(); ++bi) {
        ResultRow row;
        row.instance = label;
        row.beta = cfg.betas[bi];
        std::map<std::string, std::vector<double>> per_alg;
        for (const auto& name : order) {
            if (outcomes.front().decoded.count(name) == 0) continue;
            std::vector<double> vals;
            std::vector<double> pops;
            vals.reserve(outcomes.size());
            for (const auto& oc : outcomes) {
                vals.push_back(oc.decoded.at(name).at(bi));
                pops.push_back(oc.max_pop.at(name));
            }
            AlgoCell cell;
            cell.alg = name;
            cell.mean = mean_of(vals);
            cell.stddev = sample_std(vals);
            cell.max_pop_mean = mean_of(pops);
            cell.max_pop_std = sample_std(pops);
            row.cells.push_back(cell);
            per_alg[name] = std::move(vals);
        }
        const auto get = [&](const char* name) -> const std::vector<double>* {
            const auto it = per_alg.find(name);
            return it == per_alg.end() ? nullptr : &it->second;
        };
        const auto* ea = get(kAlgOneOne);
        const auto* gs = get(kAlgGsemo);
        const auto* cg = get(kAlgConvexGsemo);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.p1 = (ea && gs) ? paired_p(*ea, *gs) : nan;
        row.p2 = (ea && cg) ? paired_p(*ea, *cg) : nan;
        row.p3 = (gs && cg) ? paired_p(*gs, *cg) : nan;
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string csv_safe(const std::string& s) {
    std::string out = s;
    std::replace(out.begin(), out.end(), ',', '_');
    return out;
}

std::string display_name(const std::string& alg) {
    if (alg == kAlgOneOne) return "(1+1) EA";
    if (alg == kAlgGsemo) return "GSEMO";
    if (alg == kAlgConvexGsemo) return "Convex GSEMO";
    if (alg == kAlgConvexMu) return "Convex (mu+1) EA";
    return alg;
}

std::string round6(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

}  // namespace

std::string format_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << "instance,beta,alg,mean,std,p1,p2,p3,max_pop_mean,max_pop_std\n";
    for (const auto& row : rows) {
        for (const auto& cell : row.cells) {
            out << csv_safe(row.instance) << ',' << double_to_string(row.beta) << ','
                << cell.alg << ',' << double_to_string(cell.mean) << ','
                << double_to_string(cell.stddev) << ',' << double_to_string(row.p1) << ','
                << double_to_string(row.p2) << ',' << double_to_string(row.p3) << ','
                << double_to_string(cell.max_pop_mean) << ','
                << double_to_string(cell.max_pop_std) << '\n';
        }
    }
    return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_csv_double(const std::string& tok, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw IoError("csv line " + std::to_string(line_no) + ": bad number '" + tok + "'");
    }
}

}  // namespace

std::vector<ResultRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<ResultRow> rows;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "instance,beta,alg,mean,std,p1,p2,p3,max_pop_mean,max_pop_std") {
                throw IoError("csv line 1: unexpected header");
            }
            header_seen = true;
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 10) {
            throw IoError("csv line " + std::to_string(line_no) + ": expected 10 fields");
        }
        const double beta = parse_csv_double(f[1], line_no);
        AlgoCell cell;
        cell.alg = f[2];
        cell.mean = parse_csv_double(f[3], line_no);
        cell.stddev = parse_csv_double(f[4], line_no);
        cell.max_pop_mean = parse_csv_double(f[8], line_no);
        cell.max_pop_std = parse_csv_double(f[9], line_no);
        if (!rows.empty() && rows.back().instance == f[0] && rows.back().beta == beta) {
            rows.back().cells.push_back(cell);
        } else {
            ResultRow row;
            row.instance = f[0];
            row.beta = beta;
            row.p1 = parse_csv_double(f[5], line_no);
            row.p2 = parse_csv_double(f[6], line_no);
            row.p3 = parse_csv_double(f[7], line_no);
            row.cells.push_back(cell);
            rows.push_back(std::move(row));
        }
    }
    if (!header_seen) throw IoError("csv: empty input");
    return rows;
}

std::string format_markdown(const std::vector<ResultRow>& rows) {
    if (rows.empty()) throw DomainError("markdown: no rows");
    std::ostringstream out;
    std::string current;
    std::vector<const ResultRow*> block;

    const auto flush = [&]() {
        if (block.empty()) return;
        out << "## " << current << "\n\n";
        const auto& cells0 = block.front()->cells;
        out << "| beta |";
        for (const auto& c : cells0) out << ' ' << display_name(c.alg) << " | std |";
        out << " p1 | p2 | p3 |\n";
        out << "|---|";
        for (std::size_t i = 0; i < cells0.size(); ++i) out << "---|---|";
        out << "---|---|---|\n";
        for (const ResultRow* row : block) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : row->cells) {
                if (!std::isnan(c.mean)) best = std::min(best, c.mean);
            }
            out << "| " << double_to_string(row->beta) << " |";
            for (const auto& c : row->cells) {
                const bool is_best = !std::isnan(c.mean) && c.mean == best;
                out << ' ' << (is_best ? "**" + round6(c.mean) + "**" : round6(c.mean))
                    << " | " << round6(c.stddev) << " |";
            }
            const auto pcell = [&](double p) {
                if (std::isnan(p)) return std::string("-");
                const std::string s = round6(p);
                return p <= 0.05 ? "**" + s + "**" : s;
            };
            out << ' ' << pcell(row->p1) << " | " << pcell(row->p2) << " | "
                << pcell(row->p3) << " |\n";
        }
        out << "\nMaximum population size (mean / std over replicates):\n\n";
        out << "| algorithm | mean | std |\n|---|---|---|\n";
        for (const auto& c : cells0) {
            out << "| " << display_name(c.alg) << " | " << round6(c.max_pop_mean) << " | "
                << round6(c.max_pop_std) << " |\n";
        }
        out << '\n';
        block.clear();
    };

    for (const auto& row : rows) {
        if (row.instance != current) {
            flush();
            current = row.instance;
        }
        block.push_back(&row);
    }
    flush();
    return out.str();
}

void emit_tables(const std::vector<ResultRow>& rows, const std::string& path,
                 TableFormat format) {
    if (rows.empty()) throw DomainError("emit_tables: no rows");
    write_text_file(path,
                    format == TableFormat::csv ? format_csv(rows) : format_markdown(rows));
}

}  // namespace ccopt
