#include "ccopt/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <ostream>
#include <sstream>

#include "ccopt/oracles.hpp"

namespace ccopt {

std::vector<double> parse_beta_list(const std::string& spec) {
    std::vector<double> betas;
    std::string tok;
    std::istringstream ss(spec);
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            const double b = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            betas.push_back(b);
        } catch (const std::exception&) {
            throw UsageError("bad beta value '" + tok + "'");
        }
    }
    if (betas.empty()) throw UsageError("empty beta list");
    return betas;
}

CliCommand parse_args(const std::vector<std::string>& argv) {
    CLI::App app{"chance constrained optimization benchmark toolkit"};
    app.name("ccopt");
    app.require_subcommand(1);

    CliCommand cmd;
    const auto capture = [&cmd](const std::string& key) {
        return [&cmd, key](const std::string& value) { cmd.options[key] = value; };
    };

    // gen
    auto* gen = app.add_subcommand("gen", "generate benchmark instances");
    gen->require_subcommand(1);
    auto* gen_i = gen->add_subcommand("instance-i", "two-type hard subset instance");
    int gi_n = 0;
    gen_i->add_option("--n", gi_n, "item count (even, >= 4)")->required();
    gen_i->add_option_function<std::string>("--out", capture("out"), "output instance file")
        ->required();
    auto* gen_d = gen->add_subcommand("domset", "dominating set instance from a graph");
    gen_d->add_option_function<std::string>("--graph", capture("graph"), "input graph file")
        ->required();
    gen_d->add_option_function<std::string>(
        "--graph-format", capture("graph_format"),
        "edge_list | matrix_market (default: by extension)");
    gen_d->add_option_function<std::string>(
             "--setting", capture("setting"),
             "uniform_random | degree_based | neg_correlated")
        ->required();
    std::uint64_t gd_seed = 0;
    gen_d->add_option("--seed", gd_seed, "weight draw seed");
    gen_d->add_option_function<std::string>("--out", capture("out"), "output instance file")
        ->required();

    // run
    auto* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option_function<std::string>("--config", capture("config"),
                                          "experiment config file")
        ->required();
    run->add_option_function<std::string>("--seed", capture("seed"), "override base seed");
    run->add_option_function<std::string>("--budget", capture("budget"),
                                          "override evaluation budget");
    run->add_option_function<std::string>("--betas", capture("betas"),
                                          "override beta list, comma separated");
    run->add_option_function<std::string>("--replicates", capture("replicates"),
                                          "override replicate count");
    run->add_option_function<std::string>("--p-ub", capture("p_ub"),
                                          "override Convex GSEMO population cap");
    run->add_option_function<std::string>("--out", capture("out"), "override output path");
    run->add_option_function<std::string>("--format", capture("format"),
                                          "csv | markdown");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact reference computations");
    oracle->require_subcommand(1);
    auto* o_ext = oracle->add_subcommand("extreme-points",
                                         "extreme points of a uniform or mst instance");
    o_ext->add_option_function<std::string>("--instance", capture("instance"),
                                            "instance file")
        ->required();
    o_ext->add_option_function<std::string>("--out", capture("out"), "write points as CSV");
    auto* o_bf = oracle->add_subcommand("brute-force",
                                        "exhaustive scalar optimum (<= 24 bits)");
    o_bf->add_option_function<std::string>("--instance", capture("instance"),
                                           "instance file")
        ->required();
    o_bf->add_option_function<std::string>("--alpha", capture("alpha"),
                                           "confidence level in [0.5, 1)");
    o_bf->add_option_function<std::string>("--beta", capture("beta"),
                                           "tail mass in (0, 0.5]");
    auto* o_gr = oracle->add_subcommand("greedy", "per-weighting greedy selection");
    o_gr->add_option_function<std::string>("--instance", capture("instance"),
                                           "uniform instance file")
        ->required();
    o_gr->add_option_function<std::string>("--lambda", capture("lambda"),
                                           "weighting in [0, 1]")
        ->required();
    auto* o_kr = oracle->add_subcommand("kruskal", "per-weighting spanning tree");
    o_kr->add_option_function<std::string>("--instance", capture("instance"),
                                           "mst instance file")
        ->required();
    o_kr->add_option_function<std::string>("--lambda", capture("lambda"),
                                           "weighting in [0, 1]")
        ->required();

    // table
    auto* table = app.add_subcommand("table", "re-emit result tables from CSV");
    table->add_option_function<std::string>("--in", capture("in"), "input CSV file")
        ->required();
    table->add_option_function<std::string>("--out", capture("out"), "output file")
        ->required();
    table->add_option_function<std::string>("--format", capture("format"),
                                            "csv | markdown (default markdown)");

    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::string text;
        for (auto* sub : app.get_subcommands()) {
            auto nested = sub->get_subcommands();
            text = nested.empty() ? sub->help() : nested.front()->help();
        }
        if (text.empty()) text = app.help();
        throw HelpRequested(text);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    auto* verb = app.get_subcommands().front();
    cmd.verb = verb->get_name();
    if (!verb->get_subcommands().empty()) {
        cmd.subcommand = verb->get_subcommands().front()->get_name();
    }

    if (cmd.verb == "gen" && cmd.subcommand == "instance-i") {
        if (gi_n < 4 || gi_n % 2 != 0) {
            throw UsageError("gen instance-i: --n must be even and >= 4");
        }
        cmd.options["n"] = std::to_string(gi_n);
    }
    if (cmd.verb == "gen" && cmd.subcommand == "domset") {
        if (cmd.has("setting")) parse_domset_setting(cmd.get("setting"));
        cmd.options["seed"] = std::to_string(gd_seed);
    }
    if (cmd.has("betas")) parse_beta_list(cmd.get("betas"));
    if (cmd.has("format")) {
        const auto& f = cmd.get("format");
        if (f != "csv" && f != "markdown") {
            throw UsageError("--format must be csv or markdown");
        }
    }
    return cmd;
}

namespace {

std::uint64_t to_u64(const std::string& tok, const std::string& what) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw UsageError("bad " + what + " value '" + tok + "'");
    }
}

double to_real(const std::string& tok, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw UsageError("bad " + what + " value '" + tok + "'");
    }
}

bool to_bool(const std::string& tok, const std::string& what) {
    if (tok == "true" || tok == "1" || tok == "yes") return true;
    if (tok == "false" || tok == "0" || tok == "no") return false;
    throw UsageError("bad " + what + " value '" + tok + "' (true|false)");
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text, const std::string& source) {
    ExperimentConfig cfg;
    cfg.algorithms.one_one_ea = true;
    cfg.algorithms.gsemo = true;
    cfg.algorithms.convex_gsemo = true;
    cfg.algorithms.convex_mu_ea = false;

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::string section;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        const auto fail = [&](const std::string& msg) {
            throw IoError(source + ":" + std::to_string(line_no) + ": " + msg);
        };
        if (key.front() == '[' && key.back() == ']') {
            section = key.substr(1, key.size() - 2);
            if (section != "one_one_ea" && section != "gsemo" &&
                section != "convex_gsemo" && section != "convex_mu_ea") {
                fail("unknown algorithm section '" + section + "'");
            }
            continue;
        }
        std::string value;
        std::getline(ls, value);
        const auto first = value.find_first_not_of(" \t");
        value = (first == std::string::npos) ? "" : value.substr(first);
        while (!value.empty() && (value.back() == ' ' || value.back() == '\t' ||
                                  value.back() == '\r')) {
            value.pop_back();
        }
        if (value.empty()) fail("key '" + key + "' has no value");

        if (section.empty()) {
            if (key == "instance") cfg.instance_path = value;
            else if (key == "graph") cfg.graph_path = value;
            else if (key == "graph_format") {
                if (value == "edge_list") cfg.graph_format = GraphFormat::edge_list;
                else if (value == "matrix_market") cfg.graph_format = GraphFormat::matrix_market;
                else fail("graph_format must be edge_list or matrix_market");
            } else if (key == "setting") cfg.setting = parse_domset_setting(value);
            else if (key == "fixed_weights") cfg.fixed_weights = to_bool(value, key);
            else if (key == "budget") cfg.budget = to_u64(value, key);
            else if (key == "replicates")
                cfg.replicates = static_cast<std::uint32_t>(to_u64(value, key));
            else if (key == "seed") cfg.seed = to_u64(value, key);
            else if (key == "betas") cfg.betas = parse_beta_list(value);
            else if (key == "label") cfg.label = value;
            else if (key == "out" || key == "format") {
                // handled by the caller; keep the key recognized here
            } else fail("unknown key '" + key + "'");
        } else if (key == "enabled") {
            const bool on = to_bool(value, key);
            if (section == "one_one_ea") cfg.algorithms.one_one_ea = on;
            else if (section == "gsemo") cfg.algorithms.gsemo = on;
            else if (section == "convex_gsemo") cfg.algorithms.convex_gsemo = on;
            else cfg.algorithms.convex_mu_ea = on;
        } else if (key == "p_ub" && section == "convex_gsemo") {
            cfg.algorithms.p_ub = to_u64(value, key);
        } else if (key == "mu" && section == "convex_mu_ea") {
            cfg.algorithms.mu_pop = to_u64(value, key);
        } else {
            fail("unknown key '" + key + "' in section [" + section + "]");
        }
    }
    return cfg;
}

namespace {

// Pulls out/format lines back out of the config text (they configure the
// dispatcher, not the experiment).
std::pair<std::string, std::string> config_output(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string out_path;
    std::string format = "csv";
    bool in_section = false;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key.front() == '[') {
            in_section = true;
            continue;
        }
        if (in_section) continue;
        std::string value;
        ls >> value;
        if (key == "out") out_path = value;
        if (key == "format") format = value;
    }
    return {out_path, format};
}

std::string bits_to_string(const Solution& sol) {
    std::string s(sol.size(), '0');
    for (std::size_t i = 0; i < sol.size(); ++i) {
        if (sol.bits[i]) s[i] = '1';
    }
    return s;
}

int dispatch_gen(const CliCommand& cmd, std::ostream& out) {
    if (cmd.subcommand == "instance-i") {
        const int n = static_cast<int>(to_u64(cmd.get("n"), "n"));
        const auto bundle = gen_instance_i(n);
        Instance inst;
        inst.kind = Instance::Kind::uniform;
        inst.uniform = bundle.instance;
        save_instance(inst, cmd.get("out"));
        out << "wrote " << cmd.get("out") << ": n=" << n << " k=" << bundle.instance.k
            << " delta=" << double_to_string(bundle.delta) << "\n";
        return 0;
    }
    const auto format = cmd.has("graph_format")
                            ? (cmd.get("graph_format") == "matrix_market"
                                   ? GraphFormat::matrix_market
                                   : GraphFormat::edge_list)
                            : guess_graph_format(cmd.get("graph"));
    const auto loaded = load_graph(cmd.get("graph"), format);
    const auto setting = parse_domset_setting(cmd.get("setting"));
    const auto seed = to_u64(cmd.get("seed"), "seed");
    Instance inst;
    inst.kind = Instance::Kind::domset;
    inst.graph = gen_domset_setting(loaded.skeleton, setting, seed);
    save_instance(inst, cmd.get("out"));
    out << "wrote " << cmd.get("out") << ": vertices=" << inst.graph.n_vertices
        << " edges=" << inst.graph.m() << " setting=" << to_string(setting);
    if (loaded.dropped_duplicates > 0 || loaded.dropped_loops > 0) {
        out << " (dropped " << loaded.dropped_duplicates << " duplicate, "
            << loaded.dropped_loops << " loop lines)";
    }
    out << "\n";
    return 0;
}

int dispatch_run(const CliCommand& cmd, std::ostream& out) {
    const std::string text = read_text_file(cmd.get("config"));
    ExperimentConfig cfg = parse_experiment_config(text, cmd.get("config"));
    auto [out_path, format] = config_output(text);

    if (cmd.has("seed")) cfg.seed = to_u64(cmd.get("seed"), "seed");
    if (cmd.has("budget")) cfg.budget = to_u64(cmd.get("budget"), "budget");
    if (cmd.has("replicates")) {
        cfg.replicates = static_cast<std::uint32_t>(to_u64(cmd.get("replicates"), "replicates"));
    }
    if (cmd.has("betas")) cfg.betas = parse_beta_list(cmd.get("betas"));
    if (cmd.has("p_ub")) cfg.algorithms.p_ub = to_u64(cmd.get("p_ub"), "p-ub");
    if (cmd.has("out")) out_path = cmd.get("out");
    if (cmd.has("format")) format = cmd.get("format");
    if (out_path.empty()) throw UsageError("run: no output path (config 'out' or --out)");
    if (format != "csv" && format != "markdown") {
        throw UsageError("run: format must be csv or markdown");
    }

    const auto rows = run_experiment(cfg);
    emit_tables(rows, out_path,
                format == "csv" ? TableFormat::csv : TableFormat::markdown);
    out << rows.size() << " result rows -> " << out_path << "\n";
    return 0;
}

int dispatch_oracle(const CliCommand& cmd, std::ostream& out) {
    const Instance inst = load_instance(cmd.get("instance"));
    if (cmd.subcommand == "extreme-points") {
        ExtremePointSet set;
        if (inst.kind == Instance::Kind::uniform) {
            set = extreme_point_set(inst.uniform);
        } else if (inst.kind == Instance::Kind::mst) {
            set = extreme_point_set(inst.graph);
        } else {
            throw DomainError("extreme-points: no exact oracle for dominating set");
        }
        out << set.points.size() << " extreme points (incomparable pairs: "
            << set.pair_count << ")\n";
        if (cmd.has("out")) {
            std::ostringstream csv;
            csv << "lambda,mu,var,bits\n";
            for (const auto& p : set.points) {
                csv << double_to_string(p.lambda_witness) << ','
                    << double_to_string(p.obj.mu) << ',' << double_to_string(p.obj.var)
                    << ',' << bits_to_string(p.sol) << '\n';
            }
            write_text_file(cmd.get("out"), csv.str());
            out << "wrote " << cmd.get("out") << "\n";
        }
        return 0;
    }
    if (cmd.subcommand == "brute-force") {
        if (cmd.has("alpha") && cmd.has("beta")) {
            throw UsageError("brute-force: give --alpha or --beta, not both");
        }
        Confidence conf = cmd.has("beta")
                              ? Confidence::from_beta(to_real(cmd.get("beta"), "beta"))
                              : Confidence(cmd.has("alpha")
                                               ? to_real(cmd.get("alpha"), "alpha")
                                               : 0.5);
        double value = 0.0;
        if (inst.kind == Instance::Kind::uniform) {
            value = brute_force_optimum(inst.uniform, conf);
        } else if (inst.kind == Instance::Kind::mst) {
            value = brute_force_min(inst.graph.m(), [&](const Solution& x) {
                return eval_mst_single(x, inst.graph, conf);
            });
        } else {
            value = brute_force_min(static_cast<std::size_t>(inst.graph.n_vertices),
                                    [&](const Solution& x) {
                                        return eval_domset_single(x, inst.graph, conf);
                                    });
        }
        out << "optimum " << double_to_string(value) << " at alpha "
            << double_to_string(conf.alpha()) << "\n";
        return 0;
    }
    const double lambda = to_real(cmd.get("lambda"), "lambda");
    if (cmd.subcommand == "greedy") {
        if (inst.kind != Instance::Kind::uniform) {
            throw DomainError("greedy: requires a uniform instance");
        }
        const Solution sol = greedy_uniform(inst.uniform, lambda);
        const auto obj = eval_uniform_bi(sol, inst.uniform);
        out << bits_to_string(sol) << " mu=" << double_to_string(obj.mu)
            << " var=" << double_to_string(obj.var) << "\n";
        return 0;
    }
    if (inst.kind != Instance::Kind::mst) {
        throw DomainError("kruskal: requires an mst instance");
    }
    const Solution sol = kruskal_lambda(inst.graph, lambda);
    const auto obj = eval_mst_bi(sol, inst.graph);
    out << bits_to_string(sol) << " mu=" << double_to_string(obj.mu)
        << " var=" << double_to_string(obj.var) << "\n";
    return 0;
}

int dispatch_table(const CliCommand& cmd, std::ostream& out) {
    const auto rows = parse_csv(read_text_file(cmd.get("in")));
    const std::string format = cmd.has("format") ? cmd.get("format") : "markdown";
    emit_tables(rows, cmd.get("out"),
                format == "csv" ? TableFormat::csv : TableFormat::markdown);
    out << rows.size() << " rows -> " << cmd.get("out") << "\n";
    return 0;
}

}  // namespace

int dispatch(const CliCommand& cmd, std::ostream& out) {
    if (cmd.verb == "gen") return dispatch_gen(cmd, out);
    if (cmd.verb == "run") return dispatch_run(cmd, out);
    if (cmd.verb == "oracle") return dispatch_oracle(cmd, out);
    if (cmd.verb == "table") return dispatch_table(cmd, out);
    throw UsageError("unknown command '" + cmd.verb + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        const CliCommand cmd = parse_args(args);
        return dispatch(cmd, out);
    } catch (const HelpRequested& h) {
        out << h.what();
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ccopt
