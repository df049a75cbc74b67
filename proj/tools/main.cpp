#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hamcover/cover.hpp"
#include "hamcover/expander_check.hpp"
#include "hamcover/graph.hpp"
#include "hamcover/posa.hpp"
#include "hamcover/random_gen.hpp"
#include "hamcover/verify.hpp"
#include "report.hpp"

using namespace hamcover;
using namespace hamcover::cli;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("hamcover");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char *env = std::getenv("HAMCOVER_LOG");
    spdlog::set_level(env != nullptr ? spdlog::level::from_str(env) : spdlog::level::warn);
}

void emit(const std::string &path, const std::string &text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot open output file " + path);
    }
    out << text;
}

void emit_json(const std::string &path, const json &j) { emit(path, j.dump(2) + "\n"); }

SearchBudget budget_of(const RunConfig &cfg) {
    SearchBudget b;
    b.fixed = cfg.budget.value_or(0);
    return b;
}

// s = (average degree)^(1/5), alpha = ln s / ln n, clamped into (0, 1].
double default_alpha(const Graph &g) {
    if (g.order() < 3 || g.size() == 0) {
        return 1.0;
    }
    const double avg = 2.0 * static_cast<double>(g.size()) / static_cast<double>(g.order());
    const double s = std::pow(avg, 0.2);
    const double a = std::log(s) / std::log(static_cast<double>(g.order()));
    return a > 0.0 ? std::min(a, 1.0) : 0.05;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw UsageError("--alpha must lie in (0, 1]");
    }
}

int cmd_gen(const RunConfig &cfg) {
    const Graph g = sample_gnp(*cfg.n, *cfg.p, {cfg.seed, 0});
    spdlog::info("sampled G({}, {}) with {} edges", *cfg.n, *cfg.p, g.size());
    std::ostringstream text;
    write_edge_list(text, g);
    emit(cfg.out, text.str());
    return kOk;
}

int cmd_check(const RunConfig &cfg) {
    const Graph g = read_edge_list_file(cfg.graph);
    const double s = *cfg.s;
    if (!(s > 1.0) || g.order() < 2) {
        throw UsageError("--s must exceed 1 and the graph needs at least 2 vertices");
    }
    const auto params = expander_params(g.order(), s);
    const double gb = cfg.g.value_or(params.g);
    const double l = cfg.l.value_or(params.l);
    auto small = small_expansion_witness_search(g, s, gb, cfg.trials, {cfg.seed, 1});
    auto large = large_expansion_witness_search(g, l, cfg.trials, {cfg.seed, 2});
    auto diam = diameter_bound_check(g, s);
    json report{{"config", cfg.to_json()},
                {"small", to_json(small)},
                {"large", to_json(large)},
                {"diameter", to_json(diam)}};
    emit_json(cfg.out, report);
    const bool violated = small.verdict == Verdict::Violated || large.verdict == Verdict::Violated;
    return violated ? kInvalid : kOk;
}

int cmd_hamilton(const RunConfig &cfg) {
    const Graph g = read_edge_list_file(cfg.graph);
    EdgeSet hard;
    if (!cfg.forbid.empty()) {
        const Graph f = read_edge_list_file(cfg.forbid);
        for (const auto &e : f.edges()) {
            if (e.v >= g.order()) {
                throw UsageError("forbid file names vertex " + std::to_string(e.v) + " outside the graph");
            }
            hard.insert(e);
        }
    }
    RotationConstraints c(hard, hard);
    auto r = find_hamilton_cycle(g, c, budget_of(cfg).iterations(g.order()));
    if (r.ok()) {
        if (cfg.format == "json") {
            emit_json(cfg.out, json{{"config", cfg.to_json()},
                                    {"cycle", r.cycle->vertices},
                                    {"iterations", r.iterations},
                                    {"restarts", r.restarts}});
        } else {
            std::ostringstream line;
            write_cycles(line, {*r.cycle});
            emit(cfg.out, line.str());
        }
        return kOk;
    }
    emit_json(cfg.out, json{{"config", cfg.to_json()},
                            {"failure", r.failure},
                            {"iterations", r.iterations},
                            {"restarts", r.restarts},
                            {"longest_path", r.longest_path}});
    return kInvalid;
}

int cmd_pack(const RunConfig &cfg) {
    const Graph g = read_edge_list_file(cfg.graph);
    const std::size_t target = cfg.pack.value_or(g.min_degree() / 2);
    auto pk = extract_packing(g, target, budget_of(cfg));
    if (!cfg.cycles_out.empty()) {
        std::ostringstream text;
        write_cycles(text, pk.cycles);
        emit(cfg.cycles_out, text.str());
    }
    emit_json(cfg.out, json{{"config", cfg.to_json()},
                            {"target", target},
                            {"h", pk.cycles.size()},
                            {"shortfall", pk.shortfall},
                            {"stop_reason", pk.stop_reason},
                            {"residual_edges", pk.residual.size()}});
    return kOk;
}

int cmd_cover(RunConfig cfg) {
    const Graph g = read_edge_list_file(cfg.graph);
    if (!cfg.alpha) {
        cfg.alpha = default_alpha(g);
        spdlog::info("alpha defaulted to {}", *cfg.alpha);
    }
    check_alpha(*cfg.alpha);
    CoverOptions opts;
    opts.packing_target = cfg.pack;
    opts.budget = budget_of(cfg);
    auto outcome = cover_graph(g, *cfg.alpha, opts);
    if (outcome.ok() && !cfg.cycles_out.empty()) {
        std::ostringstream text;
        write_cycles(text, outcome.certificate->cycles);
        emit(cfg.cycles_out, text.str());
    }
    if (!outcome.ok()) {
        spdlog::warn("cover failed in phase {}: {}", outcome.failed_phase, outcome.failure);
    }
    emit_json(cfg.out, cover_report(outcome, cfg));
    return outcome.ok() ? kOk : kInvalid;
}

int cmd_experiment(RunConfig cfg) {
    const std::size_t n = *cfg.n;
    const double p = *cfg.p;
    if (!cfg.alpha) {
        cfg.alpha = static_cast<double>(n) * p > 1.0 && n >= 2 ? expander_params_for_gnp(n, p).alpha : 0.5;
        cfg.alpha = std::clamp(*cfg.alpha, 0.01, 1.0);
    }
    check_alpha(*cfg.alpha);
    if (static_cast<double>(n) * p < 20.0) {
        spdlog::warn("np = {} < 20: sampled graphs may well not be Hamiltonian", static_cast<double>(n) * p);
    }
    std::vector<std::uint64_t> seeds(cfg.seeds.value_or(1));
    std::iota(seeds.begin(), seeds.end(), cfg.seed);
    ExperimentOptions opts;
    opts.jobs = cfg.jobs;
    opts.check_trials = cfg.trials;
    opts.cover.packing_target = cfg.pack;
    opts.cover.budget = budget_of(cfg);
    auto reports = run_gnp_experiment(n, p, seeds, *cfg.alpha, opts);

    bool all_valid = true;
    for (const auto &r : reports) {
        all_valid = all_valid && r.valid;
        spdlog::info("seed {}: {}", r.seed, r.valid ? "ratio " + std::to_string(r.ratio) : r.failure);
    }
    const bool as_json = cfg.format == "json" || (cfg.out.size() >= 5 && cfg.out.ends_with(".json"));
    if (as_json) {
        json arr = json::array();
        for (const auto &r : reports) {
            arr.push_back(to_json(r));
        }
        emit_json(cfg.out, json{{"config", cfg.to_json()}, {"reports", arr}});
    } else {
        std::string text = csv_header() + "\n";
        for (const auto &r : reports) {
            text += csv_row(r) + "\n";
        }
        emit(cfg.out, text);
    }
    return all_valid ? kOk : kInvalid;
}

int cmd_verify(const RunConfig &cfg) {
    const Graph g = read_edge_list_file(cfg.graph);
    std::ifstream in(cfg.cover);
    if (!in) {
        throw UsageError("cannot open cover file " + cfg.cover);
    }
    const auto cycles = read_cycles(in);
    auto v = validate_cover(g, cycles);
    if (cfg.format == "json") {
        json uncovered = json::array();
        for (std::size_t i = 0; i < v.edges.size(); ++i) {
            if (v.coverage[i] == 0) {
                uncovered.push_back({v.edges[i].u, v.edges[i].v});
            }
        }
        emit_json(cfg.out, json{{"config", cfg.to_json()},
                                {"valid", v.ok},
                                {"cycles", cycles.size()},
                                {"lower_bound", (g.max_degree() + 1) / 2},
                                {"uncovered", uncovered},
                                {"min_coverage", v.min_coverage},
                                {"problems", v.problems}});
    } else {
        emit(cfg.out, v.ok ? "valid: " + std::to_string(cycles.size()) + " cycles cover all " +
                                 std::to_string(g.size()) + " edges\n"
                           : "invalid: " + (v.problems.empty() ? std::to_string(v.uncovered) + " edges uncovered"
                                                                : v.problems.front()) +
                                 "\n");
    }
    return v.ok ? kOk : kInvalid;
}

// Expands --config FILE into "--key value" pairs placed right after the
// subcommand, so flags given on the command line take precedence.
std::vector<std::string> expand_config(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::vector<std::string> rest;
    std::string file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            file = args[++i];
        } else if (args[i].starts_with("--config=")) {
            file = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (file.empty()) {
        return rest;
    }
    std::ifstream in(file);
    if (!in) {
        throw UsageError("cannot open config file " + file);
    }
    std::vector<std::string> extra;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find_first_of("#;"); hash != std::string::npos) {
            line.erase(hash);
        }
        auto trim = [](std::string t) {
            const auto b = t.find_first_not_of(" \t\r");
            const auto e = t.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty() || line.front() == '[') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(file + ": line " + std::to_string(line_no) + ": expected key=value");
        }
        extra.push_back("--" + trim(line.substr(0, eq)));
        extra.push_back(trim(line.substr(eq + 1)));
    }
    auto sub = std::find_if(rest.begin(), rest.end(), [](const std::string &a) { return !a.starts_with("-"); });
    if (sub != rest.end()) {
        ++sub;
    }
    rest.insert(sub, extra.begin(), extra.end());
    return rest;
}

}  // namespace

int main(int argc, char **argv) {
    setup_logging();
    CLI::App app{"Hamilton cycle packings and covers of expander and random graphs", "hamcover"};
    app.add_option("--config", "Read options from a key=value file");
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    RunConfig cfg;

    auto graph_opt = [&](CLI::App *sub) { sub->add_option("--graph", cfg.graph, "Edge-list file")->required(); };
    auto out_opt = [&](CLI::App *sub) { sub->add_option("--out", cfg.out, "Output file (default: stdout)"); };
    auto budget_opt = [&](CLI::App *sub) {
        sub->add_option("--budget", cfg.budget, "Iteration budget per Hamilton search (default 40 n)");
    };

    auto *gen = app.add_subcommand("gen", "Sample G(n, p) and write it as an edge list");
    gen->add_option("--n", cfg.n)->required()->check(CLI::PositiveNumber);
    gen->add_option("--p", cfg.p)->required()->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", cfg.seed);
    out_opt(gen);

    auto *check = app.add_subcommand("check", "Search for expansion violations and check the diameter bound");
    graph_opt(check);
    check->add_option("--s", cfg.s, "Expansion factor")->required();
    check->add_option("--g", cfg.g, "Small-set bound (default from s)");
    check->add_option("--l", cfg.l, "Large-set size (default from s)");
    check->add_option("--trials", cfg.trials);
    check->add_option("--seed", cfg.seed);
    out_opt(check);

    auto *ham = app.add_subcommand("hamilton", "Find a Hamilton cycle, optionally keeping a matching");
    graph_opt(ham);
    ham->add_option("--forbid", cfg.forbid, "Edge-list of edges that must stay on the cycle");
    budget_opt(ham);
    ham->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));
    out_opt(ham);

    auto *pack = app.add_subcommand("pack", "Greedily extract edge-disjoint Hamilton cycles");
    graph_opt(pack);
    pack->add_option("--target", cfg.pack, "Number of cycles (default floor(min degree / 2))");
    pack->add_option("--cycles-out", cfg.cycles_out, "Write the cycles, one per line");
    budget_opt(pack);
    out_opt(pack);

    auto *cover = app.add_subcommand("cover", "Cover every edge by Hamilton cycles");
    graph_opt(cover);
    cover->add_option("--alpha", cfg.alpha, "Expansion exponent in (0, 1] (default from the average degree)");
    cover->add_option("--pack", cfg.pack, "Packing target (default floor(min degree / 2))");
    cover->add_option("--cycles-out", cfg.cycles_out, "Write the cover cycles, one per line");
    budget_opt(cover);
    out_opt(cover);

    auto *exp = app.add_subcommand("experiment", "Cover sampled G(n, p) graphs for consecutive seeds");
    exp->add_option("--n", cfg.n)->required()->check(CLI::PositiveNumber);
    exp->add_option("--p", cfg.p)->required()->check(CLI::Range(0.0, 1.0));
    exp->add_option("--seeds", cfg.seeds, "Number of seeds")->check(CLI::PositiveNumber);
    exp->add_option("--seed", cfg.seed, "First seed");
    exp->add_option("--alpha", cfg.alpha);
    exp->add_option("--pack", cfg.pack);
    exp->add_option("--trials", cfg.trials, "Trials for the sampled expansion checks");
    exp->add_option("--jobs", cfg.jobs, "Worker threads (default: all cores)");
    exp->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
    budget_opt(exp);
    out_opt(exp);

    auto *ver = app.add_subcommand("verify", "Check that a list of cycles is a Hamilton cover");
    graph_opt(ver);
    ver->add_option("--cover", cfg.cover, "Cycles, one per line")->required();
    ver->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));
    out_opt(ver);

    for (auto *sub : {gen, check, ham, pack, cover, exp, ver}) {
        sub->callback([&cfg, sub] { cfg.subcommand = sub->get_name(); });
    }
    try {
        auto args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        std::cerr << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kUsage;
    }
    if (cfg.format.empty()) {
        cfg.format = cfg.subcommand == "experiment" ? "csv" : cfg.subcommand == "hamilton" || cfg.subcommand == "verify" ? "text" : "json";
    }

    try {
        if (cfg.subcommand == "gen") {
            return cmd_gen(cfg);
        }
        if (cfg.subcommand == "check") {
            return cmd_check(cfg);
        }
        if (cfg.subcommand == "hamilton") {
            return cmd_hamilton(cfg);
        }
        if (cfg.subcommand == "pack") {
            return cmd_pack(cfg);
        }
        if (cfg.subcommand == "cover") {
            return cmd_cover(cfg);
        }
        if (cfg.subcommand == "experiment") {
            return cmd_experiment(cfg);
        }
        return cmd_verify(cfg);
    } catch (const GraphError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
