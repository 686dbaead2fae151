#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "quboprune/chimera.hpp"
#include "quboprune/embedding.hpp"
#include "quboprune/generators.hpp"
#include "quboprune/harness.hpp"
#include "quboprune/io.hpp"
#include "quboprune/problems.hpp"
#include "quboprune/pruning.hpp"
#include "quboprune/sampler.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CliOptions {
    quboprune::ExperimentConfig cfg;
    std::string problem = "exact-cover";
    std::string chimera_spec = "16x16x4";
    std::vector<std::string> strategies = {"fraction", "threshold", "random"};
    std::vector<std::size_t> sweeps_list = {1000, 2000, 4000};
    std::size_t family_size = 0;  // embed-curve probe cap override
    std::string qubo_path;        // oracle input
};

void parse_chimera_spec(const std::string& spec, quboprune::ExperimentConfig& cfg) {
    std::size_t r = 0, c = 0, s = 0;
    char x1 = 0, x2 = 0;
    std::istringstream in(spec);
    if (!(in >> r >> x1 >> c >> x2 >> s) || x1 != 'x' || x2 != 'x' || r == 0 || c == 0 ||
        s == 0 || !(in >> std::ws).eof()) {
        throw CLI::ValidationError("--chimera", "expected RxCxS, e.g. 16x16x4");
    }
    cfg.chimera_rows = r;
    cfg.chimera_cols = c;
    cfg.chimera_shore = s;
}

std::filesystem::path resolve_out_dir(const std::string& flag_value) {
    std::string dir = flag_value;
    if (dir.empty()) {
        if (const char* env = std::getenv("QUBOPRUNE_OUT")) dir = env;
    }
    if (dir.empty()) dir = ".";
    std::filesystem::create_directories(dir);
    return dir;
}

void add_common_options(CLI::App* cmd, CliOptions& opt, bool needs_instance) {
    cmd->add_option("--problem", opt.problem, "problem kind")
        ->required()
        ->check(CLI::IsMember({"exact-cover", "max-cut", "number-partitioning",
                               "gate-assignment", "max3sat", "tsp", "graph-coloring",
                               "graph-isomorphism"}));
    auto* inst = cmd->add_option("--instance", opt.cfg.instance_path, "instance file");
    if (needs_instance) inst->required()->check(CLI::ExistingFile);
    cmd->add_option("--strategy", opt.cfg.strategy, "pruning strategy")
        ->check(CLI::IsMember({"fraction", "threshold", "random"}));
    cmd->add_option("--seed", opt.cfg.master_seed, "master seed");
    cmd->add_option("--runs", opt.cfg.n_runs, "samples per schedule step");
    cmd->add_option("--sweeps", opt.cfg.sweeps, "annealing sweeps per sample");
    cmd->add_option("--beta-start", opt.cfg.beta_start, "inverse temperature start");
    cmd->add_option("--beta-end", opt.cfg.beta_end, "inverse temperature end");
    cmd->add_option("--restarts", opt.cfg.restarts, "anneals per sample");
    cmd->add_option("--granularity", opt.cfg.granularity, "pruning step size");
    cmd->add_option("--chimera", opt.chimera_spec, "hardware grid RxCxS");
    cmd->add_option("--embed-seeds", opt.cfg.embed_seeds, "embeddings per step");
    cmd->add_option("--embed-attempts", opt.cfg.embed_attempts,
                    "tries per embedding seed");
    cmd->add_flag("!--no-embeddings", opt.cfg.embeddings,
                  "skip per-step embedding metrics");
    cmd->add_option("--out", opt.cfg.out_dir,
                    "output directory (default $QUBOPRUNE_OUT or .)");
}

quboprune::ExperimentConfig finalize_config(CliOptions& opt, CLI::App* cmd) {
    const auto kind = quboprune::kind_from_name(opt.problem);
    if (!kind) throw CLI::ValidationError("--problem", "unknown problem kind");
    opt.cfg.problem = *kind;
    parse_chimera_spec(opt.chimera_spec, opt.cfg);
    // The gate-assignment protocol runs 200 samples unless overridden.
    if (opt.cfg.problem == quboprune::Kind::GateAssignment &&
        cmd->count("--runs") == 0) {
        opt.cfg.n_runs = 200;
    }
    return opt.cfg;
}

int cmd_run(CliOptions& opt, CLI::App* cmd) {
    auto cfg = finalize_config(opt, cmd);
    const auto out_dir = resolve_out_dir(cfg.out_dir);
    const auto rows = quboprune::run_experiment(cfg);
    quboprune::emit_csv_file((out_dir / "results.csv").string(), cfg, rows);
    quboprune::emit_plot_file((out_dir / "results.svg").string(), cfg, rows);
    std::cout << "wrote " << (out_dir / "results.csv").string() << " and "
              << (out_dir / "results.svg").string() << '\n';
    return kExitOk;
}

int cmd_compare(CliOptions& opt, CLI::App* cmd) {
    auto cfg = finalize_config(opt, cmd);
    if (opt.strategies.size() < 2) {
        throw CLI::ValidationError("--strategies", "need at least two strategies");
    }
    const auto out_dir = resolve_out_dir(cfg.out_dir);
    const auto tables = quboprune::compare_strategies(cfg, opt.strategies);
    for (const auto& [name, rows] : tables) {
        quboprune::ExperimentConfig sub = cfg;
        sub.strategy = name;
        const auto path = out_dir / (name + ".csv");
        quboprune::emit_csv_file(path.string(), sub, rows);
        std::cout << "wrote " << path.string() << '\n';
    }
    return kExitOk;
}

int cmd_sweep_effort(CliOptions& opt, CLI::App* cmd) {
    auto cfg = finalize_config(opt, cmd);
    const auto out_dir = resolve_out_dir(cfg.out_dir);
    const auto tables = quboprune::sweep_effort(cfg, opt.sweeps_list);
    for (const auto& [sweeps, rows] : tables) {
        quboprune::ExperimentConfig sub = cfg;
        sub.sweeps = sweeps;
        const auto path = out_dir / ("sweeps_" + std::to_string(sweeps) + ".csv");
        quboprune::emit_csv_file(path.string(), sub, rows);
        std::cout << "wrote " << path.string() << '\n';
    }
    return kExitOk;
}

int cmd_embed_curve(CliOptions& opt, CLI::App* cmd) {
    auto cfg = finalize_config(opt, cmd);
    const auto out_dir = resolve_out_dir(cfg.out_dir);
    auto family = quboprune::instance_family(cfg.problem);
    if (opt.family_size > 0) family.max_size = opt.family_size;
    const auto hw =
        quboprune::chimera(cfg.chimera_rows, cfg.chimera_cols, cfg.chimera_shore);
    const auto curve =
        quboprune::embed_curve(family, cfg.prune_strategy(), hw, cfg.master_seed,
                               cfg.granularity, cfg.embed_attempts);
    const auto path = out_dir / "embed_curve.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "# quboprune embeddable-size curve\n";
    out << "# config: " << cfg.to_json() << '\n';
    out << "p,strategy,size(" << family.size_notion << "),embeddable_ratio\n";
    char buf[64];
    for (const auto& point : curve) {
        std::snprintf(buf, sizeof(buf), "%.4f,%s,%zu,%.17g\n", point.p,
                      cfg.strategy.c_str(), point.size, point.ratio);
        out << buf;
    }
    std::cout << "wrote " << path.string() << '\n';
    return kExitOk;
}

int cmd_oracle(CliOptions& opt) {
    const auto qubo = quboprune::load_qubo_file(opt.qubo_path);
    const auto best = quboprune::brute_force(qubo);
    std::cout << "minimum energy " << best.energy << '\n';
    std::cout << "assignment";
    for (auto b : best.assignment) std::cout << ' ' << int(b);
    std::cout << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QUBO approximation toolkit: encode, prune, sample, embed"};
    app.require_subcommand(1);

    CliOptions opt;

    auto* run = app.add_subcommand("run", "run a full pruning experiment");
    add_common_options(run, opt, true);
    run->add_flag("--embeddable-curve", opt.cfg.embeddable_curve,
                  "also compute the embeddable-size column from the kind's size family");

    auto* compare = app.add_subcommand("compare", "run several strategies side by side");
    add_common_options(compare, opt, true);
    compare->add_option("--strategies", opt.strategies, "strategies to compare");

    auto* sweep = app.add_subcommand("sweep-effort", "rerun at several sweep counts");
    add_common_options(sweep, opt, true);
    sweep->add_option("--sweeps-list", opt.sweeps_list, "sweep counts");

    auto* curve = app.add_subcommand("embed-curve",
                                     "largest embeddable instance size per pruning step");
    add_common_options(curve, opt, false);
    curve->add_option("--max-size", opt.family_size, "family size cap");

    auto* oracle = app.add_subcommand("oracle", "brute-force a serialized QUBO file");
    oracle->add_option("qubo", opt.qubo_path, "QUBO text file")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) return cmd_run(opt, run);
        if (compare->parsed()) return cmd_compare(opt, compare);
        if (sweep->parsed()) return cmd_sweep_effort(opt, sweep);
        if (curve->parsed()) return cmd_embed_curve(opt, curve);
        if (oracle->parsed()) return cmd_oracle(opt);
    } catch (const CLI::Error& e) {
        std::cerr << "configuration error: " << e.get_name() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitConfig;
}
