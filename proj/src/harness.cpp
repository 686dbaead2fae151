#include "quboprune/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "quboprune/chimera.hpp"
#include "quboprune/embedding.hpp"
#include "quboprune/generators.hpp"
#include "quboprune/io.hpp"
#include "quboprune/rng.hpp"

namespace quboprune {

namespace {

using Json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool double_eq(double a, double b) {
    return (std::isnan(a) && std::isnan(b)) || a == b;
}

double mean_of(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double stddev_of(const std::vector<double>& xs, double mean) {
    double sq = 0.0;
    for (double x : xs) sq += (x - mean) * (x - mean);
    return std::sqrt(sq / static_cast<double>(xs.size()));
}

/// Lower median: the floor((n-1)/2)-th order statistic.
double lower_median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    return xs[(xs.size() - 1) / 2];
}

}  // namespace

bool ResultRow::operator==(const ResultRow& other) const {
    return double_eq(p, other.p) && strategy == other.strategy &&
           double_eq(mean_ratio, other.mean_ratio) &&
           double_eq(std_ratio, other.std_ratio) &&
           double_eq(best_ratio, other.best_ratio) &&
           double_eq(valid_fraction, other.valid_fraction) &&
           double_eq(baseline_ratio, other.baseline_ratio) &&
           double_eq(embeddable_ratio, other.embeddable_ratio) &&
           double_eq(physical_qubits, other.physical_qubits);
}

std::string ExperimentConfig::to_json() const {
    Json j;
    j["problem"] = kind_name(problem);
    j["instance"] = instance_path;
    j["strategy"] = strategy;
    j["granularity"] = granularity;
    j["runs"] = n_runs;
    j["sweeps"] = sweeps;
    j["beta_start"] = beta_start;
    j["beta_end"] = beta_end;
    j["restarts"] = restarts;
    j["chimera"] = {chimera_rows, chimera_cols, chimera_shore};
    j["embed_seeds"] = embed_seeds;
    j["embed_attempts"] = embed_attempts;
    j["embeddings"] = embeddings;
    j["embeddable_curve"] = embeddable_curve;
    j["master_seed"] = master_seed;
    return j.dump();
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    const Json j = Json::parse(text);
    ExperimentConfig cfg;
    const auto kind = kind_from_name(j.at("problem").get<std::string>());
    if (!kind) throw std::invalid_argument("config: unknown problem kind");
    cfg.problem = *kind;
    cfg.instance_path = j.at("instance").get<std::string>();
    cfg.strategy = j.at("strategy").get<std::string>();
    cfg.granularity = j.at("granularity").get<double>();
    cfg.n_runs = j.at("runs").get<std::size_t>();
    cfg.sweeps = j.at("sweeps").get<std::size_t>();
    cfg.beta_start = j.at("beta_start").get<double>();
    cfg.beta_end = j.at("beta_end").get<double>();
    cfg.restarts = j.at("restarts").get<std::size_t>();
    cfg.chimera_rows = j.at("chimera").at(0).get<std::size_t>();
    cfg.chimera_cols = j.at("chimera").at(1).get<std::size_t>();
    cfg.chimera_shore = j.at("chimera").at(2).get<std::size_t>();
    cfg.embed_seeds = j.at("embed_seeds").get<std::size_t>();
    cfg.embed_attempts = j.at("embed_attempts").get<std::size_t>();
    cfg.embeddings = j.at("embeddings").get<bool>();
    cfg.embeddable_curve = j.at("embeddable_curve").get<bool>();
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    return cfg;
}

std::uint64_t ExperimentConfig::sampler_seed() const { return Rng::derive(master_seed, 1); }
std::uint64_t ExperimentConfig::baseline_seed() const { return Rng::derive(master_seed, 2); }
std::uint64_t ExperimentConfig::strategy_seed() const { return Rng::derive(master_seed, 3); }
std::uint64_t ExperimentConfig::embed_seed(std::size_t index) const {
    return Rng::derive(master_seed, 16 + index);
}

PruneStrategy ExperimentConfig::prune_strategy() const {
    auto s = PruneStrategy::from_name(strategy, strategy_seed());
    if (!s) throw std::invalid_argument("config: unknown strategy: " + strategy);
    return *s;
}

namespace {

/// Per-sample quality ratios plus the aggregate columns of one row.
struct StepScore {
    double mean = 0.0;
    double stddev = 0.0;
    double best = 0.0;
    double valid_fraction = 0.0;
};

StepScore score_samples(const ProblemInstance& inst, const SampleSet& set,
                        std::optional<double> reference) {
    std::vector<double> ratios;
    ratios.reserve(set.samples.size());
    std::size_t valid = 0;
    for (const Sample& s : set.samples) {
        const DecodedSolution sol = decode(inst, s.assignment);
        const QualityRatio q = quality(inst, sol, VRefMode::FigureDefault, reference);
        ratios.push_back(q.ratio);
        if (sol.valid) ++valid;
    }
    StepScore score;
    score.mean = mean_of(ratios);
    score.stddev = stddev_of(ratios, score.mean);
    score.best = higher_is_better(inst.kind())
                     ? *std::max_element(ratios.begin(), ratios.end())
                     : *std::min_element(ratios.begin(), ratios.end());
    score.valid_fraction =
        static_cast<double>(valid) / static_cast<double>(set.samples.size());
    return score;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg,
                                      const ProblemInstance& inst, const Qubo& qubo) {
    if (cfg.n_runs < 1) throw std::invalid_argument("config: runs must be >= 1");

    // Reference optimum for the kinds whose figures measure against it.
    std::optional<double> reference;
    if (reference_is_optimum(inst.kind())) {
        const Sample ground = brute_force(qubo);
        reference = objective_value(inst, decode(inst, ground.assignment));
    }

    // Random baseline: a function of the logical bit count only.
    const SampleSet baseline =
        random_baseline(qubo.num_vars(), cfg.n_runs, cfg.baseline_seed());
    const double baseline_ratio = score_samples(inst, baseline, reference).mean;

    const PruneSchedule schedule =
        make_schedule(qubo, cfg.prune_strategy(), cfg.granularity);

    ChimeraGraph hw;
    if (cfg.embeddings || cfg.embeddable_curve) {
        hw = chimera(cfg.chimera_rows, cfg.chimera_cols, cfg.chimera_shore);
    }
    std::vector<EmbedCurvePoint> size_curve;
    if (cfg.embeddable_curve) {
        size_curve = embed_curve(instance_family(cfg.problem), cfg.prune_strategy(), hw,
                                 Rng::derive(cfg.master_seed, 4), cfg.granularity,
                                 cfg.embed_attempts);
    }

    SaParams params;
    params.sweeps = cfg.sweeps;
    params.beta_start = cfg.beta_start;
    params.beta_end = cfg.beta_end;
    params.restarts = cfg.restarts;
    params.seed = cfg.sampler_seed();

    std::vector<ResultRow> rows;
    rows.reserve(schedule.steps.size());
    for (std::size_t step_index = 0; step_index < schedule.steps.size(); ++step_index) {
        const PruneStep& step = schedule.steps[step_index];
        const SampleSet set = sample_many(step.qubo, cfg.n_runs, params);
        const StepScore score = score_samples(inst, set, reference);

        ResultRow row;
        row.p = step.p;
        row.strategy = cfg.strategy;
        row.mean_ratio = score.mean;
        row.std_ratio = score.stddev;
        row.best_ratio = score.best;
        row.valid_fraction = score.valid_fraction;
        row.baseline_ratio = baseline_ratio;
        row.embeddable_ratio =
            cfg.embeddable_curve ? size_curve[step_index].ratio : std::nan("");
        row.physical_qubits = std::nan("");

        if (cfg.embeddings) {
            const Graph logical = connectivity_graph(step.qubo);
            std::vector<double> footprints;
            for (std::size_t i = 0; i < cfg.embed_seeds; ++i) {
                const auto e =
                    find_embedding(logical, hw, cfg.embed_seed(i), cfg.embed_attempts);
                if (e) {
                    footprints.push_back(
                        static_cast<double>(embedding_metrics(*e).physical_qubits));
                }
            }
            if (!footprints.empty()) {
                row.physical_qubits = lower_median(std::move(footprints));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    const ProblemInstance inst = load_instance_file(cfg.problem, cfg.instance_path);
    const auto [built, qubo] = build(inst);
    return run_experiment(cfg, built, qubo);
}

std::map<std::string, std::vector<ResultRow>> compare_strategies(
    const ExperimentConfig& cfg, const std::vector<std::string>& strategies) {
    if (strategies.empty()) {
        throw std::invalid_argument("compare_strategies: need at least one strategy");
    }
    const ProblemInstance inst = load_instance_file(cfg.problem, cfg.instance_path);
    const auto [built, qubo] = build(inst);

    std::map<std::string, std::vector<ResultRow>> tables;
    for (const std::string& name : strategies) {
        ExperimentConfig sub = cfg;
        sub.strategy = name;
        tables[name] = run_experiment(sub, built, qubo);
    }
    return tables;
}

std::map<std::size_t, std::vector<ResultRow>> sweep_effort(
    const ExperimentConfig& cfg, const std::vector<std::size_t>& sweeps_list) {
    if (sweeps_list.empty()) {
        throw std::invalid_argument("sweep_effort: need at least one sweep count");
    }
    const ProblemInstance inst = load_instance_file(cfg.problem, cfg.instance_path);
    const auto [built, qubo] = build(inst);

    std::map<std::size_t, std::vector<ResultRow>> tables;
    for (std::size_t sweeps : sweeps_list) {
        ExperimentConfig sub = cfg;
        sub.sweeps = sweeps;
        tables[sweeps] = run_experiment(sub, built, qubo);
    }
    return tables;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kCsvHeader =
    "p,strategy,mean_ratio,std_ratio,best_ratio,valid_fraction,baseline_ratio,"
    "embeddable_ratio,physical_qubits";

std::string format_p(double p) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.4f", p);
    return buf;
}

std::string format_count(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
}

}  // namespace

void emit_csv(std::ostream& out, const ExperimentConfig& cfg,
              const std::vector<ResultRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
    out << "# quboprune results\n";
    out << "# config: " << cfg.to_json() << '\n';
    out << kCsvHeader << '\n';
    for (const ResultRow& r : rows) {
        out << format_p(r.p) << ',' << r.strategy << ',' << format_double(r.mean_ratio)
            << ',' << format_double(r.std_ratio) << ',' << format_double(r.best_ratio)
            << ',' << format_double(r.valid_fraction) << ','
            << format_double(r.baseline_ratio) << ','
            << format_double(r.embeddable_ratio) << ','
            << format_count(r.physical_qubits) << '\n';
    }
}

void emit_csv_file(const std::string& path, const ExperimentConfig& cfg,
                   const std::vector<ResultRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv_file: cannot open " + path);
    emit_csv(out, cfg, rows);
}

CsvContent read_csv(std::istream& in) {
    CsvContent content;
    bool have_config = false;
    bool have_header = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# config: ", 0) == 0) {
            content.config = ExperimentConfig::from_json(line.substr(10));
            have_config = true;
            continue;
        }
        if (line[0] == '#') continue;
        if (!have_header) {
            if (line != kCsvHeader) {
                throw std::invalid_argument("read_csv: unexpected header: " + line);
            }
            have_header = true;
            continue;
        }
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 9) {
            throw std::invalid_argument("read_csv: bad row: " + line);
        }
        ResultRow row;
        row.p = std::stod(fields[0]);
        row.strategy = fields[1];
        row.mean_ratio = std::stod(fields[2]);
        row.std_ratio = std::stod(fields[3]);
        row.best_ratio = std::stod(fields[4]);
        row.valid_fraction = std::stod(fields[5]);
        row.baseline_ratio = std::stod(fields[6]);
        row.embeddable_ratio = std::stod(fields[7]);
        row.physical_qubits = std::stod(fields[8]);
        content.rows.push_back(std::move(row));
    }
    if (!have_config || !have_header) {
        throw std::invalid_argument("read_csv: missing config or header line");
    }
    return content;
}

CsvContent read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv_file: cannot open " + path);
    return read_csv(in);
}

void emit_plot_file(const std::string& path, const ExperimentConfig& cfg,
                    const std::vector<ResultRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_plot_file: cannot open " + path);
    emit_plot(out, cfg, rows);
}

}  // namespace quboprune
