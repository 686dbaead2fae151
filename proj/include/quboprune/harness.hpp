#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "quboprune/problems.hpp"
#include "quboprune/pruning.hpp"
#include "quboprune/qubo.hpp"
#include "quboprune/sampler.hpp"

namespace quboprune {

/// Full experiment description. Every random choice downstream is derived
/// from master_seed, and the whole config is embedded into each output for
/// provenance, so re-running a config reproduces outputs byte for byte.
struct ExperimentConfig {
    Kind problem = Kind::ExactCover;
    std::string instance_path;
    std::string strategy = "fraction";
    double granularity = 0.05;
    std::size_t n_runs = 100;          // the gate-assignment protocol uses 200
    std::size_t sweeps = 1000;
    double beta_start = 0.0;           // <= 0: resolved per QUBO
    double beta_end = 0.0;
    std::size_t restarts = 1;
    std::size_t chimera_rows = 16;
    std::size_t chimera_cols = 16;
    std::size_t chimera_shore = 4;
    std::size_t embed_seeds = 10;      // embeddings per step; median reported
    std::size_t embed_attempts = 10;
    bool embeddings = true;
    /// Also compute the embeddable-size curve of this problem's default
    /// size family (one binary search per step; off by default).
    bool embeddable_curve = false;
    std::uint64_t master_seed = 1;
    std::string out_dir;

    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);

    // Named sub-streams of the master seed.
    std::uint64_t sampler_seed() const;
    std::uint64_t baseline_seed() const;
    std::uint64_t strategy_seed() const;
    std::uint64_t embed_seed(std::size_t index) const;

    PruneStrategy prune_strategy() const;
};

/// One schedule step of an experiment. Ratios are quality ratios v/v_ref
/// measured against the original, unpruned instance objective. Columns
/// that cannot be computed (no embedding found, or no size family for this
/// run) are NaN, printed as "nan".
struct ResultRow {
    double p = 0.0;
    std::string strategy;
    double mean_ratio = 0.0;
    double std_ratio = 0.0;
    double best_ratio = 0.0;
    double valid_fraction = 0.0;
    double baseline_ratio = 0.0;
    double embeddable_ratio = 0.0;
    double physical_qubits = 0.0;  // lower median over embed_seeds embeddings

    bool operator==(const ResultRow&) const;
};

/// Samples every schedule step n_runs times, decodes and scores each
/// sample against the original instance, and attaches the random baseline
/// and embedding footprint columns. Rows are ordered by p.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg,
                                      const ProblemInstance& inst, const Qubo& qubo);

/// Loads the instance from cfg.instance_path first.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

/// Runs one experiment per strategy with identical instance and seeds so
/// differences isolate the strategy. Keys are strategy names.
std::map<std::string, std::vector<ResultRow>> compare_strategies(
    const ExperimentConfig& cfg, const std::vector<std::string>& strategies);

/// Runs one experiment per sweep count. Keys are sweep counts.
std::map<std::size_t, std::vector<ResultRow>> sweep_effort(
    const ExperimentConfig& cfg, const std::vector<std::size_t>& sweeps_list);

/// CSV with an embedded "# config: <json>" provenance line and a fixed
/// column order: p, strategy, mean_ratio, std_ratio, best_ratio,
/// valid_fraction, baseline_ratio, embeddable_ratio, physical_qubits.
void emit_csv(std::ostream& out, const ExperimentConfig& cfg,
              const std::vector<ResultRow>& rows);
void emit_csv_file(const std::string& path, const ExperimentConfig& cfg,
                   const std::vector<ResultRow>& rows);

struct CsvContent {
    ExperimentConfig config;
    std::vector<ResultRow> rows;
};

CsvContent read_csv(std::istream& in);
CsvContent read_csv_file(const std::string& path);

/// Two-panel SVG: quality ratio vs p with the constant random baseline,
/// and the embedding footprint (embeddable ratio when available, physical
/// qubits otherwise) vs p.
void emit_plot(std::ostream& out, const ExperimentConfig& cfg,
               const std::vector<ResultRow>& rows);
void emit_plot_file(const std::string& path, const ExperimentConfig& cfg,
                    const std::vector<ResultRow>& rows);

}  // namespace quboprune
