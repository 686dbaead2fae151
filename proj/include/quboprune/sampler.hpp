#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "quboprune/qubo.hpp"

namespace quboprune {

enum class SampleSource { SimAnneal, RandomBaseline, BruteForce };

struct SaParams {
    /// Full single-spin-flip passes; the classical analog of annealing time.
    std::size_t sweeps = 1000;
    /// Geometric inverse-temperature ladder endpoints. Values <= 0 are
    /// resolved from the coefficient range of the QUBO being sampled.
    double beta_start = 0.0;
    double beta_end = 0.0;
    /// Independent anneals per sample; the best result is kept.
    std::size_t restarts = 1;
    std::uint64_t seed = 0;
};

struct Sample {
    Assignment assignment;
    double energy = 0.0;
    SampleSource source = SampleSource::SimAnneal;
};

struct SampleSet {
    std::vector<Sample> samples;
    std::size_t n_runs = 0;
    std::optional<SaParams> params;

    double mean_energy() const;
    double best_energy() const;
    const Sample& best() const;
};

/// The (beta_start, beta_end) pair actually used for a QUBO: explicit
/// positive values pass through; otherwise beta_start targets ~50%
/// acceptance of the largest possible uphill move and beta_end <1%
/// acceptance of the smallest one.
std::pair<double, double> resolve_beta_range(const Qubo& q, const SaParams& params);

/// Single-spin-flip Metropolis annealing over a geometric beta ladder;
/// variable update order is a fresh seeded permutation each sweep. Returns
/// the best assignment encountered. Deterministic for a fixed seed.
Sample simulated_anneal(const Qubo& q, const SaParams& params);

/// n_runs independent anneals with per-run seeds params.seed + run index.
SampleSet sample_many(const Qubo& q, std::size_t n_runs, const SaParams& params);

/// Uniform random assignments of n_bits bits. The baseline depends only on
/// the bit width, never on any QUBO. Sample energies are left at 0; score
/// the assignments against whatever objective is under study.
SampleSet random_baseline(std::size_t n_bits, std::size_t n_runs, std::uint64_t seed);

/// Exact minimum over all 2^n assignments via Gray-code enumeration,
/// returning the lexicographically smallest argmin. Refuses n above cap.
Sample brute_force(const Qubo& q, std::size_t cap = 24);

}  // namespace quboprune
