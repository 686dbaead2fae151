#include "quboprune/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "quboprune/rng.hpp"

namespace quboprune {

double SampleSet::mean_energy() const {
    if (samples.empty()) throw std::logic_error("SampleSet: empty");
    double sum = 0.0;
    for (const Sample& s : samples) sum += s.energy;
    return sum / static_cast<double>(samples.size());
}

double SampleSet::best_energy() const { return best().energy; }

const Sample& SampleSet::best() const {
    if (samples.empty()) throw std::logic_error("SampleSet: empty");
    const Sample* b = &samples.front();
    for (const Sample& s : samples) {
        if (s.energy < b->energy) b = &s;
    }
    return *b;
}

namespace {

/// Per-variable view of the QUBO: diagonal coefficient plus an adjacency
/// list of (neighbor, coupling) pairs.
struct Couplings {
    std::vector<double> diagonal;
    std::vector<std::vector<std::pair<std::size_t, double>>> neighbors;

    explicit Couplings(const Qubo& q)
        : diagonal(q.num_vars(), 0.0), neighbors(q.num_vars()) {
        for (const auto& [key, entry] : q.entries()) {
            if (key.first == key.second) {
                diagonal[key.first] = entry.value;
            } else {
                neighbors[key.first].emplace_back(key.second, entry.value);
                neighbors[key.second].emplace_back(key.first, entry.value);
            }
        }
    }
};

}  // namespace

std::pair<double, double> resolve_beta_range(const Qubo& q, const SaParams& params) {
    if (params.beta_start > 0.0 && params.beta_end > 0.0) {
        if (!(params.beta_start < params.beta_end)) {
            throw std::invalid_argument("SaParams: beta_start must be below beta_end");
        }
        return {params.beta_start, params.beta_end};
    }
    // Largest possible |dE| of a single flip, and the smallest coefficient
    // magnitude as a proxy for the smallest uphill move.
    std::vector<double> row_abs(q.num_vars(), 0.0);
    double min_abs = std::numeric_limits<double>::infinity();
    for (const auto& [key, entry] : q.entries()) {
        const double v = std::fabs(entry.value);
        row_abs[key.first] += v;
        if (key.first != key.second) row_abs[key.second] += v;
        min_abs = std::min(min_abs, v);
    }
    const double max_de = row_abs.empty()
                              ? 0.0
                              : *std::max_element(row_abs.begin(), row_abs.end());
    if (max_de == 0.0) {
        return {0.1, 1.0};  // empty QUBO; any schedule samples uniformly
    }
    double beta_start = params.beta_start > 0.0 ? params.beta_start
                                                : std::log(2.0) / max_de;
    double beta_end = params.beta_end > 0.0 ? params.beta_end
                                            : std::log(100.0) / min_abs;
    if (!(beta_start < beta_end)) beta_end = beta_start * 10.0;
    return {beta_start, beta_end};
}

namespace {

Sample anneal_once(const Qubo& q, const Couplings& c, double beta_start,
                   double beta_end, std::size_t sweeps, std::uint64_t seed) {
    const std::size_t n = q.num_vars();
    Rng rng(seed);

    Assignment state(n);
    for (std::size_t i = 0; i < n; ++i) state[i] = rng.bit() ? 1 : 0;

    // Local field: field[i] = sum_j c_ij x_j over off-diagonal couplings.
    std::vector<double> field(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!state[i]) continue;
        for (auto [j, w] : c.neighbors[i]) field[j] += w;
    }
    double energy = q.energy(state);

    Assignment best_state = state;
    double best_energy = energy;

    const double ratio = beta_end / beta_start;
    const double denom = sweeps > 1 ? static_cast<double>(sweeps - 1) : 1.0;
    std::vector<std::size_t> order(n);
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
        const double beta =
            beta_start * std::pow(ratio, static_cast<double>(sweep) / denom);
        order = rng.permutation(n);
        for (std::size_t i : order) {
            const double delta =
                (state[i] ? -1.0 : 1.0) * (c.diagonal[i] + field[i]);
            if (delta <= 0.0 || rng.uniform() < std::exp(-beta * delta)) {
                const double sign = state[i] ? -1.0 : 1.0;
                state[i] ^= 1;
                for (auto [j, w] : c.neighbors[i]) field[j] += sign * w;
                energy += delta;
                if (energy < best_energy) {
                    best_energy = energy;
                    best_state = state;
                }
            }
        }
    }
    return Sample{std::move(best_state), best_energy, SampleSource::SimAnneal};
}

}  // namespace

Sample simulated_anneal(const Qubo& q, const SaParams& params) {
    if (params.sweeps < 1) {
        throw std::invalid_argument("SaParams: sweeps must be at least 1");
    }
    if (params.restarts < 1) {
        throw std::invalid_argument("SaParams: restarts must be at least 1");
    }
    const auto [beta_start, beta_end] = resolve_beta_range(q, params);
    const Couplings c(q);

    Sample best;
    bool have = false;
    for (std::size_t r = 0; r < params.restarts; ++r) {
        Sample s = anneal_once(q, c, beta_start, beta_end, params.sweeps,
                               Rng::derive(params.seed, r));
        if (!have || s.energy < best.energy) {
            best = std::move(s);
            have = true;
        }
    }
    // Guard against any drift in the incrementally tracked energy.
    best.energy = q.energy(best.assignment);
    return best;
}

SampleSet sample_many(const Qubo& q, std::size_t n_runs, const SaParams& params) {
    if (n_runs < 1) throw std::invalid_argument("sample_many: n_runs must be >= 1");
    SampleSet set;
    set.n_runs = n_runs;
    set.params = params;
    set.samples.reserve(n_runs);
    for (std::size_t run = 0; run < n_runs; ++run) {
        SaParams run_params = params;
        run_params.seed = params.seed + run;
        set.samples.push_back(simulated_anneal(q, run_params));
    }
    return set;
}

SampleSet random_baseline(std::size_t n_bits, std::size_t n_runs, std::uint64_t seed) {
    if (n_bits < 1) throw std::invalid_argument("random_baseline: n_bits must be >= 1");
    if (n_runs < 1) throw std::invalid_argument("random_baseline: n_runs must be >= 1");
    SampleSet set;
    set.n_runs = n_runs;
    set.samples.reserve(n_runs);
    Rng rng(seed);
    for (std::size_t run = 0; run < n_runs; ++run) {
        Assignment a(n_bits);
        for (std::size_t i = 0; i < n_bits; ++i) a[i] = rng.bit() ? 1 : 0;
        set.samples.push_back(Sample{std::move(a), 0.0, SampleSource::RandomBaseline});
    }
    return set;
}

Sample brute_force(const Qubo& q, std::size_t cap) {
    const std::size_t n = q.num_vars();
    if (n > cap) {
        throw std::invalid_argument(
            "brute_force: variable count exceeds the enumeration cap");
    }
    const Couplings c(q);

    Assignment state(n, 0);
    double energy = q.offset();
    Assignment best_state = state;
    double best_energy = energy;

    std::vector<double> field(n, 0.0);
    const std::uint64_t total = 1ULL << n;
    for (std::uint64_t g = 1; g < total; ++g) {
        const std::size_t i = static_cast<std::size_t>(std::countr_zero(g));
        const double delta = (state[i] ? -1.0 : 1.0) * (c.diagonal[i] + field[i]);
        const double sign = state[i] ? -1.0 : 1.0;
        state[i] ^= 1;
        for (auto [j, w] : c.neighbors[i]) field[j] += sign * w;
        energy += delta;
        if (energy < best_energy ||
            (energy == best_energy &&
             std::lexicographical_compare(state.begin(), state.end(),
                                          best_state.begin(), best_state.end()))) {
            best_energy = energy;
            best_state = state;
        }
    }
    // Re-evaluate exactly; Gray-code accumulation is only used for search.
    best_energy = q.energy(best_state);
    return Sample{std::move(best_state), best_energy, SampleSource::BruteForce};
}

}  // namespace quboprune
