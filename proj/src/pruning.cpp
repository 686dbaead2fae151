#include "quboprune/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quboprune/rng.hpp"

namespace quboprune {

std::string PruneStrategy::name() const {
    switch (kind) {
        case StrategyKind::Fraction: return "fraction";
        case StrategyKind::Threshold: return "threshold";
        case StrategyKind::Random: return "random";
    }
    return "unknown";
}

std::optional<PruneStrategy> PruneStrategy::from_name(const std::string& name,
                                                      std::uint64_t seed) {
    if (name == "fraction") return PruneStrategy{StrategyKind::Fraction, 0};
    if (name == "threshold") return PruneStrategy{StrategyKind::Threshold, 0};
    if (name == "random") return PruneStrategy{StrategyKind::Random, seed};
    return std::nullopt;
}

namespace {

void check_fraction(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("prune: fraction p must lie in [0, 1]");
    }
}

std::vector<Qubo::Key> soft_offdiagonal_keys(const Qubo& q) {
    std::vector<Qubo::Key> keys;
    for (const auto& [key, entry] : q.entries()) {
        if (entry.tag == Tag::Soft && key.first != key.second) keys.push_back(key);
    }
    return keys;
}

/// floor(p * m) with a guard against decimal fractions like 0.15 sitting
/// just below the exact product in binary.
std::size_t prune_count(double p, std::size_t m) {
    return static_cast<std::size_t>(std::floor(p * static_cast<double>(m) + 1e-9));
}

}  // namespace

Qubo prune_fraction(const Qubo& q, double p) {
    check_fraction(p);
    auto keys = soft_offdiagonal_keys(q);
    std::stable_sort(keys.begin(), keys.end(), [&q](const auto& a, const auto& b) {
        const double va = std::fabs(q.find(a.first, a.second)->value);
        const double vb = std::fabs(q.find(b.first, b.second)->value);
        if (va != vb) return va < vb;
        return a < b;
    });
    const std::size_t to_delete = prune_count(p, keys.size());
    Qubo out = q;
    for (std::size_t i = 0; i < to_delete; ++i) {
        out.erase(keys[i].first, keys[i].second);
    }
    return out;
}

Qubo prune_threshold(const Qubo& q, double p) {
    check_fraction(p);
    auto keys = soft_offdiagonal_keys(q);
    if (keys.empty()) return q;
    double max_abs = 0.0;
    for (const auto& key : keys) {
        max_abs = std::max(max_abs, std::fabs(q.find(key.first, key.second)->value));
    }
    const double threshold = p * max_abs;
    Qubo out = q;
    for (const auto& key : keys) {
        if (std::fabs(q.find(key.first, key.second)->value) <= threshold) {
            out.erase(key.first, key.second);
        }
    }
    return out;
}

Qubo prune_random(const Qubo& q, double p, std::uint64_t seed) {
    check_fraction(p);
    auto keys = soft_offdiagonal_keys(q);
    Rng rng(seed);
    rng.shuffle(keys);
    const std::size_t to_delete = prune_count(p, keys.size());
    Qubo out = q;
    for (std::size_t i = 0; i < to_delete; ++i) {
        out.erase(keys[i].first, keys[i].second);
    }
    return out;
}

Qubo prune(const Qubo& q, const PruneStrategy& s, double p) {
    switch (s.kind) {
        case StrategyKind::Fraction: return prune_fraction(q, p);
        case StrategyKind::Threshold: return prune_threshold(q, p);
        case StrategyKind::Random: return prune_random(q, p, s.seed);
    }
    throw std::logic_error("prune: unreachable");
}

PruneSchedule make_schedule(const Qubo& q, const PruneStrategy& s, double granularity) {
    if (!(granularity > 0.0 && granularity <= 1.0)) {
        throw std::invalid_argument("make_schedule: granularity must lie in (0, 1]");
    }
    const std::size_t k_steps =
        static_cast<std::size_t>(std::llround(1.0 / granularity));
    const std::size_t soft_before = q.stats().soft_offdiagonal;

    PruneSchedule schedule;
    schedule.steps.reserve(k_steps + 1);
    for (std::size_t k = 0; k <= k_steps; ++k) {
        const double p = static_cast<double>(k) / static_cast<double>(k_steps);
        Qubo pruned = prune(q, s, p);
        const std::size_t deleted = soft_before - pruned.stats().soft_offdiagonal;
        schedule.steps.push_back(PruneStep{p, std::move(pruned), deleted});
    }
    return schedule;
}

}  // namespace quboprune
