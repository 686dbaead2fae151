#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quboprune/qubo.hpp"

namespace quboprune {

enum class StrategyKind { Fraction, Threshold, Random };

struct PruneStrategy {
    StrategyKind kind = StrategyKind::Fraction;
    std::uint64_t seed = 0;  // used by Random only

    std::string name() const;
    static std::optional<PruneStrategy> from_name(const std::string& name,
                                                  std::uint64_t seed = 0);
};

/// Deletes the floor(p * m) soft off-diagonal entries that are smallest by
/// absolute value (ties broken lexicographically by (i, j)), where m is the
/// count of soft off-diagonal entries. Hard and diagonal entries survive.
Qubo prune_fraction(const Qubo& q, double p);

/// Deletes every soft off-diagonal entry whose absolute value is at most
/// p * max absolute soft off-diagonal value.
Qubo prune_threshold(const Qubo& q, double p);

/// Deletes floor(p * m) soft off-diagonal entries chosen uniformly without
/// replacement by a seeded generator. For a fixed seed, the deletion set at
/// p is a prefix of a fixed random permutation, so deletion sets are nested
/// across p.
Qubo prune_random(const Qubo& q, double p, std::uint64_t seed);

Qubo prune(const Qubo& q, const PruneStrategy& s, double p);

struct PruneStep {
    double p = 0.0;
    Qubo qubo;
    std::size_t deleted = 0;
};

struct PruneSchedule {
    std::vector<PruneStep> steps;
};

/// 1/granularity + 1 steps with p = 0, granularity, ..., 1. Each step is
/// produced independently from the original QUBO.
PruneSchedule make_schedule(const Qubo& q, const PruneStrategy& s,
                            double granularity = 0.05);

}  // namespace quboprune
