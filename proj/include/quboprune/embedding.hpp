#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quboprune/chimera.hpp"
#include "quboprune/graph.hpp"
#include "quboprune/problems.hpp"
#include "quboprune/pruning.hpp"
#include "quboprune/qubo.hpp"

namespace quboprune {

/// Minor embedding: one chain of physical qubits per logical variable.
struct Embedding {
    std::vector<std::vector<std::size_t>> chains;  // sorted qubit ids
};

struct EmbeddingMetrics {
    std::size_t physical_qubits = 0;
    std::size_t max_chain = 0;
    double mean_chain = 0.0;
};

EmbeddingMetrics embedding_metrics(const Embedding& e);

/// Logical connectivity of a QUBO: one node per variable, one edge per
/// off-diagonal entry regardless of tag.
Graph connectivity_graph(const Qubo& q);

struct VerifyResult {
    bool ok = false;
    std::string violation;  // empty when ok
};

/// Checks chain disjointness, chain connectivity inside the hardware
/// graph, and coverage of every logical edge by some physical coupler.
VerifyResult verify_embedding(const Embedding& e, const Graph& logical,
                              const ChimeraGraph& hw);

/// Randomized chain-growth heuristic in the style of Cai, Macready and Roy:
/// nodes are routed one by one as shortest-path trees toward the chains of
/// already-placed neighbors, temporarily allowing qubit sharing under a
/// growing penalty, then re-routed until chains are disjoint. Returns an
/// embedding that passed verify_embedding, or nullopt after `attempts`
/// randomized tries. Failure is a normal, reportable outcome.
std::optional<Embedding> find_embedding(const Graph& logical, const ChimeraGraph& hw,
                                        std::uint64_t seed, std::size_t attempts = 10);

/// Size-parametric instance generator used for embeddable-size curves.
struct InstanceFamily {
    Kind kind;
    std::string size_notion;
    std::size_t max_size = 0;
    std::function<Qubo(std::size_t size, std::uint64_t seed)> make;
};

struct EmbedSizeResult {
    std::size_t size = 0;   // largest embeddable instance size at this p
    double ratio = 0.0;     // relative to the p = 0 embeddable size
};

/// Largest family size whose p-pruned QUBO still embeds into the hardware
/// graph, found by binary search with `attempts` embedding tries per probe.
EmbedSizeResult max_embeddable_size(const InstanceFamily& family,
                                    const PruneStrategy& strategy, double p,
                                    const ChimeraGraph& hw, std::uint64_t seed,
                                    std::size_t attempts = 10);

struct EmbedCurvePoint {
    double p = 0.0;
    std::size_t size = 0;
    double ratio = 0.0;
};

/// max_embeddable_size across a full pruning schedule, sharing the p = 0
/// baseline probe.
std::vector<EmbedCurvePoint> embed_curve(const InstanceFamily& family,
                                         const PruneStrategy& strategy,
                                         const ChimeraGraph& hw, std::uint64_t seed,
                                         double granularity = 0.05,
                                         std::size_t attempts = 10);

/// One "logical_id: q1,q2,..." line per chain.
void save_embedding(std::ostream& out, const Embedding& e);

}  // namespace quboprune
