#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "quboprune/graph.hpp"
#include "quboprune/qubo.hpp"

namespace quboprune {

enum class Kind {
    ExactCover,
    MaxCut,
    NumberPartitioning,
    GateAssignment,
    MaxThreeSat,
    Tsp,
    GraphColoring,
    GraphIsomorphism,
};

inline constexpr std::array<Kind, 8> kAllKinds = {
    Kind::ExactCover,     Kind::MaxCut, Kind::NumberPartitioning,
    Kind::GateAssignment, Kind::MaxThreeSat, Kind::Tsp,
    Kind::GraphColoring,  Kind::GraphIsomorphism,
};

std::string kind_name(Kind k);
std::optional<Kind> kind_from_name(const std::string& name);

// ---------------------------------------------------------------------------
// Instance payloads
// ---------------------------------------------------------------------------

struct ExactCoverInstance {
    std::vector<int> universe;              // distinct elements
    std::vector<std::vector<int>> subsets;  // each a subset of the universe
};

struct MaxCutInstance {
    Graph graph;
};

struct NumberPartitioningInstance {
    std::vector<long long> numbers;  // all positive
    double weight_a = 1.0;
};

/// Gate assignment uses 1-based plane ids 1..n and gate ids 1..m, with
/// dummy plane rows 0 and n+1 (initial boarding / final exit) and dummy
/// gate rows 0 and m+1 (airport entry / exit), matching the index space of
/// the passenger and distance matrices.
struct GateAssignmentInstance {
    std::size_t n_planes = 0;
    std::size_t m_gates = 0;
    std::vector<std::vector<double>> passengers;  // (n+2) x (n+2)
    std::vector<std::vector<double>> distances;   // (m+2) x (m+2)
    std::vector<std::vector<double>> assign_cost; // n x m, [i-1][k-1]
    double weight_a = 0.0;  // <= 0: derived so one violation beats any objective
    double weight_b = 0.0;
};

/// DIMACS-style literal: +v or -v with 1-based variable id v.
using Clause = std::array<int, 3>;

struct MaxThreeSatInstance {
    std::size_t n_vars = 0;
    std::vector<Clause> clauses;
    double conflict_weight = 2.0;  // edge penalty J of the WMIS graph
};

struct TspInstance {
    std::vector<std::vector<double>> weights;  // N x N symmetric, positive off-diagonal
    std::size_t start = 0;
    double weight_a = 0.0;  // <= 0: derived as 1 + ceil(B * max weight)
    double weight_b = 1.0;
};

struct GraphColoringInstance {
    Graph graph;
    std::size_t n_colors = 0;
    double weight_a = 0.0;  // <= 0: derived as 1 + ceil(B * |E|)
    double weight_b = 1.0;
};

struct GraphIsomorphismInstance {
    Graph g1;
    Graph g2;
    double weight_a = 0.0;  // <= 0: derived as 1 + ceil(B * (|E1| + |E2|))
    double weight_b = 1.0;
};

class ProblemInstance {
public:
    using Payload =
        std::variant<ExactCoverInstance, MaxCutInstance, NumberPartitioningInstance,
                     GateAssignmentInstance, MaxThreeSatInstance, TspInstance,
                     GraphColoringInstance, GraphIsomorphismInstance>;

    explicit ProblemInstance(Payload payload) : payload_(std::move(payload)) {}

    Kind kind() const;
    std::size_t num_variables() const;

    template <typename T>
    const T& as() const {
        return std::get<T>(payload_);
    }

    const Payload& payload() const { return payload_; }

private:
    Payload payload_;
};

// ---------------------------------------------------------------------------
// Builders. Each validates its inputs, fills derived penalty weights into
// the returned instance, and emits a fully tagged QUBO whose energy equals
// the problem objective (plus a documented constant).
// ---------------------------------------------------------------------------

std::pair<ProblemInstance, Qubo> build_exact_cover(const std::vector<int>& universe,
                                                   const std::vector<std::vector<int>>& subsets);
std::pair<ProblemInstance, Qubo> build_max_cut(const Graph& g);
std::pair<ProblemInstance, Qubo> build_number_partitioning(const std::vector<long long>& numbers,
                                                           double weight_a = 1.0);
std::pair<ProblemInstance, Qubo> build_gate_assignment(GateAssignmentInstance inst);
std::pair<ProblemInstance, Qubo> build_max3sat(std::size_t n_vars,
                                               const std::vector<Clause>& clauses,
                                               double conflict_weight = 2.0);
std::pair<ProblemInstance, Qubo> build_tsp(TspInstance inst);
std::pair<ProblemInstance, Qubo> build_graph_coloring(GraphColoringInstance inst);
std::pair<ProblemInstance, Qubo> build_graph_isomorphism(GraphIsomorphismInstance inst);

/// Builds the QUBO for an already-validated instance (dispatch on kind).
std::pair<ProblemInstance, Qubo> build(const ProblemInstance& inst);

// ---------------------------------------------------------------------------
// Decoded solutions
// ---------------------------------------------------------------------------

struct ExactCoverSolution {
    std::vector<std::size_t> selected;  // indices of chosen subsets
};

struct MaxCutSolution {
    std::vector<std::uint8_t> side;  // 1 => node in V1
};

struct NumberPartitioningSolution {
    std::vector<std::uint8_t> side;  // 1 => number in S1
};

struct GateAssignmentSolution {
    std::vector<std::vector<std::size_t>> gates_of_plane;  // 1-based gate ids
};

struct MaxThreeSatSolution {
    std::vector<std::uint8_t> truth;  // per variable, index 0 = variable 1
};

struct TspSolution {
    std::vector<std::vector<std::size_t>> nodes_at_position;

    /// Tour in visit order rotated to the start node; only meaningful when
    /// the solution is valid.
    std::vector<std::size_t> tour(std::size_t start) const;
};

struct GraphColoringSolution {
    std::vector<std::vector<std::size_t>> colors_of_node;
};

struct GraphIsomorphismSolution {
    std::vector<std::vector<std::size_t>> images_of_node;  // nodes of g2
};

struct DecodedSolution {
    using Detail =
        std::variant<ExactCoverSolution, MaxCutSolution, NumberPartitioningSolution,
                     GateAssignmentSolution, MaxThreeSatSolution, TspSolution,
                     GraphColoringSolution, GraphIsomorphismSolution>;

    Kind kind;
    bool valid = false;
    Assignment raw;  // kept so objectives of invalid solutions stay computable
    Detail detail;

    template <typename T>
    const T& as() const {
        return std::get<T>(detail);
    }
};

/// Pure decoding; valid is false iff a hard constraint (one-hot or
/// bijection structure) is violated. Problems without hard constraints
/// always decode to valid = true.
DecodedSolution decode(const ProblemInstance& inst, const Assignment& a);

std::string solution_to_string(const DecodedSolution& sol);

// ---------------------------------------------------------------------------
// Quality
// ---------------------------------------------------------------------------

enum class VRefMode {
    FigureDefault,  // per-kind reference from the paper's figure captions
    Optimum,        // always measure against a supplied optimum
};

struct QualityRatio {
    double v = 0.0;
    double v_ref = 0.0;
    double ratio = 0.0;
    bool valid = false;
};

/// The observed per-kind metric, computed combinatorially from the decoded
/// solution (well-defined for invalid solutions too): cover errors, cut
/// size, |sum difference|, walking-distance objective, satisfied clauses,
/// tour weight, monochromatic edges, mismatched edges.
double objective_value(const ProblemInstance& inst, const DecodedSolution& sol);

/// True when larger metric values are better (MaxCut, Max3Sat).
bool higher_is_better(Kind k);

/// True when the kind's figure reference is the instance optimum and
/// quality() therefore needs the `reference` argument (MaxCut, gate
/// assignment, TSP).
bool reference_is_optimum(Kind k);

QualityRatio quality(const ProblemInstance& inst, const DecodedSolution& sol,
                     VRefMode mode = VRefMode::FigureDefault,
                     std::optional<double> reference = std::nullopt);

}  // namespace quboprune
