#pragma once

#include <cstdint>
#include <utility>

#include "quboprune/embedding.hpp"
#include "quboprune/graph.hpp"
#include "quboprune/problems.hpp"

namespace quboprune {

/// Seeded desk-scale instance generators. All emit integer coefficients.

ExactCoverInstance gen_exact_cover(std::size_t universe_size, std::size_t n_subsets,
                                   std::uint64_t seed);

/// G(n, density) with a spanning cycle so the graph is connected.
Graph gen_graph(std::size_t n, double density, std::uint64_t seed);

MaxCutInstance gen_max_cut(std::size_t n, double density, std::uint64_t seed);

NumberPartitioningInstance gen_number_partitioning(std::size_t n, long long max_value,
                                                   std::uint64_t seed);

GateAssignmentInstance gen_gate_assignment(std::size_t planes, std::size_t gates,
                                           std::uint64_t seed);

MaxThreeSatInstance gen_max3sat(std::size_t n_vars, std::size_t n_clauses,
                                std::uint64_t seed);

TspInstance gen_tsp(std::size_t n, std::uint64_t seed);

GraphColoringInstance gen_graph_coloring(std::size_t n, std::size_t colors,
                                         double density, std::uint64_t seed);

GraphIsomorphismInstance gen_graph_isomorphism(std::size_t n, double density,
                                               bool isomorphic, std::uint64_t seed);

/// A random instance of the given kind sized to at most max_vars logical
/// variables, with its QUBO.
std::pair<ProblemInstance, Qubo> gen_instance(Kind kind, std::size_t max_vars,
                                              std::uint64_t seed);

/// Size-parametric family for embeddable-size curves. The size notion
/// follows the problem: subsets for exact cover, nodes for the graph
/// problems, numbers for partitioning, clauses for max3sat, planes for
/// gate assignment.
InstanceFamily instance_family(Kind kind);

}  // namespace quboprune
