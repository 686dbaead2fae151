#pragma once

#include <iosfwd>
#include <string>

#include "quboprune/graph.hpp"
#include "quboprune/problems.hpp"

namespace quboprune {

/// Plain-text instance files, one schema per problem kind. Lines starting
/// with '#' are comments. Schemas:
///
///   exact-cover:          universe e1 e2 ...   /  subset e1 e2 ...
///   max-cut:              nodes N              /  edge u v
///   number-partitioning:  numbers n1 n2 ...    /  weight A        (optional)
///   gate-assignment:      planes N / gates M / p <row> x (N+2)
///                         / d <row> x (M+2) / a <row> x N / weights A B (optional)
///   max3sat:              DIMACS CNF: "p cnf N M" then "l1 l2 l3 0" lines
///   tsp:                  nodes N / w <row> x N / start S (optional)
///                         / weights A B (optional)
///   graph-coloring:       colors K / nodes N / edge u v / weights A B (optional)
///   graph-isomorphism:    nodes N / g1 u v / g2 u v / weights A B (optional)
ProblemInstance load_instance(Kind kind, std::istream& in);
ProblemInstance load_instance_file(Kind kind, const std::string& path);

void save_instance(const ProblemInstance& inst, std::ostream& out);
void save_instance_file(const ProblemInstance& inst, const std::string& path);

/// Edge-list graph files using the max-cut schema (nodes / edge lines).
Graph load_graph(std::istream& in);
Graph load_graph_file(const std::string& path);

}  // namespace quboprune
