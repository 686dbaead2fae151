#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace quboprune {

/// Simple undirected graph over contiguous 0-based node ids. Adjacency
/// lists are kept sorted, so edge iteration order is deterministic.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n) {}

    std::size_t num_nodes() const { return adj_.size(); }
    std::size_t num_edges() const;

    /// Self-loops are rejected; duplicate edges are ignored.
    void add_edge(std::size_t u, std::size_t v);

    bool has_edge(std::size_t u, std::size_t v) const;
    const std::vector<std::size_t>& neighbors(std::size_t v) const;
    std::size_t degree(std::size_t v) const;
    std::size_t max_degree() const;

    /// All edges as (u, v) with u < v, sorted lexicographically.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    bool operator==(const Graph&) const = default;

private:
    std::vector<std::vector<std::size_t>> adj_;
};

}  // namespace quboprune
