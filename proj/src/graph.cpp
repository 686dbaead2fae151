#include "quboprune/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace quboprune {

std::size_t Graph::num_edges() const {
    std::size_t deg_sum = 0;
    for (const auto& nb : adj_) deg_sum += nb.size();
    return deg_sum / 2;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
    if (u == v) {
        throw std::invalid_argument("Graph: self-loops are not allowed");
    }
    if (u >= adj_.size() || v >= adj_.size()) {
        throw std::out_of_range("Graph: node index out of range");
    }
    auto insert_sorted = [](std::vector<std::size_t>& nb, std::size_t x) {
        auto it = std::lower_bound(nb.begin(), nb.end(), x);
        if (it == nb.end() || *it != x) nb.insert(it, x);
    };
    insert_sorted(adj_[u], v);
    insert_sorted(adj_[v], u);
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
    if (u >= adj_.size() || v >= adj_.size()) return false;
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

const std::vector<std::size_t>& Graph::neighbors(std::size_t v) const {
    if (v >= adj_.size()) {
        throw std::out_of_range("Graph: node index out of range");
    }
    return adj_[v];
}

std::size_t Graph::degree(std::size_t v) const { return neighbors(v).size(); }

std::size_t Graph::max_degree() const {
    std::size_t d = 0;
    for (const auto& nb : adj_) d = std::max(d, nb.size());
    return d;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(num_edges());
    for (std::size_t u = 0; u < adj_.size(); ++u) {
        for (std::size_t v : adj_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

}  // namespace quboprune
