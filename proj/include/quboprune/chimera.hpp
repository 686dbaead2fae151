#pragma once

#include <cstddef>

#include "quboprune/graph.hpp"

namespace quboprune {

/// Chimera hardware topology: a rows x cols grid of K_{shore,shore} cells.
/// Inside a cell, every side-0 qubit couples to every side-1 qubit. Side-0
/// qubits couple to the same-index side-0 qubit of the vertically adjacent
/// cell; side-1 qubits couple horizontally.
struct ChimeraGraph {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t shore = 0;
    Graph graph;

    std::size_t num_qubits() const { return rows * cols * 2 * shore; }

    std::size_t qubit_index(std::size_t row, std::size_t col, std::size_t side,
                            std::size_t k) const {
        return ((row * cols + col) * 2 + side) * shore + k;
    }
};

ChimeraGraph chimera(std::size_t rows, std::size_t cols, std::size_t shore = 4);

}  // namespace quboprune
