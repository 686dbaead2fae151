#include "quboprune/chimera.hpp"

#include <stdexcept>

namespace quboprune {

ChimeraGraph chimera(std::size_t rows, std::size_t cols, std::size_t shore) {
    if (rows == 0 || cols == 0 || shore == 0) {
        throw std::invalid_argument("chimera: all dimensions must be at least 1");
    }
    ChimeraGraph c;
    c.rows = rows;
    c.cols = cols;
    c.shore = shore;
    c.graph = Graph(c.num_qubits());

    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t col = 0; col < cols; ++col) {
            // Complete bipartite cell.
            for (std::size_t a = 0; a < shore; ++a) {
                for (std::size_t b = 0; b < shore; ++b) {
                    c.graph.add_edge(c.qubit_index(r, col, 0, a),
                                     c.qubit_index(r, col, 1, b));
                }
            }
            // Vertical couplers on side 0, horizontal on side 1.
            if (r + 1 < rows) {
                for (std::size_t k = 0; k < shore; ++k) {
                    c.graph.add_edge(c.qubit_index(r, col, 0, k),
                                     c.qubit_index(r + 1, col, 0, k));
                }
            }
            if (col + 1 < cols) {
                for (std::size_t k = 0; k < shore; ++k) {
                    c.graph.add_edge(c.qubit_index(r, col, 1, k),
                                     c.qubit_index(r, col + 1, 1, k));
                }
            }
        }
    }
    return c;
}

}  // namespace quboprune
