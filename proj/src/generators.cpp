#include "quboprune/generators.hpp"

#include <algorithm>
#include <stdexcept>

#include "quboprune/rng.hpp"

namespace quboprune {

ExactCoverInstance gen_exact_cover(std::size_t universe_size, std::size_t n_subsets,
                                   std::uint64_t seed) {
    if (universe_size == 0 || n_subsets == 0) {
        throw std::invalid_argument("gen_exact_cover: sizes must be positive");
    }
    Rng rng(seed);
    ExactCoverInstance inst;
    inst.universe.resize(universe_size);
    for (std::size_t i = 0; i < universe_size; ++i) inst.universe[i] = static_cast<int>(i);

    inst.subsets.resize(n_subsets);
    for (std::size_t s = 0; s < n_subsets; ++s) {
        // Subset sizes between 2 and ~1/3 of the universe.
        const std::size_t max_len = std::max<std::size_t>(2, universe_size / 3);
        const std::size_t len = 2 + rng.below(max_len - 1);
        auto perm = rng.permutation(universe_size);
        for (std::size_t t = 0; t < len; ++t) {
            inst.subsets[s].push_back(static_cast<int>(perm[t]));
        }
        std::sort(inst.subsets[s].begin(), inst.subsets[s].end());
    }
    // Keep every element coverable so uncovered-element errors come from
    // selection, not from the instance itself.
    for (std::size_t u = 0; u < universe_size; ++u) {
        bool covered = false;
        for (const auto& sub : inst.subsets) {
            if (std::find(sub.begin(), sub.end(), static_cast<int>(u)) != sub.end()) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            auto& target = inst.subsets[rng.below(n_subsets)];
            target.push_back(static_cast<int>(u));
            std::sort(target.begin(), target.end());
        }
    }
    return inst;
}

Graph gen_graph(std::size_t n, double density, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("gen_graph: need at least one node");
    Rng rng(seed);
    Graph g(n);
    if (n == 1) return g;
    auto cycle = rng.permutation(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (n > 2 || i == 0) g.add_edge(cycle[i], cycle[(i + 1) % n]);
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (rng.uniform() < density) g.add_edge(u, v);
        }
    }
    return g;
}

MaxCutInstance gen_max_cut(std::size_t n, double density, std::uint64_t seed) {
    return MaxCutInstance{gen_graph(n, density, seed)};
}

NumberPartitioningInstance gen_number_partitioning(std::size_t n, long long max_value,
                                                   std::uint64_t seed) {
    if (n == 0 || max_value < 1) {
        throw std::invalid_argument("gen_number_partitioning: bad parameters");
    }
    Rng rng(seed);
    NumberPartitioningInstance inst;
    inst.numbers.resize(n);
    for (auto& v : inst.numbers) {
        v = 1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(max_value)));
    }
    return inst;
}

GateAssignmentInstance gen_gate_assignment(std::size_t planes, std::size_t gates,
                                           std::uint64_t seed) {
    if (planes == 0 || gates == 0) {
        throw std::invalid_argument("gen_gate_assignment: sizes must be positive");
    }
    Rng rng(seed);
    GateAssignmentInstance inst;
    inst.n_planes = planes;
    inst.m_gates = gates;
    inst.passengers.assign(planes + 2, std::vector<double>(planes + 2, 0.0));
    inst.distances.assign(gates + 2, std::vector<double>(gates + 2, 0.0));
    inst.assign_cost.assign(planes, std::vector<double>(gates, 0.0));

    // Transfers between distinct real planes, plus entry/exit flows.
    for (std::size_t i = 1; i <= planes; ++i) {
        for (std::size_t j = 1; j <= planes; ++j) {
            if (i != j) {
                inst.passengers[i][j] = static_cast<double>(rng.below(5));
            }
        }
        inst.passengers[0][i] = static_cast<double>(rng.below(4));
        inst.passengers[i][planes + 1] = static_cast<double>(rng.below(4));
    }
    // Symmetric gate distances with zero self-distance; entry/exit rows.
    for (std::size_t k = 1; k <= gates; ++k) {
        for (std::size_t l = k + 1; l <= gates; ++l) {
            const double d = static_cast<double>(1 + rng.below(4));
            inst.distances[k][l] = d;
            inst.distances[l][k] = d;
        }
        inst.distances[0][k] = static_cast<double>(1 + rng.below(3));
        inst.distances[k][gates + 1] = static_cast<double>(1 + rng.below(3));
    }
    for (auto& row : inst.assign_cost) {
        for (auto& v : row) v = static_cast<double>(1 + rng.below(3));
    }
    return inst;
}

MaxThreeSatInstance gen_max3sat(std::size_t n_vars, std::size_t n_clauses,
                                std::uint64_t seed) {
    if (n_vars == 0 || n_clauses == 0) {
        throw std::invalid_argument("gen_max3sat: sizes must be positive");
    }
    Rng rng(seed);
    MaxThreeSatInstance inst;
    inst.n_vars = n_vars;
    inst.clauses.resize(n_clauses);
    for (auto& clause : inst.clauses) {
        for (int t = 0; t < 3; ++t) {
            const int var = 1 + static_cast<int>(rng.below(n_vars));
            clause[t] = rng.bit() ? var : -var;
        }
    }
    return inst;
}

TspInstance gen_tsp(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_tsp: need at least two nodes");
    Rng rng(seed);
    TspInstance inst;
    inst.weights.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            const double w = static_cast<double>(1 + rng.below(20));
            inst.weights[u][v] = w;
            inst.weights[v][u] = w;
        }
    }
    return inst;
}

GraphColoringInstance gen_graph_coloring(std::size_t n, std::size_t colors,
                                         double density, std::uint64_t seed) {
    GraphColoringInstance inst;
    inst.graph = gen_graph(n, density, seed);
    inst.n_colors = colors;
    return inst;
}

GraphIsomorphismInstance gen_graph_isomorphism(std::size_t n, double density,
                                               bool isomorphic, std::uint64_t seed) {
    Rng rng(seed);
    GraphIsomorphismInstance inst;
    inst.g1 = gen_graph(n, density, rng.next());
    if (isomorphic) {
        auto relabel = rng.permutation(n);
        inst.g2 = Graph(n);
        for (auto [u, v] : inst.g1.edges()) {
            inst.g2.add_edge(relabel[u], relabel[v]);
        }
    } else {
        inst.g2 = gen_graph(n, density, rng.next());
    }
    return inst;
}

namespace {

/// Largest s with s * s <= max_vars.
std::size_t isqrt_floor(std::size_t max_vars) {
    std::size_t s = 1;
    while ((s + 1) * (s + 1) <= max_vars) ++s;
    return s;
}

}  // namespace

std::pair<ProblemInstance, Qubo> gen_instance(Kind kind, std::size_t max_vars,
                                              std::uint64_t seed) {
    if (max_vars < 9) throw std::invalid_argument("gen_instance: max_vars too small");
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(kind)));
    switch (kind) {
        case Kind::ExactCover: {
            const std::size_t subsets = 3 + rng.below(max_vars - 2);
            const std::size_t universe = 3 + rng.below(6);
            auto inst = gen_exact_cover(universe, subsets, rng.next());
            return build_exact_cover(inst.universe, inst.subsets);
        }
        case Kind::MaxCut: {
            const std::size_t n = 3 + rng.below(max_vars - 2);
            return build_max_cut(gen_graph(n, 0.5, rng.next()));
        }
        case Kind::NumberPartitioning: {
            const std::size_t n = 3 + rng.below(max_vars - 2);
            return build_number_partitioning(
                gen_number_partitioning(n, 15, rng.next()).numbers);
        }
        case Kind::GateAssignment: {
            const std::size_t planes = 2 + rng.below(isqrt_floor(max_vars) - 1);
            const std::size_t max_gates = std::max(planes, max_vars / planes);
            const std::size_t gates = planes + rng.below(max_gates - planes + 1);
            return build_gate_assignment(gen_gate_assignment(planes, gates, rng.next()));
        }
        case Kind::MaxThreeSat: {
            const std::size_t clauses = 1 + rng.below(max_vars / 3);
            const std::size_t vars = 2 + rng.below(4);
            auto inst = gen_max3sat(vars, clauses, rng.next());
            return build_max3sat(inst.n_vars, inst.clauses);
        }
        case Kind::Tsp: {
            const std::size_t n = 2 + rng.below(isqrt_floor(max_vars) - 1);
            return build_tsp(gen_tsp(n, rng.next()));
        }
        case Kind::GraphColoring: {
            const std::size_t colors = 2 + rng.below(2);
            const std::size_t max_nodes = std::max<std::size_t>(2, max_vars / colors);
            const std::size_t n = 2 + rng.below(max_nodes - 1);
            return build_graph_coloring(gen_graph_coloring(n, colors, 0.5, rng.next()));
        }
        case Kind::GraphIsomorphism: {
            const std::size_t n = 2 + rng.below(isqrt_floor(max_vars) - 1);
            return build_graph_isomorphism(
                gen_graph_isomorphism(n, 0.5, rng.bit(), rng.next()));
        }
    }
    throw std::logic_error("gen_instance: unreachable");
}

InstanceFamily instance_family(Kind kind) {
    InstanceFamily family;
    family.kind = kind;
    switch (kind) {
        case Kind::ExactCover:
            family.size_notion = "subsets";
            family.max_size = 256;
            family.make = [](std::size_t size, std::uint64_t seed) {
                const std::size_t universe = std::max<std::size_t>(3, (size * 3) / 5);
                auto inst = gen_exact_cover(universe, size, seed);
                return build_exact_cover(inst.universe, inst.subsets).second;
            };
            break;
        case Kind::MaxCut:
            family.size_notion = "nodes";
            family.max_size = 256;
            family.make = [](std::size_t size, std::uint64_t seed) {
                return build_max_cut(gen_graph(size, 0.5, seed)).second;
            };
            break;
        case Kind::NumberPartitioning:
            family.size_notion = "numbers";
            family.max_size = 128;
            family.make = [](std::size_t size, std::uint64_t seed) {
                return build_number_partitioning(
                           gen_number_partitioning(size, 50, seed).numbers)
                    .second;
            };
            break;
        case Kind::GateAssignment:
            family.size_notion = "planes";
            family.max_size = 24;
            family.make = [](std::size_t size, std::uint64_t seed) {
                return build_gate_assignment(gen_gate_assignment(size, size, seed))
                    .second;
            };
            break;
        case Kind::MaxThreeSat:
            family.size_notion = "clauses";
            family.max_size = 128;
            family.make = [](std::size_t size, std::uint64_t seed) {
                const std::size_t vars = std::max<std::size_t>(3, (size * 2) / 3);
                auto inst = gen_max3sat(vars, size, seed);
                return build_max3sat(inst.n_vars, inst.clauses).second;
            };
            break;
        case Kind::Tsp:
            family.size_notion = "nodes";
            family.max_size = 24;
            family.make = [](std::size_t size, std::uint64_t seed) {
                return build_tsp(gen_tsp(std::max<std::size_t>(2, size), seed)).second;
            };
            break;
        case Kind::GraphColoring:
            family.size_notion = "nodes";
            family.max_size = 64;
            family.make = [](std::size_t size, std::uint64_t seed) {
                return build_graph_coloring(gen_graph_coloring(size, 3, 0.5, seed))
                    .second;
            };
            break;
        case Kind::GraphIsomorphism:
            family.size_notion = "nodes";
            family.max_size = 24;
            family.make = [](std::size_t size, std::uint64_t seed) {
                return build_graph_isomorphism(
                           gen_graph_isomorphism(std::max<std::size_t>(2, size), 0.5,
                                                 true, seed))
                    .second;
            };
            break;
    }
    return family;
}

}  // namespace quboprune
