#include "quboprune/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

namespace quboprune {

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::ExactCover: return "exact-cover";
        case Kind::MaxCut: return "max-cut";
        case Kind::NumberPartitioning: return "number-partitioning";
        case Kind::GateAssignment: return "gate-assignment";
        case Kind::MaxThreeSat: return "max3sat";
        case Kind::Tsp: return "tsp";
        case Kind::GraphColoring: return "graph-coloring";
        case Kind::GraphIsomorphism: return "graph-isomorphism";
    }
    return "unknown";
}

std::optional<Kind> kind_from_name(const std::string& name) {
    for (Kind k : kAllKinds) {
        if (kind_name(k) == name) return k;
    }
    return std::nullopt;
}

Kind ProblemInstance::kind() const {
    struct Visitor {
        Kind operator()(const ExactCoverInstance&) const { return Kind::ExactCover; }
        Kind operator()(const MaxCutInstance&) const { return Kind::MaxCut; }
        Kind operator()(const NumberPartitioningInstance&) const {
            return Kind::NumberPartitioning;
        }
        Kind operator()(const GateAssignmentInstance&) const { return Kind::GateAssignment; }
        Kind operator()(const MaxThreeSatInstance&) const { return Kind::MaxThreeSat; }
        Kind operator()(const TspInstance&) const { return Kind::Tsp; }
        Kind operator()(const GraphColoringInstance&) const { return Kind::GraphColoring; }
        Kind operator()(const GraphIsomorphismInstance&) const {
            return Kind::GraphIsomorphism;
        }
    };
    return std::visit(Visitor{}, payload_);
}

std::size_t ProblemInstance::num_variables() const {
    struct Visitor {
        std::size_t operator()(const ExactCoverInstance& p) const { return p.subsets.size(); }
        std::size_t operator()(const MaxCutInstance& p) const { return p.graph.num_nodes(); }
        std::size_t operator()(const NumberPartitioningInstance& p) const {
            return p.numbers.size();
        }
        std::size_t operator()(const GateAssignmentInstance& p) const {
            return p.n_planes * p.m_gates;
        }
        std::size_t operator()(const MaxThreeSatInstance& p) const {
            return 3 * p.clauses.size();
        }
        std::size_t operator()(const TspInstance& p) const {
            return p.weights.size() * p.weights.size();
        }
        std::size_t operator()(const GraphColoringInstance& p) const {
            return p.graph.num_nodes() * p.n_colors;
        }
        std::size_t operator()(const GraphIsomorphismInstance& p) const {
            return p.g1.num_nodes() * p.g1.num_nodes();
        }
    };
    return std::visit(Visitor{}, payload_);
}

namespace {

/// Adds an expanded one-hot penalty w * (1 - sum_{v in vars} x_v)^2:
/// -w on each diagonal, +2w on each pair, +w on the offset.
void add_one_hot(Qubo& q, const std::vector<std::size_t>& vars, double w, Tag tag) {
    for (std::size_t a = 0; a < vars.size(); ++a) {
        q.add(vars[a], vars[a], -w, tag);
        for (std::size_t b = a + 1; b < vars.size(); ++b) {
            q.add(std::min(vars[a], vars[b]), std::max(vars[a], vars[b]), 2.0 * w, tag);
        }
    }
    q.add_offset(w);
}

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// Exact Cover: min sum_u (1 - sum_{i : u in V_i} x_i)^2
// ---------------------------------------------------------------------------

std::pair<ProblemInstance, Qubo> build_exact_cover(
    const std::vector<int>& universe, const std::vector<std::vector<int>>& subsets) {
    require(!universe.empty(), "exact cover: universe must be non-empty");
    require(!subsets.empty(), "exact cover: need at least one subset");
    std::set<int> uset(universe.begin(), universe.end());
    require(uset.size() == universe.size(), "exact cover: universe elements must be distinct");
    for (const auto& sub : subsets) {
        std::set<int> s(sub.begin(), sub.end());
        require(s.size() == sub.size(), "exact cover: subset elements must be distinct");
        for (int e : sub) {
            require(uset.count(e) != 0, "exact cover: subset not contained in universe");
        }
    }

    Qubo q(subsets.size());
    for (int u : universe) {
        std::vector<std::size_t> covering;
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            if (std::find(subsets[i].begin(), subsets[i].end(), u) != subsets[i].end()) {
                covering.push_back(i);
            }
        }
        // (1 - sum x)^2 = 1 - sum x + 2 * sum_{i<j} x_i x_j
        q.add_offset(1.0);
        for (std::size_t a = 0; a < covering.size(); ++a) {
            q.add(covering[a], covering[a], -1.0, Tag::Hard);
            for (std::size_t b = a + 1; b < covering.size(); ++b) {
                q.add(covering[a], covering[b], 2.0, Tag::Soft);
            }
        }
    }
    return {ProblemInstance(ExactCoverInstance{universe, subsets}), std::move(q)};
}

// ---------------------------------------------------------------------------
// Max Cut: min sum_{uv in E} 2 x_u x_v - x_u - x_v
// ---------------------------------------------------------------------------

std::pair<ProblemInstance, Qubo> build_max_cut(const Graph& g) {
    require(g.num_nodes() >= 1, "max cut: graph must have at least one node");
    Qubo q(g.num_nodes());
    for (auto [u, v] : g.edges()) {
        q.add(u, v, 2.0, Tag::Soft);
        q.add(u, u, -1.0, Tag::Soft);
        q.add(v, v, -1.0, Tag::Soft);
    }
    return {ProblemInstance(MaxCutInstance{g}), std::move(q)};
}

// ---------------------------------------------------------------------------
// Number Partitioning:
//   min A (2 sum_i sum_{j>i} 4 x_i n_i x_j n_j + sum_i 4 x_i n_i^2
//          - 4 k sum_i x_i n_i + k^2),  k = sum_i n_i
// which equals A * (sum_{S1} - sum_{S2})^2.
// ---------------------------------------------------------------------------

std::pair<ProblemInstance, Qubo> build_number_partitioning(
    const std::vector<long long>& numbers, double weight_a) {
    require(!numbers.empty(), "number partitioning: set must be non-empty");
    require(weight_a > 0.0, "number partitioning: weight A must be positive");
    for (long long n : numbers) {
        require(n > 0, "number partitioning: all numbers must be positive");
    }
    double k = 0.0;
    for (long long n : numbers) k += static_cast<double>(n);

    Qubo q(numbers.size());
    const double a = weight_a;
    for (std::size_t i = 0; i < numbers.size(); ++i) {
        const double ni = static_cast<double>(numbers[i]);
        q.add(i, i, a * (4.0 * ni * ni - 4.0 * k * ni), Tag::Soft);
        for (std::size_t j = i + 1; j < numbers.size(); ++j) {
            const double nj = static_cast<double>(numbers[j]);
            q.add(i, j, a * 8.0 * ni * nj, Tag::Soft);
        }
    }
    q.add_offset(a * k * k);
    return {ProblemInstance(NumberPartitioningInstance{numbers, weight_a}), std::move(q)};
}

// ---------------------------------------------------------------------------
// Airport Gate Assignment:
//   min sum_{i,j,k,l} (p_ij d_kl + a_ik) x_ik x_jl
//     + sum_{i,k} p_{0,i} d_{0,k} x_ik + sum_{i,k} p_{i,n+1} d_{k,m+1} x_ik
//     + A sum_i (sum_k x_ik - 1)^2 + B sum_k (sum_i x_ik - 1)^2
// ---------------------------------------------------------------------------

namespace {

std::size_t agap_var(const GateAssignmentInstance& p, std::size_t plane, std::size_t gate) {
    // plane in 1..n, gate in 1..m
    return (plane - 1) * p.m_gates + (gate - 1);
}

void check_matrix(const std::vector<std::vector<double>>& m, std::size_t rows,
                  std::size_t cols, const char* what) {
    require(m.size() == rows, what);
    for (const auto& row : m) {
        require(row.size() == cols, what);
        for (double v : row) {
            require(std::isfinite(v) && v >= 0.0, what);
        }
    }
}

}  // namespace

std::pair<ProblemInstance, Qubo> build_gate_assignment(GateAssignmentInstance inst) {
    const std::size_t n = inst.n_planes;
    const std::size_t m = inst.m_gates;
    require(n >= 1 && m >= 1, "gate assignment: need at least one plane and one gate");
    check_matrix(inst.passengers, n + 2, n + 2,
                 "gate assignment: passenger matrix must be (n+2) x (n+2), non-negative");
    check_matrix(inst.distances, m + 2, m + 2,
                 "gate assignment: distance matrix must be (m+2) x (m+2), non-negative");
    check_matrix(inst.assign_cost, n, m,
                 "gate assignment: cost matrix must be n x m, non-negative");

    if (inst.weight_a <= 0.0 || inst.weight_b <= 0.0) {
        double max_d = 0.0;
        for (const auto& row : inst.distances) {
            for (double v : row) max_d = std::max(max_d, v);
        }
        double sum_p = 0.0;
        for (const auto& row : inst.passengers) {
            for (double v : row) sum_p += v;
        }
        double sum_a = 0.0;
        for (const auto& row : inst.assign_cost) {
            for (double v : row) sum_a += v;
        }
        const double w = 1.0 + std::ceil(sum_p * max_d + sum_a);
        inst.weight_a = w;
        inst.weight_b = w;
    }

    Qubo q(n * m);
    const auto& p = inst.passengers;
    const auto& d = inst.distances;
    const auto& ac = inst.assign_cost;

    // Transfer and assignment-cost term over all ordered pairs (i,k), (j,l).
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t k = 1; k <= m; ++k) {
                for (std::size_t l = 1; l <= m; ++l) {
                    const double c = p[i][j] * d[k][l] + ac[i - 1][k - 1];
                    if (c == 0.0) continue;
                    const std::size_t v1 = agap_var(inst, i, k);
                    const std::size_t v2 = agap_var(inst, j, l);
                    q.add(std::min(v1, v2), std::max(v1, v2), c, Tag::Soft);
                }
            }
        }
    }
    // Entry and exit walking terms (linear).
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t k = 1; k <= m; ++k) {
            const double c = p[0][i] * d[0][k] + p[i][n + 1] * d[k][m + 1];
            if (c != 0.0) {
                const std::size_t v = agap_var(inst, i, k);
                q.add(v, v, c, Tag::Soft);
            }
        }
    }
    // Every plane gets exactly one gate.
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<std::size_t> row;
        for (std::size_t k = 1; k <= m; ++k) row.push_back(agap_var(inst, i, k));
        add_one_hot(q, row, inst.weight_a, Tag::Hard);
    }
    // Every gate serves exactly one plane.
    for (std::size_t k = 1; k <= m; ++k) {
        std::vector<std::size_t> col;
        for (std::size_t i = 1; i <= n; ++i) col.push_back(agap_var(inst, i, k));
        add_one_hot(q, col, inst.weight_b, Tag::Hard);
    }
    return {ProblemInstance(std::move(inst)), std::move(q)};
}

// ---------------------------------------------------------------------------
// Max 3SAT via the weighted maximum independent set reduction: one node per
// clause-literal occurrence (weight 1), a triangle inside each clause, and
// conflict edges between complementary literal occurrences.
// ---------------------------------------------------------------------------

std::pair<ProblemInstance, Qubo> build_max3sat(std::size_t n_vars,
                                               const std::vector<Clause>& clauses,
                                               double conflict_weight) {
    require(n_vars >= 1, "max3sat: need at least one variable");
    require(!clauses.empty(), "max3sat: need at least one clause");
    require(conflict_weight > 1.0, "max3sat: edge weight J must exceed the node weight 1");
    for (const Clause& cl : clauses) {
        for (int lit : cl) {
            require(lit != 0, "max3sat: literal 0 is not allowed");
            require(static_cast<std::size_t>(std::abs(lit)) <= n_vars,
                    "max3sat: literal references an unknown variable");
        }
    }

    const std::size_t m = clauses.size();
    const double j_w = conflict_weight;
    Qubo q(3 * m);
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t t = 0; t < 3; ++t) {
            q.add(3 * c + t, 3 * c + t, -1.0, Tag::Soft);
            for (std::size_t t2 = t + 1; t2 < 3; ++t2) {
                q.add(3 * c + t, 3 * c + t2, j_w, Tag::Hard);
            }
        }
    }
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t c2 = c + 1; c2 < m; ++c2) {
            for (std::size_t t = 0; t < 3; ++t) {
                for (std::size_t t2 = 0; t2 < 3; ++t2) {
                    if (clauses[c][t] == -clauses[c2][t2]) {
                        q.add(3 * c + t, 3 * c2 + t2, j_w, Tag::Hard);
                    }
                }
            }
        }
    }
    return {ProblemInstance(MaxThreeSatInstance{n_vars, clauses, conflict_weight}),
            std::move(q)};
}

// ---------------------------------------------------------------------------
// TSP: variables x_{v,j} (node v at tour position j), two one-hot families,
// and the cyclic weight term B W_uv x_{u,j} x_{v,j+1}.
// ---------------------------------------------------------------------------

namespace {

std::size_t tsp_var(std::size_t n, std::size_t v, std::size_t j) { return v * n + j; }

}  // namespace

std::pair<ProblemInstance, Qubo> build_tsp(TspInstance inst) {
    const std::size_t n = inst.weights.size();
    require(n >= 2, "tsp: need at least two nodes");
    double max_w = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        require(inst.weights[u].size() == n, "tsp: weight matrix must be square");
        for (std::size_t v = 0; v < n; ++v) {
            const double w = inst.weights[u][v];
            require(std::isfinite(w), "tsp: weights must be finite");
            require(w == inst.weights[v][u], "tsp: weight matrix must be symmetric");
            if (u == v) {
                require(w == 0.0, "tsp: diagonal weights must be zero");
            } else {
                require(w > 0.0, "tsp: edge weights must be positive");
                max_w = std::max(max_w, w);
            }
        }
    }
    require(inst.start < n, "tsp: start node out of range");
    require(inst.weight_b > 0.0, "tsp: weight B must be positive");
    if (inst.weight_a <= 0.0) {
        inst.weight_a = 1.0 + std::ceil(inst.weight_b * max_w);
    }
    require(inst.weight_b * max_w < inst.weight_a,
            "tsp: weights must satisfy 0 < B max(W) < A");

    Qubo q(n * n);
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::size_t> row;
        for (std::size_t j = 0; j < n; ++j) row.push_back(tsp_var(n, v, j));
        add_one_hot(q, row, inst.weight_a, Tag::Hard);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> col;
        for (std::size_t v = 0; v < n; ++v) col.push_back(tsp_var(n, v, j));
        add_one_hot(q, col, inst.weight_a, Tag::Hard);
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            const double w = inst.weight_b * inst.weights[u][v];
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t j2 = (j + 1) % n;
                const std::size_t a1 = tsp_var(n, u, j), a2 = tsp_var(n, v, j2);
                q.add(std::min(a1, a2), std::max(a1, a2), w, Tag::Soft);
                const std::size_t b1 = tsp_var(n, v, j), b2 = tsp_var(n, u, j2);
                q.add(std::min(b1, b2), std::max(b1, b2), w, Tag::Soft);
            }
        }
    }
    return {ProblemInstance(std::move(inst)), std::move(q)};
}

// ---------------------------------------------------------------------------
// Graph Coloring:
//   min A sum_v (1 - sum_i x_{v,i})^2 + B sum_{uv in E} sum_i x_{u,i} x_{v,i}
// ---------------------------------------------------------------------------

std::pair<ProblemInstance, Qubo> build_graph_coloring(GraphColoringInstance inst) {
    const std::size_t n = inst.graph.num_nodes();
    const std::size_t k = inst.n_colors;
    require(n >= 1, "graph coloring: graph must have at least one node");
    require(k >= 1, "graph coloring: need at least one color");
    require(inst.weight_b > 0.0, "graph coloring: weight B must be positive");
    if (inst.weight_a <= 0.0) {
        inst.weight_a =
            1.0 + std::ceil(inst.weight_b * static_cast<double>(inst.graph.num_edges()));
    }
    require(inst.weight_a > inst.weight_b * static_cast<double>(inst.graph.max_degree()),
            "graph coloring: A must exceed B times the maximum degree");

    Qubo q(n * k);
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::size_t> row;
        for (std::size_t i = 0; i < k; ++i) row.push_back(v * k + i);
        add_one_hot(q, row, inst.weight_a, Tag::Hard);
    }
    for (auto [u, v] : inst.graph.edges()) {
        for (std::size_t i = 0; i < k; ++i) {
            q.add(u * k + i, v * k + i, inst.weight_b, Tag::Soft);
        }
    }
    return {ProblemInstance(std::move(inst)), std::move(q)};
}

// ---------------------------------------------------------------------------
// Graph Isomorphism: bijection one-hots plus B per pair of mapped node
// pairs whose edge relation disagrees between the two graphs.
// ---------------------------------------------------------------------------

std::pair<ProblemInstance, Qubo> build_graph_isomorphism(GraphIsomorphismInstance inst) {
    const std::size_t n = inst.g1.num_nodes();
    require(n >= 1, "graph isomorphism: graphs must be non-empty");
    require(inst.g2.num_nodes() == n, "graph isomorphism: graphs must have equal size");
    require(inst.weight_b > 0.0, "graph isomorphism: weight B must be positive");
    if (inst.weight_a <= 0.0) {
        const double edges =
            static_cast<double>(inst.g1.num_edges() + inst.g2.num_edges());
        inst.weight_a = 1.0 + std::ceil(inst.weight_b * std::max(edges, 1.0));
    }

    Qubo q(n * n);
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::size_t> row;
        for (std::size_t i = 0; i < n; ++i) row.push_back(v * n + i);
        add_one_hot(q, row, inst.weight_a, Tag::Hard);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> col;
        for (std::size_t v = 0; v < n; ++v) col.push_back(v * n + i);
        add_one_hot(q, col, inst.weight_a, Tag::Hard);
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            const bool e1 = inst.g1.has_edge(u, v);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) continue;
                    if (e1 != inst.g2.has_edge(i, j)) {
                        q.add(u * n + i, v * n + j, inst.weight_b, Tag::Soft);
                    }
                }
            }
        }
    }
    return {ProblemInstance(std::move(inst)), std::move(q)};
}

std::pair<ProblemInstance, Qubo> build(const ProblemInstance& inst) {
    struct Visitor {
        std::pair<ProblemInstance, Qubo> operator()(const ExactCoverInstance& p) const {
            return build_exact_cover(p.universe, p.subsets);
        }
        std::pair<ProblemInstance, Qubo> operator()(const MaxCutInstance& p) const {
            return build_max_cut(p.graph);
        }
        std::pair<ProblemInstance, Qubo> operator()(
            const NumberPartitioningInstance& p) const {
            return build_number_partitioning(p.numbers, p.weight_a);
        }
        std::pair<ProblemInstance, Qubo> operator()(const GateAssignmentInstance& p) const {
            return build_gate_assignment(p);
        }
        std::pair<ProblemInstance, Qubo> operator()(const MaxThreeSatInstance& p) const {
            return build_max3sat(p.n_vars, p.clauses, p.conflict_weight);
        }
        std::pair<ProblemInstance, Qubo> operator()(const TspInstance& p) const {
            return build_tsp(p);
        }
        std::pair<ProblemInstance, Qubo> operator()(const GraphColoringInstance& p) const {
            return build_graph_coloring(p);
        }
        std::pair<ProblemInstance, Qubo> operator()(
            const GraphIsomorphismInstance& p) const {
            return build_graph_isomorphism(p);
        }
    };
    return std::visit(Visitor{}, inst.payload());
}

// ---------------------------------------------------------------------------
// Decoding
// ---------------------------------------------------------------------------

namespace {

/// Collects, per group, the selected member indices of a one-hot block.
std::vector<std::vector<std::size_t>> one_hot_groups(const Assignment& a,
                                                     std::size_t groups,
                                                     std::size_t members,
                                                     bool group_major) {
    std::vector<std::vector<std::size_t>> out(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        for (std::size_t t = 0; t < members; ++t) {
            const std::size_t var = group_major ? g * members + t : t * groups + g;
            if (a[var]) out[g].push_back(t);
        }
    }
    return out;
}

bool all_singletons(const std::vector<std::vector<std::size_t>>& groups) {
    return std::all_of(groups.begin(), groups.end(),
                       [](const auto& g) { return g.size() == 1; });
}

bool images_distinct(const std::vector<std::vector<std::size_t>>& groups) {
    std::set<std::size_t> seen;
    for (const auto& g : groups) {
        for (std::size_t t : g) {
            if (!seen.insert(t).second) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<std::size_t> TspSolution::tour(std::size_t start) const {
    std::vector<std::size_t> order;
    order.reserve(nodes_at_position.size());
    for (const auto& nodes : nodes_at_position) {
        order.push_back(nodes.at(0));
    }
    auto it = std::find(order.begin(), order.end(), start);
    if (it != order.end()) {
        std::rotate(order.begin(), it, order.end());
    }
    return order;
}

DecodedSolution decode(const ProblemInstance& inst, const Assignment& a) {
    if (a.size() != inst.num_variables()) {
        throw std::invalid_argument("decode: assignment length mismatch");
    }
    DecodedSolution sol;
    sol.kind = inst.kind();
    sol.raw = a;
    switch (inst.kind()) {
        case Kind::ExactCover: {
            ExactCoverSolution s;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i]) s.selected.push_back(i);
            }
            sol.valid = true;
            sol.detail = std::move(s);
            break;
        }
        case Kind::MaxCut: {
            sol.valid = true;
            sol.detail = MaxCutSolution{a};
            break;
        }
        case Kind::NumberPartitioning: {
            sol.valid = true;
            sol.detail = NumberPartitioningSolution{a};
            break;
        }
        case Kind::GateAssignment: {
            const auto& p = inst.as<GateAssignmentInstance>();
            auto groups = one_hot_groups(a, p.n_planes, p.m_gates, true);
            GateAssignmentSolution s;
            s.gates_of_plane.resize(p.n_planes);
            for (std::size_t i = 0; i < p.n_planes; ++i) {
                for (std::size_t t : groups[i]) s.gates_of_plane[i].push_back(t + 1);
            }
            sol.valid = all_singletons(groups) && images_distinct(groups);
            sol.detail = std::move(s);
            break;
        }
        case Kind::MaxThreeSat: {
            const auto& p = inst.as<MaxThreeSatInstance>();
            MaxThreeSatSolution s;
            s.truth.assign(p.n_vars, 0);
            std::vector<std::uint8_t> fixed(p.n_vars, 0);
            // First selected occurrence (in node-index order) wins.
            for (std::size_t node = 0; node < a.size(); ++node) {
                if (!a[node]) continue;
                const int lit = p.clauses[node / 3][node % 3];
                const std::size_t var = static_cast<std::size_t>(std::abs(lit)) - 1;
                if (!fixed[var]) {
                    fixed[var] = 1;
                    s.truth[var] = lit > 0 ? 1 : 0;
                }
            }
            sol.valid = true;
            sol.detail = std::move(s);
            break;
        }
        case Kind::Tsp: {
            const auto& p = inst.as<TspInstance>();
            const std::size_t n = p.weights.size();
            // Positions are the minor index of x_{v,j} = a[v * n + j].
            auto by_position = one_hot_groups(a, n, n, false);
            auto by_node = one_hot_groups(a, n, n, true);
            sol.valid = all_singletons(by_position) && all_singletons(by_node);
            sol.detail = TspSolution{std::move(by_position)};
            break;
        }
        case Kind::GraphColoring: {
            const auto& p = inst.as<GraphColoringInstance>();
            auto groups = one_hot_groups(a, p.graph.num_nodes(), p.n_colors, true);
            sol.valid = all_singletons(groups);
            sol.detail = GraphColoringSolution{std::move(groups)};
            break;
        }
        case Kind::GraphIsomorphism: {
            const auto& p = inst.as<GraphIsomorphismInstance>();
            const std::size_t n = p.g1.num_nodes();
            auto groups = one_hot_groups(a, n, n, true);
            sol.valid = all_singletons(groups) && images_distinct(groups);
            sol.detail = GraphIsomorphismSolution{std::move(groups)};
            break;
        }
    }
    return sol;
}

std::string solution_to_string(const DecodedSolution& sol) {
    std::ostringstream out;
    out << kind_name(sol.kind) << (sol.valid ? " valid" : " invalid");
    struct Visitor {
        std::ostringstream& out;
        void operator()(const ExactCoverSolution& s) {
            out << " selected:";
            for (std::size_t i : s.selected) out << ' ' << i;
        }
        void operator()(const MaxCutSolution& s) {
            out << " side:";
            for (auto b : s.side) out << ' ' << int(b);
        }
        void operator()(const NumberPartitioningSolution& s) {
            out << " side:";
            for (auto b : s.side) out << ' ' << int(b);
        }
        void operator()(const GateAssignmentSolution& s) {
            for (std::size_t i = 0; i < s.gates_of_plane.size(); ++i) {
                out << " plane" << (i + 1) << ":";
                if (s.gates_of_plane[i].empty()) out << " -";
                for (std::size_t g : s.gates_of_plane[i]) out << " gate" << g;
            }
        }
        void operator()(const MaxThreeSatSolution& s) {
            out << " truth:";
            for (auto b : s.truth) out << ' ' << int(b);
        }
        void operator()(const TspSolution& s) {
            out << " positions:";
            for (const auto& nodes : s.nodes_at_position) {
                out << " [";
                for (std::size_t i = 0; i < nodes.size(); ++i) {
                    out << (i ? " " : "") << nodes[i];
                }
                out << ']';
            }
        }
        void operator()(const GraphColoringSolution& s) {
            out << " colors:";
            for (const auto& colors : s.colors_of_node) {
                out << " [";
                for (std::size_t i = 0; i < colors.size(); ++i) {
                    out << (i ? " " : "") << colors[i];
                }
                out << ']';
            }
        }
        void operator()(const GraphIsomorphismSolution& s) {
            out << " maps:";
            for (const auto& images : s.images_of_node) {
                out << " [";
                for (std::size_t i = 0; i < images.size(); ++i) {
                    out << (i ? " " : "") << images[i];
                }
                out << ']';
            }
        }
    };
    DecodedSolution::Detail detail = sol.detail;
    std::visit(Visitor{out}, detail);
    return out.str();
}

// ---------------------------------------------------------------------------
// Objective metrics and quality ratios
// ---------------------------------------------------------------------------

double objective_value(const ProblemInstance& inst, const DecodedSolution& sol) {
    const Assignment& a = sol.raw;
    switch (inst.kind()) {
        case Kind::ExactCover: {
            const auto& p = inst.as<ExactCoverInstance>();
            double errors = 0.0;
            for (int u : p.universe) {
                long long cnt = 0;
                for (std::size_t i = 0; i < p.subsets.size(); ++i) {
                    if (a[i] && std::find(p.subsets[i].begin(), p.subsets[i].end(), u) !=
                                    p.subsets[i].end()) {
                        ++cnt;
                    }
                }
                errors += static_cast<double>((1 - cnt) * (1 - cnt));
            }
            return errors;
        }
        case Kind::MaxCut: {
            const auto& p = inst.as<MaxCutInstance>();
            double cut = 0.0;
            for (auto [u, v] : p.graph.edges()) {
                if (a[u] != a[v]) cut += 1.0;
            }
            return cut;
        }
        case Kind::NumberPartitioning: {
            const auto& p = inst.as<NumberPartitioningInstance>();
            long long diff = 0;
            for (std::size_t i = 0; i < p.numbers.size(); ++i) {
                diff += a[i] ? p.numbers[i] : -p.numbers[i];
            }
            return static_cast<double>(std::llabs(diff));
        }
        case Kind::GateAssignment: {
            const auto& p = inst.as<GateAssignmentInstance>();
            const std::size_t n = p.n_planes, m = p.m_gates;
            double obj = 0.0;
            for (std::size_t i = 1; i <= n; ++i) {
                for (std::size_t k = 1; k <= m; ++k) {
                    if (!a[agap_var(p, i, k)]) continue;
                    obj += p.passengers[0][i] * p.distances[0][k] +
                           p.passengers[i][n + 1] * p.distances[k][m + 1];
                    for (std::size_t j = 1; j <= n; ++j) {
                        for (std::size_t l = 1; l <= m; ++l) {
                            if (!a[agap_var(p, j, l)]) continue;
                            obj += p.passengers[i][j] * p.distances[k][l] +
                                   p.assign_cost[i - 1][k - 1];
                        }
                    }
                }
            }
            return obj;
        }
        case Kind::MaxThreeSat: {
            const auto& p = inst.as<MaxThreeSatInstance>();
            const auto& truth = sol.as<MaxThreeSatSolution>().truth;
            double satisfied = 0.0;
            for (const Clause& cl : p.clauses) {
                bool sat = false;
                for (int lit : cl) {
                    const bool value = truth[static_cast<std::size_t>(std::abs(lit)) - 1];
                    if ((lit > 0) == value) {
                        sat = true;
                        break;
                    }
                }
                if (sat) satisfied += 1.0;
            }
            return satisfied;
        }
        case Kind::Tsp: {
            const auto& p = inst.as<TspInstance>();
            const std::size_t n = p.weights.size();
            double weight = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t j2 = (j + 1) % n;
                for (std::size_t u = 0; u < n; ++u) {
                    if (!a[tsp_var(n, u, j)]) continue;
                    for (std::size_t v = 0; v < n; ++v) {
                        if (v != u && a[tsp_var(n, v, j2)]) weight += p.weights[u][v];
                    }
                }
            }
            return weight;
        }
        case Kind::GraphColoring: {
            const auto& p = inst.as<GraphColoringInstance>();
            double mono = 0.0;
            for (auto [u, v] : p.graph.edges()) {
                for (std::size_t i = 0; i < p.n_colors; ++i) {
                    if (a[u * p.n_colors + i] && a[v * p.n_colors + i]) mono += 1.0;
                }
            }
            return mono;
        }
        case Kind::GraphIsomorphism: {
            const auto& p = inst.as<GraphIsomorphismInstance>();
            const std::size_t n = p.g1.num_nodes();
            double mismatches = 0.0;
            for (std::size_t u = 0; u < n; ++u) {
                for (std::size_t v = u + 1; v < n; ++v) {
                    const bool e1 = p.g1.has_edge(u, v);
                    for (std::size_t i = 0; i < n; ++i) {
                        if (!a[u * n + i]) continue;
                        for (std::size_t j = 0; j < n; ++j) {
                            if (i == j || !a[v * n + j]) continue;
                            if (e1 != p.g2.has_edge(i, j)) mismatches += 1.0;
                        }
                    }
                }
            }
            return mismatches;
        }
    }
    throw std::logic_error("objective_value: unreachable");
}

bool higher_is_better(Kind k) {
    return k == Kind::MaxCut || k == Kind::MaxThreeSat;
}

bool reference_is_optimum(Kind k) {
    return k == Kind::MaxCut || k == Kind::GateAssignment || k == Kind::Tsp;
}

QualityRatio quality(const ProblemInstance& inst, const DecodedSolution& sol,
                     VRefMode mode, std::optional<double> reference) {
    QualityRatio out;
    out.v = objective_value(inst, sol);
    out.valid = sol.valid;

    const bool need_reference =
        mode == VRefMode::Optimum || reference_is_optimum(inst.kind());
    if (need_reference) {
        if (!reference.has_value()) {
            throw std::invalid_argument(
                "quality: this kind measures against the instance optimum; "
                "a reference value is required");
        }
        out.v_ref = *reference;
    } else {
        switch (inst.kind()) {
            case Kind::ExactCover:
                out.v_ref =
                    static_cast<double>(inst.as<ExactCoverInstance>().universe.size());
                break;
            case Kind::NumberPartitioning: {
                const auto& nums = inst.as<NumberPartitioningInstance>().numbers;
                double sum = 0.0;
                for (long long n : nums) sum += static_cast<double>(n);
                out.v_ref = sum / 2.0;
                break;
            }
            case Kind::MaxThreeSat:
                out.v_ref =
                    static_cast<double>(inst.as<MaxThreeSatInstance>().clauses.size());
                break;
            case Kind::GraphColoring:
                out.v_ref = static_cast<double>(
                    inst.as<GraphColoringInstance>().graph.num_nodes());
                break;
            case Kind::GraphIsomorphism:
                out.v_ref =
                    static_cast<double>(inst.as<GraphIsomorphismInstance>().g1.num_nodes());
                break;
            default:
                break;  // handled by need_reference above
        }
    }
    if (!(out.v_ref > 0.0)) {
        throw std::invalid_argument("quality: reference value must be positive");
    }
    out.ratio = out.v / out.v_ref;
    return out;
}

}  // namespace quboprune
