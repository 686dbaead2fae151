#include "quboprune/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "quboprune/rng.hpp"

namespace quboprune {

EmbeddingMetrics embedding_metrics(const Embedding& e) {
    EmbeddingMetrics m;
    for (const auto& chain : e.chains) {
        m.physical_qubits += chain.size();
        m.max_chain = std::max(m.max_chain, chain.size());
    }
    m.mean_chain = e.chains.empty()
                       ? 0.0
                       : static_cast<double>(m.physical_qubits) /
                             static_cast<double>(e.chains.size());
    return m;
}

Graph connectivity_graph(const Qubo& q) {
    Graph g(q.num_vars());
    for (const auto& [key, entry] : q.entries()) {
        if (key.first != key.second) g.add_edge(key.first, key.second);
    }
    return g;
}

VerifyResult verify_embedding(const Embedding& e, const Graph& logical,
                              const ChimeraGraph& hw) {
    const std::size_t n_phys = hw.graph.num_nodes();
    if (e.chains.size() != logical.num_nodes()) {
        return {false, "chain count does not match logical node count"};
    }
    std::vector<std::size_t> owner(n_phys, std::numeric_limits<std::size_t>::max());
    for (std::size_t u = 0; u < e.chains.size(); ++u) {
        if (e.chains[u].empty()) {
            return {false, "empty chain for logical node " + std::to_string(u)};
        }
        for (std::size_t q : e.chains[u]) {
            if (q >= n_phys) {
                return {false, "chain qubit out of range"};
            }
            if (owner[q] != std::numeric_limits<std::size_t>::max()) {
                return {false, "overlap: qubit " + std::to_string(q) +
                                   " is shared by chains " + std::to_string(owner[q]) +
                                   " and " + std::to_string(u)};
            }
            owner[q] = u;
        }
    }
    // Chain connectivity via BFS restricted to the chain.
    for (std::size_t u = 0; u < e.chains.size(); ++u) {
        const auto& chain = e.chains[u];
        std::set<std::size_t> members(chain.begin(), chain.end());
        std::set<std::size_t> seen{chain.front()};
        std::vector<std::size_t> stack{chain.front()};
        while (!stack.empty()) {
            const std::size_t q = stack.back();
            stack.pop_back();
            for (std::size_t nb : hw.graph.neighbors(q)) {
                if (members.count(nb) && !seen.count(nb)) {
                    seen.insert(nb);
                    stack.push_back(nb);
                }
            }
        }
        if (seen.size() != members.size()) {
            return {false, "disconnected chain for logical node " + std::to_string(u)};
        }
    }
    // Every logical edge needs a physical coupler between the two chains.
    for (auto [u, v] : logical.edges()) {
        bool covered = false;
        for (std::size_t q : e.chains[u]) {
            for (std::size_t nb : hw.graph.neighbors(q)) {
                if (nb < n_phys && owner[nb] == v) {
                    covered = true;
                    break;
                }
            }
            if (covered) break;
        }
        if (!covered) {
            return {false, "uncovered edge (" + std::to_string(u) + ", " +
                               std::to_string(v) + ")"};
        }
    }
    return {true, ""};
}

namespace {

/// Mutable embedding state while chains may still overlap.
struct EmbedState {
    const Graph& logical;
    const Graph& hw;
    std::vector<std::vector<std::size_t>> chains;
    std::vector<int> usage;
    std::vector<bool> placed;
    double penalty_base = 8.0;

    EmbedState(const Graph& logical_graph, const Graph& hw_graph)
        : logical(logical_graph),
          hw(hw_graph),
          chains(logical_graph.num_nodes()),
          usage(hw_graph.num_nodes(), 0),
          placed(logical_graph.num_nodes(), false) {}

    double vertex_cost(std::size_t q) const {
        return std::pow(penalty_base, static_cast<double>(usage[q]));
    }

    void remove_chain(std::size_t u) {
        for (std::size_t q : chains[u]) --usage[q];
        chains[u].clear();
        placed[u] = false;
    }

    void commit_chain(std::size_t u, std::vector<std::size_t> chain) {
        for (std::size_t q : chain) ++usage[q];
        chains[u] = std::move(chain);
        placed[u] = true;
    }

    std::size_t overlap() const {
        std::size_t o = 0;
        for (int c : usage) {
            if (c > 1) o += static_cast<std::size_t>(c - 1);
        }
        return o;
    }

    /// Weighted shortest-path distances from a chain to every qubit; the
    /// chain's own qubits are free sources. Fills parent pointers.
    void dijkstra_from_chain(const std::vector<std::size_t>& sources,
                             std::vector<double>& dist,
                             std::vector<std::size_t>& parent) const {
        const std::size_t n = hw.num_nodes();
        dist.assign(n, std::numeric_limits<double>::infinity());
        parent.assign(n, std::numeric_limits<std::size_t>::max());
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        for (std::size_t s : sources) {
            dist[s] = 0.0;
            pq.push({0.0, s});
        }
        while (!pq.empty()) {
            auto [d, q] = pq.top();
            pq.pop();
            if (d > dist[q]) continue;
            for (std::size_t nb : hw.neighbors(q)) {
                const double nd = d + vertex_cost(nb);
                if (nd < dist[nb]) {
                    dist[nb] = nd;
                    parent[nb] = q;
                    pq.push({nd, nb});
                }
            }
        }
    }

    /// Routes logical node u toward the chains of its placed neighbors,
    /// temporarily tolerating overlaps (penalized by vertex_cost).
    bool route(std::size_t u, Rng& rng) {
        std::vector<std::size_t> nbrs;
        for (std::size_t v : logical.neighbors(u)) {
            if (placed[v]) nbrs.push_back(v);
        }
        const std::size_t n = hw.num_nodes();

        if (nbrs.empty()) {
            // Pick a random least-used qubit.
            int best_usage = std::numeric_limits<int>::max();
            for (std::size_t q = 0; q < n; ++q) best_usage = std::min(best_usage, usage[q]);
            std::vector<std::size_t> candidates;
            for (std::size_t q = 0; q < n; ++q) {
                if (usage[q] == best_usage) candidates.push_back(q);
            }
            commit_chain(u, {candidates[rng.below(candidates.size())]});
            return true;
        }

        std::vector<std::vector<double>> dist(nbrs.size());
        std::vector<std::vector<std::size_t>> parent(nbrs.size());
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
            dijkstra_from_chain(chains[nbrs[a]], dist[a], parent[a]);
        }

        // Root minimizing the summed distances; random tie-break.
        double best_total = std::numeric_limits<double>::infinity();
        std::vector<std::size_t> best_roots;
        for (std::size_t q = 0; q < n; ++q) {
            double total = vertex_cost(q);
            for (std::size_t a = 0; a < nbrs.size(); ++a) {
                if (dist[a][q] == std::numeric_limits<double>::infinity()) {
                    total = std::numeric_limits<double>::infinity();
                    break;
                }
                total += dist[a][q];
            }
            if (total < best_total) {
                best_total = total;
                best_roots.assign(1, q);
            } else if (total == best_total &&
                       total != std::numeric_limits<double>::infinity()) {
                best_roots.push_back(q);
            }
        }
        if (best_roots.empty()) return false;
        const std::size_t root = best_roots[rng.below(best_roots.size())];

        // Walk the Dijkstra trees from the root back into each neighbor
        // chain; everything strictly before the chain joins u. Sources sit
        // inside the neighbor chains and have no parent, so the walks stop
        // on them without inserting.
        std::set<std::size_t> chain{root};
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
            std::size_t q = root;
            while (parent[a][q] != std::numeric_limits<std::size_t>::max()) {
                chain.insert(q);
                q = parent[a][q];
            }
        }
        std::vector<std::size_t> chain_vec(chain.begin(), chain.end());
        commit_chain(u, std::move(chain_vec));
        return true;
    }
};

std::optional<Embedding> try_embed(const Graph& logical, const ChimeraGraph& hw,
                                   std::uint64_t seed) {
    const std::size_t n_log = logical.num_nodes();
    if (n_log > hw.graph.num_nodes()) return std::nullopt;

    Rng rng(seed);
    EmbedState state(logical, hw.graph);

    for (std::size_t u : rng.permutation(n_log)) {
        if (!state.route(u, rng)) return std::nullopt;
    }

    const std::size_t max_rounds = 16;
    for (std::size_t round = 0; round < max_rounds && state.overlap() > 0; ++round) {
        state.penalty_base = 8.0 * static_cast<double>(round + 1);
        for (std::size_t u : rng.permutation(n_log)) {
            state.remove_chain(u);
            if (!state.route(u, rng)) return std::nullopt;
        }
    }
    if (state.overlap() > 0) return std::nullopt;

    Embedding e;
    e.chains = std::move(state.chains);
    for (auto& chain : e.chains) std::sort(chain.begin(), chain.end());
    if (!verify_embedding(e, logical, hw).ok) return std::nullopt;
    return e;
}

}  // namespace

std::optional<Embedding> find_embedding(const Graph& logical, const ChimeraGraph& hw,
                                        std::uint64_t seed, std::size_t attempts) {
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        if (auto e = try_embed(logical, hw, Rng::derive(seed, attempt))) {
            return e;
        }
    }
    return std::nullopt;
}

namespace {

std::size_t largest_embeddable(const InstanceFamily& family,
                               const PruneStrategy& strategy, double p,
                               const ChimeraGraph& hw, std::uint64_t seed,
                               std::size_t attempts) {
    auto embeds = [&](std::size_t size) {
        const Qubo q = family.make(size, Rng::derive(seed, size));
        const Qubo pruned = prune(q, strategy, p);
        const Graph g = connectivity_graph(pruned);
        return find_embedding(g, hw, Rng::derive(seed, 0x10000 + size), attempts)
            .has_value();
    };

    std::size_t hi = std::min(family.max_size, hw.graph.num_nodes());
    if (hi == 0 || !embeds(1)) return 0;
    if (embeds(hi)) return hi;
    std::size_t lo = 1;  // embeddable
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (embeds(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

}  // namespace

EmbedSizeResult max_embeddable_size(const InstanceFamily& family,
                                    const PruneStrategy& strategy, double p,
                                    const ChimeraGraph& hw, std::uint64_t seed,
                                    std::size_t attempts) {
    const std::size_t base =
        largest_embeddable(family, strategy, 0.0, hw, seed, attempts);
    const std::size_t size =
        p == 0.0 ? base : largest_embeddable(family, strategy, p, hw, seed, attempts);
    EmbedSizeResult r;
    r.size = size;
    r.ratio = base == 0 ? 0.0
                        : static_cast<double>(size) / static_cast<double>(base);
    return r;
}

std::vector<EmbedCurvePoint> embed_curve(const InstanceFamily& family,
                                         const PruneStrategy& strategy,
                                         const ChimeraGraph& hw, std::uint64_t seed,
                                         double granularity, std::size_t attempts) {
    if (!(granularity > 0.0 && granularity <= 1.0)) {
        throw std::invalid_argument("embed_curve: granularity must lie in (0, 1]");
    }
    const std::size_t k_steps =
        static_cast<std::size_t>(std::llround(1.0 / granularity));
    const std::size_t base =
        largest_embeddable(family, strategy, 0.0, hw, seed, attempts);

    std::vector<EmbedCurvePoint> curve;
    curve.reserve(k_steps + 1);
    for (std::size_t k = 0; k <= k_steps; ++k) {
        const double p = static_cast<double>(k) / static_cast<double>(k_steps);
        const std::size_t size =
            k == 0 ? base : largest_embeddable(family, strategy, p, hw, seed, attempts);
        EmbedCurvePoint point;
        point.p = p;
        point.size = size;
        point.ratio =
            base == 0 ? 0.0 : static_cast<double>(size) / static_cast<double>(base);
        curve.push_back(point);
    }
    return curve;
}

void save_embedding(std::ostream& out, const Embedding& e) {
    for (std::size_t u = 0; u < e.chains.size(); ++u) {
        out << u << ':';
        for (std::size_t i = 0; i < e.chains[u].size(); ++i) {
            out << (i == 0 ? " " : ",") << e.chains[u][i];
        }
        out << '\n';
    }
}

}  // namespace quboprune
