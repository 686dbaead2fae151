#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

#include "quboprune/generators.hpp"
#include "quboprune/io.hpp"
#include "quboprune/problems.hpp"
#include "quboprune/rng.hpp"
#include "quboprune/sampler.hpp"

using namespace quboprune;

namespace {

Assignment assignment_from_mask(std::size_t n, std::uint64_t mask) {
    Assignment a(n, 0);
    for (std::size_t i = 0; i < n; ++i) a[i] = (mask >> i) & 1ULL;
    return a;
}

/// energy(qubo, a) must equal the formula value for every assignment.
void check_energy_equivalence(const ProblemInstance& inst, const Qubo& q) {
    REQUIRE(q.num_vars() <= 16);
    for (std::uint64_t mask = 0; mask < (1ULL << q.num_vars()); ++mask) {
        const Assignment a = assignment_from_mask(q.num_vars(), mask);
        if (q.energy(a) != oracles::combinatorial_energy(inst, a)) {
            CAPTURE(mask);
            REQUIRE(q.energy(a) == oracles::combinatorial_energy(inst, a));
        }
    }
}

/// Hard-tag soundness: valid decodes exactly when the hard-entry sum sits
/// at the floor; and no invalid assignment beats the best valid energy.
void check_hard_floor_and_dominance(const ProblemInstance& inst, const Qubo& q,
                                    double floor) {
    REQUIRE(q.num_vars() <= 16);
    double best_valid = std::numeric_limits<double>::infinity();
    double best_invalid = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (1ULL << q.num_vars()); ++mask) {
        const Assignment a = assignment_from_mask(q.num_vars(), mask);
        const DecodedSolution sol = decode(inst, a);
        CHECK(sol.valid == (oracles::hard_entry_sum(q, a) == floor));
        (sol.valid ? best_valid : best_invalid) = std::min(
            sol.valid ? best_valid : best_invalid, q.energy(a));
    }
    if (std::isfinite(best_valid) && std::isfinite(best_invalid)) {
        CHECK(best_valid <= best_invalid);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Exact Cover
// ---------------------------------------------------------------------------

TEST_CASE("exact cover builder") {
    const std::vector<int> universe = {1, 2};
    const std::vector<std::vector<int>> subsets = {{1}, {2}, {1, 2}};
    const auto [inst, q] = build_exact_cover(universe, subsets);

    CHECK(q.num_vars() == 3);
    CHECK(q.offset() == 2.0);
    CHECK(q.energy({0, 0, 1}) == 0.0);  // perfect cover
    CHECK(q.energy({0, 0, 0}) == 2.0);  // both elements uncovered
    CHECK(q.energy({1, 0, 1}) == 1.0);  // element 1 double-covered

    // Co-occurrence entries are soft and off-diagonal; diagonals are hard.
    for (const auto& [key, entry] : q.entries()) {
        if (key.first == key.second) {
            CHECK(entry.tag == Tag::Hard);
        } else {
            CHECK(entry.tag == Tag::Soft);
        }
    }

    CHECK_THROWS_AS(build_exact_cover({1, 2}, {{3}}), std::invalid_argument);
    CHECK_THROWS_AS(build_exact_cover({}, {{}}), std::invalid_argument);
}

TEST_CASE("exact cover decodes and scores") {
    const auto [inst, q] = build_exact_cover({1, 2}, {{1}, {2}, {1, 2}});
    check_energy_equivalence(inst, q);

    const DecodedSolution sol = decode(inst, {1, 0, 1});
    CHECK(sol.valid);  // no hard constraints in this encoding
    CHECK(sol.as<ExactCoverSolution>().selected == std::vector<std::size_t>{0, 2});
    CHECK(objective_value(inst, sol) == 1.0);

    // 2 errors over a 10-element universe gives ratio 0.2.
    std::vector<int> big_universe;
    std::vector<int> big_subset;
    for (int e = 0; e < 10; ++e) big_universe.push_back(e);
    for (int e = 0; e < 8; ++e) big_subset.push_back(e);
    const auto [inst10, q10] = build_exact_cover(big_universe, {big_subset});
    const auto quality10 = quality(inst10, decode(inst10, {1}));
    CHECK(quality10.v == 2.0);
    CHECK(quality10.v_ref == 10.0);
    CHECK(quality10.ratio == 0.2);
}

TEST_CASE("exact cover brute-force optimum matches the selection oracle") {
    Rng rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        const auto ec = gen_exact_cover(4 + rng.below(4), 5 + rng.below(6), rng.next());
        const auto [inst, q] = build_exact_cover(ec.universe, ec.subsets);
        const Sample ground = brute_force(q);
        CHECK(ground.energy == static_cast<double>(oracles::ec_best(ec)));
        CHECK(objective_value(inst, decode(inst, ground.assignment)) == ground.energy);
    }
}

// ---------------------------------------------------------------------------
// Max Cut
// ---------------------------------------------------------------------------

TEST_CASE("max cut builder") {
    Graph k3(3);
    k3.add_edge(0, 1);
    k3.add_edge(1, 2);
    k3.add_edge(0, 2);
    const auto [inst, q] = build_max_cut(k3);

    CHECK(q.energy({1, 0, 0}) == -2.0);
    CHECK(q.energy({0, 0, 0}) == 0.0);
    CHECK(q.stats().soft_offdiagonal == 3);  // one off-diagonal entry per edge

    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    const auto [pinst, pq] = build_max_cut(path);
    CHECK(pq.energy({1, 0, 1}) == -2.0);

    Graph loop(2);
    CHECK_THROWS_AS(loop.add_edge(1, 1), std::invalid_argument);

    check_energy_equivalence(inst, q);
    check_energy_equivalence(pinst, pq);
}

TEST_CASE("max cut optimum and quality") {
    Graph k3(3);
    k3.add_edge(0, 1);
    k3.add_edge(1, 2);
    k3.add_edge(0, 2);
    const auto [inst, q] = build_max_cut(k3);

    const Sample ground = brute_force(q);
    CHECK(ground.energy == -2.0);
    const DecodedSolution sol = decode(inst, ground.assignment);
    CHECK(objective_value(inst, sol) == 2.0);

    const auto ratio = quality(inst, sol, VRefMode::FigureDefault, 2.0);
    CHECK(ratio.ratio == 1.0);
    CHECK_THROWS_AS(quality(inst, sol), std::invalid_argument);  // reference required

    Rng rng(22);
    for (int trial = 0; trial < 5; ++trial) {
        const Graph g = gen_graph(4 + rng.below(6), 0.5, rng.next());
        const auto [ginst, gq] = build_max_cut(g);
        CHECK(brute_force(gq).energy == -static_cast<double>(oracles::max_cut(g)));
    }
}

// ---------------------------------------------------------------------------
// Number Partitioning
// ---------------------------------------------------------------------------

TEST_CASE("number partitioning builder") {
    const auto [inst, q] = build_number_partitioning({4, 2, 2});
    CHECK(q.energy({1, 0, 0}) == 0.0);  // perfect split 4 | 2+2

    const auto [inst2, q2] = build_number_partitioning({3, 1});
    CHECK(q2.energy({1, 0}) == 4.0);  // difference 2, squared

    CHECK_THROWS_AS(build_number_partitioning({3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(build_number_partitioning({}), std::invalid_argument);

    check_energy_equivalence(inst, q);
    check_energy_equivalence(inst2, q2);

    // Off-diagonal soft entries 8 A n_i n_j.
    CHECK(q2.find(0, 1)->value == 8.0 * 3.0 * 1.0);
    CHECK(q2.find(0, 1)->tag == Tag::Soft);
}

TEST_CASE("number partitioning brute force matches split enumeration") {
    const std::vector<long long> numbers = {5, 3, 2, 7, 1};
    const auto [inst, q] = build_number_partitioning(numbers);
    const Sample ground = brute_force(q);
    const long long best = oracles::np_best(numbers);
    CHECK(ground.energy == static_cast<double>(best * best));

    const auto sol = decode(inst, ground.assignment);
    CHECK(objective_value(inst, sol) == static_cast<double>(best));
}

TEST_CASE("number partitioning quality is scale-free") {
    const auto [inst, q] = build_number_partitioning({3, 1});
    const auto sol = decode(inst, {1, 0});
    const auto ratio = quality(inst, sol);
    CHECK(ratio.v == 2.0);
    CHECK(ratio.v_ref == 2.0);
    CHECK(ratio.ratio == 1.0);

    const auto [inst2x, q2x] = build_number_partitioning({6, 2});
    const auto ratio2x = quality(inst2x, decode(inst2x, {1, 0}));
    CHECK(ratio2x.ratio == ratio.ratio);
}

// ---------------------------------------------------------------------------
// Gate assignment
// ---------------------------------------------------------------------------

namespace {

GateAssignmentInstance tiny_agap(std::size_t planes, std::size_t gates) {
    GateAssignmentInstance inst;
    inst.n_planes = planes;
    inst.m_gates = gates;
    inst.passengers.assign(planes + 2, std::vector<double>(planes + 2, 0.0));
    inst.distances.assign(gates + 2, std::vector<double>(gates + 2, 0.0));
    inst.assign_cost.assign(planes, std::vector<double>(gates, 0.0));
    return inst;
}

}  // namespace

TEST_CASE("gate assignment forced and infeasible cases") {
    {
        const auto [inst, q] = build_gate_assignment(tiny_agap(1, 1));
        const Sample ground = brute_force(q);
        CHECK(ground.assignment == Assignment{1});
        CHECK(ground.energy == 0.0);  // both expanded squares vanish at x = 1
        CHECK(decode(inst, ground.assignment).valid);
    }
    {
        const auto [inst, q] = build_gate_assignment(tiny_agap(2, 1));
        const Sample ground = brute_force(q);
        CHECK(ground.energy > 0.0);  // pigeonhole: both hard constraints cannot hold
        CHECK(!decode(inst, ground.assignment).valid);
    }
    {
        auto bad = tiny_agap(2, 2);
        bad.passengers.pop_back();
        CHECK_THROWS_AS(build_gate_assignment(bad), std::invalid_argument);
    }
}

TEST_CASE("gate assignment transfer tie") {
    auto spec = tiny_agap(2, 2);
    spec.passengers[1][2] = 10.0;
    spec.distances[1][2] = 1.0;
    spec.distances[2][1] = 1.0;
    const auto [inst, q] = build_gate_assignment(spec);

    // Brute force over all 16 assignments: both one-to-one assignments tie.
    const Sample ground = brute_force(q);
    CHECK(ground.energy == 10.0);
    const auto sol = decode(inst, ground.assignment);
    CHECK(sol.valid);
    CHECK(objective_value(inst, sol) == 10.0);

    const auto best = oracles::agap_best(spec);
    REQUIRE(best.has_value());
    CHECK(*best == 10.0);
}

TEST_CASE("gate assignment energies, floors and dominance") {
    Rng rng(23);
    for (int trial = 0; trial < 4; ++trial) {
        const std::size_t planes = 2, gates = 2 + rng.below(2);
        const auto spec = gen_gate_assignment(planes, gates, rng.next());
        const auto [inst, q] = build_gate_assignment(spec);
        const auto& built = inst.as<GateAssignmentInstance>();
        check_energy_equivalence(inst, q);
        const double floor =
            -built.weight_a * static_cast<double>(planes) -
            built.weight_b * static_cast<double>(planes);
        check_hard_floor_and_dominance(inst, q, floor);

        const Sample ground = brute_force(q);
        const auto sol = decode(inst, ground.assignment);
        REQUIRE(sol.valid);
        const auto best = oracles::agap_best(spec);
        REQUIRE(best.has_value());
        CHECK(objective_value(inst, sol) == *best);
    }
}

// ---------------------------------------------------------------------------
// Max 3SAT
// ---------------------------------------------------------------------------

TEST_CASE("max3sat single clause and contradiction") {
    {
        const auto [inst, q] = build_max3sat(3, {{1, 2, 3}});
        const Sample ground = brute_force(q);
        std::size_t selected = 0;
        for (auto b : ground.assignment) selected += b;
        CHECK(selected == 1);  // exactly one literal node of the clause
        const auto sol = decode(inst, ground.assignment);
        CHECK(objective_value(inst, sol) == 1.0);
        CHECK(quality(inst, sol).ratio == 1.0);
    }
    {
        const auto [inst, q] = build_max3sat(1, {{1, 1, 1}, {-1, -1, -1}});
        const Sample ground = brute_force(q);
        const auto sol = decode(inst, ground.assignment);
        CHECK(objective_value(inst, sol) == 1.0);  // at most 1 of 2 satisfiable
    }
    CHECK_THROWS_AS(build_max3sat(1, {{1, 0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(build_max3sat(1, {{1, 2, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(build_max3sat(2, {{1, 2, -1}}, 1.0), std::invalid_argument);
}

TEST_CASE("max3sat tags: rewards soft, edges hard") {
    const auto [inst, q] = build_max3sat(2, {{1, 2, -1}, {-2, 1, 2}});
    for (const auto& [key, entry] : q.entries()) {
        if (key.first == key.second) {
            CHECK(entry.value == -1.0);
            CHECK(entry.tag == Tag::Soft);
        } else {
            CHECK(entry.value == 2.0);
            CHECK(entry.tag == Tag::Hard);
        }
    }
    check_energy_equivalence(inst, q);
}

TEST_CASE("max3sat decoded optimum equals the truth-table oracle") {
    Rng rng(24);
    for (int trial = 0; trial < 4; ++trial) {
        const auto spec = gen_max3sat(5, 5, rng.next());
        const auto [inst, q] = build_max3sat(spec.n_vars, spec.clauses);
        const Sample ground = brute_force(q);
        const auto sol = decode(inst, ground.assignment);
        CHECK(objective_value(inst, sol) == static_cast<double>(oracles::sat_best(spec)));
    }
}

// ---------------------------------------------------------------------------
// TSP
// ---------------------------------------------------------------------------

namespace {

TspInstance triangle_tsp() {
    TspInstance inst;
    inst.weights = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    return inst;
}

}  // namespace

TEST_CASE("tsp uniform triangle") {
    const auto [inst, q] = build_tsp(triangle_tsp());
    const auto& built = inst.as<TspInstance>();
    CHECK(built.weight_a == 2.0);  // 1 + ceil(B * max W)

    const Sample ground = brute_force(q);
    const auto sol = decode(inst, ground.assignment);
    CHECK(sol.valid);
    CHECK(ground.energy == built.weight_b * 3.0);  // every triangle tour has weight 3
    CHECK(objective_value(inst, sol) == 3.0);

    check_energy_equivalence(inst, q);
    check_hard_floor_and_dominance(inst, q, -2.0 * built.weight_a * 3.0);
}

TEST_CASE("tsp integerized unit square") {
    TspInstance spec;
    spec.weights = {
        {0, 10, 14, 10},
        {10, 0, 10, 14},
        {14, 10, 0, 10},
        {10, 14, 10, 0},
    };
    CHECK(oracles::tsp_best(spec) == 40.0);

    const auto [inst, q] = build_tsp(spec);
    const Sample ground = brute_force(q);
    const auto sol = decode(inst, ground.assignment);
    CHECK(sol.valid);
    CHECK(objective_value(inst, sol) == 40.0);

    // A repeated position violates the one-hot structure.
    Assignment repeated(16, 0);
    repeated[0 * 4 + 0] = 1;
    repeated[1 * 4 + 0] = 1;
    repeated[2 * 4 + 2] = 1;
    repeated[3 * 4 + 3] = 1;
    CHECK(!decode(inst, repeated).valid);
}

TEST_CASE("tsp input validation") {
    TspInstance bad = triangle_tsp();
    bad.weights[0][1] = 3.0;  // asymmetric
    CHECK_THROWS_AS(build_tsp(bad), std::invalid_argument);

    TspInstance nonsquare = triangle_tsp();
    nonsquare.weights.pop_back();
    CHECK_THROWS_AS(build_tsp(nonsquare), std::invalid_argument);

    TspInstance weak = triangle_tsp();
    weak.weight_a = 1.0;  // violates B max(W) < A
    CHECK_THROWS_AS(build_tsp(weak), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Graph Coloring
// ---------------------------------------------------------------------------

TEST_CASE("graph coloring on the triangle") {
    Graph k3(3);
    k3.add_edge(0, 1);
    k3.add_edge(1, 2);
    k3.add_edge(0, 2);

    {
        const auto [inst, q] = build_graph_coloring(GraphColoringInstance{k3, 3});
        const Sample ground = brute_force(q);
        const auto sol = decode(inst, ground.assignment);
        CHECK(sol.valid);
        CHECK(objective_value(inst, sol) == 0.0);  // proper 3-coloring exists
        CHECK(oracles::gc_best(inst.as<GraphColoringInstance>()) == 0);
    }
    {
        const auto [inst, q] = build_graph_coloring(GraphColoringInstance{k3, 2});
        const Sample ground = brute_force(q);
        const auto sol = decode(inst, ground.assignment);
        CHECK(sol.valid);
        CHECK(objective_value(inst, sol) == 1.0);  // exactly one error
        CHECK(oracles::gc_best(inst.as<GraphColoringInstance>()) == 1);

        check_energy_equivalence(inst, q);
        const auto& built = inst.as<GraphColoringInstance>();
        check_hard_floor_and_dominance(inst, q, -built.weight_a * 3.0);

        // A node with two colors is invalid.
        Assignment twocolors(6, 0);
        twocolors[0] = twocolors[1] = 1;  // node 0 gets both colors
        twocolors[2] = 1;
        twocolors[4] = 1;
        CHECK(!decode(inst, twocolors).valid);
    }
    CHECK_THROWS_AS(build_graph_coloring(GraphColoringInstance{k3, 0}),
                    std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Graph Isomorphism
// ---------------------------------------------------------------------------

TEST_CASE("graph isomorphism identical and differing graphs") {
    Graph k3(3);
    k3.add_edge(0, 1);
    k3.add_edge(1, 2);
    k3.add_edge(0, 2);

    {
        const auto [inst, q] = build_graph_isomorphism(GraphIsomorphismInstance{k3, k3});
        const Sample ground = brute_force(q);
        const auto sol = decode(inst, ground.assignment);
        CHECK(sol.valid);
        CHECK(objective_value(inst, sol) == 0.0);
    }
    {
        Graph path(3);
        path.add_edge(0, 1);
        path.add_edge(1, 2);
        const auto [inst, q] =
            build_graph_isomorphism(GraphIsomorphismInstance{path, k3});
        CHECK(oracles::gi_best(inst.as<GraphIsomorphismInstance>()) == 1);

        const Sample ground = brute_force(q);
        const auto sol = decode(inst, ground.assignment);
        CHECK(sol.valid);
        CHECK(objective_value(inst, sol) == 1.0);

        check_energy_equivalence(inst, q);
        const auto& built = inst.as<GraphIsomorphismInstance>();
        check_hard_floor_and_dominance(inst, q, -2.0 * built.weight_a * 3.0);

        // Non-bijective assignments are invalid.
        Assignment squash(9, 0);
        squash[0 * 3 + 0] = 1;
        squash[1 * 3 + 0] = 1;  // two nodes mapped to image 0
        squash[2 * 3 + 2] = 1;
        CHECK(!decode(inst, squash).valid);
    }

    Graph k2(2);
    k2.add_edge(0, 1);
    CHECK_THROWS_AS(build_graph_isomorphism(GraphIsomorphismInstance{k3, k2}),
                    std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Shared decode/quality behavior and instance file round-trips
// ---------------------------------------------------------------------------

TEST_CASE("decode rejects mismatched assignment lengths") {
    const auto [inst, q] = build_max_cut(gen_graph(4, 0.5, 3));
    CHECK_THROWS_AS(decode(inst, {1, 0}), std::invalid_argument);
}

TEST_CASE("instance files round-trip through their schemas") {
    Rng rng(25);
    for (Kind kind : kAllKinds) {
        const auto [inst, q] = gen_instance(kind, 16, rng.next());
        std::stringstream buffer;
        save_instance(inst, buffer);
        const ProblemInstance back = load_instance(kind, buffer);
        const auto [inst2, q2] = build(back);
        CHECK(q2 == q);
    }
}

TEST_CASE("builder dispatch matches the typed builders") {
    const auto [inst, q] = build_number_partitioning({5, 3, 2});
    const auto [inst2, q2] = build(inst);
    CHECK(q2 == q);
}
