#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

#include "quboprune/generators.hpp"
#include "quboprune/problems.hpp"
#include "quboprune/rng.hpp"
#include "quboprune/sampler.hpp"

using namespace quboprune;

namespace {

Qubo k3_maxcut() {
    Graph k3(3);
    k3.add_edge(0, 1);
    k3.add_edge(1, 2);
    k3.add_edge(0, 2);
    return build_max_cut(k3).second;
}

Qubo random_qubo(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Qubo q(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (rng.uniform() < 0.4) continue;
            q.set(i, j, static_cast<double>(1 + rng.below(9)) * (rng.bit() ? 1 : -1),
                  rng.bit() ? Tag::Hard : Tag::Soft);
        }
    }
    return q;
}

}  // namespace

TEST_CASE("annealer solves one-variable problems") {
    Qubo q(1);
    q.set(0, 0, -1.0, Tag::Soft);
    for (std::uint64_t seed : {1, 2, 3}) {
        SaParams params;
        params.sweeps = 50;
        params.seed = seed;
        const Sample s = simulated_anneal(q, params);
        CHECK(s.assignment == Assignment{1});
        CHECK(s.energy == -1.0);
    }
}

TEST_CASE("annealer on an empty qubo") {
    Qubo q(4);
    SaParams params;
    params.sweeps = 10;
    const Sample s = simulated_anneal(q, params);
    CHECK(s.energy == 0.0);
    CHECK(s.assignment.size() == 4);
}

TEST_CASE("annealer reaches the triangle cut optimum nearly always") {
    const Qubo q = k3_maxcut();
    SaParams params;
    std::size_t hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        params.seed = seed;
        if (simulated_anneal(q, params).energy == -2.0) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("annealer is deterministic and records exact energies") {
    const Qubo q = random_qubo(12, 77);
    SaParams params;
    params.sweeps = 200;
    params.seed = 5;
    const Sample a = simulated_anneal(q, params);
    const Sample b = simulated_anneal(q, params);
    CHECK(a.assignment == b.assignment);
    CHECK(a.energy == b.energy);
    CHECK(a.energy == q.energy(a.assignment));

    const SampleSet set1 = sample_many(q, 10, params);
    const SampleSet set2 = sample_many(q, 10, params);
    REQUIRE(set1.samples.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(set1.samples[i].assignment == set2.samples[i].assignment);
        CHECK(set1.samples[i].energy == q.energy(set1.samples[i].assignment));
    }
}

TEST_CASE("sample_many run counts") {
    const Qubo q = k3_maxcut();
    SaParams params;
    params.sweeps = 20;
    CHECK(sample_many(q, 100, params).samples.size() == 100);
    CHECK(sample_many(q, 200, params).samples.size() == 200);
    CHECK_THROWS_AS(sample_many(q, 0, params), std::invalid_argument);
}

TEST_CASE("brute force enumerates exactly") {
    {
        Qubo q(3);
        const Sample s = brute_force(q);
        CHECK(s.energy == 0.0);
        CHECK(s.assignment == Assignment{0, 0, 0});  // lexicographic tie-break
    }
    CHECK(brute_force(k3_maxcut()).energy == -2.0);
    {
        const std::vector<long long> numbers = {5, 3, 2, 7, 1};
        const auto [inst, q] = build_number_partitioning(numbers);
        const long long diff = oracles::np_best(numbers);
        CHECK(brute_force(q).energy == static_cast<double>(diff * diff));
    }
    {
        Qubo q(25);
        CHECK_THROWS_AS(brute_force(q), std::invalid_argument);
        CHECK_NOTHROW(brute_force(q, 25));
    }
    // Gray-code search agrees with a direct scan.
    const Qubo q = random_qubo(10, 78);
    double direct = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (1ULL << 10); ++mask) {
        Assignment a(10);
        for (std::size_t i = 0; i < 10; ++i) a[i] = (mask >> i) & 1ULL;
        direct = std::min(direct, q.energy(a));
    }
    CHECK(brute_force(q).energy == direct);
}

TEST_CASE("brute force lower-bounds every sampler") {
    Rng rng(79);
    for (int trial = 0; trial < 5; ++trial) {
        const Qubo q = random_qubo(10, rng.next());
        const double ground = brute_force(q).energy;
        SaParams params;
        params.sweeps = 100;
        params.seed = rng.next();
        for (const Sample& s : sample_many(q, 20, params).samples) {
            CHECK(ground <= s.energy);
        }
    }
}

TEST_CASE("random baseline is uniform, wide and reproducible") {
    const SampleSet set = random_baseline(53, 100, 3);
    REQUIRE(set.samples.size() == 100);
    for (const Sample& s : set.samples) CHECK(s.assignment.size() == 53);

    const SampleSet again = random_baseline(53, 100, 3);
    for (std::size_t i = 0; i < 100; ++i) {
        CHECK(set.samples[i].assignment == again.samples[i].assignment);
    }

    const SampleSet bits = random_baseline(1, 10000, 4);
    double ones = 0.0;
    for (const Sample& s : bits.samples) ones += s.assignment[0];
    const double mean_bit = ones / 10000.0;
    CHECK(mean_bit > 0.48);
    CHECK(mean_bit < 0.52);
}

TEST_CASE("beta range resolution") {
    const Qubo q = k3_maxcut();
    SaParams params;
    const auto [start, end] = resolve_beta_range(q, params);
    CHECK(start > 0.0);
    CHECK(start < end);

    params.beta_start = 2.0;
    params.beta_end = 1.0;
    CHECK_THROWS_AS(resolve_beta_range(q, params), std::invalid_argument);

    params.beta_start = 0.5;
    params.beta_end = 3.0;
    const auto [s2, e2] = resolve_beta_range(q, params);
    CHECK(s2 == 0.5);
    CHECK(e2 == 3.0);
}
