// Acceptance suite: end-to-end checks of the toolkit against its contract,
// one test case per criterion, each printing a PASS/FAIL line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "stats.hpp"

#include "quboprune/chimera.hpp"
#include "quboprune/embedding.hpp"
#include "quboprune/generators.hpp"
#include "quboprune/harness.hpp"
#include "quboprune/io.hpp"
#include "quboprune/problems.hpp"
#include "quboprune/pruning.hpp"
#include "quboprune/rng.hpp"
#include "quboprune/sampler.hpp"

using namespace quboprune;

namespace {

const auto kSuiteStart = std::chrono::steady_clock::now();

// Desk instances. The generator seeds are pinned so results are stable.
constexpr std::uint64_t kEcDeskSeed = 2020;
constexpr std::uint64_t kMaxCutDeskSeed = 2021;
constexpr std::size_t kEcUniverse = 12;
constexpr std::size_t kEcSubsets = 20;
constexpr std::size_t kMaxCutNodes = 20;

void report(int id, bool ok, const char* what) {
    std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", what);
    std::fflush(stdout);
    CHECK_MESSAGE(ok, "criterion ", id, ": ", what);
}

std::pair<ProblemInstance, Qubo> ec_desk() {
    const auto ec = gen_exact_cover(kEcUniverse, kEcSubsets, kEcDeskSeed);
    return build_exact_cover(ec.universe, ec.subsets);
}

std::pair<ProblemInstance, Qubo> maxcut_desk() {
    return build_max_cut(gen_graph(kMaxCutNodes, 0.5, kMaxCutDeskSeed));
}

/// One small instance per kind plus the two desk instances.
std::vector<std::pair<ProblemInstance, Qubo>> desk_suite() {
    std::vector<std::pair<ProblemInstance, Qubo>> suite;
    for (Kind kind : kAllKinds) {
        suite.push_back(gen_instance(kind, 16, 404));
    }
    suite.push_back(ec_desk());
    suite.push_back(maxcut_desk());
    return suite;
}

double oracle_optimum(const ProblemInstance& inst) {
    switch (inst.kind()) {
        case Kind::ExactCover:
            return static_cast<double>(oracles::ec_best(inst.as<ExactCoverInstance>()));
        case Kind::MaxCut:
            return static_cast<double>(
                oracles::max_cut(inst.as<MaxCutInstance>().graph));
        case Kind::NumberPartitioning:
            return static_cast<double>(
                oracles::np_best(inst.as<NumberPartitioningInstance>().numbers));
        case Kind::GateAssignment: {
            const auto best = oracles::agap_best(inst.as<GateAssignmentInstance>());
            REQUIRE(best.has_value());
            return *best;
        }
        case Kind::MaxThreeSat:
            return static_cast<double>(
                oracles::sat_best(inst.as<MaxThreeSatInstance>()));
        case Kind::Tsp:
            return oracles::tsp_best(inst.as<TspInstance>());
        case Kind::GraphColoring:
            return static_cast<double>(
                oracles::gc_best(inst.as<GraphColoringInstance>()));
        case Kind::GraphIsomorphism:
            return static_cast<double>(
                oracles::gi_best(inst.as<GraphIsomorphismInstance>()));
    }
    return 0.0;
}

/// Per-run quality ratios of a pruned QUBO, scored against the original.
std::vector<double> ratios_for(const ProblemInstance& inst, const Qubo& pruned,
                               std::size_t n_runs, const SaParams& params,
                               std::optional<double> reference) {
    const SampleSet set = sample_many(pruned, n_runs, params);
    std::vector<double> out;
    out.reserve(set.samples.size());
    for (const Sample& s : set.samples) {
        out.push_back(
            quality(inst, decode(inst, s.assignment), VRefMode::FigureDefault, reference)
                .ratio);
    }
    return out;
}

}  // namespace

TEST_CASE("criterion 1: builder-oracle equivalence") {
    bool ok = true;
    for (Kind kind : kAllKinds) {
        for (std::uint64_t i = 0; i < 20; ++i) {
            const auto [inst, qubo] = gen_instance(kind, 16, 1000 + i);
            const Sample ground = brute_force(qubo);
            const auto sol = decode(inst, ground.assignment);
            const double objective = objective_value(inst, sol);
            const double optimum = oracle_optimum(inst);
            ok = ok && objective == optimum;
            if (!ok) {
                MESSAGE("kind ", kind_name(kind), " seed ", 1000 + i, " objective ",
                        objective, " oracle ", optimum);
                break;
            }
        }
        if (!ok) break;
    }
    report(1, ok, "brute-force QUBO minima decode to exhaustive-oracle optima");
}

TEST_CASE("criterion 2: exact energy bookkeeping") {
    bool ok = true;
    std::size_t pairs = 0;
    Rng rng(777);
    while (pairs < 1000) {
        for (Kind kind : kAllKinds) {
            const auto [inst, qubo] = gen_instance(kind, 16, rng.next());
            for (int k = 0; k < 5 && pairs < 1000; ++k, ++pairs) {
                Assignment a(qubo.num_vars());
                for (auto& b : a) b = rng.bit() ? 1 : 0;
                if (qubo.energy(a) != oracles::combinatorial_energy(inst, a)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (!ok) break;
    }
    report(2, ok, "energy equals the combinatorial objective exactly (1000 pairs)");
}

TEST_CASE("criterion 3: all strategies converge at p = 1") {
    bool ok = true;
    for (const auto& [inst, qubo] : desk_suite()) {
        const Qubo f = prune_fraction(qubo, 1.0);
        const Qubo t = prune_threshold(qubo, 1.0);
        const Qubo r = prune_random(qubo, 1.0, 12345);
        ok = ok && f == t && f == r;
    }
    report(3, ok, "fraction/threshold/random produce entry-identical QUBOs at p = 1");
}

TEST_CASE("criterion 4: threshold calibration on values {2, 4, 8}") {
    Qubo q(6);
    q.set(0, 1, 2.0, Tag::Soft);
    q.set(0, 2, 2.0, Tag::Soft);
    q.set(1, 2, 2.0, Tag::Soft);
    q.set(0, 3, 4.0, Tag::Soft);
    q.set(1, 3, 4.0, Tag::Soft);
    q.set(0, 4, 8.0, Tag::Soft);
    const std::size_t total = q.stats().soft_offdiagonal;

    bool ok = true;
    for (double p : {0.0, 0.05, 0.1, 0.15, 0.2}) {
        ok = ok && (total - prune_threshold(q, p).stats().soft_offdiagonal) == 0;
    }
    for (double p : {0.25, 0.3, 0.35, 0.4, 0.45}) {
        const Qubo pruned = prune_threshold(q, p);
        ok = ok && (total - pruned.stats().soft_offdiagonal) == 3;
        ok = ok && pruned.contains(0, 3) && pruned.contains(0, 4);
    }
    report(4, ok, "p <= 0.20 deletes nothing; p in [0.25, 0.45] deletes the 2-entries");
}

TEST_CASE("criterion 5: connectivity and footprint shrink with pruning") {
    bool ok = true;

    // Exact part: off-diagonal entry count non-increasing for each strategy.
    for (const auto& [inst, qubo] : desk_suite()) {
        for (const char* name : {"fraction", "threshold", "random"}) {
            const auto strategy = PruneStrategy::from_name(name, 5);
            const PruneSchedule schedule = make_schedule(qubo, *strategy);
            std::size_t prev = SIZE_MAX;
            for (const PruneStep& step : schedule.steps) {
                std::size_t offdiag = 0;
                for (const auto& [key, entry] : step.qubo.entries()) {
                    if (key.first != key.second) ++offdiag;
                }
                ok = ok && offdiag <= prev;
                prev = offdiag;
            }
        }
    }

    // Heuristic part: median physical qubits over 10 seeds, non-increasing
    // within 5% slack, on the exact-cover and max-cut desk instances.
    const ChimeraGraph hw = chimera(16, 16, 4);
    for (const auto& [inst, qubo] : {ec_desk(), maxcut_desk()}) {
        const PruneSchedule schedule =
            make_schedule(qubo, PruneStrategy{StrategyKind::Fraction, 0});
        double prev = std::numeric_limits<double>::infinity();
        for (const PruneStep& step : schedule.steps) {
            const Graph logical = connectivity_graph(step.qubo);
            std::vector<double> sizes;
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                const auto e = find_embedding(logical, hw, seed, 10);
                if (!e) continue;
                sizes.push_back(
                    static_cast<double>(embedding_metrics(*e).physical_qubits));
            }
            if (sizes.empty()) {
                ok = false;
                break;
            }
            std::sort(sizes.begin(), sizes.end());
            const double median = sizes[(sizes.size() - 1) / 2];
            ok = ok && median <= prev * 1.05;
            prev = median;
        }
    }
    report(5, ok, "logical connectivity exactly, physical footprint within 5% slack");
}

TEST_CASE("criterion 6: exact-cover quality holds then degrades") {
    const auto [inst, qubo] = ec_desk();
    ExperimentConfig cfg;
    cfg.problem = Kind::ExactCover;
    cfg.strategy = "fraction";
    cfg.n_runs = 100;
    cfg.sweeps = 1000;
    cfg.embeddings = false;
    cfg.master_seed = 606;
    const auto rows = run_experiment(cfg, inst, qubo);

    const double at0 = rows[0].mean_ratio;
    const double at50 = rows[10].mean_ratio;
    const double at95 = rows[19].mean_ratio;
    const bool ok = at0 > 0.0 && at50 <= 1.5 * at0 && at95 >= 2.0 * at0;
    if (!ok) {
        MESSAGE("mean ratios: p=0 ", at0, "  p=0.5 ", at50, "  p=0.95 ", at95);
    }
    report(6, ok, "fraction pruning: p=0.5 within 1.5x of p=0; p=0.95 at least 2x");
}

TEST_CASE("criterion 7: fraction and threshold beat random at p = 0.5") {
    const auto [inst, qubo] = ec_desk();
    SaParams params;
    params.sweeps = 1000;
    params.seed = Rng::derive(707, 1);

    const Qubo pruned_f = prune_fraction(qubo, 0.5);
    const Qubo pruned_t = prune_threshold(qubo, 0.5);
    const Qubo pruned_r = prune_random(qubo, 0.5, Rng::derive(707, 3));

    const auto f = ratios_for(inst, pruned_f, 100, params, std::nullopt);
    const auto t = ratios_for(inst, pruned_t, 100, params, std::nullopt);
    const auto r = ratios_for(inst, pruned_r, 100, params, std::nullopt);

    const double p_f = teststats::rank_test_less(f, r);
    const double p_t = teststats::rank_test_less(t, r);
    const bool ok = p_f < 0.05 && p_t < 0.05;
    if (!ok) MESSAGE("rank-test p-values: fraction ", p_f, "  threshold ", p_t);
    report(7, ok, "one-sided rank tests at alpha = 0.05 over 100 runs");
}

TEST_CASE("criterion 8: the random baseline never moves") {
    const auto [inst, qubo] = ec_desk();
    ExperimentConfig cfg;
    cfg.problem = Kind::ExactCover;
    cfg.n_runs = 50;
    cfg.sweeps = 100;
    cfg.embeddings = false;
    cfg.master_seed = 808;
    const auto rows = run_experiment(cfg, inst, qubo);
    bool ok = rows.size() == 21;
    for (const ResultRow& row : rows) {
        ok = ok && row.baseline_ratio == rows[0].baseline_ratio;
    }
    report(8, ok, "baseline_ratio is bit-identical across all 21 rows");
}

TEST_CASE("criterion 9: more sweeps never hurt lightly pruned max-cut") {
    const auto [inst, qubo] = maxcut_desk();
    const double optimum = -brute_force(qubo).energy;
    REQUIRE(optimum > 0.0);

    std::vector<double> low, high;
    const PruneStrategy fraction{StrategyKind::Fraction, 0};
    for (std::size_t k = 0; k <= 6; ++k) {  // p = 0.00 .. 0.30
        const double p = static_cast<double>(k) / 20.0;
        const Qubo pruned = prune_fraction(qubo, p);
        SaParams params;
        params.seed = Rng::derive(909, k);
        params.sweeps = 1000;
        const auto r1000 = ratios_for(inst, pruned, 100, params, optimum);
        params.sweeps = 4000;
        const auto r4000 = ratios_for(inst, pruned, 100, params, optimum);
        low.insert(low.end(), r1000.begin(), r1000.end());
        high.insert(high.end(), r4000.begin(), r4000.end());
    }
    // Quality is cut / optimum: higher is better. Test that the 1000-sweep
    // ratios sit significantly below the 4000-sweep ratios.
    const double p_value = teststats::rank_test_less(low, high);
    const bool ok = p_value < 0.05 && teststats::mean(high) >= teststats::mean(low);
    if (!ok) {
        MESSAGE("rank-test p ", p_value, " means ", teststats::mean(low), " vs ",
                teststats::mean(high));
    }
    report(9, ok, "sweeps=4000 beats sweeps=1000 at p <= 0.3 (alpha = 0.05)");
}

TEST_CASE("criterion 10: the c16 chimera model is exact") {
    const ChimeraGraph c16 = chimera(16, 16, 4);
    const bool ok = c16.num_qubits() == 2048 && c16.graph.num_edges() == 6016 &&
                    c16.graph.max_degree() == 6;
    report(10, ok, "2048 qubits, 6016 couplers, max degree 6");
}

TEST_CASE("criterion 11: every returned embedding verifies") {
    bool ok = true;
    std::size_t checked = 0;
    const ChimeraGraph hw = chimera(16, 16, 4);
    for (const auto& [inst, qubo] : desk_suite()) {
        for (double p : {0.0, 0.5, 1.0}) {
            const Graph logical = connectivity_graph(prune_fraction(qubo, p));
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const auto e = find_embedding(logical, hw, seed, 10);
                if (!e) continue;
                ++checked;
                ok = ok && verify_embedding(*e, logical, hw).ok;
            }
        }
    }
    ok = ok && checked > 0;
    report(11, ok, "100% of found embeddings pass structural verification");
}

TEST_CASE("criterion 12: same master seed, same bytes") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "quboprune_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const auto [inst, qubo] = ec_desk();
    const fs::path instance_path = dir / "ec_desk.txt";
    save_instance_file(inst, instance_path.string());

    ExperimentConfig cfg;
    cfg.problem = Kind::ExactCover;
    cfg.instance_path = instance_path.string();
    cfg.n_runs = 20;
    cfg.sweeps = 100;
    cfg.chimera_rows = cfg.chimera_cols = 4;
    cfg.embed_seeds = 3;
    cfg.embed_attempts = 5;
    cfg.master_seed = 1212;

    std::ostringstream a, b;
    emit_csv(a, cfg, run_experiment(cfg));
    emit_csv(b, cfg, run_experiment(cfg));
    bool ok = a.str() == b.str();

    // The command-line path, end to end.
    const std::string base = std::string(QUBOPRUNE_CLI_PATH) +
                             " run --problem exact-cover --instance " +
                             instance_path.string() +
                             " --runs 20 --sweeps 100 --seed 1212 --chimera 4x4x4"
                             " --embed-seeds 3 --embed-attempts 5 > /dev/null";
    const int rc1 =
        std::system((base + " --out " + (dir / "out1").string()).c_str());
    const int rc2 =
        std::system((base + " --out " + (dir / "out2").string()).c_str());
    ok = ok && rc1 == 0 && rc2 == 0;
    if (ok) {
        std::ifstream f1(dir / "out1" / "results.csv", std::ios::binary);
        std::ifstream f2(dir / "out2" / "results.csv", std::ios::binary);
        std::ostringstream s1, s2;
        s1 << f1.rdbuf();
        s2 << f2.rdbuf();
        ok = s1.str() == s2.str() && !s1.str().empty();
    }
    report(12, ok, "library and CLI runs reproduce byte-identical CSV output");
}

TEST_CASE("criterion 13: the suite finishes inside ten minutes") {
    const auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                             std::chrono::steady_clock::now() - kSuiteStart)
                             .count();
    const bool ok = elapsed < 600;
    std::printf("criterion 13: %s  acceptance suite wall time %llds\n",
                ok ? "PASS" : "FAIL", static_cast<long long>(elapsed));
    CHECK(ok);
}
