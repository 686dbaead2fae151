#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <variant>

#include "quboprune/chimera.hpp"
#include "quboprune/embedding.hpp"
#include "quboprune/generators.hpp"
#include "quboprune/harness.hpp"
#include "quboprune/io.hpp"
#include "quboprune/problems.hpp"
#include "quboprune/pruning.hpp"
#include "quboprune/qubo.hpp"
#include "quboprune/sampler.hpp"

namespace py = pybind11;
using namespace quboprune;

PYBIND11_MODULE(quboprune, m) {
    m.doc() = "QUBO approximation toolkit: encode, prune, sample, embed";

    py::enum_<Tag>(m, "Tag").value("Hard", Tag::Hard).value("Soft", Tag::Soft);

    py::class_<EntryStats>(m, "EntryStats")
        .def_readonly("total", &EntryStats::total)
        .def_readonly("hard", &EntryStats::hard)
        .def_readonly("soft", &EntryStats::soft)
        .def_readonly("soft_offdiagonal", &EntryStats::soft_offdiagonal);

    py::class_<Qubo>(m, "Qubo")
        .def(py::init<std::size_t>(), py::arg("n"))
        .def_property_readonly("num_vars", &Qubo::num_vars)
        .def_property("offset", &Qubo::offset, &Qubo::set_offset)
        .def("set", &Qubo::set, py::arg("i"), py::arg("j"), py::arg("value"),
             py::arg("tag") = Tag::Soft)
        .def("add", &Qubo::add, py::arg("i"), py::arg("j"), py::arg("value"),
             py::arg("tag") = Tag::Soft)
        .def("get",
             [](const Qubo& q, std::size_t i, std::size_t j)
                 -> std::optional<std::pair<double, Tag>> {
                 const Entry* e = q.find(i, j);
                 if (!e) return std::nullopt;
                 return std::make_pair(e->value, e->tag);
             })
        .def("energy", &Qubo::energy)
        .def("stats", &Qubo::stats)
        .def("entries",
             [](const Qubo& q) {
                 std::vector<std::tuple<std::size_t, std::size_t, double, Tag>> out;
                 for (const auto& [key, entry] : q.entries()) {
                     out.emplace_back(key.first, key.second, entry.value, entry.tag);
                 }
                 return out;
             })
        .def("save",
             [](const Qubo& q) {
                 std::ostringstream out;
                 save_qubo(out, q);
                 return out.str();
             })
        .def_static("load",
                    [](const std::string& text) {
                        std::istringstream in(text);
                        return load_qubo(in);
                    })
        .def("__eq__", [](const Qubo& a, const Qubo& b) { return a == b; });

    py::class_<Graph>(m, "Graph")
        .def(py::init<std::size_t>(), py::arg("n"))
        .def_property_readonly("num_nodes", &Graph::num_nodes)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def("add_edge", &Graph::add_edge)
        .def("has_edge", &Graph::has_edge)
        .def("edges", &Graph::edges)
        .def("max_degree", &Graph::max_degree);

    py::enum_<Kind>(m, "Kind")
        .value("ExactCover", Kind::ExactCover)
        .value("MaxCut", Kind::MaxCut)
        .value("NumberPartitioning", Kind::NumberPartitioning)
        .value("GateAssignment", Kind::GateAssignment)
        .value("MaxThreeSat", Kind::MaxThreeSat)
        .value("Tsp", Kind::Tsp)
        .value("GraphColoring", Kind::GraphColoring)
        .value("GraphIsomorphism", Kind::GraphIsomorphism);

    py::class_<ProblemInstance>(m, "ProblemInstance")
        .def_property_readonly("kind", &ProblemInstance::kind)
        .def_property_readonly("num_variables", &ProblemInstance::num_variables);

    py::class_<DecodedSolution>(m, "DecodedSolution")
        .def_readonly("kind", &DecodedSolution::kind)
        .def_readonly("valid", &DecodedSolution::valid)
        .def_readonly("raw", &DecodedSolution::raw)
        .def("__repr__", [](const DecodedSolution& s) { return solution_to_string(s); });

    py::class_<QualityRatio>(m, "QualityRatio")
        .def_readonly("v", &QualityRatio::v)
        .def_readonly("v_ref", &QualityRatio::v_ref)
        .def_readonly("ratio", &QualityRatio::ratio)
        .def_readonly("valid", &QualityRatio::valid);

    py::enum_<VRefMode>(m, "VRefMode")
        .value("FigureDefault", VRefMode::FigureDefault)
        .value("Optimum", VRefMode::Optimum);

    m.def("build_exact_cover", &build_exact_cover, py::arg("universe"),
          py::arg("subsets"));
    m.def("build_max_cut", &build_max_cut, py::arg("graph"));
    m.def("build_number_partitioning", &build_number_partitioning, py::arg("numbers"),
          py::arg("weight_a") = 1.0);
    m.def("build_max3sat", &build_max3sat, py::arg("n_vars"), py::arg("clauses"),
          py::arg("conflict_weight") = 2.0);
    m.def(
        "build_tsp",
        [](const std::vector<std::vector<double>>& weights, std::size_t start,
           double weight_a, double weight_b) {
            return build_tsp(TspInstance{weights, start, weight_a, weight_b});
        },
        py::arg("weights"), py::arg("start") = 0, py::arg("weight_a") = 0.0,
        py::arg("weight_b") = 1.0);
    m.def(
        "build_graph_coloring",
        [](const Graph& g, std::size_t n_colors, double weight_a, double weight_b) {
            return build_graph_coloring(GraphColoringInstance{g, n_colors, weight_a,
                                                              weight_b});
        },
        py::arg("graph"), py::arg("n_colors"), py::arg("weight_a") = 0.0,
        py::arg("weight_b") = 1.0);
    m.def(
        "build_graph_isomorphism",
        [](const Graph& g1, const Graph& g2, double weight_a, double weight_b) {
            return build_graph_isomorphism(
                GraphIsomorphismInstance{g1, g2, weight_a, weight_b});
        },
        py::arg("g1"), py::arg("g2"), py::arg("weight_a") = 0.0,
        py::arg("weight_b") = 1.0);
    m.def(
        "build_gate_assignment",
        [](std::size_t planes, std::size_t gates,
           const std::vector<std::vector<double>>& passengers,
           const std::vector<std::vector<double>>& distances,
           const std::vector<std::vector<double>>& assign_cost, double weight_a,
           double weight_b) {
            return build_gate_assignment(GateAssignmentInstance{
                planes, gates, passengers, distances, assign_cost, weight_a, weight_b});
        },
        py::arg("planes"), py::arg("gates"), py::arg("passengers"), py::arg("distances"),
        py::arg("assign_cost"), py::arg("weight_a") = 0.0, py::arg("weight_b") = 0.0);

    m.def("decode", &decode, py::arg("instance"), py::arg("assignment"));
    m.def("objective_value", &objective_value);
    m.def("quality", &quality, py::arg("instance"), py::arg("solution"),
          py::arg("mode") = VRefMode::FigureDefault,
          py::arg("reference") = std::nullopt);

    m.def("prune_fraction", &prune_fraction, py::arg("qubo"), py::arg("p"));
    m.def("prune_threshold", &prune_threshold, py::arg("qubo"), py::arg("p"));
    m.def("prune_random", &prune_random, py::arg("qubo"), py::arg("p"), py::arg("seed"));
    m.def(
        "make_schedule",
        [](const Qubo& q, const std::string& strategy, std::uint64_t seed,
           double granularity) {
            auto s = PruneStrategy::from_name(strategy, seed);
            if (!s) throw std::invalid_argument("unknown strategy: " + strategy);
            std::vector<std::tuple<double, Qubo, std::size_t>> out;
            for (auto& step : make_schedule(q, *s, granularity).steps) {
                out.emplace_back(step.p, std::move(step.qubo), step.deleted);
            }
            return out;
        },
        py::arg("qubo"), py::arg("strategy"), py::arg("seed") = 0,
        py::arg("granularity") = 0.05);

    py::class_<SaParams>(m, "SaParams")
        .def(py::init<>())
        .def_readwrite("sweeps", &SaParams::sweeps)
        .def_readwrite("beta_start", &SaParams::beta_start)
        .def_readwrite("beta_end", &SaParams::beta_end)
        .def_readwrite("restarts", &SaParams::restarts)
        .def_readwrite("seed", &SaParams::seed);

    py::class_<Sample>(m, "Sample")
        .def_readonly("assignment", &Sample::assignment)
        .def_readonly("energy", &Sample::energy);

    py::class_<SampleSet>(m, "SampleSet")
        .def_readonly("samples", &SampleSet::samples)
        .def_property_readonly("n_runs", [](const SampleSet& s) { return s.n_runs; })
        .def("mean_energy", &SampleSet::mean_energy)
        .def("best_energy", &SampleSet::best_energy);

    m.def("simulated_anneal", &simulated_anneal, py::arg("qubo"), py::arg("params"));
    m.def("sample_many", &sample_many, py::arg("qubo"), py::arg("n_runs"),
          py::arg("params"));
    m.def("random_baseline", &random_baseline, py::arg("n_bits"), py::arg("n_runs"),
          py::arg("seed"));
    m.def("brute_force", &brute_force, py::arg("qubo"), py::arg("cap") = 24);

    py::class_<ChimeraGraph>(m, "ChimeraGraph")
        .def_readonly("rows", &ChimeraGraph::rows)
        .def_readonly("cols", &ChimeraGraph::cols)
        .def_readonly("shore", &ChimeraGraph::shore)
        .def_readonly("graph", &ChimeraGraph::graph)
        .def_property_readonly("num_qubits", &ChimeraGraph::num_qubits);
    m.def("chimera", &chimera, py::arg("rows"), py::arg("cols"), py::arg("shore") = 4);

    py::class_<Embedding>(m, "Embedding").def_readonly("chains", &Embedding::chains);
    py::class_<EmbeddingMetrics>(m, "EmbeddingMetrics")
        .def_readonly("physical_qubits", &EmbeddingMetrics::physical_qubits)
        .def_readonly("max_chain", &EmbeddingMetrics::max_chain)
        .def_readonly("mean_chain", &EmbeddingMetrics::mean_chain);

    m.def("connectivity_graph", &connectivity_graph);
    m.def("embedding_metrics", &embedding_metrics);
    m.def("find_embedding", &find_embedding, py::arg("logical"), py::arg("hardware"),
          py::arg("seed"), py::arg("attempts") = 10);
    m.def(
        "verify_embedding",
        [](const Embedding& e, const Graph& logical, const ChimeraGraph& hw) {
            const auto r = verify_embedding(e, logical, hw);
            return std::make_pair(r.ok, r.violation);
        },
        py::arg("embedding"), py::arg("logical"), py::arg("hardware"));

    m.def("load_instance_file", &load_instance_file, py::arg("kind"), py::arg("path"));
    m.def("build", &build, py::arg("instance"));
    m.def("gen_instance", &gen_instance, py::arg("kind"), py::arg("max_vars"),
          py::arg("seed"));
}
