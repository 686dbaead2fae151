#include "quboprune/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace quboprune {

namespace {

[[noreturn]] void bad_line(const std::string& line) {
    throw std::invalid_argument("instance file: cannot parse line: " + line);
}

/// Non-comment, non-empty lines split into a keyword and the rest.
struct Line {
    std::string keyword;
    std::vector<std::string> tokens;
    std::string raw;
};

std::vector<Line> read_lines(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        std::istringstream ls(raw);
        Line line;
        line.raw = raw;
        if (!(ls >> line.keyword)) continue;
        if (line.keyword[0] == '#' || line.keyword[0] == 'c') {
            if (line.keyword != "colors") continue;  // DIMACS comments vs "colors"
        }
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        lines.push_back(std::move(line));
    }
    return lines;
}

long long to_int(const std::string& tok, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) bad_line(raw);
        return v;
    } catch (const std::logic_error&) {
        bad_line(raw);
    }
}

double to_double(const std::string& tok, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) bad_line(raw);
        return v;
    } catch (const std::logic_error&) {
        bad_line(raw);
    }
}

std::vector<double> to_doubles(const Line& line) {
    std::vector<double> out;
    out.reserve(line.tokens.size());
    for (const auto& tok : line.tokens) out.push_back(to_double(tok, line.raw));
    return out;
}

ProblemInstance parse_exact_cover(const std::vector<Line>& lines) {
    ExactCoverInstance inst;
    for (const Line& line : lines) {
        if (line.keyword == "universe") {
            for (const auto& tok : line.tokens) {
                inst.universe.push_back(static_cast<int>(to_int(tok, line.raw)));
            }
        } else if (line.keyword == "subset") {
            std::vector<int> sub;
            for (const auto& tok : line.tokens) {
                sub.push_back(static_cast<int>(to_int(tok, line.raw)));
            }
            inst.subsets.push_back(std::move(sub));
        } else {
            bad_line(line.raw);
        }
    }
    return ProblemInstance(std::move(inst));
}

Graph parse_graph_lines(const std::vector<Line>& lines, const std::string& edge_key) {
    std::size_t n = 0;
    for (const Line& line : lines) {
        if (line.keyword == "nodes" && !line.tokens.empty()) {
            n = static_cast<std::size_t>(to_int(line.tokens[0], line.raw));
        }
    }
    if (n == 0) throw std::invalid_argument("instance file: missing 'nodes N' line");
    Graph g(n);
    for (const Line& line : lines) {
        if (line.keyword == edge_key) {
            if (line.tokens.size() != 2) bad_line(line.raw);
            g.add_edge(static_cast<std::size_t>(to_int(line.tokens[0], line.raw)),
                       static_cast<std::size_t>(to_int(line.tokens[1], line.raw)));
        }
    }
    return g;
}

ProblemInstance parse_number_partitioning(const std::vector<Line>& lines) {
    NumberPartitioningInstance inst;
    for (const Line& line : lines) {
        if (line.keyword == "numbers") {
            for (const auto& tok : line.tokens) {
                inst.numbers.push_back(to_int(tok, line.raw));
            }
        } else if (line.keyword == "weight") {
            if (line.tokens.size() != 1) bad_line(line.raw);
            inst.weight_a = to_double(line.tokens[0], line.raw);
        } else {
            bad_line(line.raw);
        }
    }
    return ProblemInstance(std::move(inst));
}

ProblemInstance parse_gate_assignment(const std::vector<Line>& lines) {
    GateAssignmentInstance inst;
    std::vector<std::vector<double>> p_rows, d_rows, a_rows;
    for (const Line& line : lines) {
        if (line.keyword == "planes") {
            inst.n_planes = static_cast<std::size_t>(to_int(line.tokens.at(0), line.raw));
        } else if (line.keyword == "gates") {
            inst.m_gates = static_cast<std::size_t>(to_int(line.tokens.at(0), line.raw));
        } else if (line.keyword == "p") {
            p_rows.push_back(to_doubles(line));
        } else if (line.keyword == "d") {
            d_rows.push_back(to_doubles(line));
        } else if (line.keyword == "a") {
            a_rows.push_back(to_doubles(line));
        } else if (line.keyword == "weights") {
            if (line.tokens.size() != 2) bad_line(line.raw);
            inst.weight_a = to_double(line.tokens[0], line.raw);
            inst.weight_b = to_double(line.tokens[1], line.raw);
        } else {
            bad_line(line.raw);
        }
    }
    inst.passengers = std::move(p_rows);
    inst.distances = std::move(d_rows);
    inst.assign_cost = std::move(a_rows);
    return ProblemInstance(std::move(inst));
}

ProblemInstance parse_max3sat(const std::vector<Line>& lines) {
    MaxThreeSatInstance inst;
    bool have_header = false;
    for (const Line& line : lines) {
        if (line.keyword == "p") {
            // "p cnf <vars> <clauses>"
            if (line.tokens.size() != 3 || line.tokens[0] != "cnf") bad_line(line.raw);
            inst.n_vars = static_cast<std::size_t>(to_int(line.tokens[1], line.raw));
            have_header = true;
        } else {
            std::vector<int> lits;
            lits.push_back(static_cast<int>(to_int(line.keyword, line.raw)));
            for (const auto& tok : line.tokens) {
                lits.push_back(static_cast<int>(to_int(tok, line.raw)));
            }
            if (lits.empty() || lits.back() != 0) bad_line(line.raw);
            lits.pop_back();
            if (lits.size() != 3) {
                throw std::invalid_argument(
                    "instance file: max3sat clauses need exactly 3 literals: " + line.raw);
            }
            inst.clauses.push_back(Clause{lits[0], lits[1], lits[2]});
        }
    }
    if (!have_header) {
        throw std::invalid_argument("instance file: missing 'p cnf N M' header");
    }
    return ProblemInstance(std::move(inst));
}

ProblemInstance parse_tsp(const std::vector<Line>& lines) {
    TspInstance inst;
    for (const Line& line : lines) {
        if (line.keyword == "nodes") {
            continue;  // implied by the weight rows
        } else if (line.keyword == "w") {
            inst.weights.push_back(to_doubles(line));
        } else if (line.keyword == "start") {
            inst.start = static_cast<std::size_t>(to_int(line.tokens.at(0), line.raw));
        } else if (line.keyword == "weights") {
            if (line.tokens.size() != 2) bad_line(line.raw);
            inst.weight_a = to_double(line.tokens[0], line.raw);
            inst.weight_b = to_double(line.tokens[1], line.raw);
        } else {
            bad_line(line.raw);
        }
    }
    return ProblemInstance(std::move(inst));
}

ProblemInstance parse_graph_coloring(const std::vector<Line>& lines) {
    GraphColoringInstance inst;
    inst.graph = parse_graph_lines(lines, "edge");
    for (const Line& line : lines) {
        if (line.keyword == "colors") {
            inst.n_colors = static_cast<std::size_t>(to_int(line.tokens.at(0), line.raw));
        } else if (line.keyword == "weights") {
            if (line.tokens.size() != 2) bad_line(line.raw);
            inst.weight_a = to_double(line.tokens[0], line.raw);
            inst.weight_b = to_double(line.tokens[1], line.raw);
        } else if (line.keyword != "nodes" && line.keyword != "edge") {
            bad_line(line.raw);
        }
    }
    return ProblemInstance(std::move(inst));
}

ProblemInstance parse_graph_isomorphism(const std::vector<Line>& lines) {
    GraphIsomorphismInstance inst;
    inst.g1 = parse_graph_lines(lines, "g1");
    inst.g2 = parse_graph_lines(lines, "g2");
    for (const Line& line : lines) {
        if (line.keyword == "weights") {
            if (line.tokens.size() != 2) bad_line(line.raw);
            inst.weight_a = to_double(line.tokens[0], line.raw);
            inst.weight_b = to_double(line.tokens[1], line.raw);
        } else if (line.keyword != "nodes" && line.keyword != "g1" &&
                   line.keyword != "g2") {
            bad_line(line.raw);
        }
    }
    return ProblemInstance(std::move(inst));
}

}  // namespace

ProblemInstance load_instance(Kind kind, std::istream& in) {
    const auto lines = read_lines(in);
    switch (kind) {
        case Kind::ExactCover: return parse_exact_cover(lines);
        case Kind::MaxCut:
            return ProblemInstance(MaxCutInstance{parse_graph_lines(lines, "edge")});
        case Kind::NumberPartitioning: return parse_number_partitioning(lines);
        case Kind::GateAssignment: return parse_gate_assignment(lines);
        case Kind::MaxThreeSat: return parse_max3sat(lines);
        case Kind::Tsp: return parse_tsp(lines);
        case Kind::GraphColoring: return parse_graph_coloring(lines);
        case Kind::GraphIsomorphism: return parse_graph_isomorphism(lines);
    }
    throw std::logic_error("load_instance: unreachable");
}

ProblemInstance load_instance_file(Kind kind, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    return load_instance(kind, in);
}

namespace {

void write_matrix(std::ostream& out, const char* key,
                  const std::vector<std::vector<double>>& m) {
    for (const auto& row : m) {
        out << key;
        for (double v : row) out << ' ' << v;
        out << '\n';
    }
}

void write_graph(std::ostream& out, const Graph& g, const char* edge_key,
                 bool with_nodes) {
    if (with_nodes) out << "nodes " << g.num_nodes() << '\n';
    for (auto [u, v] : g.edges()) {
        out << edge_key << ' ' << u << ' ' << v << '\n';
    }
}

}  // namespace

void save_instance(const ProblemInstance& inst, std::ostream& out) {
    out.precision(17);  // integer coefficients stay clean, doubles round-trip
    struct Visitor {
        std::ostream& out;
        void operator()(const ExactCoverInstance& p) {
            out << "universe";
            for (int e : p.universe) out << ' ' << e;
            out << '\n';
            for (const auto& sub : p.subsets) {
                out << "subset";
                for (int e : sub) out << ' ' << e;
                out << '\n';
            }
        }
        void operator()(const MaxCutInstance& p) { write_graph(out, p.graph, "edge", true); }
        void operator()(const NumberPartitioningInstance& p) {
            out << "numbers";
            for (long long n : p.numbers) out << ' ' << n;
            out << '\n';
            out << "weight " << p.weight_a << '\n';
        }
        void operator()(const GateAssignmentInstance& p) {
            out << "planes " << p.n_planes << '\n';
            out << "gates " << p.m_gates << '\n';
            write_matrix(out, "p", p.passengers);
            write_matrix(out, "d", p.distances);
            write_matrix(out, "a", p.assign_cost);
            if (p.weight_a > 0.0 && p.weight_b > 0.0) {
                out << "weights " << p.weight_a << ' ' << p.weight_b << '\n';
            }
        }
        void operator()(const MaxThreeSatInstance& p) {
            out << "p cnf " << p.n_vars << ' ' << p.clauses.size() << '\n';
            for (const Clause& cl : p.clauses) {
                out << cl[0] << ' ' << cl[1] << ' ' << cl[2] << " 0\n";
            }
        }
        void operator()(const TspInstance& p) {
            out << "nodes " << p.weights.size() << '\n';
            write_matrix(out, "w", p.weights);
            out << "start " << p.start << '\n';
            if (p.weight_a > 0.0) {
                out << "weights " << p.weight_a << ' ' << p.weight_b << '\n';
            }
        }
        void operator()(const GraphColoringInstance& p) {
            out << "colors " << p.n_colors << '\n';
            write_graph(out, p.graph, "edge", true);
            if (p.weight_a > 0.0) {
                out << "weights " << p.weight_a << ' ' << p.weight_b << '\n';
            }
        }
        void operator()(const GraphIsomorphismInstance& p) {
            out << "nodes " << p.g1.num_nodes() << '\n';
            write_graph(out, p.g1, "g1", false);
            write_graph(out, p.g2, "g2", false);
            if (p.weight_a > 0.0) {
                out << "weights " << p.weight_a << ' ' << p.weight_b << '\n';
            }
        }
    };
    std::visit(Visitor{out}, inst.payload());
}

void save_instance_file(const ProblemInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    save_instance(inst, out);
}

Graph load_graph(std::istream& in) {
    return parse_graph_lines(read_lines(in), "edge");
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    return load_graph(in);
}

}  // namespace quboprune
