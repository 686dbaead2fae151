#include "quboprune/qubo.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace quboprune {

Qubo::Qubo(std::size_t n) : n_(n) {
    if (n == 0) {
        throw std::invalid_argument("Qubo: variable count must be at least 1");
    }
}

void Qubo::check_key(std::size_t i, std::size_t j) const {
    if (i > j) {
        throw std::out_of_range("Qubo: lower-triangle key (i > j) rejected");
    }
    if (j >= n_) {
        throw std::out_of_range("Qubo: index out of range");
    }
}

void Qubo::set(std::size_t i, std::size_t j, double value, Tag tag) {
    check_key(i, j);
    if (!std::isfinite(value)) {
        throw std::invalid_argument("Qubo: entry value must be finite");
    }
    if (value == 0.0) {
        entries_.erase({i, j});
    } else {
        entries_[{i, j}] = Entry{value, tag};
    }
}

void Qubo::add(std::size_t i, std::size_t j, double value, Tag tag) {
    check_key(i, j);
    if (!std::isfinite(value)) {
        throw std::invalid_argument("Qubo: entry value must be finite");
    }
    auto it = entries_.find({i, j});
    if (it == entries_.end()) {
        if (value != 0.0) {
            entries_[{i, j}] = Entry{value, tag};
        }
        return;
    }
    const Tag merged =
        (it->second.tag == Tag::Hard || tag == Tag::Hard) ? Tag::Hard : Tag::Soft;
    const double sum = it->second.value + value;
    if (sum == 0.0) {
        entries_.erase(it);
    } else {
        it->second = Entry{sum, merged};
    }
}

void Qubo::erase(std::size_t i, std::size_t j) {
    check_key(i, j);
    entries_.erase({i, j});
}

bool Qubo::contains(std::size_t i, std::size_t j) const {
    return entries_.count({i, j}) != 0;
}

const Entry* Qubo::find(std::size_t i, std::size_t j) const {
    auto it = entries_.find({i, j});
    return it == entries_.end() ? nullptr : &it->second;
}

EntryStats Qubo::stats() const {
    EntryStats s;
    s.total = entries_.size();
    for (const auto& [key, entry] : entries_) {
        if (entry.tag == Tag::Hard) {
            ++s.hard;
        } else {
            ++s.soft;
            if (key.first != key.second) ++s.soft_offdiagonal;
        }
    }
    return s;
}

double Qubo::energy(const Assignment& a) const {
    if (a.size() != n_) {
        throw std::invalid_argument("Qubo::energy: assignment length mismatch");
    }
    double e = offset_;
    for (const auto& [key, entry] : entries_) {
        if (a[key.first] && a[key.second]) e += entry.value;
    }
    return e;
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void save_qubo(std::ostream& out, const Qubo& q) {
    out << q.num_vars() << ' ' << format_double(q.offset()) << '\n';
    for (const auto& [key, entry] : q.entries()) {
        out << key.first << ' ' << key.second << ' ' << format_double(entry.value)
            << ' ' << (entry.tag == Tag::Hard ? 'H' : 'S') << '\n';
    }
}

Qubo load_qubo(std::istream& in) {
    std::size_t n = 0;
    double offset = 0.0;
    if (!(in >> n >> offset)) {
        throw std::invalid_argument("load_qubo: missing header line");
    }
    Qubo q(n);
    q.set_offset(offset);
    std::size_t i = 0, j = 0;
    double value = 0.0;
    char tag = 0;
    while (in >> i >> j >> value >> tag) {
        if (tag != 'H' && tag != 'S') {
            throw std::invalid_argument("load_qubo: bad tag, expected H or S");
        }
        q.set(i, j, value, tag == 'H' ? Tag::Hard : Tag::Soft);
    }
    if (!in.eof() && in.fail()) {
        throw std::invalid_argument("load_qubo: malformed entry line");
    }
    return q;
}

void save_qubo_file(const std::string& path, const Qubo& q) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_qubo_file: cannot open " + path);
    save_qubo(out, q);
}

Qubo load_qubo_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_qubo_file: cannot open " + path);
    return load_qubo(in);
}

}  // namespace quboprune
