#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace quboprune {

/// Binary assignment, one 0/1 value per variable.
using Assignment = std::vector<std::uint8_t>;

/// Marks whether an entry encodes a hard (validity) constraint or a soft
/// (objective) term. Pruning only ever removes soft off-diagonal entries.
enum class Tag : std::uint8_t { Hard, Soft };

struct Entry {
    double value = 0.0;
    Tag tag = Tag::Soft;

    bool operator==(const Entry&) const = default;
};

struct EntryStats {
    std::size_t total = 0;
    std::size_t hard = 0;
    std::size_t soft = 0;
    std::size_t soft_offdiagonal = 0;
};

/// Sparse upper-triangular QUBO over n binary variables:
///
///   energy(x) = offset + sum_i q(i,i) x_i + sum_{i<j} q(i,j) x_i x_j
///
/// Entries are keyed by (i, j) with i <= j; (i, j) with i > j is rejected.
/// Stored values are finite and non-zero; writing an exact 0 removes the
/// entry. The entry map is ordered, so iteration (and hence energy
/// evaluation and serialization) is deterministic.
class Qubo {
public:
    using Key = std::pair<std::size_t, std::size_t>;
    using EntryMap = std::map<Key, Entry>;

    explicit Qubo(std::size_t n);

    std::size_t num_vars() const { return n_; }

    double offset() const { return offset_; }
    void set_offset(double v) { offset_ = v; }
    void add_offset(double v) { offset_ += v; }

    /// Stores entry (i, j), overwriting value and tag. A value of exactly 0
    /// erases the entry instead.
    void set(std::size_t i, std::size_t j, double value, Tag tag);

    /// Accumulates into entry (i, j). Hard absorbs Soft: if either the
    /// existing or the added contribution is Hard, the entry stays Hard.
    void add(std::size_t i, std::size_t j, double value, Tag tag);

    void erase(std::size_t i, std::size_t j);

    bool contains(std::size_t i, std::size_t j) const;

    /// Pointer to the stored entry, or nullptr if absent.
    const Entry* find(std::size_t i, std::size_t j) const;

    const EntryMap& entries() const { return entries_; }

    EntryStats stats() const;

    double energy(const Assignment& a) const;

    bool operator==(const Qubo&) const = default;

private:
    void check_key(std::size_t i, std::size_t j) const;

    std::size_t n_;
    double offset_ = 0.0;
    EntryMap entries_;
};

/// Plain-text serialization: header line "n offset", then one
/// "i j value tag" line per entry with tag in {H, S}. Values are printed
/// with enough digits to round-trip doubles exactly.
void save_qubo(std::ostream& out, const Qubo& q);
Qubo load_qubo(std::istream& in);
void save_qubo_file(const std::string& path, const Qubo& q);
Qubo load_qubo_file(const std::string& path);

}  // namespace quboprune
