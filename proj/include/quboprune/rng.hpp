#pragma once

#include <cstdint>
#include <cstddef>
#include <numeric>
#include <vector>

namespace quboprune {

/// Deterministic splitmix64 generator. Used instead of the standard
/// <random> distributions so that seeded results are identical across
/// platforms and standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Requires n >= 1.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    bool bit() { return (next() & 1ULL) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), std::size_t{0});
        shuffle(p);
        return p;
    }

    /// Stable seed derivation for named sub-streams of a master seed.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t stream) {
        Rng r(master ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
        return r.next();
    }

private:
    std::uint64_t state_;
};

}  // namespace quboprune
