#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ehrxqa {

/// Seeded generator with platform-independent sampling helpers. The std
/// distributions are implementation-defined, so reproducible artifacts
/// (cohorts, QA streams) draw through these instead.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) {
        // Lemire's multiply-shift with rejection.
        std::uint64_t x = next();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        std::uint64_t l = static_cast<std::uint64_t>(m);
        if (l < n) {
            std::uint64_t t = (~n + 1) % n;
            while (l < t) {
                x = next();
                m = static_cast<__uint128_t>(x) * n;
                l = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive bounds
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double uniform01() { return (next() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return uniform01() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[below(items.size())];
    }

    /// Index draw with weights proportional to `weights` (>= 0, not all zero).
    std::size_t weighted(const std::vector<double>& weights) {
        double total = 0;
        for (double w : weights) total += w;
        double r = uniform01() * total;
        double acc = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (r < acc) return i;
        }
        return weights.size() - 1;
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(items[i - 1], items[j]);
        }
    }

    /// Stable sub-stream derivation so independent consumers don't interleave.
    Rng fork(std::uint64_t salt) {
        Rng child(state_ ^ (salt * 0xd1b54a32d192ed03ull + 0x8cb92ba72f3d8dd7ull));
        child.next();
        return child;
    }

  private:
    std::uint64_t state_;
};

/// FNV-1a, used for corpus fingerprints in run manifests.
std::uint64_t fnv1a64(const std::string& data);

}  // namespace ehrxqa
