#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace trapbench {

/// Seedable random stream used by every stochastic component.
///
/// The engine is std::mt19937_64 (bit-exact across platforms) and all
/// derived draws (uniform ints via rejection sampling, doubles from the
/// top 53 bits) are implemented here so a run replays identically no
/// matter which standard library the binary was built against.
/// Streams are single-owner: one stream per run, never shared.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    bool bernoulli(double p) { return next_double() < p; }

    /// Derive a labelled child seed, e.g. the per-run "env" and "algo"
    /// streams from one base seed. splitmix64 over base ^ FNV-1a(label).
    static std::uint64_t derive_seed(std::uint64_t base, std::string_view label);

  private:
    std::mt19937_64 engine_;
};

/// k distinct values from [0, n), in draw order (partial Fisher-Yates).
std::vector<std::size_t> sample_distinct(std::size_t k, std::size_t n, Rng& rng);

} // namespace trapbench
