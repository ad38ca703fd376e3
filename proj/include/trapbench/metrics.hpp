#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trapbench/gacore.hpp"

namespace trapbench {

/// One per-generation record of a run.
struct TraceRow {
    int generation = 0;
    std::uint64_t evaluations = 0;
    int period = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    std::optional<int> threshold; // ADMGA only
    double diversity = 0.0;       // mean pairwise Hamming estimate
};

struct RunTrace {
    std::vector<TraceRow> rows;
};

struct BestOfGenerationSummary {
    double fbg_mean = 0.0;              // generation- and run-averaged best fitness
    std::vector<double> per_run_means;  // length R, input for the t-tests
};

/// Mean best-of-generation over R runs of G generations each:
/// average across runs per generation, then across generations.
/// All traces must have identical G.
BestOfGenerationSummary mean_best_of_generation(std::span<const RunTrace> traces);

/// Same computation from a plain best-fitness matrix (rows = runs).
BestOfGenerationSummary mean_best_of_generation(
    const std::vector<std::vector<double>>& best_per_generation);

/// Arithmetic mean of per-scenario fbg values; rejects an empty list.
double averaged_fbg(std::span<const double> scenario_means);

/// Mean pairwise Hamming distance of the population: exact over all
/// pairs when the population holds at most 64 members, otherwise
/// estimated from `sample_pairs` random distinct pairs.
double diversity_estimate(const Population& pop, std::size_t sample_pairs, Rng& rng);

inline constexpr std::size_t kExactDiversityLimit = 64;
inline constexpr std::size_t kDefaultDiversityPairs = 200;

} // namespace trapbench
