#include "trapbench/metrics.hpp"

#include <stdexcept>

namespace trapbench {

BestOfGenerationSummary mean_best_of_generation(std::span<const RunTrace> traces) {
    std::vector<std::vector<double>> matrix;
    matrix.reserve(traces.size());
    for (const auto& trace : traces) {
        std::vector<double> row;
        row.reserve(trace.rows.size());
        for (const auto& r : trace.rows)
            row.push_back(r.best_fitness);
        matrix.push_back(std::move(row));
    }
    return mean_best_of_generation(matrix);
}

BestOfGenerationSummary mean_best_of_generation(
    const std::vector<std::vector<double>>& best_per_generation) {
    if (best_per_generation.empty())
        throw std::invalid_argument("mean_best_of_generation: no runs");
    const std::size_t generations = best_per_generation.front().size();
    if (generations == 0)
        throw std::invalid_argument("mean_best_of_generation: empty runs");
    for (const auto& run : best_per_generation)
        if (run.size() != generations)
            throw std::invalid_argument("mean_best_of_generation: ragged traces");

    BestOfGenerationSummary out;
    out.per_run_means.reserve(best_per_generation.size());
    for (const auto& run : best_per_generation) {
        double total = 0.0;
        for (double v : run)
            total += v;
        out.per_run_means.push_back(total / static_cast<double>(generations));
    }
    double total = 0.0;
    for (double m : out.per_run_means)
        total += m;
    out.fbg_mean = total / static_cast<double>(out.per_run_means.size());
    return out;
}

double averaged_fbg(std::span<const double> scenario_means) {
    if (scenario_means.empty())
        throw std::invalid_argument("averaged_fbg: empty scenario list");
    double total = 0.0;
    for (double v : scenario_means)
        total += v;
    return total / static_cast<double>(scenario_means.size());
}

double diversity_estimate(const Population& pop, std::size_t sample_pairs, Rng& rng) {
    if (pop.size() < 2)
        throw std::invalid_argument("diversity_estimate: need at least two members");
    const std::size_t n = pop.size();
    if (n <= kExactDiversityLimit) {
        std::size_t total = 0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                total += hamming(pop[i].genome, pop[j].genome);
        return static_cast<double>(total) / (static_cast<double>(n) * (n - 1) / 2.0);
    }
    std::size_t total = 0;
    for (std::size_t k = 0; k < sample_pairs; ++k) {
        const std::size_t i = rng.below(n);
        std::size_t j = rng.below(n - 1);
        if (j >= i)
            ++j;
        total += hamming(pop[i].genome, pop[j].genome);
    }
    return static_cast<double>(total) / static_cast<double>(sample_pairs);
}

} // namespace trapbench
