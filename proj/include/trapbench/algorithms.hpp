#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trapbench/dynenv.hpp"
#include "trapbench/gacore.hpp"

namespace trapbench {

/// Per-variant knobs. Everything else comes from OperatorConfig.
struct AlgorithmParams {
    int pool = 4;             // AMGA pool size n
    int immigrants = -1;      // RIGA rr; -1 resolves to round(N * 4 / 30)
    bool static_threshold = false; // ADMGA initial T = L-1 instead of floor(L/4)
};

int resolve_immigrant_count(int immigrants, int capacity);

/// Generation-step state machine. All variants follow the same budget
/// protocol: one step (re-)evaluates the whole population under the
/// current mask, charging exactly N evaluations, so epsilon-based change
/// scheduling treats every variant identically. init() performs the first
/// generation's evaluation of the random initial population.
class Algorithm {
  public:
    virtual ~Algorithm() = default;
    virtual std::string_view name() const = 0;
    virtual void init(Environment& env, Rng& rng) = 0;
    virtual void step(Environment& env, Rng& rng) = 0;
    virtual const Population& population() const = 0;
    /// ADMGA's current mating threshold; empty for other variants.
    virtual std::optional<int> threshold() const { return std::nullopt; }
};

/// One batch of N/2 mating events: how many pairs recombined, how many
/// were rejected by the threshold, and the threshold after the batch's
/// adjustment.
struct AdmgaMatingBatch {
    int successes = 0;
    int failures = 0;
    int threshold_after = 0;
};

struct AdmgaCreateResult {
    std::vector<Bitstring> offspring; // two children per successful mating
    int threshold = 0;                // value after the final batch, clamped to [0, L]
    std::vector<AdmgaMatingBatch> batches;
};

/// Assortative partner choice: draw `pool` distinct candidates (never
/// the first parent itself), then return the one farthest from the first
/// parent (dissortative) or nearest to it (assortative). Ties keep the
/// earliest-drawn candidate.
std::size_t amga_pick_partner(std::size_t first, const Population& pop, int pool,
                              bool dissortative, Rng& rng);

/// ADMGA reproduction: batches of N/2 pair selections where a pair
/// recombines only if its Hamming distance is at least the threshold.
/// After each batch the threshold drops by one if failed matings
/// outnumber successful ones (counters accumulate across batches) and
/// rises by one otherwise; batches repeat until at least one mating has
/// succeeded. The floor at T=0 guarantees termination: every pair
/// succeeds there.
AdmgaCreateResult admga_create_new(const Population& pop, int threshold,
                                   const OperatorConfig& cfg, Rng& rng);

/// Stationary-problem ADMGA (initial T = L-1, offspring merged with the
/// parents and truncated to the best N, only new individuals evaluated).
/// Stops when the problem's maximum fitness is reached or the evaluation
/// budget runs out.
struct StaticSolveResult {
    bool solved = false;
    std::uint64_t evaluations = 0;
    double best_fitness = 0.0;
    int generations = 0;
};

StaticSolveResult admga_solve_static(const ConcatTrapProblem& problem, int capacity,
                                     double pm, std::uint64_t seed,
                                     std::uint64_t max_evaluations);

/// Factory registry keyed by the config-facing names (gga, ssga, admga,
/// riga_worst, riga_random, namga, pamga). Additional variants can be
/// registered at runtime and benchmarked through the same harness.
using AlgorithmFactory = std::function<std::unique_ptr<Algorithm>(
    const OperatorConfig&, const AlgorithmParams&, int capacity)>;

class AlgorithmRegistry {
  public:
    static AlgorithmRegistry& instance();

    void register_factory(const std::string& name, AlgorithmFactory factory);
    std::unique_ptr<Algorithm> create(const std::string& name, const OperatorConfig& cfg,
                                      const AlgorithmParams& params, int capacity) const;
    bool contains(const std::string& name) const;
    std::vector<std::string> names() const;

  private:
    AlgorithmRegistry();
    std::vector<std::pair<std::string, AlgorithmFactory>> factories_;
};

} // namespace trapbench
