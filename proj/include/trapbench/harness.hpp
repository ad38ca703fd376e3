#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "trapbench/config.hpp"
#include "trapbench/metrics.hpp"
#include "trapbench/stats.hpp"

namespace trapbench {

inline constexpr std::string_view kVersion = "0.1.0";

/// One (algorithm, N, pm, rho, epsilon) cell of an experiment.
struct ScenarioSpec {
    std::string algorithm;
    int population = 30;
    double pm = 0.0;
    double rho = 0.0;
    std::uint64_t epsilon = 1;
};

struct RunRequest {
    ConcatTrapProblem problem;
    DynamicsSpec dynamics; // also fixes the generation count for static runs
    std::string algorithm;
    OperatorConfig ops;
    AlgorithmParams params;
    int population = 30;
    std::uint64_t seed = 1;
    /// Run the same schedule against the unmasked static problem; the
    /// trace's period column then reports the schedule position.
    bool static_environment = false;
};

struct RunControl {
    bool want_trace = false;       // full per-generation rows incl. diversity
    bool want_best_series = false; // best-of-generation vector only
    bool want_masks = false;       // one 0/1 line per period
};

struct RunResult {
    double run_mean_best = 0.0; // mean best-of-generation over the run
    double run_max_best = 0.0;
    std::uint64_t evaluations = 0;
    std::vector<double> best_series;
    RunTrace trace;
    std::vector<std::string> mask_lines;
};

/// Execute one seeded run: periods * epsilon / N generations, each
/// charging exactly N evaluations, with the mask advanced on epsilon
/// boundaries after the generation completes. The environment and the
/// algorithm draw from independent streams derived from the seed, so
/// every algorithm sees the identical mask sequence for a given seed.
RunResult execute_run(const RunRequest& request, const RunControl& control);

struct ScenarioRequest {
    ConcatTrapProblem problem;
    ScenarioSpec spec;
    OperatorConfig base_ops; // pm is taken from the `spec` member instead
    AlgorithmParams params;
    int runs = 30;
    int periods = 10;
    std::uint64_t seed_base = 1;
    int jobs = 1;
    bool collect_aggregate = false;
};

struct ScenarioResult {
    ScenarioSpec spec;
    double fbg_mean = 0.0;
    double fbg_std = 0.0; // sample std of the per-run means
    std::vector<double> per_run_means;
    /// Per-generation {mean, min, max} of best fitness across runs,
    /// present when collect_aggregate was set.
    std::vector<std::array<double, 3>> best_aggregate;
};

/// R independent runs over seeds seed_base .. seed_base+R-1.
ScenarioResult run_scenario(const ScenarioRequest& request);

/// Cartesian product of the plan's algorithms x N x pm x epsilon x rho,
/// in that nesting order.
std::vector<ScenarioResult> run_plan_cells(const Plan& plan, int jobs,
                                           bool collect_aggregate = false);

// ---- result files -------------------------------------------------------

void write_summary_csv(const std::string& path, const Plan& plan,
                       const std::vector<ScenarioResult>& cells);
void write_runmeans_csv(const std::string& path, const Plan& plan,
                        const std::vector<ScenarioResult>& cells);
/// Averaged fbg per (algorithm, N, pm, epsilon), the sweep's
/// mutation-rate response curves.
void write_curves_csv(const std::string& path, const Plan& plan,
                      const std::vector<ScenarioResult>& cells);
void write_plot_csv(const std::string& path, const Plan& plan, const ScenarioResult& cell);
void write_trace_csv(const std::string& path, const Plan& plan, const ScenarioSpec& spec,
                     std::uint64_t seed, const RunTrace& trace);

std::string scenario_slug(const ScenarioSpec& spec);

/// The mask sequence a run with this seed observes: M(0) through
/// M(periods-1), one 0/1 line each. Depends only on the genome length,
/// the severity and the seed's env stream, never on the algorithm.
std::vector<std::string> mask_sequence(std::size_t genome_length, double rho, int periods,
                                       std::uint64_t seed);

// ---- comparison ---------------------------------------------------------

struct ResultSet {
    int runs = 0;
    std::uint64_t seed_base = 0;
    struct Row {
        std::string algorithm;
        int population = 0;
        double pm = 0.0;
        double rho = 0.0;
        std::uint64_t epsilon = 0;
        double fbg_mean = 0.0;
        std::vector<double> per_run_means;
    };
    std::vector<Row> rows;

    std::vector<std::string> algorithms() const;
};

ResultSet load_runmeans_csv(const std::string& path);
ResultSet result_set_from_cells(const Plan& plan, const std::vector<ScenarioResult>& cells);

struct VerdictCell {
    int population = 0;
    std::uint64_t epsilon = 0;
    double rho = 0.0;
    bool hole = false; // data missing on either side
    double pm_a = 0.0, pm_b = 0.0;
    double fbg_a = 0.0, fbg_b = 0.0;
    ComparisonVerdict comparison;
};

/// Per (N, epsilon), pick each side's pm maximizing the averaged fbg over
/// that epsilon's rho cells, then t-test the per-run means per scenario.
/// Plus means the first side is significantly better.
std::vector<VerdictCell> compare_result_sets(const ResultSet& a, const ResultSet& b,
                                             const std::string& algo_a,
                                             const std::string& algo_b, bool paired);

void write_verdicts_csv(const std::string& path, const std::string& algo_a,
                        const std::string& algo_b, bool paired,
                        const std::vector<VerdictCell>& cells);
/// Aligned text grid: one row per (N, epsilon) group, one column per rho.
std::string render_verdict_grid(const std::string& algo_a, const std::string& algo_b,
                                const std::vector<VerdictCell>& cells);

/// Run fn(0..count-1) on up to `jobs` worker threads. Rethrows the first
/// task exception after the pool drains.
void parallel_for(int jobs, std::size_t count, const std::function<void(std::size_t)>& fn);

std::string fmt_double(double v);

} // namespace trapbench
