#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "trapbench/harness.hpp"

namespace {

using namespace trapbench;

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty())
        std::filesystem::create_directories(parent);
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    for (const auto& line : lines)
        out << line << '\n';
}

void dump_mask_sidecars(const Plan& plan, const std::string& out_dir) {
    for (double rho : plan.rhos)
        for (int r = 0; r < plan.runs; ++r) {
            const std::uint64_t seed = plan.seed_base + static_cast<std::uint64_t>(r);
            const auto lines = mask_sequence(plan.problem.length(), rho, plan.periods, seed);
            write_lines(out_dir + "/masks/rho" + fmt_double(rho) + "_seed" +
                            std::to_string(seed) + ".txt",
                        lines);
        }
}

int cmd_run(const std::string& plan_path, const std::string& out_dir, int jobs,
            std::int64_t seed_base, bool with_plots) {
    Plan plan = load_plan(plan_path);
    if (seed_base >= 0)
        plan.seed_base = static_cast<std::uint64_t>(seed_base);
    const auto cells = run_plan_cells(plan, jobs, with_plots);
    write_summary_csv(out_dir + "/summary.csv", plan, cells);
    write_runmeans_csv(out_dir + "/runmeans.csv", plan, cells);
    if (with_plots)
        for (const auto& cell : cells)
            write_plot_csv(out_dir + "/plots/" + scenario_slug(cell.spec) + ".csv", plan, cell);
    if (plan.dump_masks)
        dump_mask_sidecars(plan, out_dir);
    std::cout << "wrote " << out_dir << "/summary.csv (" << cells.size() << " scenario cells, "
              << plan.runs << " runs each)\n";
    return 0;
}

int cmd_sweep(const std::string& plan_path, const std::string& out_dir, int jobs,
              std::int64_t seed_base) {
    Plan plan = load_plan(plan_path);
    if (seed_base >= 0)
        plan.seed_base = static_cast<std::uint64_t>(seed_base);
    const auto cells = run_plan_cells(plan, jobs, false);
    write_summary_csv(out_dir + "/summary.csv", plan, cells);
    write_runmeans_csv(out_dir + "/runmeans.csv", plan, cells);
    write_curves_csv(out_dir + "/curves.csv", plan, cells);
    std::cout << "wrote " << out_dir << "/summary.csv, runmeans.csv, curves.csv ("
              << cells.size() << " scenario cells)\n";
    return 0;
}

int cmd_replay(const std::string& plan_path, const std::string& out_dir,
               std::int64_t seed_flag) {
    Plan plan = load_plan(plan_path);
    const std::uint64_t seed =
        seed_flag >= 0 ? static_cast<std::uint64_t>(seed_flag) : plan.seed_base;
    for (const auto& algorithm : plan.algorithms)
        for (int population : plan.populations)
            for (double pm : plan.mutation_rates)
                for (std::uint64_t epsilon : plan.epsilons)
                    for (double rho : plan.rhos) {
                        RunRequest request;
                        request.problem = plan.problem;
                        request.dynamics = DynamicsSpec{rho, epsilon, plan.periods};
                        request.algorithm = algorithm;
                        request.ops.crossover_prob = plan.crossover_prob;
                        request.ops.selection = plan.selection;
                        request.ops.mutation_prob = pm;
                        request.params = plan.params;
                        request.population = population;
                        request.seed = seed;
                        RunControl control;
                        control.want_trace = true;
                        control.want_masks = plan.dump_masks;
                        const RunResult result = execute_run(request, control);
                        const ScenarioSpec spec{algorithm, population, pm, rho, epsilon};
                        const std::string slug =
                            scenario_slug(spec) + "_seed" + std::to_string(seed);
                        write_trace_csv(out_dir + "/trace_" + slug + ".csv", plan, spec, seed,
                                        result.trace);
                        if (plan.dump_masks)
                            write_lines(out_dir + "/masks/" + slug + ".txt", result.mask_lines);
                    }
    std::cout << "wrote traces under " << out_dir << " for seed " << seed << "\n";
    return 0;
}

std::string pick_algorithm(const ResultSet& set, const std::string& requested,
                           const std::string& which) {
    if (!requested.empty()) {
        for (const auto& name : set.algorithms())
            if (name == requested)
                return requested;
        throw ConfigError("compare: result set carries no rows for algorithm `" + requested +
                          "`");
    }
    const auto names = set.algorithms();
    if (names.size() != 1)
        throw ConfigError("compare: result set holds " + std::to_string(names.size()) +
                          " algorithms; pick one with --algo-" + which);
    return names.front();
}

int cmd_compare(const std::string& path_a, const std::string& path_b, std::string algo_a,
                std::string algo_b, bool paired, const std::string& out_dir) {
    const ResultSet a = load_runmeans_csv(path_a);
    const ResultSet b = load_runmeans_csv(path_b);
    algo_a = pick_algorithm(a, algo_a, "a");
    algo_b = pick_algorithm(b, algo_b, "b");
    const auto cells = compare_result_sets(a, b, algo_a, algo_b, paired);
    write_verdicts_csv(out_dir + "/verdicts.csv", algo_a, algo_b, paired, cells);
    const std::string grid = render_verdict_grid(algo_a, algo_b, cells);
    write_lines(out_dir + "/verdicts.txt", {grid});
    std::cout << grid;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic deceptive trap-function benchmark for dissortative-mating GAs"};
    app.require_subcommand(1);

    std::string plan_path;
    std::string out_dir = "out";
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::int64_t seed_base = -1;
    std::int64_t seed = -1;
    bool no_plots = false;

    auto* run = app.add_subcommand("run", "run one plan and emit summaries plus plot data");
    run->add_option("--plan", plan_path, "plan file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--jobs", jobs, "worker threads");
    run->add_option("--seed-base", seed_base, "override the plan's base seed");
    run->add_flag("--no-plots", no_plots, "skip per-scenario plot files");

    auto* sweep = app.add_subcommand("sweep", "run a parameter grid and emit response curves");
    sweep->add_option("--plan", plan_path, "plan file")->required();
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--jobs", jobs, "worker threads");
    sweep->add_option("--seed-base", seed_base, "override the plan's base seed");

    auto* replay = app.add_subcommand("replay", "trace a single seed in full detail");
    replay->add_option("--plan", plan_path, "plan file")->required();
    replay->add_option("--seed", seed, "seed to replay (default: the plan's base seed)");
    replay->add_option("--out", out_dir, "output directory");

    std::string path_a, path_b, algo_a, algo_b;
    bool paired = false;
    auto* compare = app.add_subcommand("compare", "t-test two result sets into a verdict table");
    compare->add_option("first", path_a, "first runmeans.csv")->required();
    compare->add_option("second", path_b, "second runmeans.csv")->required();
    compare->add_option("--algo-a", algo_a, "algorithm from the first set");
    compare->add_option("--algo-b", algo_b, "algorithm from the second set");
    compare->add_flag("--paired-ttest", paired, "paired test (df = R-1) instead of pooled");
    compare->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(run))
            return cmd_run(plan_path, out_dir, jobs, seed_base, !no_plots);
        if (app.got_subcommand(sweep))
            return cmd_sweep(plan_path, out_dir, jobs, seed_base);
        if (app.got_subcommand(replay))
            return cmd_replay(plan_path, out_dir, seed);
        if (app.got_subcommand(compare))
            return cmd_compare(path_a, path_b, algo_a, algo_b, paired, out_dir);
    } catch (const trapbench::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
