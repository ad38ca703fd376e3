#include "trapbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace trapbench {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

void write_meta(std::ofstream& out, const Plan& plan) {
    out << "# trapbench " << kVersion << "\n";
    for (const auto& line : plan.echo_lines())
        out << "# " << line << "\n";
}

std::ofstream open_out(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty())
        std::filesystem::create_directories(parent);
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    return out;
}

double sample_std(const std::vector<double>& values, double mean) {
    if (values.size() < 2)
        return 0.0;
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

} // namespace

void parallel_for(int jobs, std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(jobs), count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

RunResult execute_run(const RunRequest& request, const RunControl& control) {
    request.problem.validate();
    request.dynamics.validate();
    request.ops.validate();
    const auto population = static_cast<std::uint64_t>(request.population);
    if (request.dynamics.epsilon % population != 0)
        throw ConfigError("epsilon " + std::to_string(request.dynamics.epsilon) +
                          " is not divisible by population size " +
                          std::to_string(request.population));
    if (!AlgorithmRegistry::instance().contains(request.algorithm))
        throw ConfigError("unknown algorithm: " + request.algorithm);

    const std::uint64_t generations =
        static_cast<std::uint64_t>(request.dynamics.periods) * request.dynamics.epsilon /
        population;

    Environment env =
        request.static_environment
            ? Environment(request.problem)
            : Environment(request.problem, request.dynamics,
                          Rng::derive_seed(request.seed, "env"));
    Rng algo_rng(Rng::derive_seed(request.seed, "algo"));
    Rng metrics_rng(Rng::derive_seed(request.seed, "metrics"));
    auto algorithm = AlgorithmRegistry::instance().create(request.algorithm, request.ops,
                                                          request.params, request.population);

    RunResult result;
    if (control.want_best_series)
        result.best_series.reserve(generations);
    if (control.want_trace)
        result.trace.rows.reserve(generations);
    if (control.want_masks)
        result.mask_lines.push_back(env.mask_string());

    double best_sum = 0.0;
    for (std::uint64_t g = 0; g < generations; ++g) {
        if (g == 0)
            algorithm->init(env, algo_rng);
        else
            algorithm->step(env, algo_rng);

        const Population& pop = algorithm->population();
        const double best = pop[best_index(pop)].fitness;
        best_sum += best;
        result.run_max_best = std::max(result.run_max_best, best);
        if (control.want_best_series)
            result.best_series.push_back(best);
        if (control.want_trace) {
            TraceRow row;
            row.generation = static_cast<int>(g);
            row.evaluations = env.evaluations();
            // static runs report the schedule position the same way the
            // mask accounting would
            row.period = env.is_dynamic()
                             ? env.period()
                             : static_cast<int>(std::min<std::uint64_t>(
                                   g * population / request.dynamics.epsilon,
                                   static_cast<std::uint64_t>(request.dynamics.periods - 1)));
            row.best_fitness = best;
            row.mean_fitness = mean_fitness(pop);
            row.threshold = algorithm->threshold();
            row.diversity = diversity_estimate(pop, kDefaultDiversityPairs, metrics_rng);
            result.trace.rows.push_back(row);
        }

        const int advances = env.maybe_change();
        if (control.want_masks)
            for (int a = 0; a < advances; ++a)
                result.mask_lines.push_back(env.mask_string());
    }
    result.run_mean_best = best_sum / static_cast<double>(generations);
    result.evaluations = env.evaluations();
    return result;
}

ScenarioResult run_scenario(const ScenarioRequest& request) {
    ScenarioResult out;
    out.spec = request.spec;
    out.per_run_means.assign(request.runs, 0.0);
    std::vector<std::vector<double>> series;
    if (request.collect_aggregate)
        series.assign(request.runs, {});

    OperatorConfig ops = request.base_ops;
    ops.mutation_prob = request.spec.pm;

    parallel_for(request.jobs, static_cast<std::size_t>(request.runs), [&](std::size_t r) {
        RunRequest run;
        run.problem = request.problem;
        run.dynamics = DynamicsSpec{request.spec.rho, request.spec.epsilon, request.periods};
        run.algorithm = request.spec.algorithm;
        run.ops = ops;
        run.params = request.params;
        run.population = request.spec.population;
        run.seed = request.seed_base + r;
        RunControl control;
        control.want_best_series = request.collect_aggregate;
        const RunResult res = execute_run(run, control);
        out.per_run_means[r] = res.run_mean_best;
        if (request.collect_aggregate)
            series[r] = std::move(res.best_series);
    });

    double total = 0.0;
    for (double m : out.per_run_means)
        total += m;
    out.fbg_mean = total / static_cast<double>(out.per_run_means.size());
    out.fbg_std = sample_std(out.per_run_means, out.fbg_mean);

    if (request.collect_aggregate && !series.empty()) {
        const std::size_t generations = series.front().size();
        out.best_aggregate.resize(generations);
        for (std::size_t g = 0; g < generations; ++g) {
            double lo = series[0][g], hi = series[0][g], sum = 0.0;
            for (const auto& run : series) {
                lo = std::min(lo, run[g]);
                hi = std::max(hi, run[g]);
                sum += run[g];
            }
            out.best_aggregate[g] = {sum / static_cast<double>(series.size()), lo, hi};
        }
    }
    return out;
}

std::vector<ScenarioResult> run_plan_cells(const Plan& plan, int jobs, bool collect_aggregate) {
    plan.validate();
    std::vector<ScenarioResult> cells;
    for (const auto& algorithm : plan.algorithms)
        for (int population : plan.populations)
            for (double pm : plan.mutation_rates)
                for (std::uint64_t epsilon : plan.epsilons)
                    for (double rho : plan.rhos) {
                        ScenarioRequest request;
                        request.problem = plan.problem;
                        request.spec = ScenarioSpec{algorithm, population, pm, rho, epsilon};
                        request.base_ops.crossover_prob = plan.crossover_prob;
                        request.base_ops.selection = plan.selection;
                        request.params = plan.params;
                        request.runs = plan.runs;
                        request.periods = plan.periods;
                        request.seed_base = plan.seed_base;
                        request.jobs = jobs;
                        request.collect_aggregate = collect_aggregate;
                        cells.push_back(run_scenario(request));
                    }
    return cells;
}

std::vector<std::string> mask_sequence(std::size_t genome_length, double rho, int periods,
                                       std::uint64_t seed) {
    MaskState state = initial_mask(genome_length, rho);
    Rng rng(Rng::derive_seed(seed, "env"));
    std::vector<std::string> lines{state.mask.to_string()};
    for (int k = 1; k < periods; ++k) {
        advance_mask(state, rng);
        lines.push_back(state.mask.to_string());
    }
    return lines;
}

std::string scenario_slug(const ScenarioSpec& spec) {
    std::ostringstream out;
    out << spec.algorithm << "_N" << spec.population << "_pm" << fmt_double(spec.pm) << "_eps"
        << spec.epsilon << "_rho" << fmt_double(spec.rho);
    return out.str();
}

void write_summary_csv(const std::string& path, const Plan& plan,
                       const std::vector<ScenarioResult>& cells) {
    auto out = open_out(path);
    write_meta(out, plan);
    out << "algorithm,N,pm,rho,epsilon,fbg_mean,fbg_std_across_runs\n";
    for (const auto& cell : cells)
        out << cell.spec.algorithm << ',' << cell.spec.population << ','
            << fmt_double(cell.spec.pm) << ',' << fmt_double(cell.spec.rho) << ','
            << cell.spec.epsilon << ',' << fmt_double(cell.fbg_mean) << ','
            << fmt_double(cell.fbg_std) << '\n';
}

void write_runmeans_csv(const std::string& path, const Plan& plan,
                        const std::vector<ScenarioResult>& cells) {
    auto out = open_out(path);
    write_meta(out, plan);
    out << "algorithm,N,pm,rho,epsilon,fbg_mean";
    for (int r = 1; r <= plan.runs; ++r)
        out << ",run_mean_" << r;
    out << '\n';
    for (const auto& cell : cells) {
        out << cell.spec.algorithm << ',' << cell.spec.population << ','
            << fmt_double(cell.spec.pm) << ',' << fmt_double(cell.spec.rho) << ','
            << cell.spec.epsilon << ',' << fmt_double(cell.fbg_mean);
        for (double m : cell.per_run_means)
            out << ',' << fmt_double(m);
        out << '\n';
    }
}

void write_curves_csv(const std::string& path, const Plan& plan,
                      const std::vector<ScenarioResult>& cells) {
    auto out = open_out(path);
    write_meta(out, plan);
    out << "algorithm,N,pm,epsilon,averaged_fbg,cells\n";
    // preserve cell emission order: algorithm, N, pm, epsilon
    std::vector<std::tuple<std::string, int, double, std::uint64_t>> keys;
    std::map<std::tuple<std::string, int, double, std::uint64_t>, std::vector<double>> groups;
    for (const auto& cell : cells) {
        const auto key = std::make_tuple(cell.spec.algorithm, cell.spec.population,
                                         cell.spec.pm, cell.spec.epsilon);
        if (!groups.count(key))
            keys.push_back(key);
        groups[key].push_back(cell.fbg_mean);
    }
    for (const auto& key : keys) {
        const auto& values = groups[key];
        out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << fmt_double(std::get<2>(key))
            << ',' << std::get<3>(key) << ',' << fmt_double(averaged_fbg(values)) << ','
            << values.size() << '\n';
    }
}

void write_plot_csv(const std::string& path, const Plan& plan, const ScenarioResult& cell) {
    auto out = open_out(path);
    write_meta(out, plan);
    out << "# scenario = " << scenario_slug(cell.spec) << "\n";
    out << "generation,best_fitness_mean,best_fitness_min,best_fitness_max\n";
    for (std::size_t g = 0; g < cell.best_aggregate.size(); ++g)
        out << g << ',' << fmt_double(cell.best_aggregate[g][0]) << ','
            << fmt_double(cell.best_aggregate[g][1]) << ','
            << fmt_double(cell.best_aggregate[g][2]) << '\n';
}

void write_trace_csv(const std::string& path, const Plan& plan, const ScenarioSpec& spec,
                     std::uint64_t seed, const RunTrace& trace) {
    auto out = open_out(path);
    write_meta(out, plan);
    out << "# scenario = " << scenario_slug(spec) << "\n";
    out << "# seed = " << seed << "\n";
    out << "generation,evaluations,period,best_fitness,mean_fitness,threshold,diversity\n";
    for (const auto& row : trace.rows) {
        out << row.generation << ',' << row.evaluations << ',' << row.period << ','
            << fmt_double(row.best_fitness) << ',' << fmt_double(row.mean_fitness) << ',';
        if (row.threshold)
            out << *row.threshold;
        out << ',' << fmt_double(row.diversity) << '\n';
    }
}

std::vector<std::string> ResultSet::algorithms() const {
    std::vector<std::string> out;
    for (const auto& row : rows)
        if (std::find(out.begin(), out.end(), row.algorithm) == out.end())
            out.push_back(row.algorithm);
    return out;
}

ResultSet result_set_from_cells(const Plan& plan, const std::vector<ScenarioResult>& cells) {
    ResultSet set;
    set.runs = plan.runs;
    set.seed_base = plan.seed_base;
    for (const auto& cell : cells) {
        ResultSet::Row row;
        row.algorithm = cell.spec.algorithm;
        row.population = cell.spec.population;
        row.pm = cell.spec.pm;
        row.rho = cell.spec.rho;
        row.epsilon = cell.spec.epsilon;
        row.fbg_mean = cell.fbg_mean;
        row.per_run_means = cell.per_run_means;
        set.rows.push_back(std::move(row));
    }
    return set;
}

ResultSet load_runmeans_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open result set: " + path);
    ResultSet set;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.front() == '#') {
            const std::string meta = line.substr(1);
            const auto eq = meta.find('=');
            if (eq != std::string::npos) {
                std::string key = meta.substr(0, eq);
                std::string value = meta.substr(eq + 1);
                key.erase(0, key.find_first_not_of(' '));
                key.erase(key.find_last_not_of(' ') + 1);
                value.erase(0, value.find_first_not_of(' '));
                if (key == "runs")
                    set.runs = std::stoi(value);
                else if (key == "seed_base")
                    set.seed_base = std::stoull(value);
            }
            continue;
        }
        if (!header_seen) { // column header
            header_seen = true;
            if (line.rfind("algorithm,", 0) != 0)
                throw ConfigError("result set " + path + ": unexpected header: " + line);
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() < 7)
            throw ConfigError("result set " + path + ": short row: " + line);
        ResultSet::Row row;
        row.algorithm = fields[0];
        row.population = std::stoi(fields[1]);
        row.pm = std::stod(fields[2]);
        row.rho = std::stod(fields[3]);
        row.epsilon = std::stoull(fields[4]);
        row.fbg_mean = std::stod(fields[5]);
        for (std::size_t i = 6; i < fields.size(); ++i)
            row.per_run_means.push_back(std::stod(fields[i]));
        set.rows.push_back(std::move(row));
    }
    if (set.runs == 0 || !header_seen)
        throw ConfigError("result set " + path + ": missing metadata or header");
    for (const auto& row : set.rows)
        if (row.per_run_means.size() != static_cast<std::size_t>(set.runs))
            throw ConfigError("result set " + path + ": row does not carry runs=" +
                              std::to_string(set.runs) + " per-run means");
    return set;
}

namespace {

struct CellKey {
    int population;
    std::uint64_t epsilon;
    double rho;
    bool operator<(const CellKey& o) const {
        if (population != o.population)
            return population < o.population;
        if (epsilon != o.epsilon)
            return epsilon < o.epsilon;
        return rho < o.rho;
    }
};

/// pm maximizing the averaged fbg across the rho cells of one
/// (algorithm, N, epsilon) group; ties prefer the smaller pm.
std::map<std::pair<int, std::uint64_t>, double>
best_pm_per_speed(const ResultSet& set, const std::string& algorithm) {
    std::map<std::pair<int, std::uint64_t>, std::map<double, std::vector<double>>> grouped;
    for (const auto& row : set.rows) {
        if (row.algorithm != algorithm)
            continue;
        grouped[{row.population, row.epsilon}][row.pm].push_back(row.fbg_mean);
    }
    std::map<std::pair<int, std::uint64_t>, double> best;
    for (const auto& [key, by_pm] : grouped) {
        double best_pm = 0.0;
        double best_value = -1.0;
        for (const auto& [pm, values] : by_pm) {
            const double avg = averaged_fbg(values);
            if (avg > best_value) {
                best_value = avg;
                best_pm = pm;
            }
        }
        best[key] = best_pm;
    }
    return best;
}

} // namespace

std::vector<VerdictCell> compare_result_sets(const ResultSet& a, const ResultSet& b,
                                             const std::string& algo_a,
                                             const std::string& algo_b, bool paired) {
    if (a.runs != b.runs)
        throw ConfigError("compare: result sets ran different run counts (" +
                          std::to_string(a.runs) + " vs " + std::to_string(b.runs) + ")");
    if (a.seed_base != b.seed_base)
        throw ConfigError("compare: result sets used different seed bases (" +
                          std::to_string(a.seed_base) + " vs " + std::to_string(b.seed_base) +
                          ")");

    const auto best_a = best_pm_per_speed(a, algo_a);
    const auto best_b = best_pm_per_speed(b, algo_b);

    std::set<CellKey> keys;
    for (const auto& row : a.rows)
        if (row.algorithm == algo_a)
            keys.insert({row.population, row.epsilon, row.rho});
    for (const auto& row : b.rows)
        if (row.algorithm == algo_b)
            keys.insert({row.population, row.epsilon, row.rho});

    auto find_row = [](const ResultSet& set, const std::string& algo, const CellKey& key,
                       double pm) -> const ResultSet::Row* {
        for (const auto& row : set.rows)
            if (row.algorithm == algo && row.population == key.population &&
                row.epsilon == key.epsilon && row.rho == key.rho && row.pm == pm)
                return &row;
        return nullptr;
    };

    std::vector<VerdictCell> cells;
    for (const auto& key : keys) {
        VerdictCell cell;
        cell.population = key.population;
        cell.epsilon = key.epsilon;
        cell.rho = key.rho;
        const auto pm_a = best_a.find({key.population, key.epsilon});
        const auto pm_b = best_b.find({key.population, key.epsilon});
        const ResultSet::Row* row_a =
            pm_a == best_a.end() ? nullptr : find_row(a, algo_a, key, pm_a->second);
        const ResultSet::Row* row_b =
            pm_b == best_b.end() ? nullptr : find_row(b, algo_b, key, pm_b->second);
        if (!row_a || !row_b) {
            cell.hole = true;
            cells.push_back(cell);
            continue;
        }
        cell.pm_a = row_a->pm;
        cell.pm_b = row_b->pm;
        cell.fbg_a = row_a->fbg_mean;
        cell.fbg_b = row_b->fbg_mean;
        cell.comparison = paired ? t_test_paired(row_a->per_run_means, row_b->per_run_means)
                                 : t_test_two_sample(row_a->per_run_means, row_b->per_run_means);
        cells.push_back(cell);
    }
    return cells;
}

void write_verdicts_csv(const std::string& path, const std::string& algo_a,
                        const std::string& algo_b, bool paired,
                        const std::vector<VerdictCell>& cells) {
    auto out = open_out(path);
    out << "# trapbench " << kVersion << "\n";
    out << "# first = " << algo_a << "\n";
    out << "# second = " << algo_b << "\n";
    out << "# ttest = " << (paired ? "paired" : "two_sample_pooled") << "\n";
    out << "N,epsilon,rho,pm_first,pm_second,fbg_first,fbg_second,t,df,p,verdict\n";
    for (const auto& cell : cells) {
        out << cell.population << ',' << cell.epsilon << ',' << fmt_double(cell.rho) << ',';
        if (cell.hole) {
            out << ",,,,,,,?\n";
            continue;
        }
        out << fmt_double(cell.pm_a) << ',' << fmt_double(cell.pm_b) << ','
            << fmt_double(cell.fbg_a) << ',' << fmt_double(cell.fbg_b) << ','
            << fmt_double(cell.comparison.t_statistic) << ',' << cell.comparison.degrees_of_freedom
            << ',' << fmt_double(cell.comparison.p_value) << ','
            << verdict_symbol(cell.comparison.verdict) << '\n';
    }
}

std::string render_verdict_grid(const std::string& algo_a, const std::string& algo_b,
                                const std::vector<VerdictCell>& cells) {
    // rows: (N, epsilon); columns: rho
    std::vector<double> rhos;
    for (const auto& cell : cells)
        if (std::find(rhos.begin(), rhos.end(), cell.rho) == rhos.end())
            rhos.push_back(cell.rho);
    std::sort(rhos.begin(), rhos.end());

    std::vector<std::pair<int, std::uint64_t>> groups;
    for (const auto& cell : cells) {
        const auto key = std::make_pair(cell.population, cell.epsilon);
        if (std::find(groups.begin(), groups.end(), key) == groups.end())
            groups.push_back(key);
    }
    std::sort(groups.begin(), groups.end());

    std::ostringstream out;
    out << algo_a << " vs " << algo_b << " (+ means " << algo_a << " significantly better)\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-22s", "");
    out << buf;
    for (double rho : rhos) {
        std::snprintf(buf, sizeof buf, " rho=%-7s", fmt_double(rho).c_str());
        out << buf;
    }
    out << '\n';
    for (const auto& [population, epsilon] : groups) {
        std::snprintf(buf, sizeof buf, "N=%-5d eps=%-10llu", population,
                      static_cast<unsigned long long>(epsilon));
        out << buf;
        for (double rho : rhos) {
            const char* symbol = "?";
            for (const auto& cell : cells)
                if (cell.population == population && cell.epsilon == epsilon &&
                    cell.rho == rho) {
                    symbol = cell.hole ? "?" : verdict_symbol(cell.comparison.verdict);
                    break;
                }
            std::snprintf(buf, sizeof buf, " %-11s", symbol);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace trapbench
