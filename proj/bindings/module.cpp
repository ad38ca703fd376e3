#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trapbench/harness.hpp"

namespace py = pybind11;
using namespace trapbench;

namespace {

ScenarioRequest make_request(int order, int blocks, const std::string& algorithm, int population,
                             double pm, double rho, std::uint64_t epsilon, int periods, int runs,
                             std::uint64_t seed_base, int jobs, int pool, int rr,
                             bool static_threshold, double pc, const std::string& selection) {
    ScenarioRequest request;
    request.problem = ConcatTrapProblem{TrapSpec::canonical(order), blocks};
    request.spec = ScenarioSpec{algorithm, population, pm, rho, epsilon};
    request.base_ops.crossover_prob = pc;
    if (selection == "tournament")
        request.base_ops.selection = SelectionScheme::Tournament;
    else if (selection == "fitness_proportional")
        request.base_ops.selection = SelectionScheme::FitnessProportional;
    else
        throw ConfigError("unknown selection scheme: " + selection);
    request.params.pool = pool;
    request.params.immigrants = rr;
    request.params.static_threshold = static_threshold;
    request.runs = runs;
    request.periods = periods;
    request.seed_base = seed_base;
    request.jobs = jobs;
    return request;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "dynamic deceptive trap-function benchmark with dissortative-mating GAs";

    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next_u64", &Rng::next_u64)
        .def("next_double", &Rng::next_double)
        .def("below", &Rng::below, py::arg("n"))
        .def("bernoulli", &Rng::bernoulli, py::arg("p"))
        .def_static("derive_seed", &Rng::derive_seed, py::arg("base"), py::arg("label"));

    py::class_<Bitstring>(m, "Bitstring")
        .def(py::init<std::size_t>(), py::arg("length"))
        .def_static("parse", &Bitstring::parse, py::arg("text"))
        .def("__len__", &Bitstring::size)
        .def("__str__", &Bitstring::to_string)
        .def("__repr__",
             [](const Bitstring& x) { return "Bitstring('" + x.to_string() + "')"; })
        .def("__eq__", [](const Bitstring& a, const Bitstring& b) { return a == b; })
        .def("test", &Bitstring::test, py::arg("index"))
        .def("count_ones", &Bitstring::count_ones);

    m.def("unitation", &unitation, py::arg("x"));
    m.def("hamming", &hamming, py::arg("a"), py::arg("b"));
    m.def("xor_bits", &xor_bits, py::arg("a"), py::arg("b"));
    m.def("complement", &complement, py::arg("x"));
    m.def("random_bitstring", &random_bitstring, py::arg("length"), py::arg("rng"));

    py::class_<TrapSpec>(m, "TrapSpec")
        .def(py::init<int, double, double, int>(), py::arg("length"), py::arg("local_opt"),
             py::arg("global_opt"), py::arg("slope_change"))
        .def_static("canonical", &TrapSpec::canonical, py::arg("length"))
        .def_readwrite("length", &TrapSpec::length)
        .def_readwrite("local_opt", &TrapSpec::local_opt)
        .def_readwrite("global_opt", &TrapSpec::global_opt)
        .def_readwrite("slope_change", &TrapSpec::slope_change);

    py::class_<ConcatTrapProblem>(m, "ConcatTrapProblem")
        .def(py::init<TrapSpec, int>(), py::arg("block"), py::arg("blocks"))
        .def_readwrite("block", &ConcatTrapProblem::block)
        .def_readwrite("blocks", &ConcatTrapProblem::blocks)
        .def("length", &ConcatTrapProblem::length)
        .def("max_fitness", &ConcatTrapProblem::max_fitness);

    m.def("trap_value", &trap_value, py::arg("u"), py::arg("spec"));
    m.def("deceptiveness_threshold", &deceptiveness_threshold, py::arg("spec"));
    m.def("is_deceptive", &is_deceptive, py::arg("spec"));
    m.def("concat_fitness", &concat_fitness, py::arg("x"), py::arg("problem"));

    py::class_<DynamicsSpec>(m, "DynamicsSpec")
        .def(py::init<double, std::uint64_t, int>(), py::arg("rho"), py::arg("epsilon"),
             py::arg("periods"))
        .def_readwrite("rho", &DynamicsSpec::rho)
        .def_readwrite("epsilon", &DynamicsSpec::epsilon)
        .def_readwrite("periods", &DynamicsSpec::periods);

    m.def("flip_count_for", &flip_count_for, py::arg("rho"), py::arg("genome_length"));

    py::class_<Environment>(m, "Environment")
        .def(py::init<const ConcatTrapProblem&>(), py::arg("problem"))
        .def(py::init<const ConcatTrapProblem&, const DynamicsSpec&, std::uint64_t>(),
             py::arg("problem"), py::arg("dynamics"), py::arg("env_seed"))
        .def("evaluate", &Environment::evaluate, py::arg("x"))
        .def("peek_fitness", &Environment::peek_fitness, py::arg("x"))
        .def("maybe_change", &Environment::maybe_change)
        .def("evaluations", &Environment::evaluations)
        .def("period", &Environment::period)
        .def("is_dynamic", &Environment::is_dynamic)
        .def("mask_string", &Environment::mask_string);

    py::class_<ComparisonVerdict>(m, "ComparisonVerdict")
        .def_readonly("t_statistic", &ComparisonVerdict::t_statistic)
        .def_readonly("degrees_of_freedom", &ComparisonVerdict::degrees_of_freedom)
        .def_readonly("p_value", &ComparisonVerdict::p_value)
        .def_readonly("significant", &ComparisonVerdict::significant)
        .def_property_readonly(
            "verdict", [](const ComparisonVerdict& v) { return verdict_symbol(v.verdict); })
        .def("__repr__", [](const ComparisonVerdict& v) {
            return std::string("ComparisonVerdict(t=") + fmt_double(v.t_statistic) +
                   ", df=" + std::to_string(v.degrees_of_freedom) +
                   ", p=" + fmt_double(v.p_value) + ", verdict='" +
                   verdict_symbol(v.verdict) + "')";
        });

    m.def(
        "t_test_two_sample",
        [](const std::vector<double>& a, const std::vector<double>& b, double alpha) {
            return t_test_two_sample(a, b, alpha);
        },
        py::arg("a"), py::arg("b"), py::arg("alpha") = 0.05);
    m.def(
        "t_test_paired",
        [](const std::vector<double>& a, const std::vector<double>& b, double alpha) {
            return t_test_paired(a, b, alpha);
        },
        py::arg("a"), py::arg("b"), py::arg("alpha") = 0.05);
    m.def("student_t_two_tailed_p", &student_t_two_tailed_p, py::arg("t"), py::arg("df"));
    m.def("t_critical_two_tailed", &t_critical_two_tailed, py::arg("df"), py::arg("alpha"));

    m.def(
        "mean_best_of_generation",
        [](const std::vector<std::vector<double>>& best) {
            const auto summary = mean_best_of_generation(best);
            return py::make_tuple(summary.fbg_mean, summary.per_run_means);
        },
        py::arg("best_per_generation"),
        "returns (fbg_mean, per_run_means) for a runs x generations matrix");
    m.def(
        "averaged_fbg",
        [](const std::vector<double>& values) { return averaged_fbg(values); },
        py::arg("scenario_means"));

    m.def("list_algorithms", [] { return AlgorithmRegistry::instance().names(); });
    m.def("mask_sequence", &mask_sequence, py::arg("genome_length"), py::arg("rho"),
          py::arg("periods"), py::arg("seed"));
    m.def("default_pm_grid", &default_pm_grid, py::arg("genome_length"));

    m.def(
        "admga_solve_static",
        [](int order, int blocks, int population, double pm, std::uint64_t seed,
           std::uint64_t max_evaluations) {
            const auto result = admga_solve_static(
                ConcatTrapProblem{TrapSpec::canonical(order), blocks}, population, pm, seed,
                max_evaluations);
            py::dict out;
            out["solved"] = result.solved;
            out["evaluations"] = result.evaluations;
            out["best_fitness"] = result.best_fitness;
            out["generations"] = result.generations;
            return out;
        },
        py::arg("order"), py::arg("blocks"), py::arg("population"), py::arg("pm"),
        py::arg("seed"), py::arg("max_evaluations"));

    m.def(
        "run_cell",
        [](int order, int blocks, const std::string& algorithm, int population, double pm,
           double rho, std::uint64_t epsilon, int periods, int runs, std::uint64_t seed_base,
           int jobs, int pool, int rr, bool static_threshold, double pc,
           const std::string& selection) {
            const auto result = run_scenario(
                make_request(order, blocks, algorithm, population, pm, rho, epsilon, periods,
                             runs, seed_base, jobs, pool, rr, static_threshold, pc, selection));
            py::dict out;
            out["fbg_mean"] = result.fbg_mean;
            out["fbg_std"] = result.fbg_std;
            out["per_run_means"] = result.per_run_means;
            return out;
        },
        py::arg("order"), py::arg("blocks"), py::arg("algorithm"), py::arg("population"),
        py::arg("pm"), py::arg("rho"), py::arg("epsilon"), py::arg("periods") = 10,
        py::arg("runs") = 30, py::arg("seed_base") = 1, py::arg("jobs") = 1,
        py::arg("pool") = 4, py::arg("rr") = -1, py::arg("static_threshold") = false,
        py::arg("pc") = 1.0, py::arg("selection") = "tournament",
        "run one scenario cell and return its summary");

    m.def(
        "run_trace",
        [](int order, int blocks, const std::string& algorithm, int population, double pm,
           double rho, std::uint64_t epsilon, int periods, std::uint64_t seed, int pool, int rr,
           bool static_threshold, double pc, const std::string& selection) {
            const auto request = make_request(order, blocks, algorithm, population, pm, rho,
                                              epsilon, periods, 1, seed, 1, pool, rr,
                                              static_threshold, pc, selection);
            RunRequest run;
            run.problem = request.problem;
            run.dynamics = DynamicsSpec{rho, epsilon, periods};
            run.algorithm = algorithm;
            run.ops = request.base_ops;
            run.ops.mutation_prob = pm;
            run.params = request.params;
            run.population = population;
            run.seed = seed;
            RunControl control;
            control.want_trace = true;
            const auto result = execute_run(run, control);
            py::list rows;
            for (const auto& row : result.trace.rows) {
                py::dict d;
                d["generation"] = row.generation;
                d["evaluations"] = row.evaluations;
                d["period"] = row.period;
                d["best_fitness"] = row.best_fitness;
                d["mean_fitness"] = row.mean_fitness;
                if (row.threshold)
                    d["threshold"] = *row.threshold;
                d["diversity"] = row.diversity;
                rows.append(d);
            }
            return rows;
        },
        py::arg("order"), py::arg("blocks"), py::arg("algorithm"), py::arg("population"),
        py::arg("pm"), py::arg("rho"), py::arg("epsilon"), py::arg("periods") = 10,
        py::arg("seed") = 1, py::arg("pool") = 4, py::arg("rr") = -1,
        py::arg("static_threshold") = false, py::arg("pc") = 1.0,
        py::arg("selection") = "tournament",
        "replay one seed and return the full per-generation trace");

    m.attr("__version__") = std::string(kVersion);
}
