#include <doctest.h>

#include "trapbench/config.hpp"

using namespace trapbench;

namespace {

constexpr const char* kMinimalPlan = R"(
# order-3 benchmark, single cell
problem.order = 3
problem.blocks = 10
runs = 5
periods = 10
rho = 0.05
epsilon = 2400
algorithms = admga
population = 30
pm = 0.033333
)";

} // namespace

TEST_CASE("a minimal plan parses with defaults") {
    const Plan plan = plan_from_text(kMinimalPlan);
    CHECK(plan.problem.block.length == 3);
    CHECK(plan.problem.blocks == 10);
    CHECK(plan.problem.length() == 30);
    CHECK(plan.problem.max_fitness() == doctest::Approx(30.0));
    CHECK(plan.runs == 5);
    CHECK(plan.seed_base == 1);
    CHECK(plan.crossover_prob == doctest::Approx(1.0));
    CHECK(plan.selection == SelectionScheme::Tournament);
    CHECK(plan.params.pool == 4);
    CHECK(plan.params.immigrants == -1);
    CHECK_FALSE(plan.params.static_threshold);
}

TEST_CASE("the auto pm grid is the doubling ladder between the sweep bounds") {
    const auto grid = default_pm_grid(30);
    REQUIRE(grid.size() == 7);
    CHECK(grid.front() == doctest::Approx(1.0 / 480.0));
    CHECK(grid[1] == doctest::Approx(1.0 / 240.0));
    CHECK(grid[2] == doctest::Approx(1.0 / 120.0));
    CHECK(grid[3] == doctest::Approx(1.0 / 60.0));
    CHECK(grid[4] == doctest::Approx(1.0 / 30.0));
    CHECK(grid[5] == doctest::Approx(2.0 / 30.0));
    CHECK(grid.back() == doctest::Approx(4.0 / 30.0));

    Plan plan = plan_from_text(
        "problem.order = 3\nproblem.blocks = 10\nrho = 0.05\nepsilon = 2400\n"
        "algorithms = gga\npm = auto\n");
    CHECK(plan.pm_auto);
    CHECK(plan.mutation_rates.size() == 7);
}

TEST_CASE("config errors carry actionable messages") {
    // indivisible epsilon names both numbers
    try {
        plan_from_text("problem.order = 3\nproblem.blocks = 10\nrho = 0.05\n"
                       "epsilon = 2401\nalgorithms = gga\npm = 0.03\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        CHECK(what.find("2401") != std::string::npos);
        CHECK(what.find("30") != std::string::npos);
    }

    // odd population with ssga
    CHECK_THROWS_AS(plan_from_text("problem.order = 3\nproblem.blocks = 10\nrho = 0.05\n"
                                   "epsilon = 2475\nalgorithms = ssga\npopulation = 25\n"
                                   "pm = 0.03\n"),
                    ConfigError);

    // unknown keys are rejected instead of silently ignored
    try {
        plan_from_text(std::string(kMinimalPlan) + "typo_key = 3\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("typo_key") != std::string::npos);
    }

    // unknown algorithm
    CHECK_THROWS_AS(plan_from_text("problem.order = 3\nproblem.blocks = 10\nrho = 0.05\n"
                                   "epsilon = 2400\nalgorithms = cmaes\npm = 0.03\n"),
                    ConfigError);

    // malformed line
    CHECK_THROWS_AS(plan_from_text("problem.order\n"), ConfigError);
    // duplicate key
    CHECK_THROWS_AS(plan_from_text("runs = 3\nruns = 4\n"), ConfigError);
}

TEST_CASE("the amga pool accepts its interface alias") {
    const std::string base = "problem.order = 3\nproblem.blocks = 10\nrho = 0.3\n"
                             "epsilon = 2400\nalgorithms = namga\npopulation = 30\npm = 0.03\n";
    CHECK(plan_from_text(base + "amga.n = 6\n").params.pool == 6);
    CHECK(plan_from_text(base + "amga.pool = 7\n").params.pool == 7);
    CHECK_THROWS_AS(plan_from_text(base + "amga.n = 6\namga.pool = 7\n"), ConfigError);
}

TEST_CASE("explicit trap parameters override the canonical family") {
    const Plan plan = plan_from_text(
        "problem.order = 4\nproblem.blocks = 5\nproblem.a = 2.5\nproblem.b = 4\n"
        "problem.z = 2\nrho = 0.3\nepsilon = 2400\nalgorithms = gga\npopulation = 20\n"
        "pm = 0.05\n");
    CHECK(plan.problem.block.local_opt == doctest::Approx(2.5));
    CHECK(plan.problem.block.global_opt == doctest::Approx(4.0));
    CHECK(plan.problem.block.slope_change == 2);
}

TEST_CASE("the documented reference plan and the shipped recipes parse") {
    const std::string root = TRAPBENCH_SOURCE_DIR;
    const Plan reference = load_plan(root + "/docs/plan-reference.txt");
    CHECK(reference.problem.length() == 30);
    CHECK(reference.pm_auto);
    CHECK(reference.mutation_rates.size() == 7);
    CHECK(reference.algorithms.size() == 3);
    CHECK(reference.epsilons.size() == 3);
    CHECK(reference.rhos.size() == 4);

    for (const char* name : {"order3-comparison.plan", "order4-oscillation.plan",
                             "order5-large-population.plan", "quickstart.plan"}) {
        const Plan plan = load_plan(root + "/plans/" + name);
        CHECK(!plan.algorithms.empty());
    }
}

TEST_CASE("echo lines capture every resolved decision") {
    const Plan plan = plan_from_text(kMinimalPlan);
    const auto lines = plan.echo_lines();
    auto contains = [&lines](const std::string& needle) {
        for (const auto& line : lines)
            if (line.find(needle) != std::string::npos)
                return true;
        return false;
    };
    CHECK(contains("problem.canonical = true"));
    CHECK(contains("severity.rounding = nearest-ties-up"));
    CHECK(contains("selection = tournament"));
    CHECK(contains("ssga.replacement = worst_half"));
    CHECK(contains("elitism = 2"));
    CHECK(contains("riga.rr = auto"));
    CHECK(contains("admga.initial_threshold_mode = dop"));
}
