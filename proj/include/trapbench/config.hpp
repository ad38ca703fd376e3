#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trapbench/algorithms.hpp"
#include "trapbench/dynenv.hpp"
#include "trapbench/gacore.hpp"
#include "trapbench/traps.hpp"

namespace trapbench {

/// Raised for malformed plans, bad parameter combinations and unknown
/// algorithms; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` file with '#' comments. Lists are comma separated.
class KeyValueFile {
  public:
    static KeyValueFile parse(std::string_view text);
    static KeyValueFile load(const std::string& path);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<std::string> get_list(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;

    /// Keys present in the file but never consumed by a getter.
    std::vector<std::string> unused_keys() const;

  private:
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, bool> consumed_;
};

/// A full experiment plan: problem, dynamics grid, algorithm list and
/// the operator / population / mutation grids, plus seed management.
/// Every algorithm in a plan runs against the same seed list and the
/// same per-seed mask sequences.
struct Plan {
    ConcatTrapProblem problem{TrapSpec::canonical(3), 10};
    std::vector<double> rhos;
    std::vector<std::uint64_t> epsilons;
    std::vector<std::string> algorithms;
    std::vector<int> populations{30};
    std::vector<double> mutation_rates;
    bool pm_auto = false;
    double crossover_prob = 1.0;
    SelectionScheme selection = SelectionScheme::Tournament;
    int runs = 30;
    int periods = 10;
    std::uint64_t seed_base = 1;
    bool dump_masks = false;
    AlgorithmParams params;

    void validate() const;

    /// Canonical `key = value` lines echoed into output headers so every
    /// resolved default is auditable from the file alone.
    std::vector<std::string> echo_lines() const;
};

/// Doubling ladder from 1/(16L) to 4/L inclusive (seven values).
std::vector<double> default_pm_grid(std::size_t genome_length);

Plan plan_from_text(std::string_view text);
Plan load_plan(const std::string& path);

} // namespace trapbench
