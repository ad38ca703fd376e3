#include "trapbench/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace trapbench {

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

template <typename T>
std::string join(const std::vector<T>& values, const std::string& sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += sep;
        if constexpr (std::is_same_v<T, std::string>)
            out += values[i];
        else if constexpr (std::is_floating_point_v<T>)
            out += fmt_double(values[i]);
        else
            out += std::to_string(values[i]);
    }
    return out;
}

} // namespace

KeyValueFile KeyValueFile::parse(std::string_view text) {
    KeyValueFile file;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string trimmed = trim(line);
        if (trimmed.empty())
            continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw ConfigError("plan line " + std::to_string(line_no) +
                              ": expected `key = value`, got `" + trimmed + "`");
        const std::string key = trim(trimmed.substr(0, eq));
        const std::string value = trim(trimmed.substr(eq + 1));
        if (key.empty())
            throw ConfigError("plan line " + std::to_string(line_no) + ": empty key");
        if (file.values_.count(key))
            throw ConfigError("plan: duplicate key `" + key + "`");
        file.values_[key] = value;
    }
    return file;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open plan file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool KeyValueFile::has(const std::string& key) const { return values_.count(key) > 0; }

std::string KeyValueFile::get_string(const std::string& key, const std::string& fallback) const {
    consumed_[key] = true;
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::int64_t KeyValueFile::get_int(const std::string& key, std::int64_t fallback) const {
    const std::string raw = get_string(key, "");
    if (raw.empty())
        return fallback;
    try {
        std::size_t used = 0;
        const std::int64_t v = std::stoll(raw, &used);
        if (used != raw.size())
            throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("plan key `" + key + "`: expected integer, got `" + raw + "`");
    }
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
    const std::string raw = get_string(key, "");
    if (raw.empty())
        return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(raw, &used);
        if (used != raw.size())
            throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("plan key `" + key + "`: expected number, got `" + raw + "`");
    }
}

bool KeyValueFile::get_bool(const std::string& key, bool fallback) const {
    const std::string raw = get_string(key, "");
    if (raw.empty())
        return fallback;
    if (raw == "true" || raw == "1" || raw == "yes")
        return true;
    if (raw == "false" || raw == "0" || raw == "no")
        return false;
    throw ConfigError("plan key `" + key + "`: expected true/false, got `" + raw + "`");
}

std::vector<std::string> KeyValueFile::get_list(const std::string& key) const {
    const std::string raw = get_string(key, "");
    std::vector<std::string> out;
    if (raw.empty())
        return out;
    std::size_t start = 0;
    while (start <= raw.size()) {
        const auto comma = raw.find(',', start);
        const std::string item =
            trim(raw.substr(start, comma == std::string::npos ? comma : comma - start));
        if (!item.empty())
            out.push_back(item);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::vector<double> KeyValueFile::get_double_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : get_list(key)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("plan key `" + key + "`: expected number list, got `" + item + "`");
        }
    }
    return out;
}

std::vector<std::string> KeyValueFile::unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [key, _] : values_)
        if (!consumed_.count(key))
            out.push_back(key);
    return out;
}

std::vector<double> default_pm_grid(std::size_t genome_length) {
    const double low = 1.0 / (16.0 * static_cast<double>(genome_length));
    std::vector<double> grid;
    for (int k = 0; k < 7; ++k)
        grid.push_back(low * static_cast<double>(1 << k));
    return grid;
}

void Plan::validate() const {
    problem.validate();
    if (runs < 1)
        throw ConfigError("plan: runs must be >= 1");
    if (periods < 1)
        throw ConfigError("plan: periods must be >= 1");
    if (rhos.empty())
        throw ConfigError("plan: at least one rho value is required");
    for (double rho : rhos)
        if (rho < 0.0 || rho > 1.0)
            throw ConfigError("plan: rho must lie in [0, 1]");
    if (epsilons.empty())
        throw ConfigError("plan: at least one epsilon value is required");
    if (algorithms.empty())
        throw ConfigError("plan: at least one algorithm is required");
    for (const auto& name : algorithms)
        if (!AlgorithmRegistry::instance().contains(name))
            throw ConfigError("plan: unknown algorithm `" + name + "`");
    if (populations.empty())
        throw ConfigError("plan: at least one population size is required");
    for (int n : populations) {
        if (n < 2)
            throw ConfigError("plan: population size must be >= 2");
        if (n % 2 != 0 &&
            std::find(algorithms.begin(), algorithms.end(), "ssga") != algorithms.end())
            throw ConfigError("plan: ssga requires an even population size, got " +
                              std::to_string(n));
        for (std::uint64_t eps : epsilons)
            if (eps % static_cast<std::uint64_t>(n) != 0)
                throw ConfigError("plan: epsilon " + std::to_string(eps) +
                                  " is not divisible by population size " + std::to_string(n));
    }
    const bool has_amga =
        std::find(algorithms.begin(), algorithms.end(), "namga") != algorithms.end() ||
        std::find(algorithms.begin(), algorithms.end(), "pamga") != algorithms.end();
    const bool has_riga =
        std::find(algorithms.begin(), algorithms.end(), "riga_worst") != algorithms.end() ||
        std::find(algorithms.begin(), algorithms.end(), "riga_random") != algorithms.end();
    for (int n : populations) {
        if (has_amga && (params.pool < 1 || params.pool > n - 1))
            throw ConfigError("plan: amga.pool " + std::to_string(params.pool) +
                              " must lie in [1, N-1] for N = " + std::to_string(n));
        if (has_riga && resolve_immigrant_count(params.immigrants, n) > n)
            throw ConfigError("plan: riga.rr exceeds population size " + std::to_string(n));
    }
    if (mutation_rates.empty())
        throw ConfigError("plan: at least one pm value is required");
    for (double pm : mutation_rates)
        if (pm < 0.0 || pm > 1.0)
            throw ConfigError("plan: pm must lie in [0, 1]");
    if (crossover_prob < 0.0 || crossover_prob > 1.0)
        throw ConfigError("plan: pc must lie in [0, 1]");
}

std::vector<std::string> Plan::echo_lines() const {
    const bool canonical = problem.block.local_opt == problem.block.length - 1 &&
                           problem.block.global_opt == problem.block.length &&
                           problem.block.slope_change == problem.block.length - 1;
    std::vector<std::string> lines;
    lines.push_back("problem.order = " + std::to_string(problem.block.length));
    lines.push_back("problem.blocks = " + std::to_string(problem.blocks));
    if (canonical) {
        lines.push_back("problem.canonical = true");
    } else {
        lines.push_back("problem.a = " + fmt_double(problem.block.local_opt));
        lines.push_back("problem.b = " + fmt_double(problem.block.global_opt));
        lines.push_back("problem.z = " + std::to_string(problem.block.slope_change));
    }
    lines.push_back("runs = " + std::to_string(runs));
    lines.push_back("periods = " + std::to_string(periods));
    lines.push_back("seed_base = " + std::to_string(seed_base));
    lines.push_back("rho = " + join(rhos));
    lines.push_back("epsilon = " + join(epsilons));
    lines.push_back("algorithms = " + join(algorithms));
    lines.push_back("population = " + join(populations));
    lines.push_back("pm = " + join(mutation_rates));
    lines.push_back("pc = " + fmt_double(crossover_prob));
    lines.push_back("selection = " + std::string(selection_name(selection)));
    lines.push_back("elitism = 2");
    lines.push_back("severity.rounding = nearest-ties-up");
    lines.push_back("ssga.replacement = worst_half");
    lines.push_back("riga.rr = " + (params.immigrants < 0 ? std::string("auto:round(N*4/30)")
                                                          : std::to_string(params.immigrants)));
    lines.push_back("amga.pool = " + std::to_string(params.pool));
    lines.push_back(std::string("admga.initial_threshold_mode = ") +
                    (params.static_threshold ? "static" : "dop"));
    lines.push_back("diversity.sampling = exact(N<=64), 200 pairs otherwise");
    lines.push_back(std::string("dump_masks = ") + (dump_masks ? "true" : "false"));
    return lines;
}

Plan plan_from_text(std::string_view text) {
    const KeyValueFile file = KeyValueFile::parse(text);
    Plan plan;

    const int order = static_cast<int>(file.get_int("problem.order", 0));
    const int blocks = static_cast<int>(file.get_int("problem.blocks", 0));
    if (order < 2 || blocks < 1)
        throw ConfigError("plan: problem.order (>= 2) and problem.blocks (>= 1) are required");
    TrapSpec spec = TrapSpec::canonical(order);
    if (file.has("problem.a") || file.has("problem.b") || file.has("problem.z")) {
        spec.local_opt = file.get_double("problem.a", spec.local_opt);
        spec.global_opt = file.get_double("problem.b", spec.global_opt);
        spec.slope_change = static_cast<int>(file.get_int("problem.z", spec.slope_change));
    }
    plan.problem = ConcatTrapProblem{spec, blocks};

    plan.runs = static_cast<int>(file.get_int("runs", plan.runs));
    plan.periods = static_cast<int>(file.get_int("periods", plan.periods));
    plan.seed_base = static_cast<std::uint64_t>(file.get_int("seed_base", 1));
    plan.dump_masks = file.get_bool("dump_masks", false);

    plan.rhos = file.get_double_list("rho");
    for (double e : file.get_double_list("epsilon"))
        plan.epsilons.push_back(static_cast<std::uint64_t>(e));

    plan.algorithms = file.get_list("algorithms");

    plan.populations.clear();
    if (file.has("population")) {
        for (double n : file.get_double_list("population"))
            plan.populations.push_back(static_cast<int>(n));
    } else {
        plan.populations.push_back(30);
    }

    const std::string pm_raw = file.get_string("pm", "");
    if (pm_raw == "auto") {
        plan.pm_auto = true;
        plan.mutation_rates = default_pm_grid(plan.problem.length());
    } else {
        plan.mutation_rates = file.get_double_list("pm");
    }

    plan.crossover_prob = file.get_double("pc", 1.0);
    const std::string sel = file.get_string("selection", "tournament");
    if (sel == "tournament")
        plan.selection = SelectionScheme::Tournament;
    else if (sel == "fitness_proportional")
        plan.selection = SelectionScheme::FitnessProportional;
    else
        throw ConfigError("plan: unknown selection scheme `" + sel + "`");

    if (file.has("amga.pool") && file.has("amga.n"))
        throw ConfigError("plan: amga.pool and its alias amga.n are both set");
    plan.params.pool = static_cast<int>(
        file.has("amga.n") ? file.get_int("amga.n", 4) : file.get_int("amga.pool", 4));
    const std::string rr = file.get_string("riga.rr", "auto");
    if (rr == "auto")
        plan.params.immigrants = -1;
    else
        plan.params.immigrants = static_cast<int>(file.get_int("riga.rr", -1));
    const std::string mode = file.get_string("admga.initial_threshold_mode", "dop");
    if (mode == "dop")
        plan.params.static_threshold = false;
    else if (mode == "static")
        plan.params.static_threshold = true;
    else
        throw ConfigError("plan: admga.initial_threshold_mode must be dop or static");

    if (const auto unknown = file.unused_keys(); !unknown.empty()) {
        std::string msg = "plan: unknown key(s):";
        for (const auto& k : unknown)
            msg += " " + k;
        throw ConfigError(msg);
    }

    plan.validate();
    return plan;
}

Plan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open plan file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return plan_from_text(buf.str());
}

} // namespace trapbench
