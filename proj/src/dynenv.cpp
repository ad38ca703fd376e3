#include "trapbench/dynenv.hpp"

#include <cmath>
#include <stdexcept>

namespace trapbench {

void DynamicsSpec::validate() const {
    if (rho < 0.0 || rho > 1.0)
        throw std::invalid_argument("DynamicsSpec: rho must lie in [0, 1]");
    if (epsilon < 1)
        throw std::invalid_argument("DynamicsSpec: epsilon must be >= 1");
    if (periods < 1)
        throw std::invalid_argument("DynamicsSpec: periods must be >= 1");
}

int flip_count_for(double rho, std::size_t genome_length) {
    return static_cast<int>(std::floor(rho * static_cast<double>(genome_length) + 0.5));
}

MaskState initial_mask(std::size_t genome_length, double rho) {
    MaskState state;
    state.mask = Bitstring(genome_length);
    state.period = 0;
    state.flips = flip_count_for(rho, genome_length);
    return state;
}

void advance_mask(MaskState& state, Rng& rng) {
    // T(k): exactly `flips` ones at distinct positions, drawn without
    // replacement so the realized severity never falls short.
    const auto positions =
        sample_distinct(static_cast<std::size_t>(state.flips), state.mask.size(), rng);
    for (std::size_t p : positions)
        state.mask.flip(p);
    ++state.period;
}

int maybe_change(MaskState& state, std::uint64_t eval_counter,
                 const DynamicsSpec& spec, Rng& rng) {
    const std::uint64_t crossed = eval_counter / spec.epsilon;
    const std::uint64_t cap = static_cast<std::uint64_t>(spec.periods - 1);
    const std::uint64_t target = std::min(crossed, cap);
    int advances = 0;
    while (static_cast<std::uint64_t>(state.period) < target) {
        advance_mask(state, rng);
        ++advances;
    }
    return advances;
}

Environment::Environment(const ConcatTrapProblem& problem)
    : problem_(problem), mask_rng_(0), scratch_(problem.length()) {
    problem_.validate();
}

Environment::Environment(const ConcatTrapProblem& problem, const DynamicsSpec& dynamics,
                         std::uint64_t env_seed)
    : problem_(problem), dynamics_(dynamics), dynamic_(true), mask_rng_(env_seed),
      scratch_(problem.length()) {
    problem_.validate();
    dynamics.validate();
    state_ = initial_mask(problem_.length(), dynamics.rho);
}

double Environment::evaluate(const Bitstring& x) {
    ++evaluations_;
    return peek_fitness(x);
}

double Environment::peek_fitness(const Bitstring& x) const {
    if (!dynamic_)
        return concat_fitness(x, problem_);
    scratch_ = x;
    xor_inplace(scratch_, state_.mask);
    return concat_fitness(scratch_, problem_);
}

int Environment::maybe_change() {
    if (!dynamic_)
        return 0;
    return trapbench::maybe_change(state_, evaluations_, *dynamics_, mask_rng_);
}

std::string Environment::mask_string() const {
    return dynamic_ ? state_.mask.to_string() : std::string{};
}

} // namespace trapbench
