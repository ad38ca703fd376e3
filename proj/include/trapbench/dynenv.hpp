#pragma once

#include <cstdint>
#include <optional>

#include "trapbench/bitstring.hpp"
#include "trapbench/rng.hpp"
#include "trapbench/traps.hpp"

namespace trapbench {

/// Environment dynamics: severity rho (fraction of bits each change
/// flips), speed epsilon (fitness evaluations between changes) and the
/// number of change periods in a run.
struct DynamicsSpec {
    double rho = 0.0;
    std::uint64_t epsilon = 1;
    int periods = 1;

    void validate() const;
};

/// rho*L rounded to the nearest integer, ties up (rho=0.05, L=30 -> 2).
int flip_count_for(double rho, std::size_t genome_length);

/// XOR mask state. Every transition flips exactly `flips` distinct
/// positions, so consecutive masks are at Hamming distance flips.
struct MaskState {
    Bitstring mask;
    int period = 0; // k
    int flips = 0;
};

/// M(0) is all-zeros: period 0 evaluates the unmodified static problem.
MaskState initial_mask(std::size_t genome_length, double rho);

/// M(k) = M(k-1) XOR T(k) with T(k) carrying exactly `flips` ones at
/// uniformly random distinct positions.
void advance_mask(MaskState& state, Rng& rng);

/// Advance the mask for every multiple of epsilon the evaluation counter
/// has crossed, capped at periods-1 advances per run. Returns the number
/// of advances performed. Changes are never signalled to the algorithm.
int maybe_change(MaskState& state, std::uint64_t eval_counter,
                 const DynamicsSpec& spec, Rng& rng);

/// Fitness source for one run: the static problem, the mask state when
/// dynamics are attached, and the evaluation counter that drives change
/// scheduling. evaluate() charges the counter; peek_fitness() does not
/// and exists for bookkeeping (elite comparisons, immigrant fitness)
/// outside the N-evaluations-per-generation budget.
class Environment {
  public:
    /// Static environment: plain concat-trap fitness, no mask.
    explicit Environment(const ConcatTrapProblem& problem);

    /// Dynamic environment with its own mask stream.
    Environment(const ConcatTrapProblem& problem, const DynamicsSpec& dynamics,
                std::uint64_t env_seed);

    double evaluate(const Bitstring& x);
    double peek_fitness(const Bitstring& x) const;

    /// Call once per generation, after the generation's evaluations.
    /// Returns the number of mask advances performed (0 or, with epsilon
    /// a multiple of the per-generation charge, at most 1).
    int maybe_change();

    std::uint64_t evaluations() const { return evaluations_; }
    int period() const { return dynamic_ ? state_.period : 0; }
    bool is_dynamic() const { return dynamic_; }
    const ConcatTrapProblem& problem() const { return problem_; }
    const std::optional<DynamicsSpec>& dynamics() const { return dynamics_; }

    /// Current mask rendered as a 0/1 line; empty for static environments.
    std::string mask_string() const;

  private:
    ConcatTrapProblem problem_;
    std::optional<DynamicsSpec> dynamics_;
    bool dynamic_ = false;
    MaskState state_;
    Rng mask_rng_;
    std::uint64_t evaluations_ = 0;
    mutable Bitstring scratch_;
};

} // namespace trapbench
