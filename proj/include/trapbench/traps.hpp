#pragma once

#include "trapbench/bitstring.hpp"

namespace trapbench {

/// Order-l trap function parameters: piecewise-linear in the unitation u,
/// falling from the local optimum a at u=0 to zero at the slope-change
/// point z, then rising to the global optimum b at u=l.
struct TrapSpec {
    int length;          // l, block size in bits
    double local_opt;    // a
    double global_opt;   // b
    int slope_change;    // z, in [1, l-1]

    /// a = l-1, b = l, z = l-1. Order 3 sits on the deceptiveness
    /// boundary, orders 4 and 5 are fully deceptive.
    static TrapSpec canonical(int l);

    void validate() const;
};

/// m juxtaposed trap blocks; block i owns bits [i*l, (i+1)*l).
struct ConcatTrapProblem {
    TrapSpec block;
    int blocks; // m

    std::size_t length() const {
        return static_cast<std::size_t>(block.length) * blocks;
    }
    double max_fitness() const { return block.global_opt * blocks; }

    void validate() const;
};

/// Trap value for a block with unitation u. Throws on u outside [0, l].
double trap_value(int u, const TrapSpec& spec);

/// Ratio threshold above which a/b makes the trap deceptive:
/// (2 - 1/(l-z)) / (2 - 1/z). The block length l is used on both
/// slopes; see the note in docs/plan-reference.txt.
double deceptiveness_threshold(const TrapSpec& spec);

/// True when a/b >= deceptiveness_threshold.
bool is_deceptive(const TrapSpec& spec);

/// Sum of trap values over the m consecutive blocks of x.
double concat_fitness(const Bitstring& x, const ConcatTrapProblem& problem);

} // namespace trapbench
