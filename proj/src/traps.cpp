#include "trapbench/traps.hpp"

#include <stdexcept>
#include <string>

namespace trapbench {

TrapSpec TrapSpec::canonical(int l) {
    return TrapSpec{l, static_cast<double>(l - 1), static_cast<double>(l), l - 1};
}

void TrapSpec::validate() const {
    if (length < 2)
        throw std::invalid_argument("TrapSpec: block length must be >= 2");
    if (slope_change < 1 || slope_change > length - 1)
        throw std::invalid_argument("TrapSpec: z must lie in [1, l-1]");
    if (local_opt <= 0.0 || global_opt <= 0.0)
        throw std::invalid_argument("TrapSpec: a and b must be positive");
}

void ConcatTrapProblem::validate() const {
    block.validate();
    if (blocks < 1)
        throw std::invalid_argument("ConcatTrapProblem: need at least one block");
}

double trap_value(int u, const TrapSpec& spec) {
    if (u < 0 || u > spec.length)
        throw std::invalid_argument("trap_value: unitation " + std::to_string(u) +
                                    " outside [0, " + std::to_string(spec.length) + "]");
    if (u <= spec.slope_change)
        return spec.local_opt / spec.slope_change * (spec.slope_change - u);
    return spec.global_opt / (spec.length - spec.slope_change) * (u - spec.slope_change);
}

double deceptiveness_threshold(const TrapSpec& spec) {
    const double l = spec.length;
    const double z = spec.slope_change;
    return (2.0 - 1.0 / (l - z)) / (2.0 - 1.0 / z);
}

bool is_deceptive(const TrapSpec& spec) {
    return spec.local_opt / spec.global_opt >= deceptiveness_threshold(spec);
}

double concat_fitness(const Bitstring& x, const ConcatTrapProblem& problem) {
    if (x.size() != problem.length())
        throw std::invalid_argument("concat_fitness: genome length mismatch");
    const int l = problem.block.length;
    double total = 0.0;
    if (x.size() <= 64) {
        // single-word fast path: the standard 30/40/50-bit problems land here
        const std::uint64_t w = x.words()[0];
        const std::uint64_t mask = (l == 64) ? ~std::uint64_t{0}
                                             : (std::uint64_t{1} << l) - 1;
        for (int i = 0; i < problem.blocks; ++i) {
            const int u = std::popcount((w >> (i * l)) & mask);
            total += trap_value(u, problem.block);
        }
    } else {
        for (int i = 0; i < problem.blocks; ++i) {
            const std::size_t begin = static_cast<std::size_t>(i) * l;
            const int u = static_cast<int>(x.count_range(begin, begin + l));
            total += trap_value(u, problem.block);
        }
    }
    return total;
}

} // namespace trapbench
