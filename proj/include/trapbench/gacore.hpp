#pragma once

#include <span>
#include <utility>
#include <vector>

#include "trapbench/bitstring.hpp"
#include "trapbench/rng.hpp"

namespace trapbench {

struct Individual {
    Bitstring genome;
    double fitness = 0.0;
    int evaluated_at_period = -1; // audit only
};

using Population = std::vector<Individual>;

enum class SelectionScheme { Tournament, FitnessProportional };

/// Operator settings shared by every variant. pc defaults to 1.0 and
/// elitism to 2, the setup used throughout the benchmark.
struct OperatorConfig {
    double crossover_prob = 1.0;  // pc
    double mutation_prob = 0.0;   // pm, per bit
    SelectionScheme selection = SelectionScheme::Tournament;
    int elitism = 2;

    void validate() const;
};

const char* selection_name(SelectionScheme s);

/// Index of a parent drawn by the configured scheme. Tournament is a
/// binary tournament with replacement, ties resolved by a fair coin.
std::size_t select_parent_index(const Population& pop, SelectionScheme scheme, Rng& rng);

const Individual& select_parent(const Population& pop, SelectionScheme scheme, Rng& rng);

/// Per locus, child1 takes p1's allele with probability 1/2, child2 the
/// complementary one, so the allele multiset at each locus is preserved.
std::pair<Bitstring, Bitstring> uniform_crossover(const Bitstring& p1, const Bitstring& p2,
                                                  Rng& rng);

/// Each bit flips independently with probability pm.
Bitstring bitflip_mutation(const Bitstring& x, double pm, Rng& rng);

/// Reinsert surviving elites: an elite whose (current-mask) fitness beats
/// the worst member replaces it. Worst = lowest fitness, ties broken by
/// highest index; slots already filled by this call are skipped. Elites
/// already present by genome are left alone.
void apply_elitism(std::span<const Individual> elites, Population& pop);

/// Best-first indices of the two fittest members (ties: lowest index).
std::vector<std::size_t> top_two_indices(const Population& pop);

std::size_t worst_index(const Population& pop);
std::size_t best_index(const Population& pop);
double mean_fitness(const Population& pop);

} // namespace trapbench
