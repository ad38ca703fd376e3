#include "trapbench/gacore.hpp"

#include <algorithm>
#include <stdexcept>

namespace trapbench {

void OperatorConfig::validate() const {
    if (crossover_prob < 0.0 || crossover_prob > 1.0)
        throw std::invalid_argument("OperatorConfig: pc must lie in [0, 1]");
    if (mutation_prob < 0.0 || mutation_prob > 1.0)
        throw std::invalid_argument("OperatorConfig: pm must lie in [0, 1]");
    if (elitism < 0)
        throw std::invalid_argument("OperatorConfig: elitism must be >= 0");
}

const char* selection_name(SelectionScheme s) {
    return s == SelectionScheme::Tournament ? "tournament" : "fitness_proportional";
}

namespace {

std::size_t tournament_pick(const Population& pop, Rng& rng) {
    const std::size_t i = rng.below(pop.size());
    const std::size_t j = rng.below(pop.size());
    if (pop[i].fitness > pop[j].fitness)
        return i;
    if (pop[j].fitness > pop[i].fitness)
        return j;
    return rng.bernoulli(0.5) ? i : j;
}

std::size_t roulette_pick(const Population& pop, Rng& rng) {
    double total = 0.0;
    for (const auto& ind : pop)
        total += ind.fitness;
    if (total <= 0.0)
        return rng.below(pop.size());
    const double r = rng.next_double() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        acc += pop[i].fitness;
        if (r < acc)
            return i;
    }
    return pop.size() - 1;
}

} // namespace

std::size_t select_parent_index(const Population& pop, SelectionScheme scheme, Rng& rng) {
    if (pop.empty())
        throw std::invalid_argument("select_parent: empty population");
    return scheme == SelectionScheme::Tournament ? tournament_pick(pop, rng)
                                                 : roulette_pick(pop, rng);
}

const Individual& select_parent(const Population& pop, SelectionScheme scheme, Rng& rng) {
    return pop[select_parent_index(pop, scheme, rng)];
}

std::pair<Bitstring, Bitstring> uniform_crossover(const Bitstring& p1, const Bitstring& p2,
                                                  Rng& rng) {
    if (p1.size() != p2.size())
        throw std::invalid_argument("uniform_crossover: length mismatch");
    Bitstring c1 = p1;
    Bitstring c2 = p2;
    auto& w1 = c1.words();
    auto& w2 = c2.words();
    for (std::size_t i = 0; i < w1.size(); ++i) {
        const std::uint64_t pick = rng.next_u64(); // bit set -> allele from p1
        const std::uint64_t a = w1[i];
        const std::uint64_t b = w2[i];
        w1[i] = (a & pick) | (b & ~pick);
        w2[i] = (b & pick) | (a & ~pick);
    }
    return {std::move(c1), std::move(c2)};
}

Bitstring bitflip_mutation(const Bitstring& x, double pm, Rng& rng) {
    Bitstring out = x;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (rng.bernoulli(pm))
            out.flip(i);
    return out;
}

void apply_elitism(std::span<const Individual> elites, Population& pop) {
    std::vector<std::size_t> filled;
    for (const auto& elite : elites) {
        bool present = false;
        for (const auto& member : pop)
            if (member.genome == elite.genome) {
                present = true;
                break;
            }
        if (present)
            continue;
        // worst member, skipping slots an elite just took
        std::size_t worst = pop.size();
        for (std::size_t i = 0; i < pop.size(); ++i) {
            if (std::find(filled.begin(), filled.end(), i) != filled.end())
                continue;
            if (worst == pop.size() || pop[i].fitness < pop[worst].fitness ||
                (pop[i].fitness == pop[worst].fitness && i > worst))
                worst = i;
        }
        if (worst == pop.size())
            continue;
        if (elite.fitness > pop[worst].fitness) {
            pop[worst] = elite;
            filled.push_back(worst);
        }
    }
}

std::vector<std::size_t> top_two_indices(const Population& pop) {
    std::vector<std::size_t> order(pop.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::partial_sort(order.begin(), order.begin() + std::min<std::size_t>(2, order.size()),
                      order.end(), [&pop](std::size_t a, std::size_t b) {
                          if (pop[a].fitness != pop[b].fitness)
                              return pop[a].fitness > pop[b].fitness;
                          return a < b;
                      });
    order.resize(std::min<std::size_t>(2, order.size()));
    return order;
}

std::size_t worst_index(const Population& pop) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (pop[i].fitness < pop[worst].fitness ||
            (pop[i].fitness == pop[worst].fitness && i > worst))
            worst = i;
    return worst;
}

std::size_t best_index(const Population& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (pop[i].fitness > pop[best].fitness)
            best = i;
    return best;
}

double mean_fitness(const Population& pop) {
    double total = 0.0;
    for (const auto& ind : pop)
        total += ind.fitness;
    return pop.empty() ? 0.0 : total / static_cast<double>(pop.size());
}

} // namespace trapbench
