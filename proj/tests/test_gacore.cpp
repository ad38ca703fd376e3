#include <doctest.h>

#include <stdexcept>

#include <array>
#include <vector>

#include "trapbench/gacore.hpp"

using namespace trapbench;

namespace {

Individual make(const std::string& bits, double fitness) {
    return Individual{Bitstring::parse(bits), fitness, 0};
}

} // namespace

TEST_CASE("selection degenerates correctly") {
    Rng rng(51);
    Population lone{make("0000", 1.0)};
    for (int i = 0; i < 5; ++i)
        CHECK(select_parent_index(lone, SelectionScheme::Tournament, rng) == 0);
    CHECK_THROWS_AS(select_parent_index({}, SelectionScheme::Tournament, rng),
                    std::invalid_argument);
}

TEST_CASE("tournament prefers the fitter member") {
    // two members: fitter wins unless the tournament draws the weaker
    // one twice, so P(win) = 3/4; 10000 draws, 3 sigma ~ 0.013
    Rng rng(52);
    Population pop{make("0000", 5.0), make("1111", 1.0)};
    int wins = 0;
    for (int i = 0; i < 10000; ++i)
        wins += select_parent_index(pop, SelectionScheme::Tournament, rng) == 0;
    CHECK(wins > 7100);
    CHECK(wins < 7900);
}

TEST_CASE("tournament is uniform on a flat fitness landscape") {
    // chi-square goodness of fit, 10 members, df = 9,
    // critical value at p = 0.01 is 21.666
    Rng rng(53);
    Population pop;
    for (int i = 0; i < 10; ++i)
        pop.push_back(make("0000000000", 3.0));
    std::array<int, 10> counts{};
    const int draws = 10000;
    for (int i = 0; i < draws; ++i)
        ++counts[select_parent_index(pop, SelectionScheme::Tournament, rng)];
    const double expected = draws / 10.0;
    double chi2 = 0.0;
    for (int c : counts)
        chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 21.666);
}

TEST_CASE("fitness proportional selection tracks weights") {
    Rng rng(54);
    Population pop{make("0000", 9.0), make("1111", 1.0)};
    int first = 0;
    for (int i = 0; i < 10000; ++i)
        first += select_parent_index(pop, SelectionScheme::FitnessProportional, rng) == 0;
    CHECK(first > 8800);
    CHECK(first < 9200);
}

TEST_CASE("uniform crossover preserves per-locus alleles") {
    Rng rng(55);
    const auto p1 = Bitstring::parse("110010011101");
    const auto p2 = Bitstring::parse("001110101011");
    for (int i = 0; i < 50; ++i) {
        const auto [c1, c2] = uniform_crossover(p1, p2, rng);
        CHECK(xor_bits(c1, c2) == xor_bits(p1, p2));
        for (std::size_t k = 0; k < p1.size(); ++k) {
            const bool parents_have_one = p1.test(k) || p2.test(k);
            const bool children_have_one = c1.test(k) || c2.test(k);
            CHECK(parents_have_one == children_have_one);
        }
    }
}

TEST_CASE("identical parents crossover to themselves") {
    Rng rng(56);
    const auto p = Bitstring::parse("10110110");
    const auto [c1, c2] = uniform_crossover(p, p, rng);
    CHECK(c1 == p);
    CHECK(c2 == p);
}

TEST_CASE("crossover child distances split the parent distance") {
    // brute force over every 4-bit parent pair
    Rng rng(57);
    for (std::uint64_t a = 0; a < 16; ++a)
        for (std::uint64_t b = 0; b < 16; ++b) {
            Bitstring p1(4), p2(4);
            for (int k = 0; k < 4; ++k) {
                p1.set(k, (a >> k) & 1u);
                p2.set(k, (b >> k) & 1u);
            }
            for (int trial = 0; trial < 4; ++trial) {
                const auto [c1, c2] = uniform_crossover(p1, p2, rng);
                CHECK(hamming(c1, p1) + hamming(c1, p2) == hamming(p1, p2));
                CHECK(hamming(c2, p1) + hamming(c2, p2) == hamming(p1, p2));
            }
        }
}

TEST_CASE("bit-flip mutation edge rates") {
    Rng rng(58);
    const auto x = Bitstring::parse("101101001110100101011010110101");
    CHECK(bitflip_mutation(x, 0.0, rng) == x);
    CHECK(bitflip_mutation(x, 1.0, rng) == complement(x));
}

TEST_CASE("bit-flip mutation matches the binomial mean") {
    // 30 bits at pm = 1/30: one expected flip; 3 sigma over 10000
    // mutations is ~0.03, the asserted band is 0.05
    Rng rng(59);
    const Bitstring x(30);
    double flips = 0.0;
    for (int i = 0; i < 10000; ++i)
        flips += static_cast<double>(unitation(bitflip_mutation(x, 1.0 / 30.0, rng)));
    const double mean = flips / 10000.0;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("elitism reinserts a lost elite over the worst member") {
    Population pop{make("0000", 38.0), make("0011", 35.0), make("1100", 31.0)};
    const std::vector<Individual> elites{make("1111", 40.0)};
    apply_elitism(elites, pop);
    CHECK(pop[2].genome == Bitstring::parse("1111"));
    CHECK(pop[2].fitness == doctest::Approx(40.0));
    CHECK(pop[0].fitness == doctest::Approx(38.0));
}

TEST_CASE("elitism is idempotent when elites are present") {
    Population pop{make("1111", 40.0), make("0011", 35.0), make("1100", 31.0)};
    const Population before = pop;
    const std::vector<Individual> elites{make("1111", 40.0), make("0011", 35.0)};
    apply_elitism(elites, pop);
    for (std::size_t i = 0; i < pop.size(); ++i) {
        CHECK(pop[i].genome == before[i].genome);
        CHECK(pop[i].fitness == doctest::Approx(before[i].fitness));
    }
}

TEST_CASE("elites worse than the whole population change nothing") {
    Population pop{make("0000", 38.0), make("0011", 35.0)};
    const std::vector<Individual> elites{make("1111", 10.0), make("1010", 9.0)};
    apply_elitism(elites, pop);
    CHECK(pop[0].genome == Bitstring::parse("0000"));
    CHECK(pop[1].genome == Bitstring::parse("0011"));
}

TEST_CASE("eviction prefers the highest index among ties") {
    Population pop{make("0000", 5.0), make("0001", 5.0), make("0010", 5.0)};
    const std::vector<Individual> elites{make("1111", 7.0)};
    apply_elitism(elites, pop);
    CHECK(pop[2].genome == Bitstring::parse("1111"));
    CHECK(pop[0].genome == Bitstring::parse("0000"));
    CHECK(pop[1].genome == Bitstring::parse("0001"));
}

TEST_CASE("two elites never evict each other") {
    Population pop{make("0000", 1.0), make("0001", 2.0), make("0010", 3.0)};
    const std::vector<Individual> elites{make("1111", 9.0), make("1110", 8.0)};
    apply_elitism(elites, pop);
    // worst (index 0) and then second-worst (index 1) must both be gone
    CHECK(pop[0].genome == Bitstring::parse("1111"));
    CHECK(pop[1].genome == Bitstring::parse("1110"));
    CHECK(pop[2].genome == Bitstring::parse("0010"));
}

TEST_CASE("top two picks best-first with stable ties") {
    Population pop{make("0000", 3.0), make("0001", 9.0), make("0010", 9.0),
                   make("0011", 1.0)};
    const auto top = top_two_indices(pop);
    REQUIRE(top.size() == 2);
    CHECK(top[0] == 1);
    CHECK(top[1] == 2);
    CHECK(best_index(pop) == 1);
    CHECK(worst_index(pop) == 3);
    CHECK(mean_fitness(pop) == doctest::Approx(5.5));
}
