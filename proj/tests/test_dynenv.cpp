#include <doctest.h>

#include <stdexcept>

#include "trapbench/dynenv.hpp"

using namespace trapbench;

TEST_CASE("flip counts round to nearest with ties up") {
    // hand-computed rho*L grid
    CHECK(flip_count_for(0.05, 30) == 2); // 1.5 rounds up
    CHECK(flip_count_for(0.3, 30) == 9);
    CHECK(flip_count_for(0.6, 30) == 18);
    CHECK(flip_count_for(0.95, 30) == 29); // 28.5 rounds up
    CHECK(flip_count_for(0.05, 40) == 2);
    CHECK(flip_count_for(0.3, 40) == 12);
    CHECK(flip_count_for(0.6, 40) == 24);
    CHECK(flip_count_for(0.95, 40) == 38);
    CHECK(flip_count_for(0.05, 50) == 3); // 2.5 rounds up
    CHECK(flip_count_for(0.3, 50) == 15);
    CHECK(flip_count_for(0.6, 50) == 30);
    CHECK(flip_count_for(0.95, 50) == 48); // 47.5 rounds up
    CHECK(flip_count_for(0.0, 30) == 0);
    CHECK(flip_count_for(1.0, 30) == 30);
}

TEST_CASE("initial mask is all zeros at period zero") {
    const auto state = initial_mask(30, 0.05);
    CHECK(state.mask == Bitstring(30));
    CHECK(state.period == 0);
    CHECK(state.flips == 2);
}

TEST_CASE("every advance flips exactly the severity count") {
    Rng rng(31);
    for (double rho : {0.05, 0.3, 0.6, 0.95}) {
        auto state = initial_mask(40, rho);
        auto previous = state.mask;
        for (int k = 0; k < 20; ++k) {
            advance_mask(state, rng);
            CHECK(hamming(state.mask, previous) == static_cast<std::size_t>(state.flips));
            previous = state.mask;
        }
    }
}

TEST_CASE("full severity complements the mask each period") {
    Rng rng(32);
    auto state = initial_mask(12, 1.0);
    advance_mask(state, rng);
    CHECK(state.mask == complement(Bitstring(12)));
    advance_mask(state, rng);
    CHECK(state.mask == Bitstring(12));
}

TEST_CASE("zero severity never changes the mask") {
    Rng rng(33);
    auto state = initial_mask(12, 0.0);
    for (int k = 0; k < 5; ++k) {
        advance_mask(state, rng);
        CHECK(state.mask == Bitstring(12));
    }
}

TEST_CASE("masked evaluation applies xor before the trap sum") {
    const ConcatTrapProblem order4{TrapSpec::canonical(4), 10};
    const DynamicsSpec spec{1.0, 400, 10};
    Environment env(order4, spec, 99);
    const auto ones = complement(Bitstring(40));

    // zero mask: identical to the static fitness
    CHECK(env.evaluate(ones) == doctest::Approx(40.0));
    CHECK(env.evaluate(Bitstring(40)) == doctest::Approx(30.0));

    // rho = 1: one advance complements the mask, the optimum lands on
    // the all-zeros image
    for (int i = 0; i < 398; ++i)
        env.evaluate(ones);
    env.maybe_change();
    CHECK(env.period() == 1);
    CHECK(env.evaluate(ones) == doctest::Approx(30.0));

    // x equal to the mask evaluates like the all-zeros string
    const DynamicsSpec mild{0.3, 400, 10};
    Environment env2(order4, mild, 100);
    for (int i = 0; i < 400; ++i)
        env2.evaluate(ones);
    env2.maybe_change();
    const auto mask = Bitstring::parse(env2.mask_string());
    CHECK(env2.evaluate(mask) == doctest::Approx(concat_fitness(Bitstring(40), order4)));
}

TEST_CASE("change scheduling follows evaluation-counter multiples") {
    const DynamicsSpec spec{0.3, 2400, 10};
    Rng rng(41);
    auto state = initial_mask(30, spec.rho);

    CHECK(maybe_change(state, 2399, spec, rng) == 0);
    CHECK(maybe_change(state, 2400, spec, rng) == 1);
    CHECK(maybe_change(state, 4799, spec, rng) == 0);

    // full run: 10 periods x epsilon evaluations -> exactly 9 advances
    auto fresh = initial_mask(30, spec.rho);
    Rng rng2(42);
    int advances = 0;
    for (std::uint64_t counter = 30; counter <= 24000; counter += 30)
        advances += maybe_change(fresh, counter, spec, rng2);
    CHECK(advances == 9);
    CHECK(fresh.period == 9);
}

TEST_CASE("mask sequences replay bit-exactly per seed") {
    const ConcatTrapProblem order3{TrapSpec::canonical(3), 10};
    const DynamicsSpec spec{0.6, 300, 10};
    Environment a(order3, spec, 777);
    Environment b(order3, spec, 777);
    const auto probe = complement(Bitstring(30));
    for (int g = 0; g < 100; ++g) {
        for (int i = 0; i < 30; ++i) {
            CHECK(a.evaluate(probe) == b.evaluate(probe));
        }
        a.maybe_change();
        b.maybe_change();
        CHECK(a.mask_string() == b.mask_string());
    }
    CHECK(a.evaluations() == 3000);
}

TEST_CASE("static environments charge the counter without masking") {
    const ConcatTrapProblem order3{TrapSpec::canonical(3), 10};
    Environment env(order3);
    const auto x = complement(Bitstring(30));
    CHECK(env.evaluate(x) == doctest::Approx(30.0));
    CHECK(env.evaluations() == 1);
    CHECK(env.peek_fitness(x) == doctest::Approx(30.0));
    CHECK(env.evaluations() == 1); // peek never charges
    CHECK(env.maybe_change() == 0);
    CHECK_FALSE(env.is_dynamic());
}

TEST_CASE("dynamics specs are validated") {
    CHECK_THROWS_AS((DynamicsSpec{-0.1, 100, 10}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((DynamicsSpec{0.5, 0, 10}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((DynamicsSpec{0.5, 100, 0}).validate(), std::invalid_argument);
}
